"""Build script for the optional Cython kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install.
"""

import warnings

import numpy
from setuptools import setup
from setuptools.command.build_ext import build_ext
from Cython.Build import cythonize


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler etc.
            warnings.warn(f"hcls._kernels._core not compiled ({exc}); "
                          "falling back to the NumPy kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


setup(
    ext_modules=cythonize(
        ["src/hcls/_kernels/_core.pyx"],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": 3,
        },
    ),
    include_dirs=[numpy.get_include()],
    cmdclass={"build_ext": OptionalBuildExt},
)
