"""Exception types shared across the package."""


class HclsError(Exception):
    """Base class for package-specific failures."""


class DataError(HclsError):
    """Malformed or empty input data (edge lists, config files)."""


class NumericalFailure(HclsError):
    """A non-finite intermediate; carries the offending coordinate."""

    def __init__(self, message, coordinate=None):
        super().__init__(message)
        self.coordinate = coordinate


class GradientSingular(HclsError):
    """Gradient requested at a point where it is undefined."""


class CalibrationError(HclsError):
    """Density calibration target unreachable in the search bracket."""


class ConfigurationError(HclsError):
    """Inconsistent shapes or options (encoder/graph mismatch etc.)."""
