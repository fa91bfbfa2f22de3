"""NumPy fallback for the pairwise likelihood/distance kernels.

Vectorized over the condensed upper triangle (i < j, row-major). Slower
than the compiled core but dependency-free; selected automatically when
the extension is unavailable or HCLS_FORCE_NUMPY is set.
"""

import numpy as np

_pair_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _pairs(n):
    if n not in _pair_cache:
        if len(_pair_cache) > 8:
            _pair_cache.clear()
        _pair_cache[n] = np.triu_indices(n, k=1)
    return _pair_cache[n]


def hyp_pairwise_distances(r, theta):
    """Condensed hyperbolic distances from native polar coordinates."""
    i, j = _pairs(r.shape[0])
    sh = np.sinh(0.5 * (r[i] - r[j]))
    s2 = np.sin(0.5 * (theta[i] - theta[j])) ** 2
    x = 2.0 * (sh * sh + np.sinh(r[i]) * np.sinh(r[j]) * s2)
    return np.log1p(x + np.sqrt(x * (x + 2.0)))


def euc_pairwise_distances(xy):
    """Condensed Euclidean distances for an (n, 2) coordinate array."""
    i, j = _pairs(xy.shape[0])
    d = xy[i] - xy[j]
    return np.hypot(d[:, 0], d[:, 1])


def _eta_terms(d, y, alpha, T):
    eta = (alpha - d) / (2.0 * T)
    ll = float(np.sum(y * eta) - np.sum(np.logaddexp(0.0, eta)))
    # d(loglik)/d(eta), with the stable sigmoid baked in
    w = y - _sigmoid(eta)
    return eta, ll, w


def _sigmoid(x):
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    e = np.exp(x[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def hyp_loglik_grads(r, theta, adj, alpha, T):
    """Bernoulli log-likelihood and gradients under the distance link.

    Parameters are native-polar radial/angular arrays, a dense symmetric
    0/1 adjacency, the connection threshold and the temperature. Returns
    (ll, d_r, d_theta, d_alpha, d_T); ll is -inf (with zero gradients)
    when any pairwise term is non-finite.
    """
    n = r.shape[0]
    i, j = _pairs(n)
    with np.errstate(over="ignore", invalid="ignore"):
        dr = r[i] - r[j]
        sh = np.sinh(0.5 * dr)
        shi = np.sinh(r[i])
        shj = np.sinh(r[j])
        dth = theta[i] - theta[j]
        s2 = np.sin(0.5 * dth) ** 2
        x = 2.0 * (sh * sh + shi * shj * s2)
        if not np.all(np.isfinite(x)):
            return -np.inf, np.zeros(n), np.zeros(n), 0.0, 0.0
        den = np.sqrt(x * (x + 2.0))
        d = np.log1p(x + den)
        y = adj[i, j].astype(np.float64)
        eta, ll, w = _eta_terms(d, y, alpha, T)
        if not np.isfinite(ll):
            return -np.inf, np.zeros(n), np.zeros(n), 0.0, 0.0

        dll_dd = -w / (2.0 * T)
        inv = 1.0 / np.maximum(den, 1e-12)
        sinh_dr = np.sinh(dr)
        gi = dll_dd * (sinh_dr + 2.0 * np.cosh(r[i]) * shj * s2) * inv
        gj = dll_dd * (-sinh_dr + 2.0 * shi * np.cosh(r[j]) * s2) * inv
        gth = dll_dd * (shi * shj * np.sin(dth)) * inv

    g_r = np.zeros(n)
    g_theta = np.zeros(n)
    np.add.at(g_r, i, gi)
    np.add.at(g_r, j, gj)
    np.add.at(g_theta, i, gth)
    np.add.at(g_theta, j, -gth)
    g_alpha = float(np.sum(w)) / (2.0 * T)
    g_T = float(np.sum(w * (-eta))) / T
    return ll, g_r, g_theta, g_alpha, g_T


def euc_loglik_grads(xy, adj, alpha, T):
    """Euclidean counterpart of hyp_loglik_grads; xy is (n, 2)."""
    n = xy.shape[0]
    i, j = _pairs(n)
    with np.errstate(over="ignore", invalid="ignore"):
        diff = xy[i] - xy[j]
        d = np.hypot(diff[:, 0], diff[:, 1])
        if not np.all(np.isfinite(d)):
            return -np.inf, np.zeros_like(xy), 0.0, 0.0
        y = adj[i, j].astype(np.float64)
        eta, ll, w = _eta_terms(d, y, alpha, T)
        if not np.isfinite(ll):
            return -np.inf, np.zeros_like(xy), 0.0, 0.0
        dll_dd = -w / (2.0 * T)
        unit = diff / np.maximum(d, 1e-12)[:, None]
        g_pair = dll_dd[:, None] * unit

    g_xy = np.zeros_like(xy)
    np.add.at(g_xy, i, g_pair)
    np.add.at(g_xy, j, -g_pair)
    g_alpha = float(np.sum(w)) / (2.0 * T)
    g_T = float(np.sum(w * (-eta))) / T
    return ll, g_xy, g_alpha, g_T
