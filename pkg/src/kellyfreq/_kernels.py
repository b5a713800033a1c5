"""Numeric inner loops, compiled with numba when available.

Every kernel exists twice: a ``@njit`` loop version and a vectorised numpy
version with the same signature.  Set ``KELLYFREQ_PURE_NUMPY=1`` in the
environment before import to force the numpy path (useful for debugging and
for the backend comparison in ``benchmarks/``).
"""

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("KELLYFREQ_PURE_NUMPY", "").strip().lower() in ("1", "true", "yes")

try:
    if _FORCE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _merge_close_np(v, p, rtol):
    if v.size == 0:
        return v.copy(), p.copy()
    new_group = np.empty(v.size, dtype=np.bool_)
    new_group[0] = True
    new_group[1:] = np.diff(v) > rtol * np.abs(v[1:])
    starts = np.flatnonzero(new_group)
    psum = np.add.reduceat(p, starts)
    vsum = np.add.reduceat(p * v, starts)
    return vsum / psum, psum


def _bin_log_products_np(logv, pv, logf, pf, lo, width, nbins):
    psum = np.zeros(nbins)
    lsum = np.zeros(nbins)
    for j in range(logf.size):
        lj = logv + logf[j]
        idx = np.floor((lj - lo) / width).astype(np.int64)
        np.clip(idx, 0, nbins - 1, out=idx)
        w = pv * pf[j]
        psum += np.bincount(idx, weights=w, minlength=nbins)
        lsum += np.bincount(idx, weights=w * lj, minlength=nbins)
    return psum, lsum


def _log_growth_sum_np(x, p, k):
    w = 1.0 + k * x
    if w.size and w.min() <= 0.0:
        return -np.inf
    return float(np.dot(p, np.log(w)))


def _slope_sum_np(x, p, k):
    w = 1.0 + k * x
    if w.size and w.min() <= 0.0:
        return -np.inf
    return float(np.dot(p, x / w))


def _block_logs_np(u, cdf, factors, k, disc, eps):
    idx = np.searchsorted(cdf, u, side="right")
    np.minimum(idx, factors.size - 1, out=idx)
    prod = np.prod(factors[idx], axis=1)
    w = 1.0 + k * (prod * disc - eps - 1.0)
    out = np.full(w.shape, -np.inf)
    ok = w > 0.0
    out[ok] = np.log(w[ok])
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True)
    def _merge_close_nb(v, p, rtol):
        n = v.size
        vout = np.empty(n)
        pout = np.empty(n)
        if n == 0:
            return vout, pout
        g = 0
        ps = p[0]
        vs = p[0] * v[0]
        for i in range(1, n):
            if v[i] - v[i - 1] > rtol * abs(v[i]):
                vout[g] = vs / ps
                pout[g] = ps
                g += 1
                ps = 0.0
                vs = 0.0
            ps += p[i]
            vs += p[i] * v[i]
        vout[g] = vs / ps
        pout[g] = ps
        return vout[: g + 1].copy(), pout[: g + 1].copy()

    @njit(cache=True)
    def _bin_log_products_nb(logv, pv, logf, pf, lo, width, nbins):
        psum = np.zeros(nbins)
        lsum = np.zeros(nbins)
        for j in range(logf.size):
            for i in range(logv.size):
                lj = logv[i] + logf[j]
                b = int(np.floor((lj - lo) / width))
                if b < 0:
                    b = 0
                elif b >= nbins:
                    b = nbins - 1
                w = pv[i] * pf[j]
                psum[b] += w
                lsum[b] += w * lj
        return psum, lsum

    @njit(cache=True)
    def _log_growth_sum_nb(x, p, k):
        s = 0.0
        for i in range(x.size):
            w = 1.0 + k * x[i]
            if w <= 0.0:
                return -np.inf
            s += p[i] * np.log(w)
        return s

    @njit(cache=True)
    def _slope_sum_nb(x, p, k):
        s = 0.0
        for i in range(x.size):
            w = 1.0 + k * x[i]
            if w <= 0.0:
                return -np.inf
            s += p[i] * x[i] / w
        return s

    @njit(cache=True)
    def _block_logs_nb(u, cdf, factors, k, disc, eps):
        nblocks, n = u.shape
        out = np.empty(nblocks)
        last = factors.size - 1
        for b in range(nblocks):
            prod = 1.0
            for j in range(n):
                i = np.searchsorted(cdf, u[b, j], side="right")
                if i > last:
                    i = last
                prod *= factors[i]
            w = 1.0 + k * (prod * disc - eps - 1.0)
            out[b] = np.log(w) if w > 0.0 else -np.inf
        return out

    merge_close = _merge_close_nb
    bin_log_products = _bin_log_products_nb
    log_growth_sum = _log_growth_sum_nb
    slope_sum = _slope_sum_nb
    block_logs = _block_logs_nb
    BACKEND = "numba"
else:
    merge_close = _merge_close_np
    bin_log_products = _bin_log_products_np
    log_growth_sum = _log_growth_sum_np
    slope_sum = _slope_sum_np
    block_logs = _block_logs_np
    BACKEND = "numpy"

NUMPY_KERNELS = {
    "merge_close": _merge_close_np,
    "bin_log_products": _bin_log_products_np,
    "log_growth_sum": _log_growth_sum_np,
    "slope_sum": _slope_sum_np,
    "block_logs": _block_logs_np,
}
