"""Exhaustive optima for small graphs: max cut, bipartiteness ratio, gain
ratio and edge expansion."""
import math

import numpy as np

from . import kernels
from .graph import make_cut

MAX_CUT_N = 30
MAX_TERNARY_N = 20


def maxcut_exact(g, backend=None):
    """Optimal cut by enumerating all 2^(n-1) side assignments."""
    if g.n > MAX_CUT_N:
        raise ValueError(f"exhaustive max cut limited to n <= {MAX_CUT_N}, got {g.n}")
    k = kernels if backend is None else kernels.backend_module(backend)
    indptr, indices, weights = g.csr
    _, side = k.maxcut_enum(g.n, indptr, indices, weights)
    return make_cut(g, side)


def _ternary(g, mode, backend, limit):
    if g.n > limit:
        raise ValueError(
            f"exhaustive search over 3^n sign vectors limited to n <= {limit}, got {g.n}; "
            "use the sweep-based bound for larger graphs"
        )
    if g.m == 0:
        raise ValueError("graph has no edges")
    k = kernels if backend is None else kernels.backend_module(backend)
    indptr, indices, weights = g.csr
    _, _, y = k.ternary_enum(g.n, indptr, indices, weights, np.asarray(g.deg), mode)
    return np.asarray(y, dtype=np.int8)


def beta_witness(g, backend=None, limit=MAX_TERNARY_N):
    """Return ``(beta, y)``: the bipartiteness ratio and a minimizing y.

    beta = min over nonzero y of sum_e w|y_i + y_j| / sum_i d_i |y_i|, i.e. the
    ordered-pair numerator divided by 2 sum_i d_i |y_i|.
    """
    y = _ternary(g, 0, backend, limit)
    a, b = y[g.u].astype(np.int64), y[g.v].astype(np.int64)
    num = math.fsum((g.w * np.abs(a + b)).tolist())
    den = math.fsum((g.deg * np.abs(y)).tolist())
    return num / den, y


def gamma_witness(g, backend=None, limit=18):
    """Return ``(gamma, y)``: the gain ratio max -y^T A y / sum d|y| and a maximizer."""
    y = _ternary(g, 1, backend, limit)
    a, b = y[g.u].astype(np.int64), y[g.v].astype(np.int64)
    num = -2.0 * math.fsum((g.w * a * b).tolist())
    den = math.fsum((g.deg * np.abs(y)).tolist())
    return num / den, y


def edge_expansion(g, limit=MAX_TERNARY_N):
    """min over S, 1 <= |S| <= n/2, of w(S, V-S) / sum_{i in S} d_i.

    Subsets with zero volume are skipped.
    """
    n = g.n
    if n > limit:
        raise ValueError(f"exhaustive edge expansion limited to n <= {limit}, got {n}")
    if g.m == 0:
        raise ValueError("graph has no edges")
    best = math.inf
    shifts = np.arange(n, dtype=np.int64)
    chunk = 1 << 15
    for lo in range(1, 1 << n, chunk):
        masks = np.arange(lo, min(1 << n, lo + chunk), dtype=np.int64)
        s = ((masks[:, None] >> shifts) & 1).astype(bool)
        small = s.sum(axis=1) <= n // 2
        s = s[small]
        if not len(s):
            continue
        cut = (s[:, g.u] != s[:, g.v]) @ g.w
        vol = s @ g.deg
        ok = vol > 0
        if ok.any():
            best = min(best, float(np.min(cut[ok] / vol[ok])))
    return best
