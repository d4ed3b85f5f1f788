"""Two-threshold spectral rounding and the bipartiteness ratio.

``two_threshold_sweep`` turns a real vector x into y in {-1, 0, 1}^V by
zeroing every vertex with |x_i| <= tau and keeping sign(x_i) elsewhere, for
every tau in {0} U {|x_k|}, and returns the y minimizing

    sum_{i,j} A_ij |y_i + y_j| / sum_i d_i |y_i|

which is guaranteed to be at most sqrt(8 * eps_x) with eps_x the quotient
x^T (D+A) x / x^T D x.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import exact, kernels
from .eigen import EmbeddingVector, lambda_min, rayleigh_quotient, smallest_eigvec
from .graph import PartitionStats, partition_stats


@dataclass(frozen=True)
class SweepResult:
    y: np.ndarray
    stats: PartitionStats
    threshold_index: int
    threshold: float
    eps_x: float
    bound: float
    embedding: EmbeddingVector | None = None

    @property
    def ratio(self):
        return self.stats.ratio

    @property
    def L(self):
        return np.flatnonzero(self.y == -1)

    @property
    def R(self):
        return np.flatnonzero(self.y == 1)

    @property
    def support_size(self):
        return int(np.count_nonzero(self.y))


@dataclass(frozen=True)
class BetaReport:
    beta: float
    lambda_n: float
    lower: float
    upper: float
    exact: bool
    witness: np.ndarray | None = None

    @property
    def sandwiched(self):
        return self.lower <= self.beta <= self.upper


def two_threshold_sweep(g, x):
    """Best threshold rounding of ``x`` (an EmbeddingVector or array).

    Ties in the ratio go to the smaller threshold (larger support). The
    zero threshold (y = sign(x)) is a candidate alongside every |x_k|.
    """
    emb = x if isinstance(x, EmbeddingVector) else None
    vec = np.asarray(emb.x if emb is not None else x, dtype=np.float64)
    if vec.shape != (g.n,):
        raise ValueError(f"vector must have length {g.n}")
    if g.signed:
        raise ValueError("the sweep requires non-negative weights")
    if not np.any(vec != 0):
        raise ValueError("every threshold yields the zero vector: x is identically zero")
    eps_x = rayleigh_quotient(g, vec)

    absx = np.abs(vec)
    order = np.argsort(absx, kind="stable").astype(np.int64)
    signs = np.sign(vec).astype(np.int8)
    indptr, indices, weights = g.csr
    pos, _, _ = kernels.sweep(indptr, indices, weights, order, signs,
                              np.ascontiguousarray(absx[order]), np.asarray(g.deg))
    if pos == -2:
        raise ValueError("every threshold yields the zero vector")
    y = signs.copy()
    if pos >= 0:
        y[order[: pos + 1]] = 0
        k, tau = int(order[pos]), float(absx[order[pos]])
    else:
        k, tau = -1, 0.0
    y.flags.writeable = False
    return SweepResult(y, partition_stats(g, y), k, tau, eps_x,
                       math.sqrt(8.0 * max(eps_x, 0.0)), emb)


def sweep_naive(g, x):
    """O(n m) reference: every candidate rebuilt from scratch. Returns the
    minimum ordered-pair ratio."""
    vec = np.asarray(x, dtype=np.float64)
    best = math.inf
    for tau in np.unique(np.concatenate([[0.0], np.abs(vec)])):
        y = np.where(np.abs(vec) > tau, np.sign(vec), 0).astype(np.int8)
        st = partition_stats(g, y)
        if st.denominator > 0:
            best = min(best, st.ratio)
    return best


def spectral_partition(g, delta, seed=0, method="auto"):
    """Eigenvector step followed by the sweep.

    The eigensolver runs at accuracy delta^2/8, so if the max cut of ``g`` is
    at least 1 - eps the returned ratio is at most 4 sqrt(eps) + delta.
    """
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    emb = smallest_eigvec(g, delta * delta / 8.0, seed=seed, method=method)
    return two_threshold_sweep(g, emb)


def _bounds(lam):
    gap = 1.0 - abs(lam)
    return 0.5 * gap, math.sqrt(2.0 * max(gap, 0.0))


def beta_exact(g, backend=None):
    """Exact bipartiteness ratio by enumerating all 3^n sign vectors (n <= 20).

    beta = min over y != 0 of sum_{i,j} A_ij |y_i + y_j| / (2 sum_i d_i |y_i|).
    """
    beta, y = exact.beta_witness(g, backend=backend)
    lam, _, _ = lambda_min(g, method="dense")
    lo, hi = _bounds(lam)
    return BetaReport(beta, lam, lo, hi, True, y)


def beta_sweep_bound(g, delta=0.05, seed=0, method="auto"):
    """Upper bound on beta from one spectral sweep, for graphs too large to enumerate."""
    res = spectral_partition(g, delta, seed=seed, method=method)
    lam, _, _ = lambda_min(g)
    lo, hi = _bounds(lam)
    return BetaReport(res.ratio / 2.0, lam, lo, hi, False, res.y)


def edge_expansion_exact(g):
    """h(G) = min over |S| <= n/2 of w(S, V-S) / vol(S), by enumeration (n <= 20)."""
    return exact.edge_expansion(g)
