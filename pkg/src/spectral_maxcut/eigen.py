"""Approximate minimizers of x^T (D+A) x / x^T D x.

The minimizer is D^{-1/2} z where z is a top eigenvector of the PSD matrix
P = I - D^{-1/2} A D^{-1/2}. The default solver is power iteration from a
seeded random start, run for ceil(C log n / (delta/2)) steps so that
z^T P z >= (1 - delta/2) lambda_max(P) z^T z with high probability, which
yields eps_x <= 1 + lambda_min + delta. For small graphs the same iterate
P^k z0 is formed by repeated squaring; large graphs use Lanczos (ARPACK).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

log = logging.getLogger(__name__)

# Work budget (flop-ish units) under which power iteration is used by "auto".
POWER_BUDGET = 4e7
DENSE_LIMIT = 2000
METHODS = ("auto", "power", "lanczos", "dense")


@dataclass(frozen=True)
class EmbeddingVector:
    """Real vertex embedding with its measured quotient.

    eps_x = x^T (D+A) x / x^T D x; ``delta_used`` is the accuracy requested
    from the solver and ``method`` names the realization actually run.
    """

    x: np.ndarray
    eps_x: float
    delta_used: float
    method: str
    iterations: int = 0


def rayleigh_quotient(g, x):
    """x^T (D+A) x / x^T D x computed edge-wise as
    sum_e |w| (x_i + sgn(w) x_j)^2 / sum_i d_i x_i^2."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        raise ValueError(f"vector must have length {g.n}")
    den = math.fsum((g.deg * x * x).tolist())
    if den == 0:
        raise ValueError("zero denominator: x vanishes on every vertex of positive degree")
    s = np.sign(g.w)
    r = x[g.u] + s * x[g.v]
    num = math.fsum((np.abs(g.w) * r * r).tolist())
    return num / den


def _active_operator(g):
    """(active vertex ids, P = I - N restricted to them) as CSR."""
    active = np.flatnonzero(g.deg > 0)
    n_sub = g.normalized_adjacency()[active][:, active]
    p = sp.identity(len(active), format="csr") - n_sub
    return active, p.tocsr()


def power_iterations(n, delta, iter_const=8.0):
    """Number of power steps for relative accuracy ``delta`` on an n-vertex graph."""
    return max(1, math.ceil(iter_const * max(math.log(max(n, 2)), 1.0) / delta))


def _power_iterative(p, z, k):
    best_q, best = -math.inf, z
    for _ in range(k):
        pz = p @ z
        q = float(z @ pz)
        if q > best_q:
            best_q, best = q, z
        nrm = np.linalg.norm(pz)
        if nrm == 0:
            break
        z = pz / nrm
    if float(z @ (p @ z)) > best_q:
        best = z
    return best


def _power_squaring(pd, z, k):
    # P^k z0 via binary powering. For PSD P the quotient of P^j z0 is
    # non-decreasing in j, so the last iterate is also the best one.
    b = pd / np.abs(pd).max()
    v = z.copy()
    while k:
        if k & 1:
            v = b @ v
            nrm = np.linalg.norm(v)
            if nrm == 0:
                return None
            v /= nrm
        k >>= 1
        if k:
            b = b @ b
            b /= np.abs(b).max()
    return v


def _top_dense(pd):
    vals, vecs = np.linalg.eigh(pd)
    return vecs[:, -1]


def _top_lanczos(p, z0):
    try:
        _, vecs = eigsh(p, k=1, which="LA", v0=z0, tol=1e-11, maxiter=max(1000, 20 * p.shape[0]))
        return vecs[:, 0]
    except ArpackNoConvergence as exc:
        log.warning("Lanczos did not converge (%s)", exc)
        if p.shape[0] <= DENSE_LIMIT:
            return _top_dense(p.toarray())
        if exc.eigenvectors is not None and exc.eigenvectors.shape[1]:
            return exc.eigenvectors[:, 0]
        raise


def smallest_eigvec(g, delta, seed=0, method="auto", iter_const=8.0):
    """Return an EmbeddingVector x with eps_x <= 1 + lambda_min(N) + delta.

    ``method``: "power" (power iteration, possibly realized by repeated
    squaring), "lanczos", "dense", or "auto" (power when its cost is within
    budget, Lanczos otherwise). Isolated vertices get x_i = 0.
    """
    if g.m == 0 or g.total_weight == 0:
        raise ValueError("graph has no edges")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")

    active, p = _active_operator(g)
    na = len(active)
    rng = np.random.default_rng(seed)
    z0 = rng.standard_normal(na)
    z0 /= np.linalg.norm(z0)

    k = power_iterations(na, delta / 2.0, iter_const)
    iter_cost = k * (p.nnz + na)
    square_cost = 2.0 * na**3 * max(1, k.bit_length())
    power_cost = min(iter_cost, square_cost)
    if method == "auto":
        method = "power" if power_cost <= POWER_BUDGET or na < 3 else "lanczos"

    z = None
    used = method
    if method == "power":
        if square_cost < iter_cost:
            z = _power_squaring(p.toarray(), z0, k)
            used = "power-squaring"
        if z is None:
            z = _power_iterative(p, z0, k)
            used = "power"
    elif method == "lanczos":
        z = _top_lanczos(p, z0) if na >= 3 else _top_dense(p.toarray())
    else:
        z = _top_dense(p.toarray())

    x = np.zeros(g.n)
    x[active] = z / np.sqrt(g.deg[active])
    j = int(np.argmax(np.abs(x)))
    if x[j] < 0:
        x = -x
    x.flags.writeable = False
    return EmbeddingVector(x, rayleigh_quotient(g, x), float(delta), used, k if used.startswith("power") else 0)


def lambda_min(g, method="auto"):
    """Smallest eigenvalue of D^{-1/2} A D^{-1/2} over non-isolated vertices.

    Returns ``(value, method_used, residual_norm)``. The dense path is exact to
    rounding; the Lanczos path reports the eigen-residual norm.
    """
    if g.m == 0:
        raise ValueError("graph has no edges")
    active, p = _active_operator(g)
    na = len(active)
    if method == "auto":
        method = "dense" if na <= 500 else "lanczos"
    if method == "dense" or na < 3:
        vals = np.linalg.eigvalsh(p.toarray())
        return 1.0 - float(vals[-1]), "dense", 0.0
    if method != "lanczos":
        raise ValueError(f"unknown method {method!r}")
    z0 = np.random.default_rng(0).standard_normal(na)
    v = _top_lanczos(p, z0)
    v = v / np.linalg.norm(v)
    pv = p @ v
    theta = float(v @ pv)
    res = float(np.linalg.norm(pv - theta * v))
    return 1.0 - theta, "lanczos", res
