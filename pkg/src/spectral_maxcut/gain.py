"""Max CutGain via four-threshold spectral rounding.

Given x with eps = -x^T A x / x^T D x > 0, pick t with t^2 uniform on [0, 1]
and let every i with t e^-ell <= |x_i| <= t take Y_i = sign(x_i) with
probability |x_i| / t (0 otherwise). With max |x_i| = e^-ell,

    E|Y_i|      = 2 (e^ell - 1) x_i^2
    E[Y_i Y_j]  = 2 x_i x_j max(0, ell - ln(a/b)),  a >= b the two magnitudes,

so c1 E[Y_i Y_j] ~ x_i x_j with c1 = 1/(2 ell) and the ratio of expectations
-E[Y^T A Y] / E[sum d|Y|] is at least (eps - 2 delta) / (c1 c2).

The search is derandomized: the active window only changes at the 2n
breakpoints |x_i| and |x_i| e^ell, within a window the ratio of expectations
is proportional to 1/t (so the left end of each class is best), and for a
fixed t the coin flips are replaced by the pairwise-independent family
U_i = (a h_i + b) mod p, Y_i = sign(x_i) [U_i < round(p |x_i| / t)].

All magnitudes are handled as logarithms, so ell = 10/eps never overflows.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from . import exact
from .eigen import lambda_min, smallest_eigvec
from .graph import evaluate_gain, make_cut

log = logging.getLogger(__name__)

PRIME_MIN = 257
EVAL_BUDGET = 5e7
GAIN_TOL = 1e-9


def next_prime(k):
    k = max(2, int(k))
    while True:
        if all(k % d for d in range(2, int(math.isqrt(k)) + 1)):
            return k
        k += 1


# ----------------------------------------------------------- closed forms


def _logabs(x):
    ax = np.abs(np.asarray(x, dtype=np.float64))
    with np.errstate(divide="ignore"):
        return np.log(ax)


def good_rounding_expectations(x, ell, i, j):
    """(E|Y_i|, E[Y_i Y_j]) under the threshold distribution, for max|x| <= 1.

    Windows reaching past t = 1 are truncated exactly:
    E|Y_i| = 2|x_i| (min(1, |x_i| e^ell) - |x_i|) and
    E[Y_i Y_j] = 2 x_i x_j max(0, min(0, ln b + ell) - ln a).
    """
    x = np.asarray(x, dtype=np.float64)
    if not ell > 0:
        raise ValueError("ell must be positive")
    if np.abs(x).max(initial=0.0) > 1.0:
        raise ValueError("vector must satisfy max |x_k| <= 1")
    xi, xj = float(x[i]), float(x[j])
    e_abs = 0.0
    if xi != 0:
        hi = math.exp(min(0.0, math.log(abs(xi)) + ell))
        e_abs = 2.0 * abs(xi) * max(0.0, hi - abs(xi))
    if i == j:
        return e_abs, e_abs
    if xi == 0 or xj == 0:
        return e_abs, 0.0
    a, b = max(abs(xi), abs(xj)), min(abs(xi), abs(xj))
    span = max(0.0, min(0.0, math.log(b) + ell) - math.log(a))
    return e_abs, 2.0 * xi * xj * span


def pair_deviation(log_ratio, ell):
    """|c1 E[Y_i Y_j] - x_i x_j| / (x_i^2 + x_j^2) for c1 = 1/(2 ell) and no
    truncation; depends only on L = ln(a/b) >= 0."""
    L = np.asarray(log_ratio, dtype=np.float64)
    rho = np.exp(-L)
    return rho * np.minimum(L, ell) / (ell * (1.0 + rho * rho))


@dataclass(frozen=True)
class GoodRoundingReport:
    ell: float
    c1: float
    c2: float
    delta: float
    worst_pair: float
    worst_abs: float
    holds: bool


def check_good_rounding(x, ell):
    """Check both good-rounding conditions on every coordinate and pair.

    x is rescaled to max |x| = e^-ell (the conditions are homogeneous of
    degree 2, and the rescaling keeps every window below t = 1), then the
    closed forms are tested against c1 = 1/(2 ell), c2 = 2 e^ell,
    delta = 1/ell. Slacks are normalized by x_i^2 + x_j^2 (pairs) and by
    c2 x_i^2 (singletons); negative worst values are violations.
    """
    if ell <= 1:
        raise ValueError("ell must exceed 1")
    c1, delta = 1.0 / (2.0 * ell), 1.0 / ell
    c2 = 2.0 * math.exp(ell) if ell < 700 else math.inf
    lx = _logabs(x)
    lx = lx[np.isfinite(lx)]
    if not len(lx):
        return GoodRoundingReport(ell, c1, c2, delta, delta, 1.0, True)
    lx = lx - lx.max() - ell
    # E|Y_i| / (c2 x_i^2) = (min(1, |x_i| e^ell) / |x_i| - 1) e^-ell
    span = np.minimum(0.0, lx + ell) - lx
    worst_abs = float(np.min(1.0 - (np.exp(span - ell) - math.exp(-ell))))
    worst_pair = delta
    if len(lx) >= 2:
        la = np.maximum(lx[:, None], lx[None, :])
        lb = np.minimum(lx[:, None], lx[None, :])
        span = np.maximum(0.0, np.minimum(0.0, lb + ell) - la)
        rho = np.exp(lb - la)
        # |c1 E[Y_i Y_j] - x_i x_j| / (x_i^2 + x_j^2), divided through by a^2
        dev = np.abs(c1 * 2.0 * rho * span - rho) / (1.0 + rho * rho)
        np.fill_diagonal(dev, 0.0)
        worst_pair = float(delta - dev.max())
    return GoodRoundingReport(ell, c1, c2, delta, worst_pair, worst_abs,
                              worst_pair >= 0 and worst_abs >= 0)


# ------------------------------------------------------- threshold classes


def _window_stats(g, lx, sgn, lt, active):
    """Ideal ratio of expectations at threshold ln t = lt for the window
    ``active``: sum_e -2 w s_i s_j q_i q_j / sum_i d_i q_i, q_i = |x_i|/t."""
    q = np.where(active, np.exp(np.minimum(lx - lt, 0.0)), 0.0)
    num = -2.0 * float(np.dot(g.w, sgn[g.u] * sgn[g.v] * q[g.u] * q[g.v]))
    den = float(np.dot(g.deg, q))
    return num, den, q


def threshold_classes(lx, ell):
    """Candidate (ln t, active mask) pairs, one per class of equal windows.

    Breakpoints are ln|x_i| and ln|x_i| + ell; at each breakpoint b both the
    window at t = b and the window just above b are listed.
    """
    finite = np.isfinite(lx)
    bps = np.unique(np.concatenate([lx[finite], lx[finite] + ell]))
    out = []
    seen = set()
    for b in bps.tolist():
        lo = b - ell
        for mask in (finite & (lx >= lo) & (lx <= b), finite & (lx > lo) & (lx <= b)):
            if not mask.any():
                continue
            key = mask.tobytes()
            if key in seen:
                continue
            seen.add(key)
            out.append((b, mask))
    return out


def class_ratios(g, lx, sgn, ell):
    """Ideal ratio at every candidate class; list of (ratio, ln t, mask)."""
    res = []
    for lt, mask in threshold_classes(lx, ell):
        num, den, _ = _window_stats(g, lx, sgn, lt, mask)
        if den > 0:
            res.append((num / den, lt, mask))
    return res


# -------------------------------------------------- pairwise-independent Ω


@dataclass(frozen=True)
class PairwiseSpace:
    """U_i = (a h_i + b) mod p, h_i = i + 1; (a, b) ranges over Z_p^2."""

    p: int
    n: int

    def __post_init__(self):
        if self.p <= self.n:
            raise ValueError("modulus must exceed the number of vertices")

    @property
    def size(self):
        return self.p * self.p

    def values(self, a, b):
        """Rows of U for seed pairs (a[k], b[k])."""
        h = np.arange(1, self.n + 1, dtype=np.int64)
        return (np.asarray(a, dtype=np.int64)[:, None] * h + np.asarray(b, dtype=np.int64)[:, None]) % self.p

    def sample(self, r, sgn, a, b):
        """Signed vectors Y for seed pairs; Y_i = sgn_i when U_i < r_i."""
        return np.where(self.values(a, b) < r, sgn, 0).astype(np.int8)


def omega_targets(q, p):
    return np.rint(q * p).astype(np.int64)


def omega_ratio(g, sgn, r, p):
    """Exact ratio of expectations over Ω (pairwise independence)."""
    m = r / p
    num = -2.0 * float(np.dot(g.w, sgn[g.u] * sgn[g.v] * m[g.u] * m[g.v]))
    den = float(np.dot(g.deg, m))
    return num / den if den > 0 else -math.inf


@dataclass(frozen=True)
class GainRoundingParams:
    ell: float
    p: int
    seed: int = 0

    def __post_init__(self):
        if not self.ell > 1:
            raise ValueError("ell must exceed 1")


@dataclass(frozen=True)
class GainResult:
    y: np.ndarray
    gain: float
    eps_spectral: float
    lambda_n: float
    ell: float
    p: int
    log_threshold: float
    ideal_ratio: float
    omega_ratio: float
    slack: float
    c1: float
    c2_log: float
    delta_meas: float
    log_kappa: float
    kappa_sign: int
    exhaustive: bool
    points: int
    source: str

    @property
    def kappa(self):
        """Guaranteed level (eps - 2 delta) / (c1 c2); may underflow to 0."""
        if self.kappa_sign == 0:
            return 0.0
        return self.kappa_sign * math.exp(self.log_kappa)

    @property
    def bound(self):
        """Gain guaranteed when the best class was searched exhaustively."""
        return self.kappa - self.slack

    @property
    def support_size(self):
        return int(np.count_nonzero(self.y))

    @property
    def certificate(self):
        """|lambda_n| bounds the gain ratio of every signed vector from above."""
        return abs(min(self.lambda_n, 0.0))


def _edge_fallback(g):
    d = g.deg
    score = 2.0 * np.abs(g.w) / (d[g.u] + d[g.v])
    k = int(np.argmax(score))
    y = np.zeros(g.n, dtype=np.int8)
    y[g.u[k]] = 1
    y[g.v[k]] = -1 if g.w[k] > 0 else 1
    return y


def _search_space(g, sgn, r, space, rng, budget, samples):
    """Best evaluate_gain over Ω (enumerated when affordable)."""
    act = np.flatnonzero(r > 0)
    if not len(act):
        return None, -math.inf, 0, True
    cost = space.size * (g.m + len(act))
    exhaustive = samples is None and cost <= budget
    p = space.p
    if exhaustive:
        aa = np.repeat(np.arange(p), p)
        bb = np.tile(np.arange(p), p)
    else:
        k = samples if samples is not None else max(1, int(budget // max(g.m + len(act), 1)))
        k = min(k, space.size)
        flat = rng.choice(space.size, size=k, replace=False) if k < space.size else np.arange(space.size)
        flat.sort()
        aa, bb = flat // p, flat % p
    best_y, best = None, -math.inf
    chunk = max(1, int(2e6 // max(g.n, 1)))
    wu, wv, w = g.u, g.v, g.w
    for lo in range(0, len(aa), chunk):
        Y = space.sample(r, sgn, aa[lo:lo + chunk], bb[lo:lo + chunk]).astype(np.float64)
        den = np.abs(Y) @ g.deg
        num = -2.0 * ((Y[:, wu] * Y[:, wv]) @ w)
        ok = den > 0
        if not ok.any():
            continue
        ratio = np.full(len(den), -math.inf)
        ratio[ok] = num[ok] / den[ok]
        k = int(np.argmax(ratio))
        if ratio[k] > best:
            best, best_y = float(ratio[k]), Y[k].astype(np.int8)
    return best_y, best, len(aa), exhaustive


def four_threshold_spectral_cut(g, seed=0, ell=None, p_min=PRIME_MIN, max_thresholds=4,
                                budget=EVAL_BUDGET, samples=None, tol=GAIN_TOL):
    """Signed vector with positive gain -y^T A y / sum d|y| (GainResult).

    ``ell`` defaults to 10/eps. The best ``max_thresholds`` classes by exact
    Ω ratio, plus the class maximizing the ideal ratio, are searched.
    """
    if g.m == 0 or g.total_weight == 0:
        raise ValueError("graph has no edges")
    lam, _, _ = lambda_min(g)
    if lam >= -tol:
        raise ValueError("graph has no positive gain certificate")
    emb = smallest_eigvec(g, min(0.5, abs(lam) / 2.0), seed=seed)
    eps = 1.0 - emb.eps_x
    if eps <= tol:
        raise ValueError("graph has no positive gain certificate")
    ell = 10.0 / eps if ell is None else float(ell)
    params = GainRoundingParams(ell, next_prime(max(p_min, g.n + 1)), seed)
    if ell > 700:
        log.warning("ell = %.1f: window weights below 1e-300 are treated as zero", ell)

    lx = _logabs(emb.x)
    lx = lx - lx[np.isfinite(lx)].max()
    sgn = np.sign(emb.x).astype(np.float64)

    cands = class_ratios(g, lx, sgn, ell)
    space = PairwiseSpace(params.p, g.n)
    scored = []
    for k, (ideal, lt, mask) in enumerate(cands):
        q = np.where(mask, np.exp(np.minimum(lx - lt, 0.0)), 0.0)
        r = omega_targets(q, params.p)
        scored.append((omega_ratio(g, sgn, r, params.p), ideal, k, r))
    star = max(range(len(scored)), key=lambda k: (scored[k][1], -k))
    picks = sorted(range(len(scored)), key=lambda k: (-scored[k][0], k))[:max_thresholds]
    if star not in picks:
        picks.append(star)

    rng = np.random.default_rng(seed)
    best_y, best, points, star_exhaustive = None, -math.inf, 0, False
    for k in picks:
        y, val, cnt, exh = _search_space(g, sgn, scored[k][3], space, rng, budget, samples)
        points += cnt
        if k == star:
            star_exhaustive = exh
        if y is not None and val > best:
            best, best_y = val, y
    source = "sample_space"
    if best_y is None or best <= 0:
        best_y, source = _edge_fallback(g), "edge_fallback"
    best_y.flags.writeable = False

    # measured rounding constants for the explicit bound
    c1 = 1.0 / (2.0 * ell)
    c2_log = math.log(2.0) + ell + math.log1p(-math.exp(-ell))
    fin = np.isfinite(lx[g.u]) & np.isfinite(lx[g.v])
    L = np.abs(lx[g.u][fin] - lx[g.v][fin])
    delta_meas = float(pair_deviation(L, ell).max()) if len(L) else 0.0
    lead = eps - 2.0 * delta_meas
    sign = (lead > 0) - (lead < 0)
    log_kappa = (math.log(abs(lead)) - math.log(c1) - c2_log) if sign else -math.inf
    omega_star, ideal_star = scored[star][0], scored[star][1]
    slack = max(0.0, ideal_star - omega_star)
    return GainResult(best_y, evaluate_gain(g, best_y), eps, lam, ell, params.p,
                      cands[star][1], ideal_star, omega_star, slack, c1, c2_log,
                      delta_meas, log_kappa, sign, star_exhaustive, points, source)


def iterated_gain_cut(g, seed=0, tol=GAIN_TOL, **kwargs):
    """Peel off gain vectors until the residual has no gain certificate.

    Each piece is oriented to maximize the gain of its edges to vertices
    already placed; leftover vertices are placed greedily in index order.
    Returns ``(cut, gain)`` with gain = -y^T A y / sum d for the full
    +-1 vector (2 * cut_fraction - 1 for non-negative weights).
    """
    if g.m == 0 or g.total_weight == 0:
        raise ValueError("graph has no edges")
    indptr, indices, weights = g.csr
    y = np.zeros(g.n, dtype=np.int64)
    ss = np.random.SeedSequence(seed)
    cur, ids = g, np.arange(g.n)
    while cur.m and cur.total_weight > 0:
        try:
            res = four_threshold_spectral_cut(
                cur, seed=int(ss.spawn(1)[0].generate_state(1)[0]), tol=tol, **kwargs)
        except ValueError:
            break
        part = np.flatnonzero(res.y)
        verts = ids[part]
        vals = res.y[part].astype(np.int64)
        link = 0.0
        for v, s in zip(verts.tolist(), vals.tolist()):
            nb = indices[indptr[v]:indptr[v + 1]]
            link -= s * float(np.dot(weights[indptr[v]:indptr[v + 1]], y[nb]))
        y[verts] = vals if link >= 0 else -vals
        cur, kept = cur.induced(res.y == 0)
        ids = ids[kept]
    for v in np.flatnonzero(y == 0).tolist():
        nb = indices[indptr[v]:indptr[v + 1]]
        pull = float(np.dot(weights[indptr[v]:indptr[v + 1]], y[nb]))
        y[v] = -1 if pull > 0 else 1
    side = (y > 0).astype(np.int8)
    return make_cut(g, side), evaluate_gain(g, y.astype(np.int8))


def gamma_exact(g, backend=None):
    """max over nonzero y in {-1,0,1}^V of -y^T A y / sum d|y| (n <= 18)."""
    return exact.gamma_witness(g, backend=backend)[0]
