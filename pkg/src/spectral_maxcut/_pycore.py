"""Pure-Python/numpy implementations of the hot kernels.

Mirrors the API of the compiled ``_core`` extension one-to-one. Every
function takes the symmetric CSR arrays of a graph (each undirected edge
stored in both directions, parallel edges kept as separate entries).
"""
import numpy as np

_CHUNK = 1 << 15


def weighted_degrees(n, u, v, w):
    """Per-vertex sum of |w| with Neumaier compensation."""
    s = [0.0] * n
    c = [0.0] * n
    for a, b, x in zip(u.tolist(), v.tolist(), np.abs(w).tolist()):
        for i in (a, b):
            t = s[i] + x
            if abs(s[i]) >= x:
                c[i] += (s[i] - t) + x
            else:
                c[i] += (x - t) + s[i]
            s[i] = t
    return np.array([a + b for a, b in zip(s, c)], dtype=np.float64)


def sweep(indptr, indices, weights, order, signs, absx, deg):
    """Incremental two-threshold sweep.

    Returns ``(pos, num, den)`` for the ratio-minimizing candidate, where
    ``num`` is the unordered sum of w*|y_i + y_j| and ``den`` is sum d_i|y_i|.
    ``pos == -1`` is the zero-threshold candidate ``y = signs``; otherwise the
    candidate zeroes ``order[:pos + 1]``. ``pos == -2`` means no candidate had
    a positive denominator.
    """
    ip = indptr.tolist()
    nb = indices.tolist()
    wt = weights.tolist()
    y = signs.tolist()
    d = deg.tolist()
    ax = absx.tolist()
    od = order.tolist()
    n = len(y)

    num = 0.0
    for i in range(n):
        yi = y[i]
        for k in range(ip[i], ip[i + 1]):
            j = nb[k]
            if j > i:
                num += wt[k] * abs(yi + y[j])
    den = 0.0
    act = 0
    for i in range(n):
        if y[i]:
            den += d[i]
            act += d[i] > 0

    best_pos, best_num, best_den = -2, 0.0, 0.0
    if act:
        best_pos, best_num, best_den = -1, num, den

    for pos in range(n):
        i = od[pos]
        yi = y[i]
        if yi:
            for k in range(ip[i], ip[i + 1]):
                yj = y[nb[k]]
                num += wt[k] * (abs(yj) - abs(yi + yj))
            den -= d[i]
            act -= d[i] > 0
            y[i] = 0
        if pos + 1 < n and ax[pos + 1] == ax[pos]:
            continue
        if act and (best_pos == -2 or num * best_den < best_num * den):
            best_pos, best_num, best_den = pos, num, den
    return best_pos, best_num, best_den


def greedy(n, indptr, indices, weights, order, tol):
    """Greedy placement followed by single-vertex flips until none gains > tol."""
    ip = indptr.tolist()
    nb = indices.tolist()
    wt = weights.tolist()
    side = [-1] * n
    for i in order.tolist():
        a0 = a1 = 0.0
        for k in range(ip[i], ip[i + 1]):
            s = side[nb[k]]
            if s == 0:
                a0 += wt[k]
            elif s == 1:
                a1 += wt[k]
        side[i] = 1 if a0 > a1 else 0

    improved = True
    while improved:
        improved = False
        for i in order.tolist():
            g = 0.0
            si = side[i]
            for k in range(ip[i], ip[i + 1]):
                g += wt[k] if side[nb[k]] == si else -wt[k]
            if g > tol:
                side[i] = 1 - si
                improved = True
    return np.array(side, dtype=np.int8)


def lift(indptr, indices, weights, order, p):
    """Method of conditional expectations over independent sides P(side=1)=p.

    Vertices with p in {0, 1} are already fixed and are left alone.
    """
    ip = indptr.tolist()
    nb = indices.tolist()
    wt = weights.tolist()
    q = p.astype(np.float64).tolist()
    for v in order.tolist():
        if q[v] == 0.0 or q[v] == 1.0:
            continue
        s = t = 0.0
        for k in range(ip[v], ip[v + 1]):
            s += wt[k] * q[nb[k]]
            t += wt[k]
        e1, e0 = t - s, s
        if e1 > e0:
            q[v] = 1.0
        elif e0 > e1:
            q[v] = 0.0
        else:
            q[v] = 1.0 if q[v] >= 0.5 else 0.0
    return np.array(q, dtype=np.int8)


def _edge_arrays(indptr, indices, weights):
    rows = np.repeat(np.arange(len(indptr) - 1), np.diff(indptr))
    keep = rows < indices
    return rows[keep], indices[keep], weights[keep]


def maxcut_enum(n, indptr, indices, weights):
    """Exhaustive max cut; the last vertex is pinned to side 0."""
    if n <= 1:
        return 0.0, np.zeros(n, dtype=np.int8)
    u, v, w = _edge_arrays(indptr, indices, weights)
    total = 1 << (n - 1)
    shifts = np.arange(n - 1, dtype=np.int64)
    best, best_mask = -np.inf, 0
    for lo in range(0, total, _CHUNK):
        masks = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        side = np.zeros((len(masks), n), dtype=np.int8)
        side[:, : n - 1] = (masks[:, None] >> shifts) & 1
        cut = (side[:, u] != side[:, v]) @ w
        k = int(np.argmax(cut))
        if cut[k] > best:
            best, best_mask = float(cut[k]), int(masks[k])
    side = np.zeros(n, dtype=np.int8)
    side[: n - 1] = (best_mask >> shifts) & 1
    return best, side


def ternary_enum(n, indptr, indices, weights, deg, mode):
    """Exhaustive search over y in {-1,0,1}^n, y != 0.

    mode 0 minimizes sum_e w|y_i+y_j| / sum d|y|; mode 1 maximizes
    -2 sum_e w y_i y_j / sum d|y|. Returns ``(num, den, y)``.
    """
    u, v, w = _edge_arrays(indptr, indices, weights)
    total = 3 ** n
    pw = 3 ** np.arange(n, dtype=np.int64)
    best = None
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        y = ((idx[:, None] // pw) % 3 - 1).astype(np.int8)
        den = np.abs(y) @ deg
        if mode == 0:
            num = np.abs(y[:, u] + y[:, v]) @ w
        else:
            num = -2.0 * ((y[:, u] * y[:, v]) @ w)
        ok = den > 0
        if not ok.any():
            continue
        r = np.full(len(idx), np.inf if mode == 0 else -np.inf)
        r[ok] = num[ok] / den[ok]
        k = int(np.argmin(r) if mode == 0 else np.argmax(r))
        if best is None or (r[k] < best[0] if mode == 0 else r[k] > best[0]):
            best = (r[k], float(num[k]), float(den[k]), y[k].copy())
    if best is None:
        return 0.0, 0.0, np.zeros(n, dtype=np.int8)
    return best[1], best[2], best[3]
