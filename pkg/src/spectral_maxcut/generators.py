"""Graph families used by tests, benchmarks and the CLI corpus tools."""
import itertools

import numpy as np

from .graph import WeightedGraph


def cycle(n):
    return WeightedGraph(n, np.arange(n), (np.arange(n) + 1) % n)


def path(n):
    return WeightedGraph(n, np.arange(n - 1), np.arange(1, n))


def complete(n):
    u, v = np.triu_indices(n, 1)
    return WeightedGraph(n, u, v)


def complete_bipartite(a, b):
    u, v = np.meshgrid(np.arange(a), a + np.arange(b), indexing="ij")
    return WeightedGraph(a + b, u.ravel(), v.ravel())


def star(k):
    return WeightedGraph(k + 1, np.zeros(k, dtype=int), np.arange(1, k + 1))


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return WeightedGraph.from_edges(10, outer + spokes + inner)


def _weights(rng, m, weights):
    if weights is None:
        return np.ones(m)
    if weights == "int":
        return rng.integers(1, 6, m).astype(float)
    if weights == "real":
        return rng.uniform(0.1, 3.0, m)
    if weights == "signed":
        return rng.choice([-1.0, 1.0], m) * rng.integers(1, 4, m)
    raise ValueError(f"unknown weight kind {weights!r}")


def random_graph(n, p, seed=0, weights=None, connected=False):
    """G(n, p) with optional weights; retries until it has an edge
    (and is connected, if requested)."""
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    for _ in range(1000):
        keep = rng.random(len(iu)) < p
        if not keep.any():
            continue
        u, v = iu[keep], ju[keep]
        if connected and not _is_connected(n, u, v):
            continue
        w = _weights(rng, len(u), weights)
        return WeightedGraph(n, u, v, w, allow_negative=weights == "signed")
    raise RuntimeError("could not sample a graph with the requested properties")


def random_multigraph(n, m, seed=0):
    """m edges with endpoints drawn uniformly (parallel edges allowed)."""
    rng = np.random.default_rng(seed)
    u = rng.integers(0, n, m)
    v = rng.integers(0, n - 1, m)
    v = v + (v >= u)
    return WeightedGraph(n, u, v)


def _is_connected(n, u, v):
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in zip(u.tolist(), v.tolist()):
        parent[find(a)] = find(b)
    return len({find(a) for a in range(n)}) == 1


def planted_bipartite(n_left, n_right, m_cross, m_noise, seed=0):
    """Random bipartite graph plus noise edges inside the two parts.

    Returns ``(graph, eps)`` where the planted bipartition cuts a 1 - eps
    fraction of the edges, so the max-cut optimum is at least 1 - eps.
    """
    rng = np.random.default_rng(seed)
    n = n_left + n_right
    cross = set()
    while len(cross) < m_cross:
        cross.add((int(rng.integers(n_left)), int(n_left + rng.integers(n_right))))
    noise = set()
    while len(noise) < m_noise:
        if rng.random() < n_left / n:
            a, b = rng.choice(n_left, 2, replace=False)
        else:
            a, b = n_left + rng.choice(n_right, 2, replace=False)
        noise.add((int(min(a, b)), int(max(a, b))))
    edges = sorted(cross) + sorted(noise)
    perm = rng.permutation(n)
    u = perm[[e[0] for e in edges]]
    v = perm[[e[1] for e in edges]]
    return WeightedGraph(n, u, v), m_noise / (m_cross + m_noise)


def planted_gain(n, m, seed=0):
    """Half the edges random, half crossing a hidden bipartition.

    The hidden cut has expected gain about 1/2.
    """
    rng = np.random.default_rng(seed)
    side = rng.integers(0, 2, n)
    left, right = np.flatnonzero(side == 0), np.flatnonzero(side == 1)
    if len(left) == 0 or len(right) == 0:
        left, right = np.arange(n // 2), np.arange(n // 2, n)
    h = m // 2
    cu, cv = rng.choice(left, h), rng.choice(right, h)
    ru = rng.integers(0, n, m - h)
    rv = rng.integers(0, n - 1, m - h)
    rv = rv + (rv >= ru)
    return WeightedGraph(n, np.concatenate([cu, ru]), np.concatenate([cv, rv]))


def from_graph6(line):
    """Decode one graph6 string (n <= 62)."""
    data = [ord(c) - 63 for c in line.strip()]
    n = data[0]
    if n > 62:
        raise ValueError("only graph6 with n <= 62 is supported")
    bits = []
    for d in data[1:]:
        bits.extend((d >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return WeightedGraph.from_edges(n, edges)


def to_graph6(g):
    if g.n > 62:
        raise ValueError("only graph6 with n <= 62 is supported")
    adj = set(zip(np.minimum(g.u, g.v).tolist(), np.maximum(g.u, g.v).tolist()))
    bits = [1 if (i, j) in adj else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chars = [chr(g.n + 63)]
    for k in range(0, len(bits), 6):
        chars.append(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)))
    return "".join(chars)


def all_graphs(n):
    """Every labelled simple graph on n vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield WeightedGraph.from_edges(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
