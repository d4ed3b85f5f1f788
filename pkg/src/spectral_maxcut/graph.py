"""Weighted undirected graphs, cut and gain evaluation, DIMACS-style I/O."""
from __future__ import annotations

import io
import math
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from . import kernels


class GraphFormatError(ValueError):
    """Malformed graph file. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


class WeightedGraph:
    """Immutable undirected graph stored as an edge list.

    Each undirected edge is stored once; parallel edges are kept. ``deg[i]`` is
    the sum of ``|w|`` over edges incident on ``i`` and ``total_weight`` is
    ``sum(deg) / 2``. Negative weights are only accepted with
    ``allow_negative=True`` (gain mode).
    """

    def __init__(self, n, u, v, w=None, *, allow_negative=False):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        u = np.array(u, dtype=np.int64).ravel()
        v = np.array(v, dtype=np.int64).ravel()
        if u.shape != v.shape:
            raise ValueError("endpoint arrays differ in length")
        w = np.ones(len(u)) if w is None else np.array(w, dtype=np.float64).ravel()
        if w.shape != u.shape:
            raise ValueError("weight array length differs from edge count")
        if len(u) and (min(u.min(), v.min()) < 0 or max(u.max(), v.max()) >= n):
            raise ValueError("edge endpoint out of range")
        loops = np.flatnonzero(u == v)
        if len(loops):
            raise ValueError(f"self-loop at edge {int(loops[0])}")
        if not np.all(np.isfinite(w)):
            raise ValueError("non-finite edge weight")
        if not allow_negative and (w < 0).any():
            raise ValueError("negative edge weight in max-cut mode")
        for a in (u, v, w):
            a.flags.writeable = False
        self.n = n
        self.u, self.v, self.w = u, v, w
        self.deg = kernels.weighted_degrees(n, u, v, w)
        self.deg.flags.writeable = False
        self.total_weight = math.fsum(np.abs(w).tolist())
        self.signed = bool((w < 0).any())

    @classmethod
    def from_edges(cls, n, edges, *, allow_negative=False):
        """Build from an iterable of ``(i, j)`` or ``(i, j, w)`` tuples (0-based)."""
        edges = list(edges)
        u = [e[0] for e in edges]
        v = [e[1] for e in edges]
        w = [e[2] if len(e) > 2 else 1.0 for e in edges]
        return cls(n, u, v, w, allow_negative=allow_negative)

    @property
    def m(self):
        return len(self.u)

    def edges(self):
        for a, b, x in zip(self.u.tolist(), self.v.tolist(), self.w.tolist()):
            yield a, b, x

    @cached_property
    def csr(self):
        """Symmetric CSR arrays ``(indptr, indices, weights)``; parallel edges kept."""
        rows = np.concatenate([self.u, self.v])
        cols = np.concatenate([self.v, self.u])
        wts = np.concatenate([self.w, self.w])
        order = np.lexsort((cols, rows))
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=self.n), out=indptr[1:])
        indices = np.ascontiguousarray(cols[order])
        weights = np.ascontiguousarray(wts[order])
        for a in (indptr, indices, weights):
            a.flags.writeable = False
        return indptr, indices, weights

    def adjacency(self):
        """Sparse symmetric weight matrix A (parallel edges summed)."""
        indptr, indices, weights = self.csr
        a = sp.csr_matrix((weights.copy(), indices.copy(), indptr.copy()), shape=(self.n, self.n))
        a.sum_duplicates()
        return a

    def normalized_adjacency(self):
        """D^{-1/2} A D^{-1/2}, with zero rows/columns for isolated vertices."""
        s = np.zeros(self.n)
        pos = self.deg > 0
        s[pos] = 1.0 / np.sqrt(self.deg[pos])
        dm = sp.diags(s)
        return (dm @ self.adjacency() @ dm).tocsr()

    def induced(self, vertices):
        """Induced subgraph on ``vertices`` (mask or index array).

        Returns ``(subgraph, kept)`` where ``kept[k]`` is the parent id of the
        subgraph's vertex ``k``.
        """
        vertices = np.asarray(vertices)
        if vertices.dtype == bool:
            kept = np.flatnonzero(vertices)
        else:
            kept = np.unique(vertices.astype(np.int64))
        relabel = np.full(self.n, -1, dtype=np.int64)
        relabel[kept] = np.arange(len(kept))
        a, b = relabel[self.u], relabel[self.v]
        inside = (a >= 0) & (b >= 0)
        sub = WeightedGraph(len(kept), a[inside], b[inside], self.w[inside],
                            allow_negative=self.signed)
        return sub, kept

    def coalesce(self):
        """Merge parallel edges into one edge carrying the summed weight."""
        lo = np.minimum(self.u, self.v)
        hi = np.maximum(self.u, self.v)
        key = lo * max(self.n, 1) + hi
        uniq, inv = np.unique(key, return_inverse=True)
        w = np.bincount(inv, weights=self.w, minlength=len(uniq))
        return WeightedGraph(self.n, uniq // max(self.n, 1), uniq % max(self.n, 1), w,
                             allow_negative=self.signed)

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m}, total_weight={self.total_weight:g})"


def as_signed_vector(y, n=None):
    """Validate and return ``y`` as an int8 array with entries in {-1, 0, 1}."""
    arr = np.asarray(y)
    if n is not None and arr.shape != (n,):
        raise ValueError(f"expected a vector of length {n}, got shape {arr.shape}")
    if not np.isin(arr, (-1, 0, 1)).all():
        raise ValueError("signed vector entries must be -1, 0 or 1")
    return arr.astype(np.int8)


@dataclass(frozen=True)
class PartitionStats:
    """Edge accounting of a signed vector y against a graph.

    M: weight incident on the support S; U: uncut weight inside S; C: cut
    weight inside S; X: weight with exactly one endpoint in S. ``numerator``
    is sum over ordered pairs of A_ij |y_i + y_j|, ``denominator`` is
    sum_i d_i |y_i|.
    """

    M: float
    U: float
    C: float
    X: float
    numerator: float
    denominator: float

    @property
    def ratio(self):
        if self.denominator == 0:
            return math.inf
        return self.numerator / self.denominator


@dataclass(frozen=True)
class Cut:
    side: np.ndarray
    cut_weight: float
    cut_fraction: float


def _fsum(a):
    return math.fsum(np.asarray(a, dtype=np.float64).tolist())


def evaluate_cut(g, cut):
    """Return ``(cut_weight, cut_fraction)`` for a side assignment or a Cut."""
    side = cut.side if isinstance(cut, Cut) else np.asarray(cut)
    if side.shape != (g.n,):
        raise ValueError(f"side vector must have length {g.n}")
    crossing = side[g.u] != side[g.v]
    weight = _fsum(g.w[crossing])
    frac = weight / g.total_weight if g.total_weight > 0 else 0.0
    return weight, frac


def make_cut(g, side):
    side = np.asarray(side, dtype=np.int8).copy()
    if not np.isin(side, (0, 1)).all():
        raise ValueError("cut sides must be 0 or 1")
    side.flags.writeable = False
    weight, frac = evaluate_cut(g, side)
    return Cut(side, weight, frac)


def partition_stats(g, y):
    y = as_signed_vector(y, g.n)
    a = y[g.u].astype(np.int64)
    b = y[g.v].astype(np.int64)
    ina, inb = a != 0, b != 0
    both = ina & inb
    U = _fsum(g.w[both & (a == b)])
    C = _fsum(g.w[both & (a != b)])
    X = _fsum(g.w[ina ^ inb])
    M = _fsum(g.w[ina | inb])
    numerator = 2.0 * _fsum(g.w * np.abs(a + b))
    denominator = _fsum(g.deg * np.abs(y))
    return PartitionStats(M, U, C, X, numerator, denominator)


def evaluate_gain(g, y):
    """Gain ratio -y^T A y / sum_i d_i |y_i| of a signed vector."""
    y = as_signed_vector(y, g.n)
    den = _fsum(g.deg * np.abs(y))
    if den == 0:
        raise ValueError("zero denominator: signed vector has empty support")
    num = -2.0 * _fsum(g.w * y[g.u] * y[g.v])
    return num / den


def greedy_cut(g, order=None):
    """Greedy placement plus single-vertex local search.

    With non-negative weights the result cuts at least half the total weight,
    since every vertex ends with at least half its incident weight cut.
    """
    order = np.arange(g.n, dtype=np.int64) if order is None else np.asarray(order, dtype=np.int64)
    indptr, indices, weights = g.csr
    tol = 1e-12 * max(g.total_weight, 1.0)
    side = kernels.greedy(g.n, indptr, indices, weights, order, tol)
    return make_cut(g, side)


# ---------------------------------------------------------------- file I/O


def _open_text(source):
    if isinstance(source, (str, os.PathLike)):
        return open(source, "r", encoding="utf-8"), True
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(bytes(source).decode("utf-8")), True
    if isinstance(source, io.TextIOBase):
        return source, False
    return io.TextIOWrapper(source, encoding="utf-8"), False


def _parse_weight(tok, lineno, allow_negative):
    try:
        w = float(tok)
    except ValueError:
        raise GraphFormatError(f"bad weight {tok!r}", lineno) from None
    if not math.isfinite(w):
        raise GraphFormatError("non-finite weight", lineno)
    if w < 0 and not allow_negative:
        raise GraphFormatError("negative weight in max-cut mode", lineno)
    return w


def _parse_vertex(tok, n, lineno):
    try:
        i = int(tok)
    except ValueError:
        raise GraphFormatError(f"bad vertex id {tok!r}", lineno) from None
    if n is not None and not 1 <= i <= n:
        raise GraphFormatError(f"vertex {i} out of range 1..{n}", lineno)
    if i < 1:
        raise GraphFormatError(f"vertex {i} out of range", lineno)
    return i - 1


def load_graph(source, format="dimacs", mode="maxcut"):
    """Parse a graph from a path, bytes, or a text/binary stream.

    ``format`` is ``"dimacs"`` (``p edge n m`` header, ``e i j [w]`` lines,
    ``c`` comments) or ``"edge_list"`` (``i j [w]`` lines, ``#`` comments, n is
    the largest id). ``mode="gain"`` accepts negative weights. Vertex ids in
    files are 1-based. Duplicate edge lines become parallel edges.
    """
    if mode not in ("maxcut", "gain"):
        raise ValueError(f"unknown mode {mode!r}")
    if format not in ("dimacs", "edge_list"):
        raise ValueError(f"unknown format {format!r}")
    allow_neg = mode == "gain"
    fh, close = _open_text(source)
    try:
        lines = fh.read().splitlines()
    finally:
        if close:
            fh.close()

    us, vs, ws = [], [], []
    n = declared_m = None
    for lineno, raw in enumerate(lines, 1):
        toks = raw.split()
        if not toks:
            continue
        if format == "dimacs":
            tag = toks[0]
            if tag == "c":
                continue
            if tag == "p":
                if n is not None:
                    raise GraphFormatError("duplicate header", lineno)
                if len(toks) != 4:
                    raise GraphFormatError("header must be 'p edge n m'", lineno)
                try:
                    n, declared_m = int(toks[2]), int(toks[3])
                except ValueError:
                    raise GraphFormatError("non-integer header field", lineno) from None
                if n < 0 or declared_m < 0:
                    raise GraphFormatError("negative header field", lineno)
                continue
            if tag != "e":
                raise GraphFormatError(f"unknown line type {tag!r}", lineno)
            if n is None:
                raise GraphFormatError("edge before 'p' header", lineno)
            if len(toks) not in (3, 4):
                raise GraphFormatError("edge line must be 'e i j [w]'", lineno)
            body = toks[1:]
        else:
            if toks[0].startswith("#"):
                continue
            if len(toks) not in (2, 3):
                raise GraphFormatError("edge line must be 'i j [w]'", lineno)
            body = toks
        i = _parse_vertex(body[0], n, lineno)
        j = _parse_vertex(body[1], n, lineno)
        if i == j:
            raise GraphFormatError("self-loop", lineno)
        w = _parse_weight(body[2], lineno, allow_neg) if len(body) == 3 else 1.0
        us.append(i)
        vs.append(j)
        ws.append(w)

    if format == "dimacs":
        if n is None:
            raise GraphFormatError("missing 'p edge n m' header")
        if declared_m != len(us):
            raise GraphFormatError(f"header declares {declared_m} edges but {len(us)} were read")
    else:
        n = max(max(us, default=-1), max(vs, default=-1)) + 1
    return WeightedGraph(n, us, vs, ws, allow_negative=allow_neg)


def format_weight(w):
    if float(w).is_integer() and abs(w) < 2**53:
        return str(int(w))
    return repr(float(w))


def write_graph(g, stream, format="dimacs", comment=None):
    """Write ``g`` in the DIMACS-like or edge-list text format (1-based ids)."""
    out = []
    if format == "dimacs":
        if comment:
            out.extend(f"c {line}" for line in comment.splitlines())
        out.append(f"p edge {g.n} {g.m}")
        prefix = "e "
    elif format == "edge_list":
        if comment:
            out.extend(f"# {line}" for line in comment.splitlines())
        prefix = ""
    else:
        raise ValueError(f"unknown format {format!r}")
    for a, b, w in g.edges():
        tail = "" if w == 1.0 else " " + format_weight(w)
        out.append(f"{prefix}{a + 1} {b + 1}{tail}")
    stream.write("\n".join(out) + "\n")
