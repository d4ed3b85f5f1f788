"""Reduction of a weighted graph to a bounded-degree unweighted multigraph.

Vertex v gets c_v copies, c_v its number of incident edges. The implicit
graph G^ joins every copy of u to every copy of v with weight
w_uv / (c_u c_v); G' is a sample of its edges drawn by picking an edge of G
proportionally to weight, then one copy of each endpoint uniformly. G^ is
never built. Any cut of G' is mapped back by letting each vertex follow the
fraction of its copies on side 1, derandomized by conditional expectations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Cut, WeightedGraph, make_cut
from .sparsify import draw_edges, edge_sampler


def sample_count_for(nprime, delta):
    return math.ceil(16.0 * nprime * math.log(nprime + 1) / delta**2)


@dataclass(frozen=True)
class ReductionArtifact:
    gprime: WeightedGraph
    offsets: np.ndarray
    sample_count: int
    seed: int
    delta: float

    @property
    def counts(self):
        return np.diff(self.offsets)

    def copy_range(self, v):
        return range(int(self.offsets[v]), int(self.offsets[v + 1]))

    def owner(self):
        """owner()[k] is the original vertex of copy k."""
        return np.repeat(np.arange(len(self.offsets) - 1), self.counts)

    def copy_map(self):
        return {"schema": 1, "n": len(self.offsets) - 1,
                "offsets": self.offsets.tolist(), "sample_count": self.sample_count,
                "seed": self.seed, "delta": self.delta}

    @classmethod
    def from_copy_map(cls, data, gprime):
        offsets = np.asarray(data["offsets"], dtype=np.int64)
        if offsets[-1] != gprime.n:
            raise ValueError("copy map does not match the reduced graph")
        return cls(gprime, offsets, int(data["sample_count"]), int(data["seed"]),
                   float(data["delta"]))


def reduce(g, delta, seed=0):
    if g.signed:
        raise ValueError("reduction requires non-negative weights")
    if g.m == 0 or g.total_weight == 0:
        raise ValueError("graph has no edges")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    counts = np.bincount(g.u, minlength=g.n) + np.bincount(g.v, minlength=g.n)
    offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    nprime = int(offsets[-1])
    s = sample_count_for(nprime, delta)
    rng = np.random.default_rng(seed)
    idx = draw_edges(edge_sampler(g), s, rng)
    a, b = g.u[idx], g.v[idx]
    ca = offsets[a] + np.minimum((rng.random(s) * counts[a]).astype(np.int64), counts[a] - 1)
    cb = offsets[b] + np.minimum((rng.random(s) * counts[b]).astype(np.int64), counts[b] - 1)
    return ReductionArtifact(WeightedGraph(nprime, ca, cb), offsets, s, int(seed), float(delta))


def copy_fractions(artifact, cut_prime):
    """Fraction of each vertex's copies on side 1 (1/2 for vertices without copies)."""
    side = cut_prime.side if isinstance(cut_prime, Cut) else np.asarray(cut_prime)
    if side.shape != (artifact.gprime.n,):
        raise ValueError("cut does not match the reduced graph")
    counts = artifact.counts
    on = np.add.reduceat(np.append(side.astype(np.float64), 0.0), artifact.offsets[:-1])
    p = np.full(len(counts), 0.5)
    has = counts > 0
    p[has] = on[has] / counts[has]
    return p


def expected_cut_weight(g, p):
    """E[w(cut)] when vertex i joins side 1 independently with probability p_i."""
    pu, pv = p[g.u], p[g.v]
    return math.fsum((g.w * (pu + pv - 2.0 * pu * pv)).tolist())


def lift_order(g):
    return np.lexsort((np.arange(g.n), -np.asarray(g.deg))).astype(np.int64)


def lift_cut(artifact, g, cut_prime):
    """Deterministic cut of ``g`` whose weight is at least expected_cut_weight
    under the copy fractions of ``cut_prime``."""
    if len(artifact.offsets) != g.n + 1:
        raise ValueError("artifact does not match the graph")
    p = copy_fractions(artifact, cut_prime)
    indptr, indices, weights = g.csr
    side = kernels.lift(indptr, indices, weights, lift_order(g), p)
    return make_cut(g, side)
