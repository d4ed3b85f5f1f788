"""Cut sparsification by weight-proportional edge sampling.

Drawing s = ceil(oversample * n / delta^2) edges with replacement, each with
probability w_e / W, gives an unweighted multigraph whose every cut fraction
is within delta of the original's with high probability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import WeightedGraph


@dataclass(frozen=True)
class SparsifyParams:
    delta: float
    oversample: float = 16.0
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.delta <= 1:
            raise ValueError("delta must lie in (0, 1]")
        if self.oversample <= 0:
            raise ValueError("oversample must be positive")

    def sample_count(self, n):
        return math.ceil(self.oversample * n / self.delta**2)


def edge_sampler(g):
    """Cumulative weight table for O(log m) weight-proportional draws."""
    cum = np.cumsum(g.w)
    return cum


def draw_edges(cum, s, rng):
    r = rng.random(s) * cum[-1]
    idx = np.searchsorted(cum, r, side="right")
    return np.minimum(idx, len(cum) - 1)


def sparsify(g, params):
    """Return the sampled multigraph (unit weights, same vertex set)."""
    if g.signed:
        raise ValueError("sparsification requires non-negative weights")
    if g.m == 0 or g.total_weight == 0:
        raise ValueError("graph has no edges")
    rng = np.random.default_rng(params.seed)
    idx = draw_edges(edge_sampler(g), params.sample_count(g.n), rng)
    return WeightedGraph(g.n, g.u[idx], g.v[idx])
