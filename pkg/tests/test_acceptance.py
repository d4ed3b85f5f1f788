"""Acceptance criteria, one test per criterion, each run at its stated
tolerance. Every test records a ``CRITERION k: PASS/FAIL`` line, printed
at the end of the pytest run."""
import math
import time

import numpy as np
import pytest
from scipy import integrate

from spectral_maxcut import cli
from spectral_maxcut import generators as G
from spectral_maxcut.bipartite import beta_exact, spectral_partition, two_threshold_sweep
from spectral_maxcut.certificates import (
    APPROX_RATIO,
    best_certificate,
    certify_upper_bound,
    primal_dual_report,
)
from spectral_maxcut.exact import maxcut_exact
from spectral_maxcut.gain import (
    PairwiseSpace,
    check_good_rounding,
    four_threshold_spectral_cut,
    gamma_exact,
    good_rounding_expectations,
    next_prime,
    omega_targets,
)
from spectral_maxcut.graph import WeightedGraph, write_graph
from spectral_maxcut.maxcut import recursive_spectral_cut
from spectral_maxcut.reduce import copy_fractions, expected_cut_weight, lift_cut, reduce
from spectral_maxcut.sparsify import SparsifyParams, sparsify

from conftest import ACCEPTANCE_LINES, dense_lambda_min, load_corpus

pytestmark = pytest.mark.acceptance


def record(k, ok, detail):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


# ---------------------------------------------------------------- 1


def test_criterion_01_sweep_contract():
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    bad = 0
    worst = -math.inf
    for k in range(1000):
        n = int(rng.integers(2, 101))
        kind = (None, "int", "real")[k % 3]
        g = G.random_graph(n, float(rng.uniform(0.02, 0.6)), seed=int(rng.integers(2**32)),
                           weights=kind)
        if g.m == 0:
            g = WeightedGraph(n, [0], [1])
        x = rng.standard_normal(n)
        if k % 4 == 0:
            x[rng.random(n) < 0.3] = 0.0
            x[0] = 1.0
        r = two_threshold_sweep(g, x)
        worst = max(worst, r.ratio - r.bound)
        if r.ratio > r.bound * (1 + 1e-9):
            bad += 1
    dt = time.perf_counter() - t0
    record(1, bad == 0 and dt < 10,
           f"1000 pairs, violations={bad}, max(ratio-bound)={worst:.3g}, {dt:.1f}s (<10s)")


# ---------------------------------------------------------------- 2


def test_criterion_02_beta_sandwich():
    t0 = time.perf_counter()
    corpus = load_corpus(8)
    bad = 0
    for g in corpus:
        rep = beta_exact(g)
        gap = max(0.0, 1 - abs(rep.lambda_n))
        lo, hi = 0.5 * gap, math.sqrt(2 * gap)
        if not lo - 1e-7 <= rep.beta <= hi + 1e-7:
            bad += 1
    dt = time.perf_counter() - t0
    record(2, bad == 0 and dt < 300,
           f"{len(corpus)} connected graphs n<=8, violations={bad}, {dt:.1f}s (<300s)")


# ---------------------------------------------------------------- 3


def _c3_instances():
    for g in load_corpus(8):
        yield g
    rng = np.random.default_rng(3)
    for k in range(500):
        n = int(rng.integers(2, 15))
        g = G.random_graph(n, float(rng.uniform(0.2, 0.9)), seed=k,
                           weights=("int", "real")[k % 2])
        if g.m:
            yield g


def test_criterion_03_approximation_ratio():
    delta = 0.01
    t0 = time.perf_counter()
    bad = count = 0
    worst = math.inf
    for g in _c3_instances():
        cut, _ = recursive_spectral_cut(g, delta, seed=42)
        opt = maxcut_exact(g).cut_weight
        worst = min(worst, cut.cut_weight / opt)
        count += 1
        if cut.cut_weight < (APPROX_RATIO - delta) * opt - 1e-9:
            bad += 1
    dt = time.perf_counter() - t0
    record(3, bad == 0 and dt < 600,
           f"{count} instances, violations={bad}, min ratio={worst:.4f}, {dt:.1f}s (<600s)")


def test_criterion_03_scaling_smoke():
    sizes = [125_000, 250_000, 500_000, 1_000_000]
    times = []
    t0 = time.perf_counter()
    for m in sizes:
        g = G.random_multigraph(m // 10, m, seed=m)
        s = time.perf_counter()
        spectral_partition(g, 0.05, seed=0)
        times.append(time.perf_counter() - s)
    total = time.perf_counter() - t0
    slope = float(np.polyfit(np.log(sizes), np.log(times), 1)[0])
    record(3, slope < 2 and total < 60,
           f"scaling smoke: per-iteration times {[round(t, 2) for t in times]}s, "
           f"log-log slope={slope:.2f} (<2), total {total:.1f}s (<60s)")


# ---------------------------------------------------------------- 4


def test_criterion_04_planted():
    delta = 0.05
    bad = 0
    worst = math.inf
    k = 0
    m = 2000
    for eps_target, reps in ((0.001, 17), (0.01, 17), (0.04, 16)):
        for _ in range(reps):
            g, eps = G.planted_bipartite(100, 100, m - round(eps_target * m),
                                         round(eps_target * m), seed=k)
            k += 1
            cut, _ = recursive_spectral_cut(g, delta, seed=k)
            target = 1 - 4 * math.sqrt(eps) + 8 * eps - delta / 2
            worst = min(worst, cut.cut_fraction - target)
            if cut.cut_fraction < target:
                bad += 1
    record(4, bad == 0, f"{k} planted instances, violations={bad}, "
           f"min(cut - bound)={worst:.4f}")


# ---------------------------------------------------------------- 5


def test_criterion_05_certificates():
    corpus = load_corpus(8)
    unsound = eps_err = weak = 0
    max_dev = 0.0
    for idx, g in enumerate(corpus):
        opt = maxcut_exact(g).cut_fraction
        lam = dense_lambda_min(g)
        best = best_certificate(g)
        dev = abs(best.eps - (1 - abs(min(lam, 0.0))) / 2)
        max_dev = max(max_dev, dev)
        eps_err += dev > 1e-7
        for eps in (best.eps, min(0.5, best.eps + 0.05), 0.25 * (idx % 3)):
            cert = certify_upper_bound(g, eps)
            if cert.feasible and opt > 1 - eps + 1e-9:
                unsound += 1
        _, trace = recursive_spectral_cut(g, 0.05, seed=42)
        rep = primal_dual_report(trace, g)
        if rep.ratio < APPROX_RATIO - 0.05 or opt > rep.certified_upper_bound + 1e-9:
            weak += 1
    ok = unsound == 0 and eps_err == 0 and weak == 0
    record(5, ok, f"{len(corpus)} graphs, unsound certificates={unsound}, "
           f"eps mismatches={eps_err} (max dev {max_dev:.1e}), report failures={weak}")


# ---------------------------------------------------------------- 6


def _cut_fractions(g):
    n = g.n
    masks = np.arange(1 << (n - 1), dtype=np.int64)
    side = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    h = g.coalesce()
    return ((side[:, h.u] != side[:, h.v]) @ h.w) / h.total_weight


def test_criterion_06_sparsifier():
    good = 0
    worst = []
    for seed in range(100):
        n = 8 + seed % 7
        g = G.random_graph(n, 0.5, seed=1000 + seed, weights="real")
        h = sparsify(g, SparsifyParams(0.05, oversample=16, seed=seed))
        dev = float(np.max(np.abs(_cut_fractions(g) - _cut_fractions(h))))
        worst.append(dev)
        good += dev <= 0.05
    record(6, good >= 95, f"{good}/100 seeds preserve all cuts within 0.05 "
           f"(median max deviation {np.median(worst):.4f})")


# ---------------------------------------------------------------- 7


def _quad(x, ell):
    ai, aj = abs(x[0]), abs(x[1])

    def active(a, t):
        return t * math.exp(-ell) <= a <= t

    def f_abs(t):
        return 2 * ai if active(ai, t) else 0.0

    def f_prod(t):
        if active(ai, t) and active(aj, t):
            return 2 * math.copysign(1, x[0] * x[1]) * ai * aj / t
        return 0.0

    pts = sorted({min(1.0, v) for v in (ai, aj, ai * math.exp(ell), aj * math.exp(ell))})
    kw = dict(points=pts, epsabs=1e-13, epsrel=1e-12, limit=200)
    return integrate.quad(f_abs, 0, 1, **kw)[0], integrate.quad(f_prod, 0, 1, **kw)[0]


def test_criterion_07_gain_math():
    rng = np.random.default_rng(7)
    quad_err = 0.0
    for _ in range(300):
        ell = float(rng.choice([1.0, 2.0, 5.0, 10.0]))
        x = rng.uniform(-1, 1, 2) * np.exp(-rng.uniform(0, ell + 2, 2))
        qa, qp = _quad(x, ell)
        ea, ep = good_rounding_expectations(x, ell, 0, 1)
        quad_err = max(quad_err, abs(qa - ea), abs(qp - ep))

    enum_err = 0.0
    for n, p_min in ((8, 11), (32, 101), (64, 257)):
        x = rng.uniform(-1, 1, n) * np.exp(-rng.uniform(0, 3, n))
        p = next_prime(max(p_min, n + 1))
        a = np.repeat(np.arange(p), p)
        b = np.tile(np.arange(p), p)
        space = PairwiseSpace(p, n)
        for t in (np.abs(x).max(), np.median(np.abs(x)), 1.0):
            q = np.where(np.abs(x) <= t, np.abs(x) / t, 0.0)
            Y = space.sample(omega_targets(q, p), np.sign(x), a, b).astype(np.float64)
            ideal = np.outer(np.sign(x) * q, np.sign(x) * q)
            np.fill_diagonal(ideal, q)
            emp = (Y.T @ Y) / len(Y)
            np.fill_diagonal(emp, np.abs(Y).mean(axis=0))
            enum_err = max(enum_err, float(np.max(np.abs(emp - ideal))) * p)

    viol = 0
    pairs = 0
    for ell in (2.0, 5.0, 10.0):
        for _ in range(2):
            k = 317
            x = rng.choice([-1, 1], k) * np.exp(-rng.uniform(0, 3 * ell, k))
            rep = check_good_rounding(x, ell)
            pairs += k * (k - 1) // 2
            viol += not rep.holds
    ok = quad_err <= 1e-8 and enum_err <= 1 and viol == 0
    record(7, ok, f"quadrature max err={quad_err:.1e} (<=1e-8), enumeration max err*p="
           f"{enum_err:.3f} (<=1), good-rounding violations={viol} over {pairs} pairs")


# ---------------------------------------------------------------- 8


def _c8_corpus():
    yield from load_corpus(7)
    rng = np.random.default_rng(8)
    for k in range(150):
        n = int(rng.integers(8, 11))
        g = G.random_graph(n, float(rng.uniform(0.3, 0.8)), seed=k,
                           weights=(None, "int", "signed")[k % 3])
        if g.m:
            yield g


def test_criterion_08_gain():
    gam_bad = pos_bad = bound_bad = count = tested = 0
    for idx, g in enumerate(_c8_corpus()):
        count += 1
        lam = dense_lambda_min(g)
        if gamma_exact(g) > abs(lam) + 1e-7:
            gam_bad += 1
        if lam <= -0.1:
            tested += 1
            r = four_threshold_spectral_cut(g, seed=idx)
            pos_bad += not r.gain > 0
            bound_bad += not (r.exhaustive and r.gain >= r.bound - 1e-12)
    ok = gam_bad == 0 and pos_bad == 0 and bound_bad == 0
    record(8, ok, f"{count} graphs: gamma>|lambda_n| violations={gam_bad}; "
           f"{tested} runs: non-positive gain={pos_bad}, explicit bound failures={bound_bad}")


# ---------------------------------------------------------------- 9


def test_criterion_09_reduction():
    delta = 0.05
    good = 0
    lift_bad = 0
    rng = np.random.default_rng(9)
    for seed in range(100):
        while True:
            n = int(rng.integers(3, 11))
            g = G.random_graph(n, float(rng.uniform(0.2, 0.6)), seed=int(rng.integers(2**32)))
            if 0 < g.m <= 10:
                break
        art = reduce(g, delta, seed=seed)
        gp = art.gprime.coalesce()
        opt_p = maxcut_exact(gp)
        good += opt_p.cut_fraction >= maxcut_exact(g).cut_fraction - delta
        for side in (np.asarray(opt_p.side), rng.integers(0, 2, gp.n)):
            start = expected_cut_weight(g, copy_fractions(art, side))
            lift_bad += lift_cut(art, g, side).cut_weight < start - 1e-9
    record(9, good >= 95 and lift_bad == 0,
           f"{good}/100 seeds with maxcut(G') >= maxcut(G) - 0.05; "
           f"lift below starting expectation: {lift_bad}/200")


# ---------------------------------------------------------------- 10


def test_criterion_10_cli_determinism(tmp_path):
    import subprocess
    import sys

    g = G.random_graph(40, 0.15, seed=10, weights="int")
    gs = G.random_graph(14, 0.4, seed=11, weights="signed")
    gp, sp = tmp_path / "g.col", tmp_path / "s.col"
    with open(gp, "w") as fh:
        write_graph(g, fh)
    with open(sp, "w") as fh:
        write_graph(gs, fh)
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for k in range(3):
        with open(corpus / f"g{k}.col", "w") as fh:
            write_graph(G.random_graph(10, 0.4, seed=k), fh)
    cmap = str(tmp_path / "map.json")
    sol = str(tmp_path / "sol.json")
    trace, red = tmp_path / "trace.json", tmp_path / "r.col"
    # (argv, side files the command writes)
    commands = [
        (["eig", str(gp), "--vector"], ()),
        (["sweep", str(gp)], ()),
        (["beta", str(gp)], ()),
        (["solve", str(gp), "--trace", str(trace)], (trace,)),
        (["solve", str(gp), "--stop-rule", "relaxed", "--sparsify-first"], ()),
        (["certify", str(gp)], ()),
        (["gain", str(sp)], ()),
        (["gain", str(sp), "--iterated"], ()),
        (["sparsify", str(gp), "--sparsify-delta", "0.3"], ()),
        (["reduce", str(gp), "--copy-map", cmap, "--delta", "0.5", "-o", str(red)],
         (red, tmp_path / "map.json")),
        (["lift", str(gp), "--copy-map", cmap, "--cut", sol], ()),
        (["bench", str(corpus), "--no-timing"], ()),
    ]

    def run_all():
        outs = []
        for argv, side_files in commands:
            if argv[0] == "lift":
                res = subprocess.run([sys.executable, "-m", "spectral_maxcut.cli", "solve",
                                      str(red)], capture_output=True)
                with open(sol, "wb") as fh:
                    fh.write(res.stdout)
            res = subprocess.run([sys.executable, "-m", "spectral_maxcut.cli", *argv],
                                 capture_output=True)
            extra = b"".join(f.read_bytes() for f in side_files)
            outs.append((res.returncode, res.stdout, extra))
        return outs

    first, second = run_all(), run_all()
    diff = [c[0][0] for c, a, b in zip(commands, first, second) if a != b]
    failed = [c[0][0] for c, a in zip(commands, first) if a[0] != 0]
    record(10, not diff and not failed,
           f"{len(commands)} CLI invocations run twice: differing={diff or 'none'}, "
           f"nonzero exits={failed or 'none'}")


def test_cli_module_importable():
    assert callable(cli.main)
