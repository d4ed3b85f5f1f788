"""Command-line front end.

    spectral-maxcut solve --delta 0.05 graph.col
    spectral-maxcut reduce --copy-map map.json g.col | spectral-maxcut solve - \
        | spectral-maxcut lift g.col --copy-map map.json --cut -

Every subcommand prints one JSON object (schema 1) on stdout, except
``sparsify``/``reduce`` (a graph file) and ``bench`` (TSV). Vertex ids in
JSON are 1-based. Exit status: 0 ok, 1 bad input, 2 degenerate instance.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .bipartite import beta_exact, beta_sweep_bound, spectral_partition, two_threshold_sweep
from .certificates import best_certificate, certify_upper_bound, primal_dual_report
from .eigen import METHODS, smallest_eigvec
from .exact import MAX_TERNARY_N, maxcut_exact
from .gain import four_threshold_spectral_cut, iterated_gain_cut
from .graph import GraphFormatError, WeightedGraph, load_graph, make_cut, write_graph
from .maxcut import STOP_RULES, recursive_spectral_cut
from .reduce import ReductionArtifact, lift_cut, reduce
from .sparsify import SparsifyParams, sparsify

SCHEMA = 1
DEFAULT_SEED = 42


class InputError(Exception):
    pass


def _emit(obj, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps({"schema": SCHEMA, **obj}) + "\n")


def _ids(idx):
    return [int(i) + 1 for i in idx]


def _read(path, mode="maxcut", fmt="dimacs"):
    try:
        if path == "-":
            return load_graph(sys.stdin.buffer, format=fmt, mode=mode)
        return load_graph(path, format=fmt, mode=mode)
    except (GraphFormatError, OSError) as exc:
        raise InputError(str(exc)) from exc


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        _emit({"error": message, "kind": "input"}, sys.stderr)
        sys.exit(1)


def _check_delta(delta, upper=0.5):
    if not 0 < delta < upper:
        raise InputError(f"delta must lie in (0, {upper:g}), got {delta:g}")


# ------------------------------------------------------------ subcommands


def cmd_eig(args):
    g = _read(args.graph)
    _check_delta(args.delta, 1.0)
    emb = smallest_eigvec(g, args.delta, seed=args.seed, method=args.method)
    out = {
        "eps_x": emb.eps_x,
        "delta": args.delta,
        "method": emb.method,
        "iterations": emb.iterations,
        "upper_bound": min(1.0, max(0.5, 1.0 - (emb.eps_x - args.delta) / 2.0)),
    }
    if args.vector:
        out["x"] = emb.x.tolist()
    _emit(out)


def cmd_sweep(args):
    g = _read(args.graph)
    if args.vector:
        try:
            x = np.loadtxt(args.vector, dtype=np.float64, ndmin=1)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot read vector: {exc}") from exc
        if x.shape != (g.n,):
            raise InputError(f"vector has {x.size} entries, graph has {g.n} vertices")
        res = two_threshold_sweep(g, x)
    else:
        _check_delta(args.delta, 1.0)
        res = spectral_partition(g, args.delta, seed=args.seed, method=args.method)
    _emit({
        "ratio": res.ratio,
        "bound": res.bound,
        "eps_x": res.eps_x,
        "support_size": res.support_size,
        "L": _ids(res.L),
        "R": _ids(res.R),
    })


def cmd_beta(args):
    g = _read(args.graph)
    if g.n <= MAX_TERNARY_N:
        rep = beta_exact(g)
    else:
        rep = beta_sweep_bound(g, args.delta, seed=args.seed)
    _emit({"beta": rep.beta, "lambda_n": rep.lambda_n, "lower": rep.lower,
           "upper": rep.upper, "exact": rep.exact})


def _solve(g, args):
    work = g
    if args.sparsify_first:
        work = sparsify(g, SparsifyParams(args.sparsify_delta, seed=args.seed))
    cut, trace = recursive_spectral_cut(work, args.delta, seed=args.seed,
                                        stop_rule=args.stop_rule,
                                        certify=not args.sparsify_first)
    if args.sparsify_first:
        cut = make_cut(g, cut.side)
        trace.final_cut = cut
        bound = 1.0 - best_certificate(g).eps
    else:
        bound = primal_dual_report(trace, g).certified_upper_bound
    return cut, trace, bound


def cmd_solve(args):
    g = _read(args.graph)
    _check_delta(args.delta)
    if g.m == 0:
        raise ValueError("graph has no edges")
    cut, trace, bound = _solve(g, args)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump({"schema": SCHEMA, **trace.to_dict()}, fh)
            fh.write("\n")
    _emit({
        "cut_fraction": cut.cut_fraction,
        "cut_weight": cut.cut_weight,
        "sides": cut.side.tolist(),
        "certified_upper_bound": bound,
        "ratio_lower_bound": cut.cut_fraction / bound,
        "depth": trace.depth,
        "stop_reason": trace.stop_reason,
    })


def cmd_certify(args):
    g = _read(args.graph)
    if args.claimed_bound is None:
        cert = best_certificate(g, tol=args.tol)
    else:
        eps = 1.0 - args.claimed_bound
        if not 0 <= eps <= 0.5:
            raise InputError("claimed bound must lie in [1/2, 1]")
        cert = certify_upper_bound(g, eps, tol=args.tol)
    _emit({"eps": cert.eps, "upper_bound": cert.upper_bound, "feasible": bool(cert.feasible),
           "psd_margin": cert.psd_margin, "lambda_min": cert.lambda_min, "method": cert.method})
    return 0 if cert.feasible else 2


def cmd_gain(args):
    g = _read(args.graph, mode="gain")
    if args.iterated:
        cut, gain = iterated_gain_cut(g, seed=args.seed, ell=args.ell_override)
        _emit({"gain": gain, "cut_fraction": cut.cut_fraction, "sides": cut.side.tolist()})
        return 0
    res = four_threshold_spectral_cut(g, seed=args.seed, ell=args.ell_override)
    _emit({
        "gain": res.gain,
        "support_size": res.support_size,
        "eps_spectral": res.eps_spectral,
        "ell": res.ell,
        "certificate": res.certificate,
        "explicit_bound": res.bound,
        "source": res.source,
        "L": _ids(np.flatnonzero(res.y < 0)),
        "R": _ids(np.flatnonzero(res.y > 0)),
    })
    return 0


def cmd_sparsify(args):
    g = _read(args.graph)
    if not 0 < args.sparsify_delta <= 1:
        raise InputError("sparsify delta must lie in (0, 1]")
    h = sparsify(g, SparsifyParams(args.sparsify_delta, args.oversample, args.seed))
    with _open_out(args.output) as fh:
        write_graph(h, fh, comment=f"sparsified delta={args.sparsify_delta:g} seed={args.seed}")


def cmd_reduce(args):
    g = _read(args.graph)
    _check_delta(args.delta, 1.0)
    art = reduce(g, args.delta, seed=args.seed)
    with open(args.copy_map, "w") as fh:
        json.dump(art.copy_map(), fh)
        fh.write("\n")
    with _open_out(args.output) as fh:
        write_graph(art.gprime, fh, comment=f"reduced delta={args.delta:g} seed={args.seed}")


def _read_cut(path):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    text = text.strip()
    try:
        if text.startswith("{"):
            side = json.loads(text)["sides"]
        else:
            side = [int(t) for t in text.split()]
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse cut file: {exc}") from exc
    side = np.asarray(side, dtype=np.int64)
    if side.size and not np.isin(side, (0, 1)).all():
        raise InputError("cut sides must be 0 or 1")
    return side


def cmd_lift(args):
    g = _read(args.graph)
    try:
        with open(args.copy_map) as fh:
            data = json.load(fh)
        offsets = np.asarray(data["offsets"], dtype=np.int64)
    except (OSError, ValueError, KeyError) as exc:
        raise InputError(f"cannot read copy map: {exc}") from exc
    if len(offsets) != g.n + 1:
        raise InputError("copy map does not match the graph")
    gp = _read(args.reduced) if args.reduced else WeightedGraph(int(offsets[-1]), [], [])
    try:
        art = ReductionArtifact.from_copy_map(data, gp)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    side = _read_cut(args.cut)
    if side.shape != (gp.n,):
        raise InputError(f"cut has {side.size} entries, reduced graph has {gp.n} vertices")
    cut = lift_cut(art, g, side)
    _emit({"cut_fraction": cut.cut_fraction, "cut_weight": cut.cut_weight,
           "sides": cut.side.tolist()})


# ------------------------------------------------------------------ bench

BENCH_COLUMNS = ("file", "n", "m", "cut_fraction", "certified_bound", "optimum",
                 "ratio", "depth", "time_s", "error")


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def bench_one(path, delta, seed, stop_rule, exact_limit, timing=True):
    name = os.path.basename(path)
    row = dict.fromkeys(BENCH_COLUMNS)
    row["file"] = name
    t0 = time.perf_counter()
    try:
        g = load_graph(path)
        row["n"], row["m"] = g.n, g.m
        if g.m == 0:
            raise ValueError("graph has no edges")
        cut, trace = recursive_spectral_cut(g, delta, seed=seed, stop_rule=stop_rule)
        bound = primal_dual_report(trace, g).certified_upper_bound
        row.update(cut_fraction=cut.cut_fraction, certified_bound=bound, depth=trace.depth)
        if g.n <= exact_limit:
            opt = maxcut_exact(g).cut_fraction
            row["optimum"] = opt
            row["ratio"] = cut.cut_fraction / opt
        else:
            row["ratio"] = cut.cut_fraction / bound
    except (GraphFormatError, OSError, ValueError) as exc:
        row["error"] = str(exc).replace("\t", " ").replace("\n", " ")
    if timing:
        row["time_s"] = time.perf_counter() - t0
    return row


def bench_rows(corpus, delta=0.05, seed=DEFAULT_SEED, stop_rule="paper", exact_limit=20,
               timing=True, workers=None):
    if not os.path.isdir(corpus):
        raise InputError(f"not a directory: {corpus}")
    files = sorted(os.path.join(corpus, f) for f in os.listdir(corpus)
                   if os.path.isfile(os.path.join(corpus, f)) and not f.startswith("."))
    if workers is None:
        workers = int(os.environ.get("SPECTRAL_MAXCUT_THREADS", "1") or 1)
    workers = max(1, min(workers, os.cpu_count() or 1))
    task = [(f, delta, seed, stop_rule, exact_limit, timing) for f in files]
    if workers == 1 or len(files) < 2:
        return [bench_one(*t) for t in task]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(bench_one, *zip(*task)))


def cmd_bench(args):
    _check_delta(args.delta)
    rows = bench_rows(args.corpus, args.delta, args.seed, args.stop_rule, args.exact_limit,
                      timing=not args.no_timing)
    with _open_out(args.output) as fh:
        fh.write("\t".join(BENCH_COLUMNS) + "\n")
        for r in rows:
            fh.write("\t".join(_fmt(r[c]) for c in BENCH_COLUMNS) + "\n")
        ratios = [r["ratio"] for r in rows if r["ratio"] is not None]
        errors = sum(1 for r in rows if r["error"])
        fh.write(f"# instances={len(rows)} errors={errors} min_ratio="
                 f"{_fmt(min(ratios)) if ratios else 'nan'}\n")


# ------------------------------------------------------------------- main


def build_parser():
    p = _Parser(prog="spectral-maxcut", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, delta=0.05):
        sp.add_argument("graph", help="graph file, or - for stdin")
        sp.add_argument("--delta", type=float, default=delta)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)

    s = sub.add_parser("eig", help="approximate smallest eigenvector quotient")
    common(s)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--vector", action="store_true", help="include x in the output")
    s.set_defaults(func=cmd_eig)

    s = sub.add_parser("sweep", help="two-threshold spectral sweep")
    common(s)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--vector", help="sweep this vector (one value per line) instead")
    s.set_defaults(func=cmd_sweep)

    s = sub.add_parser("beta", help="bipartiteness ratio and its eigenvalue sandwich")
    common(s)
    s.set_defaults(func=cmd_beta)

    s = sub.add_parser("solve", help="recursive spectral max cut")
    common(s)
    s.add_argument("--stop-rule", choices=STOP_RULES, default="paper")
    s.add_argument("--trace", help="write the solve trace JSON here")
    s.add_argument("--sparsify-first", action="store_true")
    s.add_argument("--sparsify-delta", type=float, default=0.1)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("certify", help="dual certificate for a max-cut upper bound")
    s.add_argument("graph")
    s.add_argument("--claimed-bound", type=float)
    s.add_argument("--tol", type=float, default=1e-7)
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("gain", help="max cut gain by four-threshold rounding")
    s.add_argument("graph")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--ell-override", type=float)
    s.add_argument("--iterated", action="store_true", help="peel repeatedly into a full cut")
    s.set_defaults(func=cmd_gain)

    s = sub.add_parser("sparsify", help="sample a sparse multigraph")
    s.add_argument("graph")
    s.add_argument("--sparsify-delta", type=float, default=0.1)
    s.add_argument("--oversample", type=float, default=16.0)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_sparsify)

    s = sub.add_parser("reduce", help="bounded-degree multigraph reduction")
    common(s)
    s.add_argument("--copy-map", required=True, help="JSON sidecar to write")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("lift", help="map a cut of the reduced graph back")
    s.add_argument("graph", help="original graph")
    s.add_argument("--copy-map", required=True)
    s.add_argument("--cut", required=True, help="solve JSON or 0/1 list, - for stdin")
    s.add_argument("--reduced", help="reduced graph, to validate the copy map")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("bench", help="solve every graph in a directory (TSV)")
    s.add_argument("corpus")
    s.add_argument("--delta", type=float, default=0.05)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--stop-rule", choices=STOP_RULES, default="paper")
    s.add_argument("--exact-limit", type=int, default=20,
                   help="brute-force the optimum up to this many vertices")
    s.add_argument("--no-timing", action="store_true", help="leave time_s empty")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        code = args.func(args)
    except InputError as exc:
        _emit({"error": str(exc), "kind": "input"}, sys.stderr)
        return 1
    except ValueError as exc:
        _emit({"error": str(exc), "kind": "degenerate"}, sys.stderr)
        return 2
    sys.stdout.flush()
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
