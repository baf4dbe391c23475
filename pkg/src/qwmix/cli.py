"""Command-line interface.

Bit strings (``--eta``, ``--start``, ``--support`` and connection names) put
coordinate n leftmost, so ``--eta 110`` is the integer 6. Vertices of
complete and Hamming graphs are plain mixed-radix integers.

Exit codes: 0 success, 1 verification or oracle deviation failure,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from . import graphs
from .graphs import (
    DEGREE_NORMALIZED,
    UNNORMALIZED,
    Product,
    Scaling,
    as_circulant,
    dense_adjacency,
    eigenvalues,
)
from .mixing import GRID_TOL, reports_to_csv, scan
from .verify import ORACLE_TOL, SUITES, run_suite
from .walk import InitialState, dense_walk_oracle, evolve
from .z2n import BooleanFunction, hamming_weight

GRAPHS = ("hypercube", "eta-cube", "bunkbed", "circulant", "complete", "hamming")


class UsageError(ValueError):
    pass


def parse_bits(text: str, n: int) -> int:
    text = text.strip()
    if len(text) != n or set(text) - {"0", "1"}:
        raise UsageError(f"expected a {n}-character bit string, got {text!r}")
    return int(text, 2)


def parse_connection(text: str, n: int) -> BooleanFunction:
    """``delta0``, ``all-ones``, ``hypercube``, ``matching:<bits>`` or ``support:<bits,...>``."""
    if text == "delta0":
        return BooleanFunction.delta0(n)
    if text == "all-ones":
        return BooleanFunction.all_ones(n)
    if text == "hypercube":
        return BooleanFunction.weight_one(n)
    kind, _, rest = text.partition(":")
    if kind == "matching" and rest:
        return BooleanFunction.matching(parse_bits(rest, n), n)
    if kind == "support":
        return parse_support(rest, n)
    raise UsageError(f"unknown connection {text!r}")


def parse_support(text: str, n: int) -> BooleanFunction:
    items = [s for s in text.split(",") if s.strip()]
    return BooleanFunction(n, tuple(parse_bits(s, n) for s in items))


def _require(value, flag, graph):
    if value is None:
        raise UsageError(f"--{flag} is required for --graph {graph}")
    return value


def build_spec(args):
    g = args.graph
    if g in ("hypercube", "eta-cube", "bunkbed", "circulant", "hamming"):
        n = _require(args.n, "n", g)
        if n < 1:
            raise UsageError("--n must be >= 1")
    if g == "hypercube":
        spec = graphs.hypercube_spec(n)
    elif g == "eta-cube":
        eta = parse_bits(_require(args.eta, "eta", g), n)
        if hamming_weight(eta) == 1:
            raise UsageError("--eta must not be a unit vector e_j")
        spec = graphs.eta_cube_spec(n, eta)
    elif g == "bunkbed":
        spec = graphs.bunkbed_spec(n, parse_connection(_require(args.connection, "connection", g), n))
    elif g == "circulant":
        spec = graphs.circulant_spec(parse_support(_require(args.support, "support", g), n))
    elif g == "complete":
        q = _require(args.q, "q", g)
        if q < 1:
            raise UsageError("--q must be >= 1")
        spec = graphs.complete_spec(q)
    else:
        q = _require(args.q, "q", g)
        if q < 2:
            raise UsageError("--q must be >= 2")
        spec = graphs.hamming_spec(n, q)

    if args.scale_factor is not None:
        spec = spec.with_scaling(Scaling.explicit(args.scale_factor))
    elif args.scaling == "unnormalized":
        spec = spec.with_scaling(UNNORMALIZED)
    elif args.scaling == "degree":
        spec = spec.with_scaling(DEGREE_NORMALIZED)
    return spec


def _is_z2(spec) -> bool:
    return as_circulant(spec) is not None


def vertex_label(spec, v: int) -> str:
    if _is_z2(spec):
        return format(v, f"0{as_circulant(spec)[0]}b")
    return str(v)


def parse_vertex(spec, text: str) -> int:
    text = text.strip()
    if _is_z2(spec):
        m = as_circulant(spec)[0]
        if text == "0":
            return 0
        return parse_bits(text, m)
    try:
        v = int(text)
    except ValueError:
        raise UsageError(f"bad vertex {text!r}") from None
    if not 0 <= v < spec.num_vertices:
        raise UsageError(f"vertex {v} out of range")
    return v


def build_init(spec, args) -> InitialState:
    if getattr(args, "superposition", None):
        verts = [parse_vertex(spec, s) for s in args.superposition.split(",")]
        if len(set(verts)) != len(verts):
            raise UsageError("repeated vertex in --superposition")
        return InitialState.superposition(verts)
    start = getattr(args, "start", None)
    return InitialState.point(parse_vertex(spec, start) if start else 0)


def _fmt(x) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() and abs(x) < 2 ** 53 else repr(x)


def _open_out(path):
    return open(path, "w", newline="") if path else sys.stdout


def _char_label(spec, a: int) -> str:
    if _is_z2(spec):
        return vertex_label(spec, a)
    if isinstance(spec, Product):
        return "".join(str(d) for d in reversed(spec.digits(a)))
    return str(a)


def _char_weight(spec, a: int) -> int:
    if _is_z2(spec):
        return hamming_weight(a)
    if isinstance(spec, Product):
        return sum(d != 0 for d in spec.digits(a))
    return int(a != 0)


def cmd_spectrum(args) -> int:
    spec = build_spec(args)
    lam = eigenvalues(spec)
    out = _open_out(args.output)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["a", "weight", "lambda"])
    for a, value in enumerate(lam):
        w.writerow([_char_label(spec, a), _char_weight(spec, a), _fmt(value)])
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_adjacency(args) -> int:
    spec = build_spec(args)
    text = graphs.adjacency_to_csv(dense_adjacency(spec))
    out = _open_out(args.output)
    out.write(text)
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_walk(args) -> int:
    spec = build_spec(args)
    init = build_init(spec, args)
    psi = evolve(spec, args.time, init)
    probs = psi.probabilities()
    out = _open_out(args.output)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["vertex", "re", "im", "prob"])
    for v, (amp, p) in enumerate(zip(psi.amplitudes, probs)):
        w.writerow([vertex_label(spec, v), repr(float(amp.real)), repr(float(amp.imag)),
                    repr(float(p))])
    if out is not sys.stdout:
        out.close()
    return 0


def cmd_scan(args) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be >= 2")
    if not args.t_max > 0:
        raise UsageError("--t-max must be positive")
    spec = build_spec(args)
    init = build_init(spec, args)
    res = scan(spec, init, args.t_max, args.steps, args.tol, threads=args.threads)
    out = _open_out(args.output)
    out.write(reports_to_csv(res.reports))
    if out is not sys.stdout:
        out.close()
    summary = res.summary()
    lines = [
        f"min_tv: {summary['min_tv']!r}",
        f"argmin_t: {summary['argmin_t']!r}",
        f"tv_lower_bound: {summary['tv_lower_bound']!r}",
        "uniform_time: " + ("none" if summary["uniform_time"] is None else repr(summary["uniform_time"])),
        "uniform_times: " + (",".join(repr(t) for t in summary["uniform_times"]) or "none"),
    ]
    if "layer_phat_min" in summary:
        lines.append(f"layer_phat_min: {summary['layer_phat_min']!r}")
    print("\n".join(lines), file=sys.stderr if not args.output else sys.stdout)
    return 0


def cmd_verify(args) -> int:
    if args.max_n < 1 or args.q_max < 2:
        raise UsageError("--max-n must be >= 1 and --q-max >= 2")
    report = run_suite(args.suite, args.max_n, args.q_max, args.tol)
    text = json.dumps(report, indent=2, default=_json_default)
    out = _open_out(args.output)
    out.write(text + "\n")
    if out is not sys.stdout:
        out.close()
    for case in report["cases"]:
        if not case["pass"]:
            print(f"FAIL {case['params']}", file=sys.stderr)
    print(f"{args.suite}: {'pass' if report['pass'] else 'FAIL'} "
          f"({sum(c['pass'] for c in report['cases'])}/{len(report['cases'])} cases)",
          file=sys.stderr)
    return 0 if report["pass"] else 1


def _json_default(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def cmd_oracle_compare(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    spec = build_spec(args)
    init = build_init(spec, args)
    adj = dense_adjacency(spec)
    rng = np.random.default_rng(args.seed)
    times = [0.0] + list(rng.uniform(0.0, args.t_range, args.trials))
    out = _open_out(args.output)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["t", "max_abs_deviation"])
    worst = 0.0
    for t in times:
        dev = float(np.abs(evolve(spec, t, init).amplitudes
                           - dense_walk_oracle(adj, init, t).amplitudes).max())
        worst = max(worst, dev)
        w.writerow([repr(float(t)), repr(dev)])
    if out is not sys.stdout:
        out.close()
    ok = worst <= args.max_deviation
    print(f"max_deviation: {worst!r} ({'ok' if ok else 'FAIL'}, limit {args.max_deviation!r})",
          file=sys.stderr)
    return 0 if ok else 1


def _graph_args(p):
    p.add_argument("--graph", required=True, choices=GRAPHS)
    p.add_argument("--n", type=int, help="dimension of the cube")
    p.add_argument("--q", type=int, help="arity for complete / hamming")
    p.add_argument("--eta", help="matching shift as a bit string (eta-cube)")
    p.add_argument("--connection",
                   help="bunkbed connection: delta0 | all-ones | hypercube | matching:<bits> | support:<bits,...>")
    p.add_argument("--support", help="circulant first-row support as comma-separated bit strings")
    p.add_argument("--scaling", choices=("default", "unnormalized", "degree"), default="default",
                   help="default: unnormalized, except 1/(n+1) for eta-cube")
    p.add_argument("--scale-factor", type=float, help="explicit adjacency multiplier")
    p.add_argument("--output", "-o", help="write CSV/JSON here instead of stdout")


def _start_args(p):
    p.add_argument("--start", help="start vertex (bit string for Z_2 graphs)")
    p.add_argument("--superposition", help="comma-separated vertices, equal weights")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwmix", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalue table a,weight,lambda")
    _graph_args(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("adjacency", help="dense adjacency CSV (N header line, N rows)")
    _graph_args(p)
    p.set_defaults(func=cmd_adjacency)

    p = sub.add_parser("walk", help="amplitudes and probabilities at one time")
    _graph_args(p)
    _start_args(p)
    p.add_argument("--time", type=float, required=True)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("scan", help="uniformity scan over [0, t-max]")
    _graph_args(p)
    _start_args(p)
    p.add_argument("--t-max", type=float, default=math.pi)
    p.add_argument("--steps", type=int, default=1000)
    p.add_argument("--tol", type=float, default=GRID_TOL)
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $QWM_THREADS or all cores)")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run theorem verification suites, JSON report")
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--q-max", type=int, default=6)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle-compare", help="fast path vs dense eigendecomposition oracle")
    _graph_args(p)
    _start_args(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t-range", type=float, default=2 * math.pi)
    p.add_argument("--max-deviation", type=float, default=ORACLE_TOL)
    p.set_defaults(func=cmd_oracle_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
