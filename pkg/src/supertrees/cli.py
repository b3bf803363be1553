"""Command-line front end: gen, rho, certify, verify, enumerate.

Human output prints 9 significant digits; json and csv print full
round-trip precision.  All randomness flows through the --seed flag.
The SUPERTREE_ENUM_LIMIT environment variable overrides the enumeration cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .certificates import (
    DEFAULT_CERT_TOL,
    NORMAL,
    STRICTLY_SUBNORMAL,
    STRICTLY_SUPERNORMAL,
    WeightedIncidence,
    alpha_normal_radius,
    classify,
    t11m3_certificate,
)
from .constructors import (
    base_tree,
    broom,
    double_star,
    f_tree,
    hyperstar,
    is_hypertree,
    path,
    star,
    tree_power,
)
from .errors import CounterexampleFound, SupertreeError
from .hypergraph import Hypergraph, from_interchange, to_interchange, vertex_stats
from .ordering import (
    DEFAULT_ENUM_LIMIT,
    rank_spectra,
    report_to_csv,
    report_to_dict,
    verify_moving_edges,
    verify_partition_lemma,
    verify_sandwich,
    verify_top_four,
)
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, power_formula_radius, power_iteration

DEFAULT_SEED = 1729


@dataclass(frozen=True)
class CliConfig:
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    method: str = "auto"
    output: str = "human"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.tol <= 0.0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")


def _enum_limit() -> int:
    return int(os.environ.get("SUPERTREE_ENUM_LIMIT", DEFAULT_ENUM_LIMIT))


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        print(text)


def _load_hypergraph(path_arg: str) -> Hypergraph:
    with open(path_arg, encoding="utf-8") as fh:
        return from_interchange(json.load(fh))


def _parse_ints(text: str, want: int, flag: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise SupertreeError(f"{flag} expects comma-separated integers, got {text!r}") from exc
    if len(vals) != want:
        raise SupertreeError(f"{flag} expects {want} comma-separated integers, got {text!r}")
    return vals


def _parse_tree(spec: str):
    kind, _, rest = spec.partition(":")
    if kind == "star":
        return star(int(rest))
    if kind == "path":
        return path(int(rest))
    if kind == "double-star":
        a, b = _parse_ints(rest, 2, "--tree double-star")
        return double_star(a, b)
    if kind == "f":
        return f_tree(int(rest))
    raise SupertreeError(f"unknown tree spec {spec!r} (use star:N, path:N, double-star:A,B, f:N)")


def _cmd_gen(args) -> int:
    fam = args.family
    if fam == "hyperstar":
        if args.m is None:
            raise SupertreeError("gen hyperstar needs --m")
        h = hyperstar(args.m, args.k)
    elif fam == "double-star-power":
        if args.t is None:
            raise SupertreeError("gen double-star-power needs --t A,B")
        a, b = _parse_ints(args.t, 2, "--t")
        h = tree_power(double_star(a, b), args.k)
    elif fam == "tree-power":
        if args.tree is None:
            raise SupertreeError("gen tree-power needs --tree")
        h = tree_power(_parse_tree(args.tree), args.k)
    elif fam == "broom":
        if args.t is None:
            raise SupertreeError("gen broom needs --t T1,T2,T3")
        t1, t2, t3 = _parse_ints(args.t, 3, "--t")
        h = broom(t1, t2, t3, args.k)
    elif fam == "f-tree-power":
        if args.m is None:
            raise SupertreeError("gen f-tree-power needs --m (edge count, >= 4)")
        h = tree_power(f_tree(args.m + 1), args.k)
    else:  # path-power
        if args.m is None:
            raise SupertreeError("gen path-power needs --m (edge count)")
        h = tree_power(path(args.m + 1), args.k)
    text = json.dumps(to_interchange(h), indent=2, sort_keys=True)
    _emit(text, args.out)
    stats = vertex_stats(h)
    summary = f"n={h.n} m={h.m} k={h.k} N2={stats.non_pendent_count}"
    print(summary, file=sys.stderr if args.out is None else sys.stdout)
    return 0


def _cmd_rho(args) -> int:
    h = _load_hypergraph(args.file)
    cfg = CliConfig(tol=args.tol, max_iter=args.max_iter, method=args.method, output=args.output)
    payload: dict = {}
    lines: list[str] = []
    if cfg.method in ("power", "auto"):
        pair = power_iteration(h, tol=cfg.tol, max_iter=cfg.max_iter)
        payload["power"] = {"rho": pair.rho, "residual": pair.residual, "iterations": pair.iterations}
        lines.append(
            f"rho = {_fmt(pair.rho)}  method = power  "
            f"residual = {pair.residual:.3e}  iterations = {pair.iterations}"
        )
    if cfg.method in ("alpha", "auto"):
        rho_a = alpha_normal_radius(h)
        payload["alpha"] = {"rho": rho_a}
        lines.append(f"rho = {_fmt(rho_a)}  method = alpha")
    if cfg.method == "formula":
        if not is_hypertree(h):
            raise SupertreeError("formula method applies only to powers of ordinary trees")
        rho_f = power_formula_radius(base_tree(h), h.k, tol=cfg.tol)
        payload["formula"] = {"rho": rho_f}
        lines.append(f"rho = {_fmt(rho_f)}  method = formula")
    if cfg.method == "auto":
        gap = abs(payload["power"]["rho"] - payload["alpha"]["rho"])
        payload["gap"] = gap
        lines.append(f"method gap = {gap:.3e}")
    if cfg.output == "json":
        print(json.dumps(payload, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


def _implication(verdict, k: int) -> str:
    bound = verdict.alpha ** (-1.0 / k)
    if verdict.classification == STRICTLY_SUBNORMAL:
        return f"implies rho < {_fmt(bound)}"
    if verdict.classification == STRICTLY_SUPERNORMAL:
        if verdict.consistent:
            return f"implies rho > {_fmt(bound)}"
        return "no bound (supernormal but not consistent)"
    if verdict.classification == NORMAL:
        return f"rho = {_fmt(bound)} within tolerance"
    return "no bound implied"


def _cmd_certify(args) -> int:
    h = _load_hypergraph(args.file)
    if args.construct == "t11m3":
        if args.alpha is None:
            raise SupertreeError("certify --construct t11m3 needs --alpha")
        ref = broom(1, 1, h.m - 3, h.k) if h.m >= 4 else None
        if ref is None or h != ref:
            raise SupertreeError(
                "t11m3 construction requires the canonical broom(1,1,m-3) labeling "
                "(generate it with: gen broom --t 1,1,<m-3>)"
            )
        alpha = args.alpha
        cert = t11m3_certificate(h.m, h.k, alpha)
        cert = WeightedIncidence(host=h, entries=cert.entries)
    elif args.certificate:
        with open(args.certificate, encoding="utf-8") as fh:
            obj = json.load(fh)
        cert_host = from_interchange(obj)
        if cert_host != h:
            raise SupertreeError("certificate file describes a different hypergraph")
        if "B" not in obj:
            raise SupertreeError('certificate file is missing the "B" weight triples')
        entries = {(int(t["v"]), int(t["e"])): float(t["w"]) for t in obj["B"]}
        cert = WeightedIncidence(host=h, entries=entries)
        if args.alpha is not None:
            alpha = args.alpha
        elif "alpha" in obj:
            alpha = float(obj["alpha"])
        else:
            raise SupertreeError("no alpha given on the command line or in the certificate file")
    else:
        raise SupertreeError("certify needs --certificate FILE or --construct t11m3")
    verdict = classify(h, cert, alpha, tol=args.tol)
    if args.output == "json":
        print(
            json.dumps(
                {
                    "alpha": verdict.alpha,
                    "class": verdict.classification,
                    "consistent": verdict.consistent,
                    "min_vertex_slack": min(verdict.vertex_slacks),
                    "max_vertex_slack": max(verdict.vertex_slacks),
                    "min_edge_slack": min(verdict.edge_slacks),
                    "max_edge_slack": max(verdict.edge_slacks),
                },
                sort_keys=True,
            )
        )
        return 0
    print(f"class = {verdict.classification}  (alpha = {_fmt(alpha)})")
    print(
        f"vertex slacks in [{min(verdict.vertex_slacks):.3e}, {max(verdict.vertex_slacks):.3e}]"
    )
    print(f"edge slacks in [{min(verdict.edge_slacks):.3e}, {max(verdict.edge_slacks):.3e}]")
    print(f"consistent = {verdict.consistent}")
    print(_implication(verdict, h.k))
    return 0


def _print_report_table(report) -> None:
    print(f"k = {report.k}  m = {report.m}  classes = {len(report.entries)}")
    for e in report.entries:
        tie = "  (tie)" if e.tie_with_next else ""
        print(f"  rank {e.rank:2d}  rho = {_fmt(e.rho):<12}  method = {e.method}{tie}  {e.key}")


def _cmd_verify(args) -> int:
    name = args.theorem
    try:
        if name in ("main1", "main2"):
            if args.k is None or args.m is None:
                raise SupertreeError(f"verify {name} needs --k and --m")
            rec = verify_top_four(
                args.m, args.k, tol=args.tol, max_iter=args.max_iter, limit=_enum_limit()
            )
        elif name == "hofmeister":
            if args.k not in (None, 2):
                raise SupertreeError("hofmeister ordering is the k=2 case")
            if args.m is None:
                raise SupertreeError("verify hofmeister needs --m")
            rec = verify_top_four(
                args.m, 2, tol=args.tol, max_iter=args.max_iter, limit=_enum_limit()
            )
        elif name == "partition":
            if args.k is None or args.m is None:
                raise SupertreeError("verify partition needs --k and --m")
            rec = verify_partition_lemma(args.m, args.k, tol=args.tol, max_iter=args.max_iter)
        elif name == "sandwich":
            if args.k is None or args.m is None:
                raise SupertreeError("verify sandwich needs --k and --m")
            rec = verify_sandwich(args.m, args.k, tol=args.tol, max_iter=args.max_iter)
        else:  # moving-edges
            rec = verify_moving_edges(
                trials=args.trials,
                seed=args.seed,
                k=args.k if args.k is not None else 3,
                m_max=args.m if args.m is not None else 6,
                tol=args.tol,
                max_iter=args.max_iter,
            )
    except CounterexampleFound as exc:
        print(f"FAIL {name}: {exc}")
        if exc.offending is not None:
            print(f"offending: {exc.offending}")
        return 1
    print(f"PASS {name}: {rec.name}")
    for line in rec.details:
        print(f"  {line}")
    report = rec.data.get("report")
    if report is not None:
        _print_report_table(report)
    return 0


def _cmd_enumerate(args) -> int:
    method = "power" if args.method == "auto" else args.method
    report = rank_spectra(
        args.m,
        args.k,
        method=method,
        tol=args.tol,
        max_iter=args.max_iter,
        limit=_enum_limit(),
    )
    if args.output == "json":
        _emit(json.dumps(report_to_dict(report), sort_keys=True, indent=2), args.out)
    elif args.output == "csv":
        _emit(report_to_csv(report), args.out)
    else:
        _print_report_table(report)
        if args.out:
            _emit(report_to_csv(report), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="supertrees",
        description="Spectral radii of k-uniform supertrees: construction, "
        "computation, certification, and ordering verification.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="construct a named family and write it as json")
    g.add_argument(
        "family",
        choices=["hyperstar", "double-star-power", "tree-power", "broom", "f-tree-power", "path-power"],
    )
    g.add_argument("--k", type=int, required=True, help="edge cardinality")
    g.add_argument("--m", type=int, help="edge count (hyperstar, f-tree-power, path-power)")
    g.add_argument("--t", type=str, help="branch counts: A,B for double-star-power, T1,T2,T3 for broom")
    g.add_argument("--tree", type=str, help="base tree: star:N, path:N, double-star:A,B, f:N")
    g.add_argument("--out", type=str, help="output file (default stdout)")
    g.set_defaults(func=_cmd_gen)

    r = sub.add_parser("rho", help="compute the spectral radius of a hypergraph file")
    r.add_argument("file")
    r.add_argument("--method", choices=["power", "alpha", "formula", "auto"], default="auto")
    r.add_argument("--tol", type=float, default=DEFAULT_TOL)
    r.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    r.add_argument("--output", choices=["human", "json"], default="human")
    r.set_defaults(func=_cmd_rho)

    c = sub.add_parser("certify", help="classify a weighted incidence certificate")
    c.add_argument("file")
    c.add_argument("--alpha", type=float)
    c.add_argument("--certificate", type=str, help="certificate json file")
    c.add_argument("--construct", choices=["t11m3"], help="build the explicit broom certificate")
    c.add_argument("--tol", type=float, default=DEFAULT_CERT_TOL)
    c.add_argument("--output", choices=["human", "json"], default="human")
    c.set_defaults(func=_cmd_certify)

    v = sub.add_parser("verify", help="run an ordering verifier; exit 0 iff it passes")
    v.add_argument(
        "theorem",
        choices=["main1", "main2", "hofmeister", "moving-edges", "partition", "sandwich"],
    )
    v.add_argument("--k", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    v.set_defaults(func=_cmd_verify)

    e = sub.add_parser("enumerate", help="rank all classes at (k, m) by spectral radius")
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--m", type=int, required=True)
    e.add_argument("--method", choices=["power", "alpha", "formula", "auto"], default="power")
    e.add_argument("--tol", type=float, default=DEFAULT_TOL)
    e.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    e.add_argument("--output", choices=["human", "json", "csv"], default="human")
    e.add_argument("--out", type=str)
    e.set_defaults(func=_cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SupertreeError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
