"""Command-line entry point: ``qmantel <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import constructions, polynomials
from .enumeration import ORDER_HARD_CAP, SIZE_HARD_CAP, CapExceededError, canonical_form
from .graph import Graph6Error, parse_graph6, to_graph6
from .partitions import VertexPartition, coarsest_equitable_refinement, largest_eigenvalue_of_quotient, quotient_matrix
from .spectral import (
    adjacency_spectral_radius,
    bound_degree_avg_neighbor,
    bound_edge_degree_sum,
    bound_lower_four_m_over_n,
    q_index,
    q_matrix,
)
from . import verify as vf

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GRAPH6 = 3
EXIT_CAP = 4
EXIT_INVALID = 5

CSV_COLUMNS = ["constraint", "n", "m", "count_examined", "max_q", "maximizer_graph6", "predicted_q", "verdict"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # one-line diagnostic, distinct exit code
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_USAGE)


def fmt(x: Any) -> str:
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def num(x: float) -> float:
    return float(f"{x:.12g}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=vf.DEFAULT_COMPARE_TOL,
                        help="comparison tolerance (default 1e-8)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    common.add_argument("--output", default="-", help="output file (default stdout)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-order", type=int, default=vf.DEFAULT_ORDER_CAP,
                        help=f"order cap for searches (default {vf.DEFAULT_ORDER_CAP}, hard limit {ORDER_HARD_CAP})")
    common.add_argument("--max-size", type=int, default=vf.DEFAULT_SIZE_CAP,
                        help=f"size cap for searches (default {vf.DEFAULT_SIZE_CAP}, hard limit {SIZE_HARD_CAP})")
    common.add_argument("--timing", action="store_true", help="record runtime_ms in JSON reports")

    p = _Parser(prog="qmantel", description="Q-index tools for non-bipartite triangle-free graphs")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("qindex", parents=[common], help="Q-index, Perron vector and bounds")
    s.add_argument("graph6")

    s = sub.add_parser("rho", parents=[common], help="adjacency spectral radius")
    s.add_argument("graph6")

    s = sub.add_parser("construct", parents=[common], help="print a named family member as graph6")
    s.add_argument("family")
    s.add_argument("params", nargs="*", type=int)

    s = sub.add_parser("quotient", parents=[common], help="quotient of Q(G) on a partition")
    s.add_argument("graph6")
    s.add_argument("partition", nargs="?", help='e.g. "0,1;2,4;3"; default: coarsest equitable')

    s = sub.add_parser("poly", parents=[common], help="characteristic polynomials and largest roots")
    s.add_argument("kind", choices=("cubic", "quartic", "quintic"))
    s.add_argument("--n", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--n1", type=int)
    s.add_argument("--n2", type=int)

    s = sub.add_parser("verify", parents=[common], help="exhaustive and randomized theorem checks")
    s.add_argument("check", choices=("order", "size", "mantel", "erdos", "rotation", "adjacency"))
    s.add_argument("--n", type=int, nargs="+", help="order(s) to check")
    s.add_argument("--m", type=int, nargs="+", help="size(s) to check")
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--n-max", type=int, default=vf.DEFAULT_ORDER_CAP)
    s.add_argument("--m-max", type=int, default=vf.DEFAULT_SIZE_CAP)
    s.add_argument("--threshold-m-max", type=int, help="top size for the rho >= sqrt(m-1) check")
    return p


# -- rendering ------------------------------------------------------------------


def render_records(records: list[dict], fmt_name: str, csv_columns: Sequence[str] | None = None) -> str:
    if fmt_name == "json":
        payload: Any = records[0] if len(records) == 1 else records
        return json.dumps(payload, indent=2) + "\n"
    if fmt_name == "csv":
        cols = list(csv_columns or records[0].keys())
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in records:
            w.writerow({k: _csv_cell(r.get(k)) for k in cols})
        return buf.getvalue()
    lines = []
    for i, r in enumerate(records):
        if i:
            lines.append("")
        for k, v in r.items():
            lines.append(f"{k}: {_plain_cell(v)}")
    return "\n".join(lines) + "\n"


def _plain_cell(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_plain_cell(x) for x in v) if v else "-"
    if isinstance(v, dict):
        return " ".join(f"{k}={_plain_cell(x)}" for k, x in v.items())
    if v is None:
        return "-"
    return fmt(v)


def _csv_cell(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_csv_cell(x) for x in v)
    if v is None:
        return ""
    return fmt(v)


def report_record(r: vf.SearchReport, seed: int, runtime_ms: float | None) -> dict:
    d = r.to_dict()
    return {
        "constraint": d["constraint"],
        "count_examined": d["count_examined"],
        "max_q": d["max_q"],
        "maximizers": d["maximizers"],
        "predicted_graph": d["predicted_graph"],
        "predicted_q": d["predicted_q"],
        "verdict": d["verdict"],
        "tolerance": d["tolerance"],
        "seed": seed,
        "runtime_ms": runtime_ms,
    }


def report_csv_row(r: vf.SearchReport) -> dict:
    c = r.constraint
    pred = parse_graph6(r.predicted_graph) if r.predicted_graph else None
    n = c.value if c.mode == "order" else (pred.n if pred else None)
    m = c.value if c.mode == "size" else (pred.size if pred else None)
    return {
        "constraint": c.label(),
        "n": n,
        "m": m,
        "count_examined": r.count_examined,
        "max_q": num(r.max_q),
        "maximizer_graph6": r.maximizers,
        "predicted_q": num(r.predicted_q),
        "verdict": r.verdict,
    }


# -- subcommands ----------------------------------------------------------------


def cmd_qindex(args) -> tuple[list[dict], int]:
    g = parse_graph6(args.graph6)
    res = q_index(g)
    rec = {
        "graph6": to_graph6(g),
        "n": g.n,
        "m": g.size,
        "q": num(res.value),
        "perron_vector": [num(x) for x in res.vector],
        "residual": num(res.residual),
        "method": res.method,
        "bound_lower_4m_over_n": num(bound_lower_four_m_over_n(g)),
    }
    if g.size:
        rec["bound_edge_degree_sum"] = bound_edge_degree_sum(g)
    if not g.has_isolated_vertex():
        rec["bound_degree_avg_neighbor"] = num(bound_degree_avg_neighbor(g))
    return [rec], EXIT_OK


def cmd_rho(args) -> tuple[list[dict], int]:
    g = parse_graph6(args.graph6)
    res = adjacency_spectral_radius(g)
    return [{"graph6": to_graph6(g), "n": g.n, "m": g.size, "rho": num(res.value),
             "vector": [num(x) for x in res.vector], "residual": num(res.residual)}], EXIT_OK


def cmd_construct(args) -> tuple[list[dict], int]:
    g = constructions.family(args.family, args.params)
    return [{"family": args.family, "params": list(args.params), "n": g.n, "m": g.size,
             "graph6": to_graph6(g), "canonical_graph6": canonical_form(g)}], EXIT_OK


def cmd_quotient(args) -> tuple[list[dict], int]:
    g = parse_graph6(args.graph6)
    part = VertexPartition.parse(args.partition) if args.partition else coarsest_equitable_refinement(g)
    b = quotient_matrix(q_matrix(g), part)
    lam = largest_eigenvalue_of_quotient(b)
    q = q_index(g).value
    rec = {
        "graph6": to_graph6(g),
        "partition": str(part),
        "quotient": ["[" + " ".join(fmt(x) for x in row) + "]" for row in b.exact],
        "equitable": b.equitable,
        "charpoly": list(polynomials.characteristic_polynomial(b).coefficients) if b.dimension <= 8 else None,
        "quotient_largest_eigenvalue": num(lam),
        "q_index": num(q),
        "difference": num(abs(lam - q)),
    }
    if rec["charpoly"] is not None:
        rec["charpoly"] = [fmt(c) if isinstance(c, Fraction) else c for c in rec["charpoly"]]
    return [rec], EXIT_OK


def cmd_poly(args) -> tuple[list[dict], int]:
    if args.kind == "cubic":
        _need(args, "n")
        p = polynomials.theorem1_cubic(args.n)
        lo, hi = polynomials.cubic_root_bracket(args.n)
        rec = {"kind": "cubic", "n": args.n, "coefficients": list(p.coefficients),
               "largest_root": num(polynomials.cubic_largest_root(args.n)),
               "bracket": [num(float(lo)), num(float(hi))],
               "bracket_certified": polynomials.cubic_root_in_bracket(args.n)}
    elif args.kind == "quartic":
        _need(args, "m")
        p = polynomials.theorem2_quartic(args.m)
        rec = {"kind": "quartic", "m": args.m, "coefficients": list(p.coefficients),
               "largest_root": num(polynomials.quartic_largest_root(args.m)),
               "lower_bound": args.m - 2}
    else:
        _need(args, "n1")
        _need(args, "n2")
        p = polynomials.case2_quintic(args.n1, args.n2)
        rec = {"kind": "quintic", "n1": args.n1, "n2": args.n2, "coefficients": list(p.coefficients),
               "largest_root": num(polynomials.case2_largest_root(args.n1, args.n2))}
    return [rec], EXIT_OK


def _need(args, name: str) -> None:
    if getattr(args, name) is None:
        raise ValueError(f"--{name} is required for poly {args.kind}")


def _caps(args) -> tuple[int, int]:
    if args.max_order > ORDER_HARD_CAP or args.max_size > SIZE_HARD_CAP:
        raise CapExceededError(f"caps exceed hard limits (order {ORDER_HARD_CAP}, size {SIZE_HARD_CAP})")
    if args.max_order > vf.DEFAULT_ORDER_CAP or args.max_size > vf.DEFAULT_SIZE_CAP:
        sys.stderr.write("warning: search caps raised above defaults; runtime may be long\n")
    return args.max_order, args.max_size


def cmd_verify(args) -> tuple[list[dict], int]:
    ocap, scap = _caps(args)
    check = args.check
    if check in ("order", "size", "adjacency"):
        t0 = time.perf_counter()
        if check == "order":
            values = args.n or [5, 6, 7, 8, 9]
            reports = [vf.verify_order_theorem(n, args.tol, args.workers, ocap) for n in values]
        elif check == "size":
            values = args.m or list(range(5, 12))
            reports = [vf.verify_size_theorem(m, args.tol, args.workers, scap) for m in values]
        else:
            reports = vf.verify_adjacency_theorems(args.n_max, args.m_max, args.tol, args.workers,
                                                   args.threshold_m_max, ocap, scap)
        elapsed = (time.perf_counter() - t0) * 1000.0 if args.timing else None
        status = EXIT_OK if all(r.matched for r in reports) else EXIT_MISMATCH
        if args.format == "csv":
            return [report_csv_row(r) for r in reports], status
        if args.format == "json":
            return [report_record(r, args.seed, elapsed) for r in reports], status
        return [_plain_report(r) for r in reports], status

    records = []
    if check == "mantel":
        for n in args.n or [8]:
            best = vf.mantel_max_triangle_free_size(n) if n <= 8 else None
            if best is None:
                raise CapExceededError("Mantel check limited to n <= 8")
            records.append({"check": "mantel", "n": n, "max_triangle_free_size": best,
                            "bound": n * n // 4, "verdict": "match" if best <= n * n // 4 else "mismatch"})
    elif check == "erdos":
        for n in args.n or [9]:
            best = vf.erdos_max_size(n, args.workers, ocap)
            bound = Fraction((n - 1) ** 2, 4) + 1
            records.append({"check": "erdos", "n": n, "max_non_bipartite_size": best, "bound": float(bound),
                            "verdict": "match" if best <= bound else "mismatch"})
    else:
        trials = vf.rotation_trials(args.trials, args.seed)
        ok = sum(t.gain > 1e-10 for t in trials)
        records.append({"check": "rotation", "trials": args.trials, "seed": args.seed, "successes": ok,
                        "min_gain": num(min(t.gain for t in trials)),
                        "verdict": "match" if ok == args.trials else "mismatch"})
    status = EXIT_OK if all(r["verdict"] == "match" for r in records) else EXIT_MISMATCH
    return records, status


def _plain_report(r: vf.SearchReport) -> dict:
    return {
        "constraint": r.constraint.label(),
        "count_examined": r.count_examined,
        "max_q": num(r.max_q),
        "maximizers": r.maximizers,
        "predicted_graph": r.predicted_graph,
        "predicted_q": num(r.predicted_q),
        "verdict": r.verdict,
    }


COMMANDS = {
    "qindex": cmd_qindex,
    "rho": cmd_rho,
    "construct": cmd_construct,
    "quotient": cmd_quotient,
    "poly": cmd_poly,
    "verify": cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        records, status = COMMANDS[args.command](args)
    except Graph6Error as e:
        sys.stderr.write(f"qmantel: malformed graph6: {e}\n")
        return EXIT_GRAPH6
    except CapExceededError as e:
        sys.stderr.write(f"qmantel: cap exceeded: {e}\n")
        return EXIT_CAP
    except ValueError as e:
        sys.stderr.write(f"qmantel: invalid input: {e}\n")
        return EXIT_INVALID
    cols = CSV_COLUMNS if args.command == "verify" and args.check in ("order", "size", "adjacency") else None
    text = render_records(records, args.format, cols)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w") as fh:
            fh.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
