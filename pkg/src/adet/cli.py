"""Command-line front end orchestrating the verification pipeline.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 bad arguments.
Every subcommand accepts --json PATH to dump the structured report.
"""
from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

import mpmath as mp
import numpy as np

from . import bloch, qseries, solver, verify, ysystem
from .dynkin import nahm_matrix, pair_indexing, parse_diagram
from .errors import AdetError
from .precision import PrecisionContext
from .report import CheckRecord, VerificationReport

RR_FIRST = {"B": [0], "C": Fraction(-1, 60), "residues": (1, 4), "modulus": 5}
RR_SECOND = {"B": [1], "C": Fraction(11, 60), "residues": (2, 3), "modulus": 5}
AG_R2 = {"A": [[2, 2], [2, 4]], "residues": (1, 2, 5, 6), "modulus": 7}


def _pair_arg(text: str):
    try:
        left, right = text.split(",")
        return pair_indexing(parse_diagram(left), parse_diagram(right))
    except (ValueError, AdetError) as exc:
        raise argparse.ArgumentTypeError(f"bad pair {text!r}: {exc}") from exc


def _add_global_flags(parser, suppress=False):
    # registered on the main parser and again on every subcommand so the
    # flags are accepted in either position; SUPPRESS keeps subcommand
    # defaults from clobbering values parsed before the subcommand name
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--precision-bits", type=int, help="mantissa bits (default 128)",
                        **({"default": 128} if not suppress else kw))
    parser.add_argument("--tol-scale", type=float,
                        help="multiplies every default tolerance",
                        **({"default": 1.0} if not suppress else kw))
    parser.add_argument("--seed", type=int, help="RNG seed for sampled checks",
                        **({"default": 0} if not suppress else kw))
    parser.add_argument("--json", metavar="PATH", help="write the report as JSON",
                        **({"default": None} if not suppress else kw))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adet",
        description="Nahm-equation / Y-system / dilogarithm verification toolkit "
                    "for ADET Dynkin diagram pairs.",
    )
    _add_global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix", help="print the Kronecker matrix C(X) (x) C(X')^{-1}")
    p.add_argument("--pair", type=_pair_arg, required=True, metavar="X,X'")

    p = sub.add_parser("solve", help="solve the Nahm equation for a pair")
    p.add_argument("--pair", type=_pair_arg, required=True, metavar="X,X'")
    p.add_argument("--all", action="store_true", help="multistart enumeration instead of the positive solution")
    p.add_argument("--starts", type=int, default=2000)

    p = sub.add_parser("verify", help="run one verification family")
    p.add_argument("what", choices=["periodicity", "wedge", "dilogsum", "torsion", "fiveterm"])
    p.add_argument("--pair", type=_pair_arg, metavar="X,X'")
    p.add_argument("--points", type=int, default=None, help="sample count (default per check)")
    p.add_argument("--seeds", type=int, default=20, help="random seeds for periodicity")
    p.add_argument("--starts", type=int, default=2000, help="multistart budget for torsion")

    p = sub.add_parser("qseries", help="sum-side vs product-side series identities")
    p.add_argument("what", choices=["rr", "ag", "custom"])
    p.add_argument("--N", type=int, default=None, help="truncation order")
    p.add_argument("--matrix", help="custom: JSON matrix, e.g. [[2,2],[2,4]]")
    p.add_argument("--b", help="custom: JSON vector, e.g. [0,0]")
    p.add_argument("--c", default="0", help="custom: prefactor exponent p/q")
    p.add_argument("--residues", help="custom: product residues, e.g. 1,2,5,6")
    p.add_argument("--modulus", type=int, help="custom: product modulus")

    p = sub.add_parser("report", help="aggregate the full verification suite for one pair")
    p.add_argument("--pair", type=_pair_arg, required=True, metavar="X,X'")
    p.add_argument("--starts", type=int, default=2000)
    p.add_argument("--points", type=int, default=10)
    p.add_argument("--seeds", type=int, default=10)

    for sp in sub.choices.values():
        _add_global_flags(sp, suppress=True)
    return parser


def _ctx(args) -> PrecisionContext:
    return PrecisionContext(mantissa_bits=args.precision_bits)


def _sample_points(pair, count, rng, noise=0.1):
    pts = []
    for _ in range(count):
        re = rng.uniform(0.5, 2.0, pair.n)
        im = noise * rng.uniform(-1.0, 1.0, pair.n)
        pts.append([complex(a, b) for a, b in zip(re, im)])
    return pts


def _cmd_matrix(args) -> VerificationReport:
    a = nahm_matrix(args.pair.x, args.pair.xp)
    for row in a.entries:
        print("[" + " ".join(str(v) for v in row) + "]")
    return VerificationReport(
        command="matrix",
        metadata={"pair": args.pair.label, "matrix": a.to_json_obj()},
        records=(),
        seed=args.seed,
        precision_bits=args.precision_bits,
    )


def _cmd_solve(args) -> VerificationReport:
    ctx = _ctx(args)
    tol = ctx.tau_res * args.tol_scale
    t0 = time.perf_counter()
    if args.all:
        sols = solver.solve_all(args.pair, solver.SearchBudget(starts=args.starts, seed=args.seed), ctx)
        records = tuple(
            CheckRecord.make(f"constant Y-system residual, solution {i}", s.residual, tol)
            for i, s in enumerate(sols.solutions)
        )
        meta = {"pair": args.pair.label, "solutions": sols.to_json_obj()}
    else:
        sol = solver.solve_positive(args.pair, ctx)
        records = (CheckRecord.make("constant Y-system residual (positive solution)", sol.residual, tol),)
        meta = {"pair": args.pair.label, "x": [mp.nstr(mp.re(v), 30) for v in sol.x]}
    return VerificationReport("solve", meta, records, args.seed, args.precision_bits,
                              time.perf_counter() - t0)


def _verify_periodicity(args, ctx, rng) -> tuple[tuple, dict]:
    pair = args.pair
    tol = ctx.tau_eq * args.tol_scale
    records = []
    for s in range(args.seeds):
        y = rng.uniform(0.5, 2.0, pair.n)
        traj = ysystem.iterate(pair, list(y), 2 * pair.period, ctx)
        rep = ysystem.check_periodicity(traj, ctx)
        records.append(CheckRecord.make(f"periodicity, seed {s}", rep.records[0].residual, tol))
    return tuple(records), {"pair": pair.label, "period": pair.period, "seeds": args.seeds}


def _verify_wedge(args, ctx, rng) -> tuple[tuple, dict]:
    pair = args.pair
    count = args.points or 5
    tol = 1e-18 * args.tol_scale
    records = []
    for i, pt in enumerate(_sample_points(pair, count, rng)):
        w = verify.wedge_form_residual(pair, pt, ctx)
        records.append(CheckRecord.make(f"wedge 2-form residual, point {i}", w.residual, tol))
    return tuple(records), {"pair": pair.label, "points": count}


def _verify_dilogsum(args, ctx, rng) -> tuple[tuple, dict]:
    pair = args.pair
    count = args.points or 10
    tol = 1e-18 * args.tol_scale
    records = []
    for i, pt in enumerate(_sample_points(pair, count, rng)):
        s = verify.dilog_sum_over_Splus(pair, pt, ctx)
        records.append(CheckRecord.make(f"|sum d D(f)| over S+, point {i}", abs(s), tol))
    return tuple(records), {"pair": pair.label, "points": count}


def _verify_torsion(args, ctx, rng) -> tuple[tuple, dict]:
    pair = args.pair
    sols = solver.solve_all(pair, solver.SearchBudget(starts=args.starts, seed=args.seed), ctx)
    rep = bloch.torsion_check(sols, ctx, tolerance=bloch.TORSION_TOLERANCE * args.tol_scale)
    return rep.records, {"pair": pair.label, "solutions": len(sols.solutions), "starts": args.starts}


def _verify_fiveterm(args, ctx, rng) -> tuple[tuple, dict]:
    count = args.points or 1000
    tol = 1e-30 * args.tol_scale
    worst_five = mp.mpf(0)
    worst_refl = mp.mpf(0)
    worst_inv = mp.mpf(0)
    with ctx.workprec():
        for _ in range(count):
            r = 2 * np.sqrt(rng.uniform(0, 1, 2))
            t = rng.uniform(0, 2 * np.pi, 2)
            x, y = (r * np.exp(1j * t)).tolist()
            worst_five = max(worst_five, bloch.five_term_residual(x, y, ctx))
            if x != 0:
                xx = mp.mpc(x)  # derived arguments at working precision
                worst_refl = max(worst_refl,
                                 abs(bloch.bloch_wigner(xx, ctx) + bloch.bloch_wigner(1 - xx, ctx)))
                worst_inv = max(worst_inv,
                                abs(bloch.bloch_wigner(xx, ctx) + bloch.bloch_wigner(1 / xx, ctx)))
    records = (
        CheckRecord.make("five-term relation, max residual", worst_five, tol),
        CheckRecord.make("reflection D(x)+D(1-x), max residual", worst_refl, tol),
        CheckRecord.make("inversion D(x)+D(1/x), max residual", worst_inv, tol),
    )
    return records, {"points": count}


def _cmd_verify(args) -> VerificationReport:
    ctx = _ctx(args)
    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    handlers = {
        "periodicity": _verify_periodicity,
        "wedge": _verify_wedge,
        "dilogsum": _verify_dilogsum,
        "torsion": _verify_torsion,
        "fiveterm": _verify_fiveterm,
    }
    if args.what != "fiveterm" and args.pair is None:
        raise argparse.ArgumentTypeError(f"verify {args.what} requires --pair")
    records, meta = handlers[args.what](args, ctx, rng)
    return VerificationReport(f"verify {args.what}", meta, records, args.seed,
                              args.precision_bits, time.perf_counter() - t0)


def _qseries_pair(a, b, c, residues, modulus, order):
    lhs = qseries.f_abc(a, b, c, order)
    rhs = qseries.eta_like_product(residues, modulus, order, prefactor_exp=c)
    return qseries.compare_series(lhs, rhs)


def _cmd_qseries(args) -> VerificationReport:
    import json as _json

    t0 = time.perf_counter()
    if args.what == "rr":
        order = args.N or 200
        rep1 = _qseries_pair([[2]], RR_FIRST["B"], RR_FIRST["C"], RR_FIRST["residues"], 5, order)
        rep2 = _qseries_pair([[2]], RR_SECOND["B"], RR_SECOND["C"], RR_SECOND["residues"], 5, order)
        records = tuple(
            CheckRecord.make(f"{name}: {r.name}", r.residual, r.tolerance)
            for name, rep in (("first identity", rep1), ("second identity", rep2))
            for r in rep.records
        )
        meta = {"order": order, "prefactors": ["-1/60", "11/60"]}
    elif args.what == "ag":
        order = args.N or 100
        rep = _qseries_pair(AG_R2["A"], [0, 0], Fraction(0), AG_R2["residues"], 7, order)
        records = rep.records
        meta = {"order": order, "matrix": AG_R2["A"], "modulus": 7, "residues": list(AG_R2["residues"])}
    else:
        order = args.N or 100
        if not args.matrix:
            raise argparse.ArgumentTypeError("qseries custom requires --matrix")
        a = _json.loads(args.matrix)
        b = _json.loads(args.b) if args.b else [0] * len(a)
        c = Fraction(args.c)
        series = qseries.f_abc(a, b, c, order)
        print(series.head(12))
        meta = {"order": order, "series": series.to_json_obj()}
        records = ()
        if args.residues and args.modulus:
            residues = tuple(int(v) for v in args.residues.split(","))
            rep = _qseries_pair(a, b, c, residues, args.modulus, order)
            records = rep.records
            meta.update(rep.metadata)
    return VerificationReport(f"qseries {args.what}", meta, records, args.seed, 0,
                              time.perf_counter() - t0)


def _cmd_report(args) -> VerificationReport:
    ctx = _ctx(args)
    rng = np.random.default_rng(args.seed)
    pair = args.pair
    t0 = time.perf_counter()
    records = []
    meta = {"pair": pair.label, "matrix": nahm_matrix(pair.x, pair.xp).to_json_obj()}

    sol = solver.solve_positive(pair, ctx)
    records.append(CheckRecord.make("positive solution residual", sol.residual,
                                    ctx.tau_res * args.tol_scale))
    probe = bloch.central_charge_probe(pair, ctx)
    meta["central_charge"] = str(probe.rational)
    records.append(CheckRecord.make(f"central-charge probe vs {probe.rational}", probe.error,
                                    1e-20 * args.tol_scale))

    sols = solver.solve_all(pair, solver.SearchBudget(starts=args.starts, seed=args.seed), ctx)
    meta["solutions_found"] = len(sols.solutions)
    records.extend(bloch.torsion_check(sols, ctx,
                                       tolerance=bloch.TORSION_TOLERANCE * args.tol_scale).records)

    for s in range(args.seeds):
        y = rng.uniform(0.5, 2.0, pair.n)
        traj = ysystem.iterate(pair, list(y), 2 * pair.period, ctx)
        rep = ysystem.check_periodicity(traj, ctx)
        records.append(CheckRecord.make(f"periodicity, seed {s}", rep.records[0].residual,
                                        ctx.tau_eq * args.tol_scale))

    for i, pt in enumerate(_sample_points(pair, args.points, rng)):
        w = verify.wedge_form_residual(pair, pt, ctx)
        records.append(CheckRecord.make(f"wedge residual, point {i}", w.residual,
                                        1e-18 * args.tol_scale))
        s = verify.dilog_sum_over_Splus(pair, pt, ctx)
        records.append(CheckRecord.make(f"|sum d D(f)|, point {i}", abs(s), 1e-18 * args.tol_scale))

    five_args = argparse.Namespace(points=200, **{k: getattr(args, k) for k in ("tol_scale",)})
    five_records, _ = _verify_fiveterm(five_args, ctx, rng)
    records.extend(five_records)
    return VerificationReport("report", meta, tuple(records), args.seed, args.precision_bits,
                              time.perf_counter() - t0)


_COMMANDS = {
    "matrix": _cmd_matrix,
    "solve": _cmd_solve,
    "verify": _cmd_verify,
    "qseries": _cmd_qseries,
    "report": _cmd_report,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = _COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AdetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in report.summary_lines():
        print(line)
    if args.json:
        report.dump_json(args.json)
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
