"""Command-line interface: analyze maps, export gap structure, run campaigns.

Exit codes: 0 pass/ok, 1 a campaign verdict of fail, 2 inconclusive,
3 usage or input errors (bad files, invalid elements, wrong map class).
"""

from __future__ import annotations

import argparse
import csv
import sys
from concurrent.futures import ThreadPoolExecutor

from . import dynamics, verifier
from .circle_maps import CoveringMap, map_from_json
from .errors import CircleDynError
from .thompson import element_from_json, element_to_json, eval_and_slope
from .thompson import compose as t_compose
from .thompson import invert as t_invert

_VERDICT_CODE = {"pass": 0, "fail": 1, "inconclusive": 2}


def _load_map(path: str) -> CoveringMap:
    with open(path) as fh:
        return map_from_json(fh.read())


def _print(payload) -> None:
    sys.stdout.write(verifier.render_json(payload) + "\n")


# -- subcommands -----------------------------------------------------------------


def _cmd_analyze(args) -> int:
    cmap = _load_map(args.map)
    rep = cmap.smoothness_report()
    mini = dynamics.minimality_test(cmap, s_max=args.s_max, probe_depth=args.probe_depth)
    points = dynamics.find_periodic_points(cmap, args.s_max)
    payload = {
        "smoothness": {
            "fixes_zero": rep.fixes_zero,
            "unit_derivative_at_zero": rep.unit_derivative_at_zero,
            "flat_second_at_zero": rep.flat_second_at_zero,
            "monotone": rep.monotone,
            "degree_two": rep.degree_two,
            "valid": rep.valid,
        },
        "minimality": {
            "verdict": mini.verdict,
            "s_max": mini.s_max,
            "probe_depth": mini.probe_depth,
            "probe_max_gap": mini.probe_max_gap,
            "witnesses": [
                {"left": iv.arc.left, "right": iv.arc.right, "period": iv.period}
                for iv in mini.witnesses
            ],
        },
        "periodic_points": [
            {
                "location": p.location,
                "period": p.period,
                "multiplier": p.multiplier,
                "class": p.classification,
                "side_left": p.side_behavior[0],
                "side_right": p.side_behavior[1],
            }
            for p in points
        ],
    }
    _print(payload)
    if args.csv:
        dynamics.periodic_to_csv(points, args.csv)
    return 0


def _cmd_lambda(args) -> int:
    cmap = _load_map(args.map)
    lam = dynamics.lambda_approx(cmap, args.depth)
    payload = {
        "depth": lam.depth,
        "n_gaps": len(lam.gaps),
        "leb_estimate": lam.leb_estimate,
        "gaps": [
            {"left": arc.left, "right": arc.right, "birth_depth": b}
            for arc, b in zip(lam.gaps, lam.births)
        ],
    }
    _print(payload)
    if args.csv:
        dynamics.lambda_to_csv(lam, args.csv)
    return 0


def _run_lemma(lemma: str, cmap: CoveringMap, args) -> verifier.LemmaReport:
    seed = args.seed
    if lemma == "L3.5":
        return verifier.verify_multiplier_growth(
            cmap,
            x0=args.x0,
            K_list=args.K if args.K else (2.0, 4.0),
            s_max=args.s_max if args.s_max is not None else 12,
            seed=seed,
        )
    if lemma == "L3.2":
        return verifier.epsilon_sequence_report(
            cmap, "nice_chain", budget=args.budget, n_max=args.n_max,
            i_max=args.i_max, seed=seed,
        )
    if lemma == "L3.4":
        return verifier.epsilon_sequence_report(
            cmap, "gap_grid", budget=args.budget, n_max=args.n_max,
            p0=args.p0, seed=seed,
        )
    if lemma == "STAR":
        return verifier.star_witnesses(
            cmap,
            s_max=args.s_max if args.s_max is not None else 6,
            n=args.refine,
            seed=seed,
        )
    if lemma == "LAMBDA_MEASURE":
        depths = (
            tuple(int(d) for d in args.depths.split(","))
            if args.depths
            else (0, 2, 4, 6, 8)
        )
        return verifier.lambda_measure_trend(cmap, depths=depths, seed=seed)
    raise CircleDynError(
        f"unknown lemma {lemma!r}; choose from {', '.join(verifier.LEMMA_TAGS)}"
    )


def _verify_csv(report: verifier.LemmaReport, path: str) -> None:
    ev = report.evidence
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        if report.lemma_id == "L3.5":
            w.writerow(["period", "min_multiplier"])
            table = ev["min_multiplier_by_period"]
            for s in sorted(table, key=int):
                w.writerow([s, "%.17g" % table[s]])
        elif report.lemma_id in ("L3.2", "L3.4"):
            w.writerow(["n", "epsilon"])
            for n, e in enumerate(ev["epsilons"]):
                w.writerow([n, "%.17g" % e])
        elif report.lemma_id == "LAMBDA_MEASURE":
            w.writerow(["depth", "leb_estimate"])
            for row in ev["table"]:
                w.writerow([row["depth"], "%.17g" % row["leb_estimate"]])
        elif report.lemma_id == "STAR":
            w.writerow(["location", "period", "slope", "verdict"])
            for row in ev["candidates"]:
                w.writerow(
                    [
                        "%.17g" % row["location"],
                        row["period"],
                        "%.17g" % row["slope"],
                        report.verdict,
                    ]
                )


def _cmd_verify(args) -> int:
    paths = list(args.maps)
    if args.csv and len(paths) > 1:
        raise CircleDynError("--csv supports a single map file")

    def one(path: str) -> verifier.LemmaReport:
        return _run_lemma(args.lemma, _load_map(path), args)

    if args.parallel and len(paths) > 1:
        with ThreadPoolExecutor(max_workers=min(8, len(paths))) as ex:
            reports = dict(zip(paths, ex.map(one, paths)))
    else:
        reports = {p: one(p) for p in paths}
    ordered = [reports[p] for p in sorted(paths)]
    if len(ordered) == 1:
        sys.stdout.write(ordered[0].to_json() + "\n")
    else:
        sys.stdout.write(
            verifier.render_json([rep.as_doc() for rep in ordered]) + "\n"
        )
    if args.csv:
        _verify_csv(ordered[0], args.csv)
    return max(_VERDICT_CODE[rep.verdict] for rep in ordered)


def _cmd_witnesses(args) -> int:
    cmap = _load_map(args.map)
    report = verifier.star_witnesses(
        cmap, s_max=args.s_max if args.s_max is not None else 6,
        n=args.refine, seed=args.seed,
    )
    sys.stdout.write(report.to_json() + "\n")
    return _VERDICT_CODE[report.verdict]


def _cmd_element(args) -> int:
    cmap = _load_map(args.map)
    with open(args.elements[0]) as fh:
        g = element_from_json(fh.read(), cmap)
    if args.action == "eval":
        if args.point is None:
            raise CircleDynError("element eval requires --point")
        q, slope = eval_and_slope(g, args.point)
        _print({"point": float(args.point), "image": q, "slope": slope})
        return 0
    if args.action == "compose":
        if len(args.elements) != 2:
            raise CircleDynError("element compose requires two element files")
        with open(args.elements[1]) as fh:
            h = element_from_json(fh.read(), cmap)
        sys.stdout.write(element_to_json(t_compose(g, h)) + "\n")
        return 0
    if args.action == "invert":
        sys.stdout.write(element_to_json(t_invert(g)) + "\n")
        return 0
    raise CircleDynError(f"unknown element action {args.action!r}")


# -- parser ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="circledyn",
        description="Degree-2 circle coverings, their piecewise-chart circle "
        "homeomorphism groups, and dynamics verification campaigns.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="smoothness, minimality, periodic table")
    pa.add_argument("map")
    pa.add_argument("--s-max", type=int, default=6, dest="s_max")
    pa.add_argument("--probe-depth", type=int, default=10, dest="probe_depth")
    pa.add_argument("--csv")
    pa.add_argument("--seed", type=int, default=0)
    pa.set_defaults(func=_cmd_analyze)

    pl = sub.add_parser("lambda", help="finite-depth invariant Cantor-set gaps")
    pl.add_argument("map")
    pl.add_argument("--depth", type=int, default=8)
    pl.add_argument("--csv")
    pl.add_argument("--seed", type=int, default=0)
    pl.set_defaults(func=_cmd_lambda)

    pv = sub.add_parser("verify", help="run one lemma campaign on one or more maps")
    pv.add_argument("lemma", choices=list(verifier.LEMMA_TAGS))
    pv.add_argument("maps", nargs="+")
    pv.add_argument("--s-max", type=int, default=None, dest="s_max")
    pv.add_argument("--x0", type=float, default=None)
    pv.add_argument("--K", type=float, action="append", default=None)
    pv.add_argument("--budget", type=int, default=dynamics.NODE_BUDGET)
    pv.add_argument("--n-max", type=int, default=6, dest="n_max")
    pv.add_argument("--i-max", type=int, default=8, dest="i_max")
    pv.add_argument("--p0", type=float, default=None)
    pv.add_argument("--refine", type=int, default=3)
    pv.add_argument("--depths", type=str, default=None)
    pv.add_argument("--csv")
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--parallel", action="store_true")
    pv.set_defaults(func=_cmd_verify)

    pw = sub.add_parser("witnesses", help="one-sided repulsion witness campaign")
    pw.add_argument("map")
    pw.add_argument("--s-max", type=int, default=None, dest="s_max")
    pw.add_argument("--refine", type=int, default=3)
    pw.add_argument("--seed", type=int, default=0)
    pw.set_defaults(func=_cmd_witnesses)

    pe = sub.add_parser("element", help="evaluate, compose, or invert elements")
    pe.add_argument("action", choices=["eval", "compose", "invert"])
    pe.add_argument("elements", nargs="+")
    pe.add_argument("--map", required=True)
    pe.add_argument("--point", type=float, default=None)
    pe.add_argument("--seed", type=int, default=0)
    pe.set_defaults(func=_cmd_element)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit 2 for usage errors; 3 is this tool's input-error
        # code and 2 is reserved for inconclusive verdicts.
        code = exc.code if isinstance(exc.code, int) else 0
        return 3 if code == 2 else code
    try:
        return args.func(args)
    except CircleDynError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
