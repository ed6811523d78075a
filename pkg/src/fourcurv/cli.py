"""Command-line front end.

Subcommands:

    decompose   block-decompose an operator JSON file and report the
                saturation defect of the pointwise Weyl bound
    certify     certify the global sign of sectional curvature
    model       emit a catalog model as JSON
    chart       finite-difference curvature of an analytic chart, or a
                step-refinement convergence study
    page        the Page-metric pipeline: Einstein verification, negative
                curvature certification, characteristic-number quadrature
    geo         exact geography flags of one (chi, tau) pair or a CSV batch
    scan        CSV table of geography flags over a lattice triangle

Exit codes: 0 success; 1 input or validation error; 2 numerical failure or
an Inconclusive certification.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

import numpy as np

from . import __version__, curvops, geography, jsonio, models, numgeom, page, secsign
from .errors import FourcurvError, NonConvergentError

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2


def _parse_params(pairs: list[str] | None) -> dict[str, float]:
    params: dict[str, float] = {}
    for item in pairs or []:
        if "=" not in item:
            raise ValueError(f"--param expects k=v, got {item!r}")
        key, _, value = item.partition("=")
        params[key.strip()] = float(value)
    return params


def _print_report(data: dict, human: bool) -> None:
    if human:
        for key, value in data.items():
            print(f"{key}: {value}")
    else:
        sys.stdout.write(jsonio.dumps(data))


def _cmd_decompose(args) -> int:
    op = jsonio.load_operator(args.input)
    d = curvops.decompose(op)
    out = {"decomposition": d.to_dict(), "glReport": curvops.gl_defect(d).to_dict()}
    try:
        out["charDensities"] = curvops.char_densities(d).to_dict()
    except FourcurvError:
        out["charDensities"] = None
    _print_report(out, args.format == "human")
    return EXIT_OK


def _cmd_certify(args) -> int:
    op = jsonio.load_operator(args.input)
    cfg = secsign.CertifyConfig(restarts=args.restarts, grid_size=args.grid,
                                seed=args.seed, tolerance=args.tolerance)
    cert = secsign.certify_sec_sign(op, cfg)
    _print_report(cert.to_dict(), args.format == "human")
    if cert.verdict is secsign.Verdict.INCONCLUSIVE:
        return EXIT_NUMERIC
    return EXIT_OK


def _cmd_model(args) -> int:
    model = models.catalog(args.name, _parse_params(args.param))
    _print_report(model.to_dict(), args.format == "human")
    return EXIT_OK


def _cmd_chart(args) -> int:
    chart = models.chart_for(args.name, _parse_params(args.param))
    if args.study:
        point = _parse_point(args.point) if args.point else _chart_default_point(chart)
        steps = [float(s) for s in args.steps.split(",")]
        study = numgeom.convergence_study(chart, point, steps)
        _print_report(study.to_dict(), args.format == "human")
        return EXIT_OK
    if not args.point:
        raise ValueError("chart evaluation needs --point x1,x2,x3,x4")
    point = _parse_point(args.point)
    pc = numgeom.curvature_at(chart, point, step=args.step)
    _print_report(pc.to_dict(), args.format == "human")
    return EXIT_OK


def _parse_point(text: str) -> np.ndarray:
    parts = [float(p) for p in text.split(",")]
    if len(parts) != 4:
        raise ValueError("--point needs exactly 4 comma-separated coordinates")
    return np.array(parts)


def _chart_default_point(chart: numgeom.MetricChart) -> np.ndarray:
    return np.array([0.5 * (lo + hi) for lo, hi in chart.domain])


def _cmd_page(args) -> int:
    m = page.page_metric()
    lower, upper = m.endpoint_data()
    out: dict = {
        "metadata": dict(m.metadata),
        "endpointData": {"lower": lower.to_dict(), "upper": upper.to_dict()},
    }
    if args.verify:
        radii = page.chebyshev_radii(m, args.radii)
        check = page.verify_einstein(m, radii)
        out["einstein"] = check.to_dict()
    if args.negcurv:
        report = page.certify_negative_curvature(m)
        out["negativeCurvature"] = report.to_dict()
    if args.integrate:
        numbers = page.integrate_char_numbers(m, nodes=args.nodes)
        out["charNumbers"] = numbers.to_dict()
    if len(out) == 2:
        raise ValueError("page needs at least one of --verify, --negcurv, --integrate")
    _print_report(out, args.format == "human")
    return EXIT_OK


def _cmd_geo(args) -> int:
    if args.csv:
        from pathlib import Path

        reader = csv.reader(io.StringIO(Path(args.csv).read_text(encoding="utf-8")))
        out = io.StringIO()
        out.write(geography.CSV_HEADER + "\n")
        for row in reader:
            if not row or row[0].strip().lower() == "chi":
                continue
            p = geography.GeoPoint(int(row[0]), int(row[1]))
            rep = geography.report(p)
            out.write(",".join([
                str(p.chi), str(p.tau),
                *["true" if flag else "false" for flag in
                  (rep.gromov_luck, rep.einstein_nonpos_strict, rep.bmy, rep.bmy_equality)],
                str(rep.c1sq),
                "true" if rep.both_orientations_complex_possible else "false",
            ]) + "\n")
        sys.stdout.write(out.getvalue())
        return EXIT_OK
    if args.chi is None or args.tau is None:
        raise ValueError("geo needs --chi and --tau (or --csv batch input)")
    p = geography.GeoPoint(args.chi, args.tau)
    out = {"chi": p.chi, "tau": p.tau}
    out.update(geography.report(p).to_dict())
    out["latticeObstruction"] = geography.self_dual_lattice_obstruction(True).to_dict()
    _print_report(out, args.format == "human")
    return EXIT_OK


def _cmd_scan(args) -> int:
    sys.stdout.write(geography.scan_csv(args.chi_max))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourcurv",
        description="Numerical curvature algebra of oriented Einstein 4-manifolds.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--json", dest="format", action="store_const", const="json",
                       default="json", help="emit JSON (default)")
        p.add_argument("--format", choices=("json", "human"), default="json")

    p = sub.add_parser("decompose",
                       help="decompose an operator into s, Weyl halves and Ricci block")
    p.add_argument("-i", "--input", required=True, help="operator JSON file")
    add_format(p)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("certify", help="certify the sign of sectional curvature")
    p.add_argument("-i", "--input", required=True, help="operator JSON file")
    p.add_argument("--restarts", type=int, default=16)
    p.add_argument("--grid", type=int, default=64)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=None)
    add_format(p)
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("model", help="emit a catalog model operator")
    p.add_argument("name", choices=models.model_names())
    p.add_argument("--param", action="append", metavar="K=V")
    add_format(p)
    p.set_defaults(func=_cmd_model)

    p = sub.add_parser("chart", help="finite-difference curvature of an analytic chart")
    p.add_argument("name", choices=models.chart_names())
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--point", help="x1,x2,x3,x4")
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--study", action="store_true", help="run a step-refinement study")
    p.add_argument("--steps", default="0.02,0.01,0.005",
                   help="comma-separated steps for --study")
    add_format(p)
    p.set_defaults(func=_cmd_chart)

    p = sub.add_parser("page", help="Page metric verification pipeline")
    p.add_argument("--verify", action="store_true", help="Einstein residual check")
    p.add_argument("--negcurv", action="store_true", help="negative-curvature certificate")
    p.add_argument("--integrate", action="store_true", help="integrate chi and tau")
    p.add_argument("--radii", type=int, default=32)
    p.add_argument("--nodes", type=int, default=48)
    add_format(p)
    p.set_defaults(func=_cmd_page)

    p = sub.add_parser("geo", help="exact geography flags of a (chi, tau) pair")
    p.add_argument("--chi", type=int)
    p.add_argument("--tau", type=int)
    p.add_argument("--csv", help="batch mode: CSV file with chi,tau rows")
    add_format(p)
    p.set_defaults(func=_cmd_geo)

    p = sub.add_parser("scan", help="CSV table of geography flags")
    p.add_argument("--chi-max", type=int, required=True)
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonConvergentError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FourcurvError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
