"""``fatpoints`` command line.

Exit codes: 0 all checks passed, 1 counterexample found, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from . import sweep
from .sweep import EXIT_COUNTEREXAMPLE, EXIT_IO, EXIT_OK, EXIT_USAGE, ConfigError, SweepConfig

log = logging.getLogger("fatpoints")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 already; keep the message terse
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; flags given here override it")
    p.add_argument("--mults", help="comma list, each entry a value or a range a-b")
    p.add_argument("--n-ambient", help="ambient dimension N, or a range a-b")
    p.add_argument("--m-max", type=int)
    p.add_argument("--r-max", type=int)
    p.add_argument("--degree-bound", type=int)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int)
    p.add_argument("--format", dest="fmt", choices=("json", "csv"))
    p.add_argument("--no-figures", action="store_true", help="skip PNG figures next to --out")
    p.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fatpoints", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    helps = {
        "classify": "closed-form resurgence class of three fat points",
        "table": "containment table I^(m) in I^r",
        "resurgence": "containment grid plus certified resurgence",
        "sdefect": "compare symbolic and ordinary powers",
        "verify-collinear": "splitting and symbolic=ordinary for points on a line",
        "verify-splittings": "product decompositions and containment schedules",
        "decompose": "split a form into binary-form coefficients",
    }
    for mode in sweep.MODES:
        p = sub.add_parser(mode, help=helps[mode])
        _add_common(p)
        if mode == "classify":
            p.add_argument("--collinear", action="store_true")
        if mode == "decompose":
            p.add_argument("--form", help="e.g. '3/2*x0^2*x2 - x1^2*x2'")
            p.add_argument("--points", help="linear forms c:d of points on the line, comma separated")
    return parser


def _parse_points(text: str) -> tuple:
    pts = []
    for item in text.split(","):
        c, d = item.split(":")
        pts.append((Fraction(c), Fraction(d)))
    return tuple(pts)


def config_from_args(ns: argparse.Namespace) -> SweepConfig:
    values = {}
    if ns.config:
        values.update(sweep.read_config_file(ns.config))
        if "format" in values:
            values["fmt"] = values.pop("format")
    for key in ("mults", "n_ambient", "m_max", "r_max", "degree_bound", "out", "jobs", "fmt", "form", "points"):
        v = getattr(ns, key, None)
        if v is not None:
            values[key] = v
    cfg = SweepConfig(mode=ns.mode)
    try:
        if "mults" in values:
            cfg.mults = sweep.parse_mults(str(values["mults"]))
        if "n_ambient" in values:
            cfg.n_ambient = sweep.parse_range(str(values["n_ambient"]))
        for key in ("m_max", "r_max", "degree_bound", "jobs"):
            if key in values:
                setattr(cfg, key, int(values[key]))
        if "points" in values:
            cfg.points = _parse_points(str(values["points"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(str(exc)) from exc
    cfg.out = values.get("out")
    cfg.fmt = values.get("fmt", "json")
    cfg.form = values.get("form")
    cfg.figures = not ns.no_figures
    cfg.timings = ns.timings
    cfg.collinear = bool(getattr(ns, "collinear", False)) or str(values.get("collinear", "")).lower() in ("1", "true", "yes")
    seed = os.environ.get("FATPOINT_SEED")
    if seed:
        try:
            cfg.seed = int(seed)
        except ValueError as exc:
            raise ConfigError(f"FATPOINT_SEED must be an integer, got {seed!r}") from exc
    return cfg


def _write_figures(report: dict, out: Path) -> List[Path]:
    from . import plotting

    written = []
    cases = report["cases"]
    for case in cases:
        if "table" not in case:
            continue
        tag = "" if len(cases) == 1 else "_" + "_".join(str(x) for x in case["case"])
        written.append(plotting.containment_figure(case, out.with_name(f"{out.stem}{tag}.png")))
    return written


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if ns.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = config_from_args(ns)
        report = sweep.run(cfg)
        text = sweep.render(report, cfg.fmt)
    except ConfigError as exc:
        print(f"fatpoints: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"fatpoints: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if cfg.out:
            out = Path(cfg.out)
            out.write_text(text, encoding="utf-8", newline="")
            if cfg.figures and cfg.mode in ("table", "resurgence"):
                for path in _write_figures(report, out):
                    log.info("wrote %s", path)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"fatpoints: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK if report["ok"] else EXIT_COUNTEREXAMPLE


if __name__ == "__main__":
    sys.exit(main())
