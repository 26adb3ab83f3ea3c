"""Sweep orchestration and report emission for the command line.

A sweep expands a :class:`SweepConfig` into parameter tuples, runs one
single-threaded case per tuple (optionally across worker processes), and
assembles the results sorted by tuple so the report does not depend on the
worker count.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import binary_forms, collinear, fatpoint
from .fatpoint import FatPointScheme, fraction_text

log = logging.getLogger(__name__)

MODES = ("classify", "table", "resurgence", "verify-collinear", "verify-splittings", "sdefect", "decompose")

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


CONFIG_KEYS = frozenset(
    ["mults", "n_ambient", "m_max", "r_max", "degree_bound", "out", "jobs", "format", "form", "points", "collinear"]
)


class ConfigError(ValueError):
    pass


def parse_range(text: str) -> Tuple[int, ...]:
    """``"3"`` -> (3,), ``"1-4"`` or ``"1:4"`` -> (1, 2, 3, 4)."""
    text = text.strip()
    for sep in ("-", ":"):
        if sep in text[1:]:
            lo, hi = text.split(sep, 1)
            lo_i, hi_i = int(lo), int(hi)
            if lo_i > hi_i or lo_i < 0:
                raise ConfigError(f"bad range {text!r}")
            return tuple(range(lo_i, hi_i + 1))
    value = int(text)
    if value < 0:
        raise ConfigError(f"negative value {text!r}")
    return (value,)


def parse_mults(text: str) -> Tuple[Tuple[int, ...], ...]:
    try:
        return tuple(parse_range(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise ConfigError(f"cannot parse multiplicities {text!r}: {exc}") from exc


@dataclass
class SweepConfig:
    mode: str
    mults: Tuple[Tuple[int, ...], ...] = ()
    n_ambient: Tuple[int, ...] = (2,)
    m_max: int = 12
    r_max: int = 12
    degree_bound: int = 12
    out: Optional[str] = None
    jobs: int = 1
    fmt: str = "json"
    form: Optional[str] = None
    points: Tuple[Tuple[Fraction, Fraction], ...] = ()
    seed: int = 0
    figures: bool = True
    timings: bool = False
    collinear: bool = False

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        for name in ("m_max", "r_max", "degree_bound", "jobs"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name.replace('_', '-')} must be positive")
        if any(n < 2 for n in self.n_ambient) or not self.n_ambient:
            raise ConfigError("ambient dimension must be at least 2")
        if self.fmt not in ("json", "csv"):
            raise ConfigError(f"unknown format {self.fmt!r}")
        if self.mode == "decompose":
            if not self.form:
                raise ConfigError("decompose needs --form")
            if self.mults and (len(self.mults) != len(self.points) or any(len(r) != 1 for r in self.mults)):
                raise ConfigError("decompose takes one multiplicity per point in --points")
            return
        if not self.mults:
            raise ConfigError(f"{self.mode} needs --mults")
        if self.mode in ("classify", "verify-splittings") and len(self.mults) != 3:
            raise ConfigError(f"{self.mode} takes exactly three multiplicities")
        if self.mode not in ("verify-collinear",):
            top = max(self.n_ambient) + 1
            if len(self.mults) > top:
                raise ConfigError(f"at most {top} coordinate points fit in P^{max(self.n_ambient)}")
        if self.fmt == "csv" and self.mode not in ("table", "resurgence"):
            raise ConfigError("csv output is only available for table and resurgence")

    def echo(self) -> dict:
        """Config as recorded in reports; worker count and paths are left out
        so that output is identical across parallelism settings."""
        d = {
            "mode": self.mode,
            "mults": [list(r) for r in self.mults],
            "n_ambient": list(self.n_ambient),
            "m_max": self.m_max,
            "r_max": self.r_max,
            "degree_bound": self.degree_bound,
        }
        if self.mode == "decompose":
            d["form"] = self.form
            d["points"] = [[str(c), str(e)] for c, e in self.points]
        if self.mode == "verify-collinear":
            d["seed"] = self.seed
        if self.mode == "classify":
            d["collinear"] = self.collinear
        return d


def read_config_file(path: str) -> Dict[str, str]:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out: Dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value
    return out


# ---------------------------------------------------------------- cases


def _case_keys(cfg: SweepConfig) -> List[tuple]:
    keys = []
    for N in cfg.n_ambient:
        for mults in cartesian(*cfg.mults):
            keys.append((N,) + tuple(mults))
    return sorted(set(keys))


def _case_classify(cfg: SweepConfig, N: int, mults: Tuple[int, ...]) -> dict:
    res = fatpoint.classify(*mults, collinear=cfg.collinear)
    out = {"case": [N, *mults], **res.to_json(), "counterexamples": []}
    a, b, c = res.sorted_mults
    out["alpha"] = fatpoint.alpha_three_points(a, b, c)
    if a > 0:
        out["waldschmidt"] = fraction_text(fatpoint.waldschmidt_three_points(a, b, c))
    plane = fatpoint.alpha(fatpoint.ideal_of(FatPointScheme.of((a, b, c), 2)))
    if plane != out["alpha"]:
        out["counterexamples"].append({"alpha_closed_form": out["alpha"], "alpha_computed": plane})
    return out


def _case_table(cfg: SweepConfig, N: int, mults: Tuple[int, ...]) -> dict:
    Z = FatPointScheme.of(mults, N)
    table = fatpoint.containment_table(Z, cfg.m_max, cfg.r_max)
    bad = [{"monotonicity": list(v)} for v in table.monotonicity_violations()]
    bad += [
        {"els_bound": [e.m, e.r]} for e in table.noncontainments() if Z.mults and e.m >= N * e.r
    ]
    return {"case": [N, *mults], "scheme": Z.to_json(), "table": table.rows(), "counterexamples": bad}


def _case_resurgence(cfg: SweepConfig, N: int, mults: Tuple[int, ...]) -> dict:
    Z = FatPointScheme.of(mults, N)
    rep = fatpoint.resurgence_report(Z, cfg.m_max, cfg.r_max)
    out = {"case": [N, *mults], **rep.to_json()}
    bad = [{"above_certified": list(c)} for c in rep.counterexamples]
    bad += [{"monotonicity": list(v)} for v in rep.table.monotonicity_violations()]
    if rep.classification is fatpoint.Classification.ODD_SUM:
        s = sum(m for _, m in Z.mults)
        for m, r in fatpoint.alpha_schedule_pairs(s, cfg.m_max, cfg.r_max):
            if rep.table.lookup(m, r).contained:
                bad.append({"alpha_schedule": [m, r]})
    out["counterexamples"] = bad
    return out


def _case_sdefect(cfg: SweepConfig, N: int, mults: Tuple[int, ...]) -> dict:
    Z = FatPointScheme.of(mults, N)
    res = fatpoint.sdefect_zero_upto(Z, cfg.m_max)
    out = {
        "case": [N, *mults],
        "scheme": Z.to_json(),
        "sdefect_zero": res.zero,
        "failing_m": res.failing_m,
        "witness": list(res.witness) if res.witness else None,
        "counterexamples": [],
    }
    positive = [m for _, m in Z.mults]
    if len(positive) <= 3:
        cls = fatpoint.classify(*(positive + [0] * (3 - len(positive)))).classification
        out["classification"] = cls.value
        expected_zero = cls is not fatpoint.Classification.ODD_SUM
        if expected_zero and not res.zero:
            out["counterexamples"].append({"unexpected_defect": res.failing_m})
        if not expected_zero and cfg.m_max >= 2 and (res.zero or res.failing_m > 2):
            out["counterexamples"].append({"missing_defect_by": 2})
    else:
        # no closed form beyond three points; report only
        out["classification"] = None
    return out


def _case_splittings(cfg: SweepConfig, N: int, mults: Tuple[int, ...]) -> dict:
    m0, m1, m2 = mults
    checks: Dict[str, bool] = {}
    out = {"case": [N, *mults], "checks": checks, "counterexamples": []}
    Z = FatPointScheme.of(mults, N)
    checks["cond_equivalence"] = not fatpoint.cond_mismatches(Z, cfg.degree_bound)
    if m2 >= max(m0, m1):
        if m0 + m1 <= m2:
            checks["split_leq"] = fatpoint.verify_split_leq(mults, N)
        else:
            checks["split_gt"] = fatpoint.verify_split_gt(mults, N)
            if sum(mults) % 2 == 1:
                s = sum(mults)
                for k in range(1, cfg.m_max + 1):
                    checks[f"symbolic_factorization k={k}"] = fatpoint.verify_symbolic_factorization(mults, k, N)
                    for i in range(1, k):
                        if i % 2 == 1 and (k - i) % 2 == 1:
                            continue
                        checks[f"symbolic_multiplicativity k={k} i={i}"] = (
                            fatpoint.verify_symbolic_multiplicativity(mults, k, i, N)
                        )
                # schedule and W exponents grow with s; keep them under m_max
                for r in range(0, min(s, cfg.m_max) + 1):
                    checks[f"schedule q=0 r={r}"] = fatpoint.verify_schedule(mults, 0, r, N)
                if 1 + s <= cfg.m_max:
                    checks["schedule q=1 r=0"] = fatpoint.verify_schedule(mults, 1, 0, N)
                if min(mults) >= 1 and s <= cfg.m_max:
                    checks["W_claim"] = fatpoint.verify_WV_claims(m0, m1, m2, None, N)
    out["bound_note"] = f"exponents checked up to {cfg.m_max} only"
    out["counterexamples"] = [name for name, ok in checks.items() if not ok]
    return out


def _random_forms(rng: random.Random, n: int) -> Tuple[Tuple[Fraction, Fraction], ...]:
    forms: List[Tuple[Fraction, Fraction]] = []
    while len(forms) < n:
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        d = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if (c, d) == (0, 0) or any(c * f[1] == f[0] * d for f in forms):
            continue
        forms.append((c, d))
    return tuple(forms)


def _case_collinear(cfg: SweepConfig, N: int, mults: Tuple[int, ...]) -> dict:
    Z = collinear.LineScheme.standard(mults, N)
    checks: Dict[str, bool] = {}
    for m in range(1, cfg.m_max + 1):
        checks[f"line_splitting m={m}"] = collinear.verify_line_splitting(Z, m)
    checks[f"symbolic_equals_ordinary m<={cfg.m_max}"] = collinear.verify_theorem_collinear(
        Z, cfg.m_max
    )
    # specialise the points and compare against the binary-form criterion
    rng = random.Random(f"{cfg.seed}:{N}:{mults}")
    specialized = collinear.LineScheme(N, _random_forms(rng, len(mults)), tuple(mults))
    agree = True
    for g in collinear.canonical_generators(specialized, 1):
        if g.degree > 8:
            continue
        if collinear.gm_member_via_forms(g, specialized, 1) is not True:
            agree = False
    checks["binary_form_agreement"] = agree
    return {
        "case": [N, *mults],
        "scheme": Z.to_json(),
        "bound_note": f"splittings checked for m <= {cfg.m_max} only",
        "checks": checks,
        "counterexamples": [name for name, ok in checks.items() if not ok],
    }


def _case_decompose(cfg: SweepConfig, N: int, _: Tuple[int, ...]) -> dict:
    F = binary_forms.parse_poly(cfg.form, N + 1)
    out = {
        "case": [N],
        "form": binary_forms.format_poly(F),
        "zero_form": F.is_zero,
        "decomposition": binary_forms.decomposition_json(binary_forms.decompose(F)),
        "counterexamples": [],
    }
    if cfg.points:
        mults = [r[0] for r in cfg.mults] if cfg.mults else [1] * len(cfg.points)
        checks = []
        for form, k in zip(cfg.points, mults):
            by_forms = binary_forms.poly_membership(F, form, k)
            order = binary_forms.vanishing_order(F, binary_forms.point_of_form(form, N + 1))
            checks.append({"form": [str(form[0]), str(form[1])], "mult": k,
                           "member": by_forms, "vanishing_order": min(order, 10**6)})
            if by_forms != (order >= k):
                out["counterexamples"].append({"oracle_disagrees": [str(form[0]), str(form[1]), k]})
        out["membership"] = checks
    return out


_RUNNERS: Dict[str, Callable[[SweepConfig, int, Tuple[int, ...]], dict]] = {
    "classify": _case_classify,
    "table": _case_table,
    "resurgence": _case_resurgence,
    "sdefect": _case_sdefect,
    "verify-splittings": _case_splittings,
    "verify-collinear": _case_collinear,
    "decompose": _case_decompose,
}


def _run_case(args: Tuple[SweepConfig, tuple]) -> Tuple[tuple, dict, float]:
    cfg, key = args
    t0 = time.perf_counter()
    result = _RUNNERS[cfg.mode](cfg, key[0], tuple(key[1:]))
    return key, result, time.perf_counter() - t0


def run(cfg: SweepConfig) -> dict:
    """Execute a sweep and return the report as a JSON-ready dict."""
    cfg.validate()
    if cfg.mode == "decompose":
        keys = [(N,) for N in cfg.n_ambient]
    else:
        keys = _case_keys(cfg)
    work = [(cfg, k) for k in keys]
    t0 = time.perf_counter()
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            done = list(pool.map(_run_case, work))
    else:
        done = [_run_case(w) for w in work]
    done.sort(key=lambda t: t[0])
    cases = [res for _, res, _ in done]
    counter = [{"case": res["case"], "detail": c} for res in cases for c in res["counterexamples"]]
    report = {
        "config": cfg.echo(),
        "cases": cases,
        "counterexamples": counter,
        "ok": not counter,
    }
    elapsed = time.perf_counter() - t0
    log.info("%s: %d cases in %.2fs", cfg.mode, len(cases), elapsed)
    if cfg.timings:
        report["timings"] = {
            "total_seconds": round(elapsed, 6),
            "per_case": [[list(k), round(dt, 6)] for k, _, dt in done],
        }
    return report


# ---------------------------------------------------------------- output


def _witness_text(w: Optional[Sequence[int]]) -> str:
    return "" if w is None else "(" + ",".join(str(x) for x in w) + ")"


def table_csv(rows: Sequence[Sequence]) -> str:
    """CSV text with header ``m,r,contained,witness`` and LF line endings."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "r", "contained", "witness"])
    for m, r, contained, witness in rows:
        writer.writerow([m, r, "true" if contained else "false", _witness_text(witness)])
    return buf.getvalue()


def emit_csv(table: fatpoint.ContainmentTable, path: str | os.PathLike) -> None:
    Path(path).write_text(table_csv(table.rows()), encoding="utf-8", newline="")


def _scalar(v) -> bool:
    return not isinstance(v, (dict, list))


def _is_flat(value: list) -> bool:
    """Scalars, or lists of scalars, stay on one line."""
    return all(_scalar(v) or (isinstance(v, list) and all(map(_scalar, v))) for v in value)


def _dump(value, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_dump(v, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(value, list) and value and not _is_flat(value):
        items = [inner + _dump(v, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(value, separators=(", ", ": "))


def report_json(report: dict) -> str:
    """Indented JSON with short scalar lists kept on one line."""
    return _dump(report, 0) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return report_json(report)
    cases = report["cases"]
    if len(cases) != 1:
        raise ConfigError("csv output needs exactly one scheme")
    return table_csv(cases[0]["table"])
