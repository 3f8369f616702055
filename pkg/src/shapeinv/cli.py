"""Command-line entry point.

Subcommands:

  verify    run selected identity checks over one or more parameter points
            and write a JSON (or CSV) report; exit 0 iff every verdict passes,
            1 on any violation, 2 on input/config errors.
  scan      emit plot-ready CSV columns: x, epsilon(x) per requested m, and
            the partner potentials for real families.
  spectrum  run the isospectrality cross-check and report both spectra, the
            remainder R and the level mismatch as JSON.

A config file (--config, single JSON object) provides the same fields as the
flags; explicit flags win.  Numbers round-trip at 17 significant digits, and
--no-timestamp makes reports byte-identical for identical configs.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import catalog
from .conditions import (
    CHECK_NAMES,
    DEFAULT_TOL,
    TRANSLATION_TOL,
    compatibility_lhs,
    run_condition_checks,
)
from .errors import ShapeInvError, UsageError
from .spectral import check_isospectrality, partner_potentials, remainder
from .superpotential import GridSpec, ParamPoint, make_grid, with_perturbation

ALL_CHECKS = CHECK_NAMES + ("remainder", "spectrum")
_SPECTRUM_TOL = 1e-4


@dataclasses.dataclass
class RunConfig:
    family: str
    params: dict | None = None
    sample: int = 0
    seed: int = 0
    m_list: list | None = None
    checks: tuple = CHECK_NAMES
    grid_points: int = 512
    boundary_margin: float = 0.05
    pole_exclusion_radius: float = 1e-3
    tol: float = DEFAULT_TOL
    tolerances: dict | None = None
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1
    no_timestamp: bool = False
    perturb: float = 0.0
    k: int = 5
    spectrum_points: int = 4000

    def __post_init__(self):
        if self.family not in catalog.FAMILY_TAGS:
            raise UsageError(
                f"unknown family {self.family!r}; known: {', '.join(catalog.FAMILY_TAGS)}"
            )
        if not self.checks:
            raise UsageError("at least one check must be selected")
        for c in self.checks:
            if c not in ALL_CHECKS:
                raise UsageError(f"unknown check {c!r}; known: {', '.join(ALL_CHECKS)}")
        if self.tol <= 0:
            raise UsageError("tolerances must be > 0")
        for v in (self.tolerances or {}).values():
            if v <= 0:
                raise UsageError("tolerances must be > 0")
        if self.fmt not in ("json", "csv"):
            raise UsageError("format must be json or csv")
        if self.params is None and self.sample < 1:
            raise UsageError("give --params or --sample N")
        if self.jobs < 1:
            raise UsageError("jobs must be >= 1")

    def grid_spec(self) -> GridSpec:
        return GridSpec(
            n_points=self.grid_points,
            boundary_margin=self.boundary_margin,
            pole_exclusion_radius=self.pole_exclusion_radius,
        )

    def tolerance_map(self) -> dict:
        tols = {name: self.tol for name in ("compatibility", "infeld_hull",
                                            "algebra", "equivalence")}
        tols["translation"] = TRANSLATION_TOL
        tols["remainder"] = self.tol
        tols["spectrum"] = _SPECTRUM_TOL
        tols.update(self.tolerances or {})
        return tols


def _param_point(data: dict) -> ParamPoint:
    known = {"m", "c", "beta", "d", "omega", "B", "ell"}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"unknown parameter fields {sorted(unknown)}")
    if "m" not in data:
        raise UsageError("parameter record needs m")
    kwargs = {k: (int(v) if k == "ell" else float(v)) for k, v in data.items()}
    return ParamPoint(**kwargs)


def _load_params_arg(text: str) -> dict:
    path = Path(text)
    if path.exists():
        payload = json.loads(path.read_text(encoding="utf-8"))
    else:
        payload = json.loads(text)
    if not isinstance(payload, dict):
        raise UsageError("--params must be a JSON object (inline or file)")
    return payload


def _resolve_points(cfg: RunConfig) -> list[ParamPoint]:
    if cfg.params is not None:
        return [_param_point(cfg.params)]
    return catalog.sample_valid_params(cfg.family, cfg.sample, cfg.seed)


def _entry_for(cfg: RunConfig, point: ParamPoint):
    entry = catalog.get_family(cfg.family, point)
    family = entry.family
    if cfg.perturb:
        family = with_perturbation(family, "wminus-slope", cfg.perturb)
    return entry, family


def _fmt17(v: float) -> str:
    return f"{v:.17g}"


def _write_text(out: str | None, text: str) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    Path(out).write_text(text, encoding="utf-8")


def _report_skeleton(cfg: RunConfig, command: str) -> dict:
    doc = {
        "schema": "shapeinv-report-v1",
        "command": command,
        "config": {
            "family": cfg.family,
            "checks": list(cfg.checks),
            "grid_points": cfg.grid_points,
            "tolerances": cfg.tolerance_map(),
            "seed": cfg.seed,
            "sample": cfg.sample,
            "perturb": cfg.perturb,
        },
    }
    if not cfg.no_timestamp:
        doc["timestamp"] = datetime.now(timezone.utc).isoformat()
    return doc


def _verify_one(cfg: RunConfig, index: int, point: ParamPoint) -> dict:
    entry, family = _entry_for(cfg, point)
    m_list = tuple(cfg.m_list) if cfg.m_list else (point.m, point.m - 1.0, point.m - 2.0)
    condition_checks = tuple(c for c in cfg.checks if c in CHECK_NAMES)
    tols = cfg.tolerance_map()

    grid = make_grid(family, cfg.grid_spec(), m_values=m_list)
    report = run_condition_checks(
        family,
        grid,
        m_list,
        checks=condition_checks,
        tolerances=tols,
        grid_spec=cfg.grid_spec(),
        expected_ab=(entry.expected_a, entry.expected_b),
    )
    result = report.to_dict()
    result["param_index"] = index

    if "remainder" in cfg.checks:
        r, flat = remainder(family, m_list[0], grid)
        result["residuals"]["remainder_flatness"] = flat
        result["tolerances"]["remainder"] = tols["remainder"]
        result["verdicts"]["remainder"] = flat < tols["remainder"]
        result["remainder"] = r
    if "spectrum" in cfg.checks:
        iso = check_isospectrality(family, m_list[0], k=cfg.k, n_points=cfg.spectrum_points)
        result["residuals"]["spectrum_mismatch"] = iso.mismatch
        result["tolerances"]["spectrum"] = tols["spectrum"]
        result["verdicts"]["spectrum"] = iso.mismatch < tols["spectrum"]
        result["spectrum"] = {
            "plus": iso.spectrum_plus.eigenvalues.tolist(),
            "minus": iso.spectrum_minus.eigenvalues.tolist(),
            "remainder": iso.remainder_value,
            "window": list(iso.window),
        }
    result["passed"] = all(result["verdicts"].values())
    return result


def cmd_verify(cfg: RunConfig) -> int:
    points = _resolve_points(cfg)
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(lambda ip: _verify_one(cfg, *ip), enumerate(points)))
    else:
        results = [_verify_one(cfg, i, p) for i, p in enumerate(points)]
    results.sort(key=lambda r: r["param_index"])

    doc = _report_skeleton(cfg, "verify")
    doc["results"] = results
    doc["overall_pass"] = all(r["passed"] for r in results)

    if cfg.fmt == "json":
        _write_text(cfg.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["param_index,check,residual,tolerance,pass"]
        for r in results:
            for name in sorted(r["residuals"]):
                base = name
                if name.startswith("equivalence"):
                    base = "equivalence"
                elif name == "remainder_flatness":
                    base = "remainder"
                elif name == "spectrum_mismatch":
                    base = "spectrum"
                tol = r["tolerances"].get(name, r["tolerances"].get(base, cfg.tol))
                ok = r["residuals"][name] < tol
                lines.append(
                    f"{r['param_index']},{name},{_fmt17(r['residuals'][name])},{_fmt17(tol)},{ok}"
                )
        _write_text(cfg.out, "\n".join(lines) + "\n")
    return 0 if doc["overall_pass"] else 1


def cmd_scan(cfg: RunConfig) -> int:
    point = _resolve_points(cfg)[0]
    entry, family = _entry_for(cfg, point)
    m_list = tuple(cfg.m_list) if cfg.m_list else (point.m, point.m - 1.0)
    grid = make_grid(family, cfg.grid_spec(), m_values=m_list)

    columns: list[tuple[str, np.ndarray]] = [("x", grid)]
    for m in m_list:
        eps = np.asarray(compatibility_lhs(family, m, grid), dtype=complex)
        columns.append((f"eps[m={m:g}]_re", eps.real))
        columns.append((f"eps[m={m:g}]_im", eps.imag))
    if family.is_real:
        v_minus, v_plus = partner_potentials(family, m_list[0], grid)
        columns.append(("V_minus", v_minus.values))
        columns.append(("V_plus", v_plus.values))

    lines = [",".join(name for name, _ in columns)]
    for i in range(grid.size):
        lines.append(",".join(_fmt17(float(col[i])) for _, col in columns))
    _write_text(cfg.out, "\n".join(lines) + "\n")
    return 0


def cmd_spectrum(cfg: RunConfig) -> int:
    if cfg.k < 1:
        raise UsageError("k must be >= 1")
    point = _resolve_points(cfg)[0]
    entry, family = _entry_for(cfg, point)
    m = cfg.m_list[0] if cfg.m_list else point.m
    iso = check_isospectrality(family, m, k=cfg.k, n_points=cfg.spectrum_points)

    doc = _report_skeleton(cfg, "spectrum")
    doc["spectrum"] = {
        "k": cfg.k,
        "m": m,
        "window": list(iso.window),
        "grid_points": cfg.spectrum_points,
        "remainder": iso.remainder_value,
        "flatness_residual": iso.flatness_residual,
        "plus": iso.spectrum_plus.eigenvalues.tolist(),
        "plus_error_estimates": iso.spectrum_plus.error_estimates.tolist(),
        "minus": iso.spectrum_minus.eigenvalues.tolist(),
        "minus_error_estimates": iso.spectrum_minus.error_estimates.tolist(),
        "minus_shifted": (iso.spectrum_minus.eigenvalues + iso.remainder_value).tolist(),
        "mismatch": iso.mismatch,
        "tolerance": cfg.tolerance_map()["spectrum"],
    }
    doc["overall_pass"] = iso.mismatch < cfg.tolerance_map()["spectrum"]
    _write_text(cfg.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0 if doc["overall_pass"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="shapeinv",
        description="Verify shape-invariance identities of rationally extended "
                    "superpotential families and cross-validate their spectra.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="JSON config file; flags override its fields")
        sp.add_argument("--family", help="family tag, e.g. X1-radial-oscillator")
        sp.add_argument("--params", help="inline JSON object or path to one")
        sp.add_argument("--sample", type=int, default=0, metavar="N",
                        help="draw N valid parameter points instead of --params")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--m-list", dest="m_list",
                        help="comma-separated m values (default: m, m-1, m-2)")
        sp.add_argument("--checks", help=f"comma-separated subset of {','.join(ALL_CHECKS)}")
        sp.add_argument("--grid-points", dest="grid_points", type=int, default=512)
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="base residual tolerance (translation stays 1e-12)")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default=None)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--no-timestamp", dest="no_timestamp", action="store_true")
        sp.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
        sp.add_argument("--k", type=int, default=5, help="levels for spectral checks")
        sp.add_argument("--spectrum-points", dest="spectrum_points", type=int, default=4000)

    for name, descr in (
        ("verify", "run identity checks and write a report"),
        ("scan", "emit CSV samples of epsilon(x) and the partner potentials"),
        ("spectrum", "isospectrality cross-check via the constant-shift route"),
    ):
        add_common(sub.add_parser(name, help=descr))
    return p


def _config_from_args(args: argparse.Namespace, default_checks) -> RunConfig:
    file_cfg: dict = {}
    if args.config:
        path = Path(args.config)
        if not path.exists():
            raise UsageError(f"config file not found: {args.config}")
        file_cfg = json.loads(path.read_text(encoding="utf-8"))
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")

    def pick(flag_value, default, key):
        # a flag left at its default yields to the config file
        if flag_value != default:
            return flag_value
        return file_cfg.get(key, default)

    family = args.family or file_cfg.get("family")
    if not family:
        raise UsageError("--family is required (flag or config file)")

    params = _load_params_arg(args.params) if args.params else file_cfg.get("params")
    m_list = None
    if args.m_list:
        m_list = [float(v) for v in args.m_list.split(",") if v.strip()]
    elif "m_list" in file_cfg:
        m_list = [float(v) for v in file_cfg["m_list"]]

    checks = default_checks
    if args.checks:
        checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    elif "checks" in file_cfg:
        checks = tuple(file_cfg["checks"])

    grid_cfg = file_cfg.get("grid", {})
    return RunConfig(
        family=family,
        params=params,
        sample=pick(args.sample, 0, "sample"),
        seed=pick(args.seed, 0, "seed"),
        m_list=m_list,
        checks=checks,
        grid_points=args.grid_points if args.grid_points != 512 else grid_cfg.get("n_points", 512),
        boundary_margin=grid_cfg.get("boundary_margin", 0.05),
        pole_exclusion_radius=grid_cfg.get("pole_exclusion_radius", 1e-3),
        tol=pick(args.tol, DEFAULT_TOL, "tol"),
        tolerances=file_cfg.get("tolerances"),
        fmt=args.fmt or file_cfg.get("format", "json"),
        out=args.out or file_cfg.get("out"),
        jobs=pick(args.jobs, 1, "jobs"),
        no_timestamp=args.no_timestamp or file_cfg.get("no_timestamp", False),
        perturb=pick(args.perturb, 0.0, "perturb"),
        k=pick(args.k, 5, "k"),
        spectrum_points=pick(args.spectrum_points, 4000, "spectrum_points"),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            cfg = _config_from_args(args, CHECK_NAMES)
            return cmd_verify(cfg)
        if args.command == "scan":
            cfg = _config_from_args(args, ("compatibility",))
            return cmd_scan(cfg)
        cfg = _config_from_args(args, ("spectrum",))
        return cmd_spectrum(cfg)
    except ShapeInvError as exc:
        print(f"shapeinv: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"shapeinv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
