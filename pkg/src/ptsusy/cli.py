"""Command-line front end: spectra, identity checks, map reports, dumps.

Subcommands:
    spectrum   analytic towers, the chain spectrum with degeneracies,
               and an optional finite-difference cross-check
    verify     the identity battery for one family and chain choice
    ssusy-map  gauge function, superpotentials, and the constant c
    eig-dump   matrix and eigenvalue text dumps for external checking

Options come from flags or an INI config file (--config); flags win.
Config sections and keys mirror the long flag names:

    [model]  family, alpha, delta, a, b, gamma, limiting, psusy, choice
    [grid]   half_width, npoints, order
    [check]  cutoff, max_levels, numeric, im_tol, mass_tol, only
    [output] format, path, figures, matrix_path, plot_data

Exit codes: 0 everything requested passed, 1 a check or spectrum match
failed, 2 invalid input (bad flags, config, or parameter constraint).
"""

from __future__ import annotations

import argparse
import configparser
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import psusy, ssusy, susy
from .errors import ParameterError, PtsusyError
from .numerics import (
    Grid,
    discretize_hamiltonian,
    eig_complex,
    match_spectrum,
    run_jobs,
)
from .potentials import (
    Family,
    OscillatorParams,
    Params,
    PoschlTellerParams,
    ScarfParams,
    bound_levels,
    eigenfunction,
    family_of,
    potential,
    pt_symmetry_deviation,
    validate,
)
from .probes import default_probes
from .psusy import Choice, build_triplet, merged_spectrum
from .susy import SuperpotentialSpec, Variant, available_variants

__all__ = ["main"]

SPECTRUM_SCHEMA = "ptsusy.spectrum/1"
VERIFY_SCHEMA = "ptsusy.verify/1"
SSUSY_SCHEMA = "ptsusy.ssusy-map/1"
EIG_SCHEMA = "ptsusy.eig/1"

# One table rules every check (also printed in --help).  The trilinear
# bound is relative to the operator scale and holds for the default
# h = 0.01 battery; it shrinks as h^2 on finer grids.
TOLERANCES = {
    "pt-symmetry": 1e-12,
    "constraint": 1e-10,
    "annihilation": 1e-10,
    "factorization": 1e-10,
    "consistency-w": 1e-12,
    "quasi-hamiltonian": 1e-6,
    "algebra-nilpotent": 1e-12,
    "algebra-trilinear": 5e-3,
}
RATIO_WINDOW = (3.5, 4.5)

CHECK_NAMES = (
    "pt-symmetry",
    "constraint",
    "annihilation",
    "factorization",
    "consistency",
    "quasi-hamiltonian",
    "algebra",
    "intertwine-1",
    "intertwine-2",
)

# default numerical grids per family: (half-width, interior points);
# the oscillator half-width tracks delta so the contour shift never
# outruns the box
_FAMILY_GRID = {
    Family.OSCILLATOR: (None, 1500),
    Family.POSCHL_TELLER: (26.0, 2400),
    Family.SCARF_II: (16.0, 1600),
}

_EPILOG = """\
default check tolerances (verify prints measured vs allowed per line):
  pt-symmetry         1e-12   max |conj(V(-x)) - V(x)|
  constraint          1e-10   max |W2^2 - W1^2 - W1' - W2' - c|
  annihilation        1e-10   max |A psi| / max |psi|, per variant
  factorization       1e-10   second-order charge vs first-order product
  consistency (W)     1e-12   gauge-route W_i vs chain W_i, pointwise
  consistency (c)     exact   c = c1 - c2 as floating-point identity
  quasi-hamiltonian   1e-6    |K f - (H^2 - c^2/4) f| on Gaussian probes
  algebra nilpotency  1e-12   Q^3 F, structural zero
  algebra trilinear   5e-3    relative residual at the default h = 0.01
  intertwine ratios   3.5-4.5 residual decay per grid halving (order 2)
"""


# ---------------------------------------------------------------------------
# option resolution (flags > config file > defaults)


class _Resolver:
    def __init__(self, ns: argparse.Namespace):
        self.ns = ns
        self.cfg: Optional[configparser.ConfigParser] = None
        path = getattr(ns, "config", None)
        if path:
            parser = configparser.ConfigParser()
            if not parser.read(path):
                raise ParameterError(f"config file {path!r} not found or unreadable")
            self.cfg = parser

    def get(self, attr: str, section: str, key: Optional[str] = None, cast=str, default=None):
        value = getattr(self.ns, attr, None)
        if value is not None:
            return value
        name = key or attr
        if self.cfg is not None and self.cfg.has_option(section, name):
            raw = self.cfg.get(section, name)
            try:
                if cast is bool:
                    return self.cfg.getboolean(section, name)
                return cast(raw)
            except ValueError as exc:
                raise ParameterError(f"config [{section}] {name} = {raw!r}: {exc}")
        return default


def _resolve_params(r: _Resolver) -> Params:
    label = r.get("family", "model")
    if label is None:
        raise ParameterError("no family selected: pass --family or set [model] family")
    fam = Family.from_label(label)
    limiting = bool(r.get("limiting", "model", cast=bool, default=False))

    def need(attr: str, key: str, flag: str) -> float:
        value = r.get(attr, "model", key=key, cast=float)
        if value is None:
            raise ParameterError(f"{fam.value} needs {flag} (or [model] {key})")
        return value

    if fam is Family.OSCILLATOR:
        params: Params = OscillatorParams(
            alpha=need("alpha", "alpha", "--alpha"),
            delta=need("delta", "delta", "--delta"),
            limiting=limiting,
        )
    elif fam is Family.POSCHL_TELLER:
        params = PoschlTellerParams(
            a=need("big_a", "a", "--A"),
            b=need("big_b", "b", "--B"),
            gamma=need("gamma", "gamma", "--gamma"),
            limiting=limiting,
        )
    else:
        params = ScarfParams(
            a=need("big_a", "a", "--A"),
            b=need("big_b", "b", "--B"),
            limiting=limiting,
        )
    validate(params)
    return params


def _resolve_grid(
    r: _Resolver, params: Params, default_order: int = 4, default_n: Optional[int] = None
) -> tuple[Grid, int]:
    fam = family_of(params)
    l_default, n_default = _FAMILY_GRID[fam]
    if l_default is None:
        l_default = 10.0 + params.delta
    half_width = r.get("grid_l", "grid", key="half_width", cast=float, default=l_default)
    npoints = r.get("grid_n", "grid", key="npoints", cast=int, default=default_n or n_default)
    order = r.get("order", "grid", key="order", cast=int, default=default_order)
    if order not in (2, 4):
        raise ParameterError(f"grid order {order} must be 2 or 4")
    return Grid(half_width, npoints), order


def _family_probes(fam: Family):
    if fam is Family.POSCHL_TELLER:
        return default_probes((2.5, 3.5, 4.5), 0.8)
    return default_probes((0.5, 1.5, 2.5), 1.0)


# ---------------------------------------------------------------------------
# output plumbing


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [
        max(len(h), *(len(r[i]) for r in rows)) if rows else len(h)
        for i, h in enumerate(headers)
    ]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _csv_text(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue()


def _deliver(payload: str, fmt: str, out_path: Optional[str], notes: Sequence[str]) -> None:
    """Write the delimited payload, then human notes on a side channel."""
    if out_path:
        Path(out_path).write_text(payload, encoding="utf-8")
        for line in notes:
            print(line)
        print(f"wrote {out_path}")
    else:
        sys.stdout.write(payload)
        side = sys.stdout if fmt == "table" else sys.stderr
        for line in notes:
            print(line, file=side)


def _g(value: float) -> str:
    return f"{value:.10g}"


def _r(value: float) -> str:
    """Full-precision CSV cell; float() strips numpy scalar wrappers."""
    return repr(float(value))


def _params_label(params: Params) -> str:
    fam = family_of(params)
    fields = dataclasses.asdict(params)
    fields.pop("limiting", None)
    body = " ".join(f"{k}={_g(v)}" for k, v in fields.items())
    if params.limiting:
        body += " limiting"
    return f"{fam.value} {body}"


# ---------------------------------------------------------------------------
# spectrum


def cmd_spectrum(ns: argparse.Namespace) -> int:
    r = _Resolver(ns)
    params = _resolve_params(r)
    fam = family_of(params)
    fmt = r.get("format", "output", cast=str, default="table")
    out_path = r.get("output", "output", key="path")
    cutoff = r.get("cutoff", "check", cast=float)
    max_levels = r.get("max_levels", "check", cast=int)
    if fam is Family.OSCILLATOR and cutoff is None and max_levels is None:
        max_levels = 8
    towers = bound_levels(params, energy_cutoff=cutoff, max_per_tower=max_levels)

    choice_label = r.get("psusy", "model", cast=str)
    entries = None
    choice = None
    if choice_label:
        choice = Choice.from_label(choice_label)
        triplet = build_triplet(params, choice)
        max_entries = None
        if fam is Family.OSCILLATOR and cutoff is None:
            max_entries = max_levels or 8
        entries = merged_spectrum(triplet, energy_cutoff=cutoff, max_entries=max_entries)

    report = None
    grid = None
    order = None
    if r.get("numeric", "check", cast=bool, default=False):
        grid, order = _resolve_grid(r, params)
        matrix = discretize_hamiltonian(lambda xs: potential(params, xs), grid, order)
        result = eig_complex(matrix)
        energies = [e for _, e in towers]
        top = max(energies)
        match_cutoff = 0.5 * top if top < 0 else top + 1.0
        report = match_spectrum(
            result,
            towers,
            energy_cutoff=match_cutoff,
            im_tol=r.get("im_tol", "check", cast=float, default=1e-4),
            mass_tol=r.get("mass_tol", "check", cast=float, default=1e-3),
        )

    notes: list[str] = []
    if fmt == "json":
        doc = {
            "schema": SPECTRUM_SCHEMA,
            "family": fam.value,
            "params": dataclasses.asdict(params),
            "towers": [
                {"q": lvl.q, "n": lvl.n, "energy": e} for lvl, e in towers
            ],
        }
        if entries is not None:
            doc["psusy"] = {
                "choice": choice.value,
                "entries": [entry.to_json_dict() for entry in entries],
            }
        if report is not None:
            doc["numeric"] = {
                "grid": {
                    "half_width": grid.half_width,
                    "npoints": grid.npoints,
                    "order": order,
                },
                "matched": report.summary_rows(),
                "unmatched": [[lvl.q, lvl.n] for lvl in report.unmatched],
                "spurious": report.spurious_count,
                "candidates": report.candidates_count,
                "max_abs_error": report.max_abs_error,
                "max_imag": report.max_imag,
            }
        payload = json.dumps(doc, indent=2) + "\n"
    elif fmt == "csv":
        if entries is not None:
            payload = _csv_text(
                ["energy", "degeneracy", "members"],
                [entry.to_csv_row() for entry in entries],
            )
        else:
            payload = _csv_text(
                ["q", "n", "energy"],
                [[f"{lvl.q:+d}", str(lvl.n), _r(e)] for lvl, e in towers],
            )
        if report is not None:
            notes.append(_match_summary(report))
    else:
        blocks = [f"# {_params_label(params)}"]
        blocks.append(
            _table(
                ["tower", "n", "energy"],
                [[f"{lvl.q:+d}", str(lvl.n), _g(e)] for lvl, e in towers],
            )
        )
        if entries is not None:
            blocks.append(f"chain spectrum ({choice.value} choice):")
            blocks.append(
                _table(
                    ["energy", "d", "members"],
                    [
                        [_g(entry.energy), str(entry.degeneracy), entry.to_csv_row()[2]]
                        for entry in entries
                    ],
                )
            )
        if report is not None:
            blocks.append(
                f"numeric check (L={_g(grid.half_width)}, n={grid.npoints}, order={order}):"
            )
            blocks.append(
                _table(
                    ["q", "n", "analytic", "numeric", "Im", "|dE|"],
                    [
                        [
                            f"{m.level.q:+d}",
                            str(m.level.n),
                            _g(m.analytic_energy),
                            _g(m.numeric_energy.real),
                            f"{m.imag_abs:.2e}",
                            f"{m.abs_error:.2e}",
                        ]
                        for m in report.matched
                    ],
                )
            )
            blocks.append(_match_summary(report))
        payload = "\n".join(blocks) + "\n"

    figures_dir = r.get("figures", "output", cast=str)
    if figures_dir:
        notes.extend(_spectrum_figures(figures_dir, params, towers, entries, r))

    plot_data = r.get("plot_data", "output", cast=str)
    if plot_data:
        notes.append(_write_plot_data(plot_data, params, ns))

    _deliver(payload, fmt, out_path, notes)
    if report is not None and report.unmatched:
        return 1
    return 0


def _match_summary(report) -> str:
    return (
        f"matched {len(report.matched)}  unmatched {len(report.unmatched)}  "
        f"spurious {report.spurious_count}  max|dE| {report.max_abs_error:.3e}  "
        f"max|Im| {report.max_imag:.3e}"
    )


def _spectrum_figures(figures_dir, params, towers, entries, r: _Resolver) -> list[str]:
    from . import plotting

    fam = family_of(params)
    out = Path(figures_dir)
    notes = []
    if entries is not None:
        path = plotting.save_level_diagram(
            out / "levels.png",
            [entry.energy for entry in entries],
            [entry.degeneracy for entry in entries],
            _params_label(params),
        )
    else:
        path = plotting.save_level_diagram(
            out / "levels.png",
            [e for _, e in towers],
            [1] * len(towers),
            _params_label(params),
        )
    notes.append(f"wrote {path}")
    l_default, _ = _FAMILY_GRID[fam]
    if l_default is None:
        l_default = 10.0 + params.delta
    xs = np.linspace(-l_default, l_default, 801)
    path = plotting.save_potential_curves(
        out / "potential.png", xs, potential(params, xs), _params_label(params)
    )
    notes.append(f"wrote {path}")
    return notes


def _write_plot_data(path: str, params: Params, ns: argparse.Namespace) -> str:
    fam = family_of(params)
    l_default, _ = _FAMILY_GRID[fam]
    if l_default is None:
        l_default = 10.0 + params.delta
    xs = np.linspace(-l_default, l_default, 801)
    vs = np.asarray(potential(params, xs))
    level = getattr(ns, "plot_level", None) or (1, 0)
    q, n = int(level[0]), int(level[1])
    psi = np.asarray(eigenfunction(params, q, n, xs))
    rows = [
        [_r(x), _r(v.real), _r(v.imag), _r(p.real), _r(p.imag)]
        for x, v, p in zip(xs, vs, psi)
    ]
    text = _csv_text(["x", "re_v", "im_v", "re_psi", "im_psi"], rows)
    Path(path).write_text(text, encoding="utf-8")
    return f"wrote {path}"


# ---------------------------------------------------------------------------
# verify


@dataclass
class CheckRow:
    name: str
    measured: float
    allowed: str
    passed: Optional[bool]
    detail: str = ""


def _ratio_rows(name: str, devs: list[float], spacings: list[float]) -> list[CheckRow]:
    rows = []
    lo, hi = RATIO_WINDOW
    for i in range(len(devs) - 1):
        ratio = devs[i] / devs[i + 1] if devs[i + 1] > 0 else float("inf")
        rows.append(
            CheckRow(
                name=f"{name}[h={spacings[i]:.4g}->h={spacings[i + 1]:.4g}]",
                measured=ratio,
                allowed=f"{lo}..{hi}",
                passed=lo <= ratio <= hi,
                detail=f"residuals {devs[i]:.3e} -> {devs[i + 1]:.3e}",
            )
        )
    return rows


def cmd_verify(ns: argparse.Namespace) -> int:
    r = _Resolver(ns)
    params = _resolve_params(r)
    fam = family_of(params)
    choice = Choice.from_label(r.get("choice", "model", cast=str, default="first"))
    fmt = r.get("format", "output", cast=str, default="table")
    out_path = r.get("output", "output", key="path")

    only_raw = r.get("only", "check", cast=str)
    if only_raw:
        selected = tuple(tok.strip() for tok in only_raw.split(",") if tok.strip())
        unknown = [tok for tok in selected if tok not in CHECK_NAMES]
        if unknown:
            raise ParameterError(
                f"unknown check name(s) {', '.join(unknown)}; "
                f"known: {', '.join(CHECK_NAMES)}"
            )
    else:
        selected = CHECK_NAMES

    probes = _family_probes(fam)
    rows: list[CheckRow] = []

    if "pt-symmetry" in selected:
        grid = Grid(r.get("grid_l", "grid", key="half_width", cast=float, default=8.0), 401)
        dev = pt_symmetry_deviation(params, grid.points)
        rows.append(_bounded_row("pt-symmetry", dev, TOLERANCES["pt-symmetry"]))

    needs_triplet = {"constraint", "algebra", "quasi-hamiltonian", "consistency",
                     "factorization", "intertwine-2"} & set(selected)
    triplet = build_triplet(params, choice) if needs_triplet else None

    if "constraint" in selected:
        xs = np.linspace(-8.0, 8.0, 401)
        dev = psusy.constraint_deviation(triplet, xs)
        rows.append(_bounded_row("constraint", dev, TOLERANCES["constraint"]))

    if "annihilation" in selected:
        xs = np.linspace(-6.0, 6.0, 241)
        for variant in available_variants(params):
            try:
                spec = SuperpotentialSpec(params, variant)
                dev = susy.annihilation_deviation(spec, xs)
            except ParameterError as exc:
                rows.append(
                    CheckRow(
                        name=f"annihilation[{variant.value}]",
                        measured=float("nan"),
                        allowed="-",
                        passed=None,
                        detail=f"skipped: {exc}",
                    )
                )
                continue
            rows.append(
                _bounded_row(
                    f"annihilation[{variant.value}]", dev, TOLERANCES["annihilation"]
                )
            )

    ssusy_map = None
    if {"factorization", "consistency", "quasi-hamiltonian"} & set(selected):
        ssusy_map = ssusy.from_family(params, choice)

    if "factorization" in selected:
        xs = np.linspace(-6.0, 6.0, 241)
        worst = 0.0
        for probe in probes:
            plus_dev, minus_dev = ssusy.factorization_deviation(ssusy_map, probe, xs)
            worst = max(worst, plus_dev, minus_dev)
        rows.append(_bounded_row("factorization", worst, TOLERANCES["factorization"]))

    if "consistency" in selected:
        xs = np.linspace(-6.0, 6.0, 241)
        rep = ssusy.compare_with_triplet(ssusy_map, xs, triplet)
        rows.append(
            _bounded_row(
                "consistency-w",
                max(rep.w1_deviation, rep.w2_deviation),
                TOLERANCES["consistency-w"],
            )
        )
        rows.append(
            CheckRow(
                name="consistency-c",
                measured=abs(rep.c_value - rep.c_from_chain),
                allowed="exact",
                passed=rep.c_exact,
                detail=f"c = {_g(rep.c_value)}, closed product off by "
                f"{rep.c_product_relative:.1e} (relative)",
            )
        )

    if "quasi-hamiltonian" in selected:
        worst = 0.0
        for probe in probes:
            xs = np.linspace(probe.center - 1.5 * probe.width, probe.center + 1.5 * probe.width, 25)
            worst = max(worst, ssusy.quasi_hamiltonian_deviation(ssusy_map, probe, xs))
        rows.append(
            _bounded_row("quasi-hamiltonian", worst, TOLERANCES["quasi-hamiltonian"])
        )

    if "algebra" in selected:
        grid = Grid(8.0, 1601)
        rep = psusy.algebra_deviation(triplet, probes, grid)
        rows.append(
            _bounded_row("algebra-nilpotent", rep.nilpotent_max, TOLERANCES["algebra-nilpotent"])
        )
        rows.append(
            CheckRow(
                name="algebra-trilinear",
                measured=rep.trilinear_relative,
                allowed=f"<{TOLERANCES['algebra-trilinear']:.0e} (rel)",
                passed=rep.trilinear_relative < TOLERANCES["algebra-trilinear"],
                detail=f"absolute {rep.trilinear_max:.3e} over scale {rep.trilinear_scale:.3e}",
            )
        )

    if "intertwine-1" in selected or "intertwine-2" in selected:
        base_l = r.get("grid_l", "grid", key="half_width", cast=float, default=4.0)
        base_n = r.get("grid_n", "grid", key="npoints", cast=int, default=399)
        grids = [Grid(base_l, base_n), Grid(base_l, 2 * base_n + 1), Grid(base_l, 4 * base_n + 3)]
        spacings = [g.spacing for g in grids]
        probe = probes[len(probes) // 2]
        if "intertwine-1" in selected:
            spec = SuperpotentialSpec(params, Variant.PRIMARY)
            outcomes = run_jobs(
                [
                    (f"first-order h={g.spacing:.4g}",
                     lambda g=g: susy.intertwining_deviation(spec, probe, g))
                    for g in grids
                ]
            )
            devs = [_job_value(o) for o in outcomes]
            rows.extend(_ratio_rows("intertwine-1", devs, spacings))
        if "intertwine-2" in selected:
            m = ssusy.from_family(params, choice)
            outcomes = run_jobs(
                [
                    (f"second-order h={g.spacing:.4g}",
                     lambda g=g: ssusy.intertwining_deviation(m, probe, g))
                    for g in grids
                ]
            )
            devs = [_job_value(o) for o in outcomes]
            rows.extend(_ratio_rows("intertwine-2", devs, spacings))

    passed = all(row.passed is not False for row in rows)
    notes: list[str] = []
    header = f"# verify {_params_label(params)}  choice={choice.value}"
    if fmt == "json":
        doc = {
            "schema": VERIFY_SCHEMA,
            "family": fam.value,
            "params": dataclasses.asdict(params),
            "choice": choice.value,
            "checks": [
                {
                    "name": row.name,
                    "measured": None if np.isnan(row.measured) else row.measured,
                    "allowed": row.allowed,
                    "passed": row.passed,
                    "detail": row.detail,
                }
                for row in rows
            ],
            "passed": passed,
        }
        payload = json.dumps(doc, indent=2) + "\n"
    elif fmt == "csv":
        payload = _csv_text(
            ["name", "measured", "allowed", "status"],
            [
                [row.name, _r(row.measured), row.allowed, _status(row.passed)]
                for row in rows
            ],
        )
    else:
        body = _table(
            ["check", "measured", "allowed", "status"],
            [
                [row.name, f"{row.measured:.3e}", row.allowed, _status(row.passed)]
                for row in rows
            ],
        )
        details = [
            f"  {row.name}: {row.detail}" for row in rows if row.detail
        ]
        payload = "\n".join([header, body] + details) + "\n"
        payload += f"result: {'PASS' if passed else 'FAIL'}\n"

    figures_dir = r.get("figures", "output", cast=str)
    if figures_dir:
        from . import plotting

        numeric_rows = [row for row in rows if row.passed is not None]
        bounds = [
            TOLERANCES.get(row.name.split("[")[0], np.nan) for row in numeric_rows
        ]
        path = plotting.save_residual_bars(
            Path(figures_dir) / "residuals.png",
            [row.name for row in numeric_rows],
            [max(row.measured, 0.0) for row in numeric_rows],
            bounds,
            header.lstrip("# "),
        )
        notes.append(f"wrote {path}")

    _deliver(payload, fmt, out_path, notes)
    return 0 if passed else 1


def _bounded_row(name: str, measured: float, allowed: float) -> CheckRow:
    return CheckRow(
        name=name,
        measured=float(measured),
        allowed=f"<{allowed:.0e}",
        passed=measured < allowed,
    )


def _status(passed: Optional[bool]) -> str:
    if passed is None:
        return "SKIP"
    return "PASS" if passed else "FAIL"


def _job_value(outcome):
    if not outcome.ok:
        raise outcome.error
    return outcome.value


# ---------------------------------------------------------------------------
# ssusy-map


def cmd_ssusy_map(ns: argparse.Namespace) -> int:
    r = _Resolver(ns)
    params = _resolve_params(r)
    fam = family_of(params)
    choice = Choice.from_label(r.get("choice", "model", cast=str, default="first"))
    fmt = r.get("format", "output", cast=str, default="table")
    out_path = r.get("output", "output", key="path")

    m = ssusy.from_family(params, choice)
    lo = r.get("sample_min", "output", cast=float, default=-2.0)
    hi = r.get("sample_max", "output", cast=float, default=2.0)
    count = r.get("sample_count", "output", cast=int, default=9)
    xs = np.linspace(lo, hi, count)
    pv, _, _ = ssusy.gauge_function(m, xs)
    w1, w2 = ssusy.superpotential_pair(m, xs)
    rep = ssusy.compare_with_triplet(m, xs)

    w_dev = max(rep.w1_deviation, rep.w2_deviation)
    ok = w_dev < TOLERANCES["consistency-w"] and rep.c_exact

    notes: list[str] = []
    if fmt == "json":
        doc = {
            "schema": SSUSY_SCHEMA,
            "family": fam.value,
            "params": dataclasses.asdict(params),
            "choice": choice.value,
            "c": m.c,
            "d": m.d,
            "consistency": {
                "w1_deviation": rep.w1_deviation,
                "w2_deviation": rep.w2_deviation,
                "c_from_chain": rep.c_from_chain,
                "c_exact": rep.c_exact,
                "c_product_relative": rep.c_product_relative,
            },
            "samples": [
                {
                    "x": float(x),
                    "p": [p.real, p.imag],
                    "w1": [u.real, u.imag],
                    "w2": [v.real, v.imag],
                }
                for x, p, u, v in zip(xs, pv, w1, w2)
            ],
        }
        payload = json.dumps(doc, indent=2) + "\n"
    elif fmt == "csv":
        payload = _csv_text(
            ["x", "re_p", "im_p", "re_w1", "im_w1", "re_w2", "im_w2"],
            [
                [_r(x), _r(p.real), _r(p.imag), _r(u.real),
                 _r(u.imag), _r(v.real), _r(v.imag)]
                for x, p, u, v in zip(xs, pv, w1, w2)
            ],
        )
        notes.append(f"c = {_g(m.c)}  d = {_g(m.d)}  consistency {_status(ok)}")
    else:
        blocks = [f"# ssusy map {_params_label(params)}  choice={choice.value}"]
        blocks.append(f"c = {_g(m.c)}   d = -c^2/4 = {_g(m.d)}")
        blocks.append(
            _table(
                ["x", "p", "W1", "W2"],
                [
                    [_g(float(x)), _c(p), _c(u), _c(v)]
                    for x, p, u, v in zip(xs, pv, w1, w2)
                ],
            )
        )
        blocks.append(
            f"chain consistency: max W deviation {w_dev:.3e} "
            f"(allowed <{TOLERANCES['consistency-w']:.0e}), c exact: {rep.c_exact}"
        )
        blocks.append(f"result: {'PASS' if ok else 'FAIL'}")
        payload = "\n".join(blocks) + "\n"

    figures_dir = r.get("figures", "output", cast=str)
    if figures_dir:
        from . import plotting

        dense = np.linspace(lo, hi, 401)
        pd, _, _ = ssusy.gauge_function(m, dense)
        w1d, w2d = ssusy.superpotential_pair(m, dense)
        path = plotting.save_superpotential_curves(
            Path(figures_dir) / "gauge.png",
            dense,
            {"p": pd, "W1": w1d, "W2": w2d},
            f"{fam.value} {choice.value} choice",
        )
        notes.append(f"wrote {path}")

    _deliver(payload, fmt, out_path, notes)
    return 0 if ok else 1


def _c(z: complex) -> str:
    return f"{z.real:+.6g}{z.imag:+.6g}i"


# ---------------------------------------------------------------------------
# eig-dump


def cmd_eig_dump(ns: argparse.Namespace) -> int:
    r = _Resolver(ns)
    params = _resolve_params(r)
    fam = family_of(params)
    fmt = r.get("format", "output", cast=str, default="table")
    out_path = r.get("output", "output", key="path")
    grid, order = _resolve_grid(r, params, default_order=2, default_n=160)

    matrix = discretize_hamiltonian(lambda xs: potential(params, xs), grid, order)
    result = eig_complex(matrix)

    notes: list[str] = []
    matrix_path = r.get("matrix_out", "output", key="matrix_path", cast=str)
    if matrix_path:
        ii, jj = np.nonzero(matrix)
        rows = [
            [str(int(i)), str(int(j)), _r(matrix[i, j].real), _r(matrix[i, j].imag)]
            for i, j in zip(ii, jj)
        ]
        Path(matrix_path).write_text(
            _csv_text(["i", "j", "re", "im"], rows), encoding="utf-8"
        )
        notes.append(f"wrote {matrix_path}")

    if fmt == "json":
        doc = {
            "schema": EIG_SCHEMA,
            "family": fam.value,
            "params": dataclasses.asdict(params),
            "grid": {"half_width": grid.half_width, "npoints": grid.npoints, "order": order},
            "method": result.method,
            "sweeps": result.sweeps,
            "eigenvalues": [[lam.real, lam.imag] for lam in result.eigenvalues],
            "converged": [bool(flag) for flag in result.converged],
        }
        payload = json.dumps(doc, indent=2) + "\n"
    elif fmt == "csv":
        payload = _csv_text(
            ["index", "re", "im", "converged"],
            [
                [str(k), _r(lam.real), _r(lam.imag), str(bool(flag)).lower()]
                for k, (lam, flag) in enumerate(zip(result.eigenvalues, result.converged))
            ],
        )
    else:
        blocks = [
            f"# eig-dump {_params_label(params)}  "
            f"L={_g(grid.half_width)} n={grid.npoints} order={order}",
            f"method: {result.method}   sweeps: {result.sweeps}   "
            f"converged: {int(np.sum(result.converged))}/{result.converged.size}",
            _table(
                ["index", "re", "im"],
                [
                    [str(k), _g(lam.real), f"{lam.imag:+.3e}"]
                    for k, lam in enumerate(result.eigenvalues[:40])
                ],
            ),
        ]
        if result.eigenvalues.size > 40:
            blocks.append(f"... {result.eigenvalues.size - 40} more")
        payload = "\n".join(blocks) + "\n"

    figures_dir = r.get("figures", "output", cast=str)
    if figures_dir:
        from . import plotting

        path = plotting.save_eigenvalue_scatter(
            Path(figures_dir) / "eigenvalues.png",
            result.eigenvalues,
            f"{fam.value} discretized spectrum",
        )
        notes.append(f"wrote {path}")

    _deliver(payload, fmt, out_path, notes)
    return 0 if bool(np.all(result.converged)) else 1


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="FILE", help="INI config file; flags override it")
    common.add_argument("--format", choices=("table", "csv", "json"), default=None)
    common.add_argument("--output", metavar="FILE", default=None,
                        help="write the payload here instead of stdout")
    common.add_argument("--figures", metavar="DIR", default=None,
                        help="also render figures into this directory")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--family", choices=tuple(f.value for f in Family), default=None)
    model.add_argument("--alpha", type=float, default=None, help="oscillator core strength")
    model.add_argument("--delta", type=float, default=None, help="oscillator contour shift")
    model.add_argument("--A", dest="big_a", type=float, default=None,
                       help="hyperbolic strength parameter A")
    model.add_argument("--B", dest="big_b", type=float, default=None,
                       help="hyperbolic strength parameter B")
    model.add_argument("--gamma", type=float, default=None,
                       help="Poschl-Teller contour shift, |gamma| < pi/4")
    model.add_argument("--limiting", action="store_true", default=None,
                       help="admit integer tower ties (merged-level limit)")

    parser = argparse.ArgumentParser(
        prog="ptsusy",
        description="Spectra and supersymmetric structure of three exactly "
        "solvable PT-symmetric potentials, with numerical cross-checks.",
        epilog=_EPILOG,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_spec = sub.add_parser(
        "spectrum", parents=[common, model],
        help="analytic towers, chain spectrum, optional numerical match",
    )
    p_spec.add_argument("--psusy", choices=("first", "second"), default=None,
                        help="also print the chain spectrum for this choice")
    p_spec.add_argument("--cutoff", type=float, default=None, help="energy cutoff")
    p_spec.add_argument("--max-levels", type=int, default=None,
                        help="cap per tower / merged entries (oscillator default 8)")
    p_spec.add_argument("--numeric", action="store_true", default=None,
                        help="cross-check against the discretized Hamiltonian")
    p_spec.add_argument("--grid-L", dest="grid_l", type=float, default=None)
    p_spec.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    p_spec.add_argument("--order", type=int, choices=(2, 4), default=None)
    p_spec.add_argument("--im-tol", dest="im_tol", type=float, default=None)
    p_spec.add_argument("--mass-tol", dest="mass_tol", type=float, default=None)
    p_spec.add_argument("--plot-data", dest="plot_data", metavar="FILE", default=None,
                        help="write x, Re V, Im V, Re psi, Im psi samples (CSV)")
    p_spec.add_argument("--plot-level", dest="plot_level", nargs=2, type=int,
                        metavar=("Q", "N"), default=None,
                        help="which eigenfunction goes into --plot-data (default +1 0)")
    p_spec.set_defaults(func=cmd_spectrum)

    p_ver = sub.add_parser(
        "verify", parents=[common, model],
        help="run the identity battery for one family and chain choice",
    )
    p_ver.add_argument("--choice", choices=("first", "second"), default=None)
    p_ver.add_argument("--only", default=None,
                       help="comma-separated subset of: " + ", ".join(CHECK_NAMES))
    p_ver.add_argument("--grid-L", dest="grid_l", type=float, default=None)
    p_ver.add_argument("--grid-n", dest="grid_n", type=int, default=None,
                       help="base grid for the refinement battery (coarse runs allowed)")
    p_ver.set_defaults(func=cmd_verify)

    p_map = sub.add_parser(
        "ssusy-map", parents=[common, model],
        help="gauge function, superpotential pair, and the constant c",
    )
    p_map.add_argument("--choice", choices=("first", "second"), default=None)
    p_map.add_argument("--sample-min", dest="sample_min", type=float, default=None)
    p_map.add_argument("--sample-max", dest="sample_max", type=float, default=None)
    p_map.add_argument("--sample-count", dest="sample_count", type=int, default=None)
    p_map.set_defaults(func=cmd_ssusy_map)

    p_dump = sub.add_parser(
        "eig-dump", parents=[common, model],
        help="dump the discretized matrix and its eigenvalues as text",
    )
    p_dump.add_argument("--grid-L", dest="grid_l", type=float, default=None)
    p_dump.add_argument("--grid-n", dest="grid_n", type=int, default=None)
    p_dump.add_argument("--order", type=int, choices=(2, 4), default=None)
    p_dump.add_argument("--matrix-out", dest="matrix_out", metavar="FILE", default=None,
                        help="write the matrix nonzeros as CSV (i, j, re, im)")
    p_dump.set_defaults(func=cmd_eig_dump)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except ParameterError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except PtsusyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
