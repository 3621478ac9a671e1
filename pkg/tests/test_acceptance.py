"""Acceptance battery: thirteen numbered criteria, one test each.

Every test prints a single verdict line (run ``pytest -s tests/test_acceptance.py``
to watch them scroll by; failing tests show the line in their captured
output).  The four discretized-spectrum criteria each solve a matrix of
order 1500..2400 and take a few seconds; everything else is millisecond
arithmetic.  Tolerances are pinned in the assertions, not configurable.
"""

import numpy as np

from conftest import pair_off
from test_numerics import (
    charpoly_coefficients,
    durand_kerner_roots,
    random_symmetric_tridiagonal,
)

from ptsusy.numerics import Grid, discretize_hamiltonian, eig_complex, match_spectrum
from ptsusy.potentials import (
    OscillatorParams,
    PoschlTellerParams,
    ScarfParams,
    bound_levels,
    potential,
    pt_symmetry_deviation,
)
from ptsusy.probes import GaussianProbe, default_probes
from ptsusy.psusy import (
    Choice,
    build_triplet,
    constraint_deviation,
    limiting_pattern,
    merged_spectrum,
)
from ptsusy.ssusy import (
    compare_with_triplet,
    from_family,
    quasi_hamiltonian_deviation,
)
from ptsusy.ssusy import intertwining_deviation as second_order_intertwining
from ptsusy.susy import (
    SuperpotentialSpec,
    Variant,
    annihilation_deviation,
    available_variants,
)
from ptsusy.susy import intertwining_deviation as first_order_intertwining

OSC = OscillatorParams(alpha=2.5, delta=0.5)
PT = PoschlTellerParams(a=1.2, b=3.9, gamma=0.3)
SCARF = ScarfParams(a=2.3, b=1.4)


def _verdict(num: int, name: str, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d} {name:<22s} {'PASS' if ok else 'FAIL'}  {detail}")


def _discrete_match(params, half_width, npoints, analytic):
    """CLI-equivalent pipeline: order-4 stencil, eigensolve, greedy match."""
    grid = Grid(half_width=half_width, npoints=npoints)
    matrix = discretize_hamiltonian(lambda x: potential(params, x), grid, order=4)
    result = eig_complex(matrix)
    top = max(e for _, e in analytic)
    cutoff = 0.5 * top if top < 0 else top + 1.0
    return match_spectrum(result, analytic, energy_cutoff=cutoff)


def test_criterion_01_linear_oscillator_limit():
    params = OscillatorParams(alpha=0.5, delta=0.5)
    analytic = bound_levels(params, max_per_tower=5)
    assert sorted(e for _, e in analytic) == [1 + 2 * k for k in range(10)]
    report = _discrete_match(params, 10.5, 1500, analytic)
    ok = (
        len(report.matched) == 10
        and not report.unmatched
        and report.max_abs_error < 1e-4
        and report.max_imag < 1e-6
    )
    _verdict(
        1,
        "oscillator limit",
        ok,
        f"10 levels, max|dE| {report.max_abs_error:.2e} < 1e-4, "
        f"max|Im| {report.max_imag:.2e} < 1e-6",
    )
    assert ok


def test_criterion_02_split_towers():
    params = OscillatorParams(alpha=0.75, delta=1.0)
    analytic = bound_levels(params, max_per_tower=4)
    assert sorted(e for _, e in analytic) == [0.5, 3.5, 4.5, 7.5, 8.5, 11.5, 12.5, 15.5]
    report = _discrete_match(params, 11.0, 1500, analytic)
    consistent = all(
        min(analytic, key=lambda row: abs(m.numeric_energy.real - row[1]))[0] == m.level
        for m in report.matched
    )
    ok = (
        len(report.matched) == 8
        and report.max_abs_error < 1e-4
        and consistent
    )
    _verdict(
        2,
        "split towers",
        ok,
        f"8 levels, max|dE| {report.max_abs_error:.2e} < 1e-4, "
        f"quasi-parity by nearest match {'consistent' if consistent else 'BROKEN'}",
    )
    assert ok


def test_criterion_03_poschl_teller_bound_towers():
    analytic = bound_levels(PT)
    plus = sum(1 for lvl, _ in analytic if lvl.q == 1)
    minus = sum(1 for lvl, _ in analytic if lvl.q == -1)
    assert (plus, minus) == (4, 2)
    report = _discrete_match(PT, 26.0, 2400, analytic)
    ok = (
        len(report.matched) == 6
        and not report.unmatched
        and report.max_abs_error < 5e-4
        and report.max_imag < 1e-5
    )
    _verdict(
        3,
        "Poschl-Teller towers",
        ok,
        f"4+2 levels, max|dE| {report.max_abs_error:.2e} < 5e-4, "
        f"max|Im| {report.max_imag:.2e} < 1e-5",
    )
    assert ok


def test_criterion_04_scarf_bound_towers():
    analytic = bound_levels(SCARF)
    plus = sum(1 for lvl, _ in analytic if lvl.q == 1)
    minus = sum(1 for lvl, _ in analytic if lvl.q == -1)
    assert (plus, minus) == (3, 1)
    expected = [-5.29, -1.69, -0.81, -0.09]
    assert np.allclose(sorted(e for _, e in analytic), expected, atol=1e-12)
    report = _discrete_match(SCARF, 16.0, 1600, analytic)
    ok = (
        len(report.matched) == 4
        and not report.unmatched
        and report.max_abs_error < 5e-4
        and report.max_imag < 1e-5
    )
    _verdict(
        4,
        "Scarf II towers",
        ok,
        f"3+1 levels, max|dE| {report.max_abs_error:.2e} < 5e-4, "
        f"max|Im| {report.max_imag:.2e} < 1e-5",
    )
    assert ok


def test_criterion_05_chain_degeneracy_pattern():
    first = merged_spectrum(build_triplet(OSC, Choice.FIRST), max_entries=6)
    second = merged_spectrum(build_triplet(OSC, Choice.SECOND), max_entries=6)
    energies = [-5.0, -1.0, 3.0, 5.0, 7.0, 9.0]
    ok = (
        [e.degeneracy for e in first] == [1, 3, 3, 2, 3, 3]
        and [e.degeneracy for e in second] == [2, 3, 3, 1, 3, 3]
        and all(abs(e.energy - ref) <= 1e-12 for e, ref in zip(first, energies))
        and all(abs(a.energy - b.energy) <= 1e-12 for a, b in zip(first, second))
    )
    _verdict(
        5,
        "chain degeneracies",
        ok,
        "first (1,3,3,2,3,3) / second (2,3,3,1,3,3) on identical energies, tol 1e-12",
    )
    assert ok


def test_criterion_06_integer_limit_pattern():
    count = 6
    energies = [-6.0 + 4.0 * k for k in range(count)]
    pat_first = limiting_pattern(3, Choice.FIRST, count)
    pat_second = limiting_pattern(3, Choice.SECOND, count)
    built_first = merged_spectrum(
        build_triplet(OscillatorParams(alpha=3.0, delta=0.5, limiting=True), Choice.FIRST),
        max_entries=count,
    )
    built_second = merged_spectrum(
        build_triplet(OscillatorParams(alpha=3.0, delta=0.5, limiting=True), Choice.SECOND),
        max_entries=count,
    )
    ok = (
        pat_first == [(e, 1 if k == 0 else 3) for k, e in enumerate(energies)]
        and pat_second == [(e, 2 if k == 0 else 3) for k, e in enumerate(energies)]
        and [(e.energy, e.degeneracy) for e in built_first] == pat_first
        and [(e.energy, e.degeneracy) for e in built_second] == pat_second
    )
    _verdict(
        6,
        "integer-limit pattern",
        ok,
        "N=3 energies -6,-2,2,... degeneracies (1,3,3,...) / (2,3,3,...), exact",
    )
    assert ok


def test_criterion_07_constraint_identity():
    x = np.linspace(-8.0, 8.0, 401)
    worst = max(
        constraint_deviation(build_triplet(params, choice), x)
        for params in (OSC, PT, SCARF)
        for choice in (Choice.FIRST, Choice.SECOND)
    )
    ok = worst < 1e-10
    _verdict(7, "constraint identity", ok, f"worst of 6 cases {worst:.2e} < 1e-10")
    assert ok


def test_criterion_08_annihilation():
    x = np.linspace(-2.0, 2.0, 41)
    worst = max(
        annihilation_deviation(SuperpotentialSpec(params, variant), x)
        for params in (OSC, PT, SCARF)
        for variant in available_variants(params)
    )
    ok = worst < 1e-10
    _verdict(8, "annihilation", ok, f"worst of 8 combinations {worst:.2e} < 1e-10")
    assert ok


def test_criterion_09_gauge_chain_consistency():
    x = np.linspace(0.6, 3.0, 49)
    worst = 0.0
    exact = True
    for params in (OSC, PT, SCARF):
        for choice in (Choice.FIRST, Choice.SECOND):
            report = compare_with_triplet(from_family(params, choice), x)
            worst = max(worst, report.w1_deviation, report.w2_deviation)
            exact = exact and report.c_exact
    ok = worst < 1e-12 and exact
    _verdict(
        9,
        "gauge-chain agreement",
        ok,
        f"worst W deviation {worst:.2e} < 1e-12, c = c1 - c2 "
        f"{'exact' if exact else 'INEXACT'} in all 6 cases",
    )
    assert ok


def test_criterion_10_quasi_hamiltonian():
    probes = default_probes((1.0, 1.5, 2.0), 0.8)
    x = np.linspace(0.8, 2.4, 9)
    worst = max(
        quasi_hamiltonian_deviation(from_family(params, choice), probe, x)
        for params in (OSC, PT, SCARF)
        for choice in (Choice.FIRST, Choice.SECOND)
        for probe in probes
    )
    ok = worst < 1e-6
    _verdict(
        10, "quasi-Hamiltonian", ok, f"worst over 6 cases x 3 probes {worst:.2e} < 1e-6"
    )
    assert ok


def test_criterion_11_intertwining_convergence():
    probe = GaussianProbe(center=1.5, width=1.0)
    ratios = []
    for params in (OSC, PT, SCARF):
        spec = SuperpotentialSpec(params, Variant.PRIMARY)
        chain = from_family(params, Choice.FIRST)
        for deviation in (
            lambda g, s=spec: first_order_intertwining(s, probe, g),
            lambda g, m=chain: second_order_intertwining(m, probe, g),
        ):
            # npoints 399, 799, 1599 put h at 0.02, 0.01, 0.005
            devs = [
                deviation(Grid(half_width=4.0, npoints=n)) for n in (399, 799, 1599)
            ]
            ratios.extend((devs[0] / devs[1], devs[1] / devs[2]))
    ok = all(3.5 < r < 4.5 for r in ratios)
    _verdict(
        11,
        "intertwining order",
        ok,
        f"refinement ratios in [{min(ratios):.2f}, {max(ratios):.2f}], "
        "required (3.5, 4.5), both operator orders",
    )
    assert ok


def test_criterion_12_pt_symmetry():
    x = Grid(half_width=8.0, npoints=401).points
    worst = max(pt_symmetry_deviation(params, x) for params in (OSC, PT, SCARF))
    ok = worst < 1e-12
    _verdict(12, "PT symmetry", ok, f"worst of 3 families {worst:.2e} < 1e-12")
    assert ok


def test_criterion_13_eigensolver_battery():
    worst_residual = 0.0
    for n in (20, 80, 200):
        rng = np.random.default_rng(1000 + n)
        result = eig_complex(random_symmetric_tridiagonal(n, rng))
        assert result.converged.all()
        worst_residual = max(
            worst_residual, max(result.residual(k) for k in range(n))
        )
    worst_root = 0.0
    for n in range(2, 7):
        for seed in range(3):
            rng = np.random.default_rng(7 * n + seed)
            matrix = random_symmetric_tridiagonal(n, rng)
            roots = durand_kerner_roots(charpoly_coefficients(matrix))
            worst_root = max(worst_root, pair_off(eig_complex(matrix).eigenvalues, roots))
    ok = worst_residual < 1e-10 and worst_root < 1e-8
    _verdict(
        13,
        "eigensolver battery",
        ok,
        f"residual {worst_residual:.2e} < 1e-10 up to 200x200, "
        f"root cross-check {worst_root:.2e} < 1e-8 up to 6x6",
    )
    assert ok
