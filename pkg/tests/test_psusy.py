"""Order-two chains: constants, merged spectra, degeneracy patterns.

Frozen chain constants (c = c1 - c2 = 2 c1):

  oscillator alpha=2.5      first c1 = -5,     second c1 = +5
  poschl-teller (1.2, 3.9)  first c1 = -5.06,  second c1 = +5.06
  scarf-ii (2.3, 1.4)       first c1 = -2.24,  second c1 = +2.24

and the merged oscillator spectrum at alpha = 5/2 (first choice)
collapses to energies -5, -1, 3, 5, 7, 9, ... with degeneracies
1, 3, 3, 2, 3, 3, ...; the second choice starts 2, 3, 3, 1, 3, 3.
"""

import json

import numpy as np
import pytest

from ptsusy.errors import ParameterError
from ptsusy.numerics import Grid
from ptsusy.potentials import (
    Level,
    OscillatorParams,
    PoschlTellerParams,
    ScarfParams,
)
from ptsusy.probes import default_probes
from ptsusy.psusy import (
    Choice,
    SpectrumEntry,
    algebra_deviation,
    build_triplet,
    component_energy,
    component_levels,
    constraint_deviation,
    limiting_pattern,
    merged_spectrum,
    shift_constant,
)

OSC = OscillatorParams(alpha=2.5, delta=0.5)
PT = PoschlTellerParams(a=1.2, b=3.9, gamma=0.3)
SCARF = ScarfParams(a=2.3, b=1.4)

X = np.linspace(-3.0, 3.0, 121)

# (energy, degeneracy) prefixes of the merged chain spectra
OSC_FIRST_MERGED = [(-5.0, 1), (-1.0, 3), (3.0, 3), (5.0, 2), (7.0, 3), (9.0, 3)]
OSC_SECOND_MERGED = [(-5.0, 2), (-1.0, 3), (3.0, 3), (5.0, 1), (7.0, 3), (9.0, 3)]


class TestShiftConstant:
    @pytest.mark.parametrize(
        "params, choice, expected",
        [
            (OSC, Choice.FIRST, -5.0),
            (OSC, Choice.SECOND, 5.0),
            (PT, Choice.FIRST, -5.06),
            (PT, Choice.SECOND, 5.06),
            (SCARF, Choice.FIRST, -2.24),
            (SCARF, Choice.SECOND, 2.24),
        ],
    )
    def test_frozen_values(self, params, choice, expected):
        assert shift_constant(params, choice) == pytest.approx(expected, abs=1e-12)

    def test_c_is_twice_c1_exactly(self):
        for params in (OSC, PT, SCARF):
            for choice in Choice:
                t = build_triplet(params, choice)
                assert t.c2 == -t.c1
                assert t.c == t.c1 - t.c2

    def test_choice_labels_round_trip(self):
        assert Choice.from_label("first") is Choice.FIRST
        assert Choice.from_label("second") is Choice.SECOND
        with pytest.raises(ParameterError):
            Choice.from_label("third")


class TestTripletAssembly:
    def test_oscillator_first_needs_alpha_above_one(self):
        small = OscillatorParams(alpha=0.75, delta=0.5)
        with pytest.raises(ParameterError, match="alpha > 1"):
            build_triplet(small, Choice.FIRST)
        build_triplet(small, Choice.SECOND)  # fine this way round

    def test_constraint_residual_is_roundoff(self):
        wide = np.linspace(-8.0, 8.0, 401)
        for params in (OSC, PT, SCARF):
            for choice in Choice:
                t = build_triplet(params, choice)
                assert constraint_deviation(t, wide) < 1e-10

    def test_components_reproduce_partner_spectra(self):
        # H2's ground level must line up with an excited H1 level
        t = build_triplet(PT, Choice.FIRST)
        e2 = component_energy(t, 2, Level(1, 0))
        lv1 = component_levels(t, 1)
        assert any(abs(e2 - e) < 1e-12 for _, e in lv1)


class TestMergedSpectrum:
    def test_oscillator_first_choice(self):
        t = build_triplet(OSC, Choice.FIRST)
        entries = merged_spectrum(t, max_entries=6)
        got = [(e.energy, e.degeneracy) for e in entries]
        assert got == pytest.approx(OSC_FIRST_MERGED)

    def test_oscillator_second_choice(self):
        t = build_triplet(OSC, Choice.SECOND)
        entries = merged_spectrum(t, max_entries=6)
        got = [(e.energy, e.degeneracy) for e in entries]
        assert got == pytest.approx(OSC_SECOND_MERGED)

    def test_single_versus_double_ground_state(self):
        # the two choices differ only in the lowest entries
        first = merged_spectrum(build_triplet(OSC, Choice.FIRST), max_entries=6)
        second = merged_spectrum(build_triplet(OSC, Choice.SECOND), max_entries=6)
        assert [e.energy for e in first] == pytest.approx(
            [e.energy for e in second]
        )
        assert first[0].degeneracy == 1
        assert second[0].degeneracy == 2

    def test_members_carry_component_and_level(self):
        t = build_triplet(OSC, Choice.FIRST)
        ground = merged_spectrum(t, max_entries=1)[0]
        assert ground.members == ((1, Level(1, 0)),)

    def test_hyperbolic_merge(self):
        t = build_triplet(SCARF, Choice.FIRST)
        entries = merged_spectrum(t)
        # every component level appears in exactly one entry
        total = sum(e.degeneracy for e in entries)
        parts = sum(len(component_levels(t, k)) for k in (1, 2, 3))
        assert total == parts
        for e in entries:
            assert e.degeneracy == len(e.members)

    def test_oscillator_requires_a_limit(self):
        t = build_triplet(OSC, Choice.FIRST)
        with pytest.raises(ParameterError):
            merged_spectrum(t)


class TestLimitingPattern:
    def test_first_choice_pattern(self):
        t = build_triplet(
            OscillatorParams(alpha=3.0, delta=0.5, limiting=True), Choice.FIRST
        )
        entries = merged_spectrum(t, max_entries=5)
        got = [(e.energy, e.degeneracy) for e in entries]
        assert got == limiting_pattern(3, Choice.FIRST, 5)
        assert got[0] == (-6.0, 1)
        assert [d for _, d in got[1:]] == [3, 3, 3, 3]

    def test_second_choice_pattern(self):
        t = build_triplet(
            OscillatorParams(alpha=3.0, delta=0.5, limiting=True), Choice.SECOND
        )
        entries = merged_spectrum(t, max_entries=5)
        got = [(e.energy, e.degeneracy) for e in entries]
        assert got == limiting_pattern(3, Choice.SECOND, 5)
        assert got[0] == (-6.0, 2)

    def test_first_choice_needs_n_at_least_two(self):
        with pytest.raises(ParameterError):
            limiting_pattern(1, Choice.FIRST, 4)


class TestAlgebra:
    def test_nilpotency_is_structural_zero(self):
        t = build_triplet(SCARF, Choice.FIRST)
        grid = Grid(half_width=4.0, npoints=399)
        report = algebra_deviation(t, default_probes((0.5, 1.5, 2.5), 1.0), grid)
        assert report.nilpotent_max == 0.0

    @pytest.mark.parametrize("params", [OSC, PT, SCARF], ids=["osc", "pt", "scarf"])
    def test_trilinear_relation_within_stencil_error(self, params):
        t = build_triplet(params, Choice.SECOND)
        grid = Grid(half_width=4.0, npoints=399)
        report = algebra_deviation(t, default_probes((0.5, 1.5, 2.5), 1.0), grid)
        assert report.trilinear_scale > 0
        assert report.trilinear_relative < 5e-3


class TestSpectrumEntrySerialization:
    ENTRY = SpectrumEntry(
        energy=-1.0,
        degeneracy=3,
        members=((1, Level(1, 1)), (2, Level(1, 0)), (3, Level(1, 0))),
    )

    def test_json_round_trip(self):
        blob = json.dumps(self.ENTRY.to_json_dict())
        back = SpectrumEntry.from_json_dict(json.loads(blob))
        assert back == self.ENTRY

    def test_csv_round_trip(self):
        row = self.ENTRY.to_csv_row()
        assert all(isinstance(cell, str) for cell in row)
        back = SpectrumEntry.from_csv_row(row)
        assert back == self.ENTRY

    def test_csv_energy_cell_is_full_precision(self):
        entry = SpectrumEntry(
            energy=-5.0600000000000005, degeneracy=1, members=((1, Level(1, 0)),)
        )
        back = SpectrumEntry.from_csv_row(entry.to_csv_row())
        assert back.energy == entry.energy
