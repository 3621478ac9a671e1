"""Grids, stencils, the eigensolver, spectrum matching, and the job pool.

Two independent oracles guard the eigensolver:

* numpy.linalg, used only here in the tests, never by the library;
* a characteristic-polynomial route (Faddeev-LeVerrier coefficients,
  then Durand-Kerner root finding) for small matrices, sharing no code
  with either.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import pair_off
from ptsusy.errors import ParameterError
from ptsusy.numerics import (
    EigenResult,
    Grid,
    boundary_mass,
    discretize_hamiltonian,
    eig_complex,
    fd_derivative,
    fornberg_weights,
    hamiltonian_matrix,
    match_spectrum,
    run_jobs,
)
from ptsusy.potentials import Level


# characteristic polynomial oracle


def charpoly_coefficients(m: np.ndarray) -> np.ndarray:
    """Monic characteristic polynomial by the Faddeev-LeVerrier recursion."""
    n = m.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    aux = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        aux = m @ aux
        c = -np.trace(aux) / k
        coeffs[k] = c
        aux = aux + c * np.eye(n)
    return coeffs


def durand_kerner_roots(coeffs: np.ndarray, sweeps: int = 200) -> np.ndarray:
    """All roots of a monic polynomial by simultaneous iteration."""
    n = coeffs.size - 1
    radius = 1.0 + max(abs(c) for c in coeffs[1:]) if n else 1.0
    z = radius * (0.4 + 0.9j) ** np.arange(n)
    for _ in range(sweeps):
        p = np.polyval(coeffs, z)
        denom = np.ones_like(z)
        for i in range(n):
            others = np.delete(z, i)
            denom[i] = np.prod(z[i] - others)
        step = p / denom
        z = z - step
        if np.max(np.abs(step)) < 1e-14 * max(1.0, np.max(np.abs(z))):
            break
    return z


def random_symmetric_tridiagonal(n, rng):
    d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    e = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
    return np.diag(d) + np.diag(e, 1) + np.diag(e, -1)


class TestGrid:
    def test_spacing_and_interior_points(self):
        g = Grid(half_width=5.0, npoints=9)
        assert g.spacing == pytest.approx(1.0)
        assert g.points.size == 9
        assert np.max(np.abs(g.points)) == pytest.approx(4.0)

    def test_mirror_symmetry_is_exact(self):
        for n in (10, 11, 399, 1500):
            g = Grid(half_width=7.3, npoints=n)
            assert np.array_equal(g.points, -g.points[::-1])

    def test_rejects_degenerate_construction(self):
        with pytest.raises(ParameterError):
            Grid(half_width=0.0, npoints=10)
        with pytest.raises(ParameterError):
            Grid(half_width=1.0, npoints=2)


class TestFornbergWeights:
    def test_central_second_derivative_3_nodes(self):
        w = fornberg_weights(0.0, np.array([-1.0, 0.0, 1.0]), 2)
        assert w[2] == pytest.approx([1.0, -2.0, 1.0])

    def test_central_second_derivative_5_nodes(self):
        w = fornberg_weights(0.0, np.array([-2.0, -1.0, 0.0, 1.0, 2.0]), 2)
        assert w[2] == pytest.approx(
            [-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12], abs=1e-13
        )

    def test_central_first_derivative_5_nodes(self):
        w = fornberg_weights(0.0, np.array([-2.0, -1.0, 0.0, 1.0, 2.0]), 1)
        assert w[1] == pytest.approx([1 / 12, -2 / 3, 0.0, 2 / 3, -1 / 12], abs=1e-13)

    def test_interpolation_row_sums_to_one(self):
        w = fornberg_weights(0.3, np.array([-1.0, 0.0, 1.0, 2.0]), 1)
        assert np.sum(w[0]) == pytest.approx(1.0)

    def test_too_few_nodes_rejected(self):
        with pytest.raises(ParameterError):
            fornberg_weights(0.0, np.array([0.0, 1.0]), 2)


class TestFdDerivative:
    def test_constant_has_zero_derivative(self):
        v = np.full(50, 3.7 + 0.2j)
        out = fd_derivative(v, spacing=0.1, order=1, accuracy=2)
        assert np.max(np.abs(out)) < 1e-13

    def test_quadratic_is_exact_for_second_derivative(self):
        x = np.linspace(-1, 1, 41)
        out = fd_derivative(x**2, spacing=x[1] - x[0], order=2, accuracy=2)
        assert np.max(np.abs(out - 2.0)) < 1e-10

    @pytest.mark.parametrize("accuracy, expected", [(2, 4.0), (4, 16.0)])
    def test_refinement_ratio_matches_accuracy(self, accuracy, expected):
        def interior_error(n):
            x = np.linspace(0, 2 * np.pi, n, endpoint=False)
            h = x[1] - x[0]
            out = fd_derivative(np.sin(x), h, order=1, accuracy=accuracy)
            trim = 8
            return np.max(np.abs(out - np.cos(x))[trim:-trim])

        e1, e2 = interior_error(200), interior_error(400)
        # spacing halves (up to endpoint bookkeeping), error drops h^acc
        assert e1 / e2 == pytest.approx(expected, rel=0.15)

    def test_rejects_unsupported_accuracy(self):
        with pytest.raises(ParameterError):
            fd_derivative(np.zeros(10), 0.1, order=1, accuracy=6)


class TestHamiltonianMatrix:
    def test_free_laplacian_order2_closed_form(self):
        # Dirichlet tridiagonal Laplacian: lambda_k = (2 - 2 cos(k pi / (n+1))) / h^2
        n, h = 30, 0.1
        m = hamiltonian_matrix(np.zeros(n, dtype=complex), h, accuracy=2)
        res = eig_complex(m)
        k = np.arange(1, n + 1)
        exact = np.sort((2.0 - 2.0 * np.cos(k * np.pi / (n + 1))) / h**2)
        assert res.converged.all()
        assert np.max(np.abs(res.eigenvalues.real - exact)) < 1e-10
        assert np.max(np.abs(res.eigenvalues.imag)) < 1e-12

    def test_structure_by_accuracy(self):
        v = np.zeros(12, dtype=complex)
        tri = hamiltonian_matrix(v, 0.2, accuracy=2)
        penta = hamiltonian_matrix(v, 0.2, accuracy=4)
        assert np.count_nonzero(np.diag(tri, 2)) == 0
        assert np.count_nonzero(np.diag(penta, 2)) == 10
        assert np.array_equal(tri, tri.T)
        assert np.array_equal(penta, penta.T)

    def test_potential_lands_on_the_diagonal(self):
        v = np.array([1.0, 2.0, 3.0, 4.0], dtype=complex)
        h = 1.0
        m = hamiltonian_matrix(v, h, accuracy=2)
        assert np.diag(m) == pytest.approx(2.0 / h**2 + v)

    def test_discretize_accepts_callable_or_samples(self):
        g = Grid(half_width=3.0, npoints=19)
        f = lambda x: x**2 + 1j * x
        a = discretize_hamiltonian(f, g, order=2)
        b = discretize_hamiltonian(f(g.points), g, order=2)
        assert np.array_equal(a, b)

    def test_non_finite_potential_names_the_node(self):
        g = Grid(half_width=1.0, npoints=5)
        samples = np.ones(5, dtype=complex)
        samples[3] = np.nan
        with pytest.raises(ParameterError, match="node 3"):
            discretize_hamiltonian(samples, g)

    def test_shape_mismatch_rejected(self):
        g = Grid(half_width=1.0, npoints=5)
        with pytest.raises(ParameterError, match="shape"):
            discretize_hamiltonian(np.ones(6, dtype=complex), g)


class TestEigComplexPaths:
    def test_single_entry(self):
        res = eig_complex(np.array([[2.5 - 1.0j]]))
        assert res.method == "trivial"
        assert res.eigenvalues[0] == 2.5 - 1.0j

    def test_diagonal_matrix_sorted_output(self):
        res = eig_complex(np.diag(np.array([3.0, 1.0, 2.0], dtype=complex)))
        assert res.eigenvalues == pytest.approx([1.0, 2.0, 3.0])
        assert res.method == "tridiagonal-ql"

    def test_triangular_matrix_eigenvalues_on_diagonal(self):
        t = np.array(
            [[1.0, 5.0, 2.0], [0.0, 2.0 + 1.0j, 7.0], [0.0, 0.0, -3.0]]
        )
        res = eig_complex(t)
        assert res.method == "hessenberg-qr"
        assert pair_off(res.eigenvalues, [1.0, 2.0 + 1.0j, -3.0]) < 1e-12

    def test_jordan_block(self):
        res = eig_complex(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert res.converged.all()
        assert np.max(np.abs(res.eigenvalues)) < 1e-8

    def test_exceptional_point_is_nudged_through(self):
        # defective complex symmetric matrix: double eigenvalue 0 with a
        # one-dimensional eigenspace; the isotropy perturbation splits it
        # by about sqrt(nudge)
        m = np.array([[1.0, 1.0j], [1.0j, -1.0]])
        res = eig_complex(m)
        assert res.converged.all()
        assert res.perturbations >= 1
        assert np.max(np.abs(res.eigenvalues)) < 1e-3

    @pytest.mark.parametrize(
        "bad",
        [
            np.zeros((2, 3), dtype=complex),
            np.zeros((0, 0), dtype=complex),
            np.array([[np.nan, 0.0], [0.0, 1.0]]),
        ],
        ids=["nonsquare", "empty", "nonfinite"],
    )
    def test_bad_input_rejected(self, bad):
        with pytest.raises(ParameterError):
            eig_complex(bad)


class TestEigComplexAgainstOracles:
    def test_tridiagonal_against_numpy(self):
        rng = np.random.default_rng(7)
        m = random_symmetric_tridiagonal(80, rng)
        res = eig_complex(m)
        assert res.method == "tridiagonal-ql"
        assert res.converged.all()
        assert pair_off(res.eigenvalues, np.linalg.eigvals(m)) < 1e-10

    def test_pentadiagonal_against_numpy(self):
        rng = np.random.default_rng(8)
        n = 60
        d = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        e1 = rng.standard_normal(n - 1) + 1j * rng.standard_normal(n - 1)
        e2 = rng.standard_normal(n - 2) + 1j * rng.standard_normal(n - 2)
        m = (
            np.diag(d)
            + np.diag(e1, 1)
            + np.diag(e1, -1)
            + np.diag(e2, 2)
            + np.diag(e2, -2)
        )
        res = eig_complex(m)
        assert res.method == "pentadiagonal-ql"
        assert res.converged.all()
        assert pair_off(res.eigenvalues, np.linalg.eigvals(m)) < 1e-10

    def test_dense_against_numpy(self):
        rng = np.random.default_rng(9)
        m = rng.standard_normal((40, 40)) + 1j * rng.standard_normal((40, 40))
        res = eig_complex(m)
        assert res.method == "hessenberg-qr"
        assert res.converged.all()
        assert pair_off(res.eigenvalues, np.linalg.eigvals(m)) < 1e-10

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_small_matrices_against_characteristic_polynomial(self, n):
        rng = np.random.default_rng(100 + n)
        m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        res = eig_complex(m)
        roots = durand_kerner_roots(charpoly_coefficients(m))
        assert pair_off(res.eigenvalues, roots) < 1e-8

    def test_residual_bound_holds(self):
        # backward-stability proxy: ||M v - lambda v|| <= 100 tol ||M||_F
        # for unit v, at the default tol
        rng = np.random.default_rng(10)
        m = random_symmetric_tridiagonal(120, rng)
        res = eig_complex(m)
        bound = 100.0 * 1e-12 * np.linalg.norm(m)
        for k in range(0, 120, 7):
            v = res.eigenvector(k)
            raw = np.linalg.norm(m @ v - res.eigenvalues[k] * v)
            assert np.linalg.norm(v) == pytest.approx(1.0)
            assert raw <= bound

    def test_eigenvector_of_diagonal_matrix_is_a_basis_vector(self):
        vals = np.array([4.0, 1.0, 3.0, 2.0], dtype=complex)
        res = eig_complex(np.diag(vals))
        v = res.eigenvector(0)  # eigenvalue 1.0 sits at original index 1
        assert abs(v[1]) == pytest.approx(1.0)
        assert np.max(np.abs(np.delete(v, 1))) < 1e-10

    @given(
        n=st.integers(min_value=2, max_value=8),
        seed=st.integers(min_value=0, max_value=2**31),
    )
    @settings(max_examples=40, deadline=None)
    def test_random_tridiagonals_match_the_polynomial_route(self, n, seed):
        rng = np.random.default_rng(seed)
        m = random_symmetric_tridiagonal(n, rng)
        res = eig_complex(m)
        roots = durand_kerner_roots(charpoly_coefficients(m))
        scale = max(1.0, float(np.max(np.abs(roots))))
        assert pair_off(res.eigenvalues, roots) < 1e-6 * scale


class TestBoundaryMass:
    def test_edge_concentrated_vector(self):
        v = np.zeros(40)
        v[0] = 1.0
        assert boundary_mass(v) == 1.0

    def test_center_concentrated_vector(self):
        v = np.zeros(40)
        v[20] = 1.0
        assert boundary_mass(v) == 0.0

    def test_uniform_vector(self):
        v = np.ones(20)
        assert boundary_mass(v, fraction=0.05) == pytest.approx(0.1)

    def test_zero_vector_rejected(self):
        with pytest.raises(ParameterError):
            boundary_mass(np.zeros(10))


class TestMatchSpectrum:
    @staticmethod
    def _crafted_result():
        # diagonal Hamiltonian: eigenvectors are basis vectors, so the
        # boundary-mass filter is exactly predictable.  Entries at nodes
        # 0 and 1 sit inside the 5% edge window of n = 40.
        diag = np.full(40, 50.0, dtype=complex)
        diag[0] = 1.0
        diag[1] = 2.0
        diag[20] = 3.0
        diag[21] = 4.0
        diag[22] = 5.0
        diag[23] = 6.0 + 1.0e-3j  # wide imaginary part: filtered out
        return eig_complex(np.diag(diag))

    def test_filters_and_greedy_pairing(self):
        res = self._crafted_result()
        # four analytic rows against three candidates: the greedy pass
        # pairs by distance (it refuses nothing), so the distant row
        # still absorbs the leftover candidate and only the genuinely
        # overflowing level lands in unmatched
        analytic = [
            (Level(1, 0), 3.05),
            (Level(-1, 0), 4.10),
            (Level(1, 1), 30.0),
            (Level(-1, 1), 31.0),
        ]
        report = match_spectrum(res, analytic, energy_cutoff=10.0)
        assert report.spurious_count == 2  # the two edge-localized states
        assert report.candidates_count == 3  # 3.0, 4.0, 5.0
        assert report.unmatched == (Level(-1, 1),)
        got = {(m.level, round(m.numeric_energy.real)) for m in report.matched}
        assert got == {(Level(1, 0), 3), (Level(-1, 0), 4), (Level(1, 1), 5)}

    def test_tight_scenario_error_accounting(self):
        res = self._crafted_result()
        analytic = [(Level(1, 0), 3.05), (Level(-1, 0), 4.10)]
        report = match_spectrum(res, analytic, energy_cutoff=10.0)
        assert report.unmatched == ()
        assert report.max_abs_error == pytest.approx(0.10)
        assert report.max_imag == 0.0

    def test_imaginary_cut_respects_tolerance(self):
        res = self._crafted_result()
        analytic = [(Level(1, 0), 6.0)]
        tight = match_spectrum(res, analytic, energy_cutoff=10.0, im_tol=1e-4)
        loose = match_spectrum(res, analytic, energy_cutoff=10.0, im_tol=1e-2)
        assert [m.numeric_energy.real for m in tight.matched] == pytest.approx([5.0])
        assert [m.numeric_energy.real for m in loose.matched] == pytest.approx([6.0])

    def test_matching_is_injective(self):
        res = self._crafted_result()
        analytic = [(Level(1, 0), 3.9), (Level(1, 1), 4.1)]
        report = match_spectrum(res, analytic, energy_cutoff=10.0)
        nums = [round(m.numeric_energy.real) for m in report.matched]
        assert sorted(nums) == [3, 4]  # both land, no candidate reused

    def test_summary_rows_shape(self):
        res = self._crafted_result()
        report = match_spectrum(res, [(Level(1, 0), 3.0)], energy_cutoff=10.0)
        rows = report.summary_rows()
        assert len(rows) == 1
        assert rows[0]["analytic"] == 3.0
        assert set(rows[0]) == {
            "q", "n", "analytic", "numeric_re", "numeric_im", "abs_error",
        }


class TestRunJobs:
    def test_results_in_submission_order(self):
        jobs = [(f"j{i}", (lambda k=i: k * k)) for i in range(7)]
        out = run_jobs(jobs)
        assert [o.label for o in out] == [f"j{i}" for i in range(7)]
        assert [o.value for o in out] == [i * i for i in range(7)]
        assert all(o.ok for o in out)

    def test_failures_are_captured_per_job(self):
        def boom():
            raise ValueError("broken")

        out = run_jobs([("good", lambda: 1), ("bad", boom)])
        assert out[0].ok and out[0].value == 1
        assert not out[1].ok
        assert isinstance(out[1].error, ValueError)

    def test_empty_batch(self):
        assert run_jobs([]) == []
