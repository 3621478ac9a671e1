"""Eigensolver for complex matrices, written from first principles.

Nothing here calls a library eigenroutine.  Three paths share the work:

* complex symmetric tridiagonal: implicit-shift QL with
  complex-orthogonal rotations (the complex-symmetric analogue of the
  classic tqli sweep; rotations satisfy c^2 + s^2 = 1 with complex c, s
  and preserve symmetry).
* complex symmetric pentadiagonal: a complex-orthogonal Givens band
  reduction chases the outer diagonal away (Schwarz-style, one bulge
  per elimination), then the tridiagonal path finishes.
* anything else: unitary Householder reduction to Hessenberg form
  followed by explicitly shifted QR sweeps with Wilkinson shifts.

Complex-orthogonal transformations are similarity transformations
(G^T G = 1), so the banded paths preserve eigenvalues exactly; they are
not unitary, which is the price of preserving complex symmetry.  An
exactly isotropic rotation (a^2 + b^2 = 0 with a, b nonzero) has no
complex-orthogonal Givens form; those rare configurations are broken by
a relative perturbation of about 1e-9, counted on the result object.

Eigenvectors are not accumulated during the reductions; they come from
inverse iteration on the original matrix, with a hand-rolled LU
(banded storage with partial pivoting when the matrix is banded, dense
otherwise).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.typing import NDArray

from ..errors import ParameterError

__all__ = ["EigenResult", "eig_complex"]

# a rotation is treated as isotropic when sqrt(a^2+b^2) collapses below
# this fraction of the ingredient magnitudes
_ISO_TOL = 1e-12
_ISO_NUDGE = 1e-9


def _bandwidths(m: np.ndarray) -> tuple[int, int]:
    rows, cols = np.nonzero(m)
    if rows.size == 0:
        return 0, 0
    return int(np.max(rows - cols)), int(np.max(cols - rows))


class _IsotropicRotation(Exception):
    pass


def _co_rotation(a: complex, b: complex) -> tuple[complex, complex, complex]:
    """Complex-orthogonal (c, s, r): c^2 + s^2 = 1, -s*a + c*b = 0, r = c*a + s*b."""
    r = cmath.sqrt(a * a + b * b)
    scale = abs(a) + abs(b)
    if scale == 0.0:
        return 1.0 + 0j, 0j, 0j
    if abs(r) <= _ISO_TOL * scale:
        raise _IsotropicRotation
    return a / r, b / r, r


def _ql_complex_symmetric(
    diag: list[complex],
    sub: list[complex],
    tol: float,
    max_sweeps: int,
) -> tuple[list[complex], list[bool], int, int]:
    """Implicit-shift QL on a complex symmetric tridiagonal.

    Returns (eigenvalues, converged flags, total sweeps, perturbations).
    """
    n = len(diag)
    d = [complex(v) for v in diag]
    e = [complex(v) for v in sub] + [0j]
    converged = [True] * n
    total = 0
    nudges = 0
    for l in range(n):
        sweeps = 0
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= tol * dd:
                    break
                m += 1
            if m == l:
                break
            if sweeps >= max_sweeps:
                converged[l] = False
                break
            sweeps += 1
            total += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = cmath.sqrt(g * g + 1.0)
            # pick the larger denominator to avoid cancellation
            den = g + r if abs(g + r) >= abs(g - r) else g - r
            if den == 0:
                den = 1.0
            g = d[m] - d[l] + e[l] / den
            s = 1.0 + 0j
            c = 1.0 + 0j
            p = 0j
            i = m - 1
            failed_at = -1
            recovered = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                scale = abs(f) + abs(g)
                if scale == 0.0:
                    # underflow recovery, as in the classic sweep
                    d[i + 1] -= p
                    e[m] = 0j
                    recovered = True
                    break
                r = cmath.sqrt(f * f + g * g)
                if abs(r) <= _ISO_TOL * scale:
                    failed_at = i
                    break
                e[i + 1] = r
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                i -= 1
            if recovered:
                continue
            if failed_at >= 0:
                # break the isotropy with a relative nudge and restart the sweep
                e[failed_at] *= 1.0 + _ISO_NUDGE
                nudges += 1
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0j
    return d, converged, total, nudges


def _reduce_pentadiagonal(
    d0: list[complex], d1: list[complex], d2: list[complex]
) -> tuple[list[complex], list[complex], int]:
    """Complex-orthogonal reduction of a symmetric pentadiagonal to tridiagonal.

    Works on the lower band representation (d0 diagonal, d1 first, d2
    second subdiagonal).  Eliminating (k+2, k) with a rotation in the
    plane (k+1, k+2) pushes a bulge to (k+4, k+1); chasing it down costs
    about n/2 rotations per k.  Returns (diagonal, subdiagonal, nudges).
    """
    n = len(d0)
    d0 = list(d0)
    d1 = list(d1)
    d2 = list(d2)
    nudges = 0

    def rotate(j: int, c: complex, s: complex, bulge_in: complex) -> complex:
        """Apply the plane-(j, j+1) rotation; return the outgoing bulge."""
        # column j-2 (incoming bulge position (j+1, j-2))
        if j >= 2:
            a2 = d2[j - 2]
            d2[j - 2] = c * a2 + s * bulge_in
        # column j-1
        if j >= 1:
            a1 = d1[j - 1]
            b2 = d2[j - 1]
            d1[j - 1] = c * a1 + s * b2
            d2[j - 1] = -s * a1 + c * b2
        # the 2x2 diagonal block
        dj, dj1, ej = d0[j], d0[j + 1], d1[j]
        cc, ss, cs = c * c, s * s, c * s
        d0[j] = cc * dj + 2.0 * cs * ej + ss * dj1
        d0[j + 1] = ss * dj - 2.0 * cs * ej + cc * dj1
        d1[j] = cs * (dj1 - dj) + (cc - ss) * ej
        # rows below the block
        if j + 2 < n:
            c2 = d2[j]
            c1 = d1[j + 1]
            d2[j] = c * c2 + s * c1
            d1[j + 1] = -s * c2 + c * c1
        if j + 3 < n:
            f2 = d2[j + 1]
            d2[j + 1] = c * f2
            return s * f2
        return 0j

    for k in range(n - 2):
        attempts = 0
        while d2[k] != 0:
            # rotation defined by column k: entries (k+1, k) and (k+2, k)
            try:
                c, s, _ = _co_rotation(d1[k], d2[k])
            except _IsotropicRotation:
                if attempts >= 8:
                    raise ParameterError(
                        "pentadiagonal reduction: persistent isotropic rotation"
                    )
                d2[k] *= 1.0 + _ISO_NUDGE
                nudges += 1
                attempts += 1
                continue
            bulge = rotate(k + 1, c, s, 0j)
            d2[k] = 0j
            j = k + 3
            while j < n and bulge != 0:
                # rotation defined by column j-2: (j, j-2) and the bulge (j+1, j-2)
                try:
                    c, s, _ = _co_rotation(d2[j - 2], bulge)
                except _IsotropicRotation:
                    bulge *= 1.0 + _ISO_NUDGE
                    nudges += 1
                    continue
                bulge = rotate(j, c, s, bulge)
                j += 2
            break
    return d0, d1, nudges


def _householder_hessenberg(m: np.ndarray) -> np.ndarray:
    a = np.array(m, dtype=np.complex128)
    n = a.shape[0]
    for k in range(n - 2):
        col = a[k + 1 :, k]
        norm = float(np.sqrt(np.sum(np.abs(col) ** 2)))
        if norm == 0.0:
            continue
        v = col.copy()
        pivot = v[0]
        phase = pivot / abs(pivot) if pivot != 0 else 1.0 + 0j
        v[0] += phase * norm
        vnorm2 = float(np.sum(np.abs(v) ** 2))
        if vnorm2 == 0.0:
            continue
        v = v / np.sqrt(vnorm2)
        # unitary reflector I - 2 v v^H applied from both sides
        a[k + 1 :, k:] -= 2.0 * np.outer(v, np.conj(v) @ a[k + 1 :, k:])
        a[:, k + 1 :] -= 2.0 * np.outer(a[:, k + 1 :] @ v, np.conj(v))
        a[k + 2 :, k] = 0.0
    return a


def _qr_hessenberg(
    h: np.ndarray, tol: float, max_sweeps: int
) -> tuple[np.ndarray, np.ndarray, int]:
    """Explicitly shifted QR with Wilkinson shifts on a Hessenberg matrix."""
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    eigs = np.zeros(n, dtype=np.complex128)
    conv = np.ones(n, dtype=bool)
    total = 0
    act = n
    block_sweeps = 0
    while act > 0:
        if act == 1:
            eigs[0] = a[0, 0]
            act = 0
            break
        l = act - 1
        while l > 0:
            if abs(a[l, l - 1]) <= tol * (abs(a[l - 1, l - 1]) + abs(a[l, l])):
                a[l, l - 1] = 0.0
                break
            l -= 1
        if l == act - 1:
            eigs[act - 1] = a[act - 1, act - 1]
            act -= 1
            block_sweeps = 0
            continue
        if l == act - 2:
            p, q = a[act - 2, act - 2], a[act - 2, act - 1]
            r_, t = a[act - 1, act - 2], a[act - 1, act - 1]
            half = 0.5 * (p + t)
            disc = cmath.sqrt(complex(0.25 * (p - t) ** 2 + q * r_))
            eigs[act - 1] = half + disc
            eigs[act - 2] = half - disc
            act -= 2
            block_sweeps = 0
            continue
        if block_sweeps >= max_sweeps:
            eigs[act - 1] = a[act - 1, act - 1]
            conv[act - 1] = False
            act -= 1
            block_sweeps = 0
            continue
        block_sweeps += 1
        total += 1
        p, q = a[act - 2, act - 2], a[act - 2, act - 1]
        r_, t = a[act - 1, act - 2], a[act - 1, act - 1]
        half = 0.5 * (p + t)
        disc = cmath.sqrt(complex(0.25 * (p - t) ** 2 + q * r_))
        mu1, mu2 = half + disc, half - disc
        mu = mu1 if abs(mu1 - t) <= abs(mu2 - t) else mu2
        if block_sweeps % 12 == 0:
            # exceptional shift to escape cycling
            mu = t + (0.75 + 0.11j) * abs(a[act - 1, act - 2])
        idx = np.arange(l, act)
        a[idx, idx] -= mu
        rots: list[tuple[float, complex]] = []
        for i in range(l, act - 1):
            ai, bi = a[i, i], a[i + 1, i]
            rr = float(np.hypot(abs(ai), abs(bi)))
            if rr == 0.0:
                cg, sg = 1.0, 0j
            else:
                cg = abs(ai) / rr
                ph = ai / abs(ai) if ai != 0 else 1.0 + 0j
                sg = ph * np.conj(bi) / rr
            rots.append((cg, sg))
            row_i = a[i, i:act].copy()
            row_j = a[i + 1, i:act].copy()
            a[i, i:act] = cg * row_i + sg * row_j
            a[i + 1, i:act] = -np.conj(sg) * row_i + cg * row_j
        for i, (cg, sg) in enumerate(rots):
            ii = l + i
            top = min(ii + 2, act)
            col_i = a[l:top, ii].copy()
            col_j = a[l:top, ii + 1].copy()
            a[l:top, ii] = cg * col_i + np.conj(sg) * col_j
            a[l:top, ii + 1] = -sg * col_i + cg * col_j
        a[idx, idx] += mu
    return eigs, conv, total


class _BandedLU:
    """LU of a banded matrix with partial pivoting, hand-rolled.

    Rows are stored in absolute-column windows wide enough
    (2*kl + ku + 1) that pivot swaps between nearby rows always fit.
    """

    def __init__(self, m: np.ndarray, kl: int, ku: int):
        n = m.shape[0]
        self.n = n
        self.kl = kl
        width = 2 * kl + ku + 1
        self.width = width
        w = np.zeros((n, width), dtype=np.complex128)
        for i in range(n):
            lo = max(0, i - kl)
            hi = min(n, i + ku + 1)
            w[i, lo - (i - kl) : hi - (i - kl)] = m[i, lo:hi]
        self.swaps: list[tuple[int, int]] = []
        self.mults: list[np.ndarray] = []
        for k in range(n):
            # candidate pivot rows k..k+kl hold column k at offset k-(r-kl)
            rmax = min(n - 1, k + kl)
            best = k
            best_val = abs(w[k, k - (k - kl)])
            for r in range(k + 1, rmax + 1):
                off = k - (r - kl)
                val = abs(w[r, off])
                if val > best_val:
                    best, best_val = r, val
            if best != k:
                self._swap_rows(w, k, best)
            self.swaps.append((k, best))
            piv = w[k, kl]
            if piv == 0:
                raise ZeroDivisionError("banded LU: zero pivot")
            ms = np.zeros(rmax - k, dtype=np.complex128)
            for r in range(k + 1, rmax + 1):
                off = k - (r - kl)
                factor = w[r, off] / piv
                ms[r - k - 1] = factor
                if factor != 0:
                    # subtract factor * (row k) over the shared columns
                    span = self.width - (r - k) - off
                    w[r, off : off + span] -= factor * w[k, kl : kl + span]
            self.mults.append(ms)
        self.w = w

    def _swap_rows(self, w: np.ndarray, i: int, j: int) -> None:
        # exchange absolute-column content between windows offset by j - i;
        # the truncated tails are provably zero at this elimination stage
        shift = j - i
        row_i = w[i].copy()
        row_j = w[j].copy()
        w[i, :shift] = 0.0
        w[i, shift:] = row_j[: self.width - shift]
        w[j, : self.width - shift] = row_i[shift:]
        w[j, self.width - shift :] = 0.0

    def solve(self, b: np.ndarray) -> np.ndarray:
        n, kl = self.n, self.kl
        y = np.array(b, dtype=np.complex128)
        for k in range(n):
            i, j = self.swaps[k]
            if i != j:
                y[i], y[j] = y[j], y[i]
            ms = self.mults[k]
            if ms.size:
                y[k + 1 : k + 1 + ms.size] -= ms * y[k]
        x = np.zeros(n, dtype=np.complex128)
        for i in range(n - 1, -1, -1):
            hi = min(n, i + self.width - kl)
            acc = y[i]
            if i + 1 < hi:
                acc = acc - np.dot(self.w[i, kl + 1 : kl + hi - i], x[i + 1 : hi])
            x[i] = acc / self.w[i, kl]
        return x


class _DenseLU:
    """Dense LU with partial pivoting (numpy row arithmetic, no lapack)."""

    def __init__(self, m: np.ndarray):
        a = np.array(m, dtype=np.complex128)
        n = a.shape[0]
        self.n = n
        self.perm = np.arange(n)
        for k in range(n - 1):
            p = k + int(np.argmax(np.abs(a[k:, k])))
            if p != k:
                a[[k, p]] = a[[p, k]]
                self.perm[[k, p]] = self.perm[[p, k]]
            piv = a[k, k]
            if piv == 0:
                raise ZeroDivisionError("dense LU: zero pivot")
            a[k + 1 :, k] /= piv
            a[k + 1 :, k + 1 :] -= np.outer(a[k + 1 :, k], a[k, k + 1 :])
        if a[n - 1, n - 1] == 0:
            raise ZeroDivisionError("dense LU: zero pivot")
        self.a = a

    def solve(self, b: np.ndarray) -> np.ndarray:
        n = self.n
        y = np.array(b, dtype=np.complex128)[self.perm]
        for k in range(1, n):
            y[k] -= np.dot(self.a[k, :k], y[:k])
        x = np.zeros(n, dtype=np.complex128)
        for k in range(n - 1, -1, -1):
            x[k] = (y[k] - np.dot(self.a[k, k + 1 :], x[k + 1 :])) / self.a[k, k]
        return x


@dataclass
class EigenResult:
    """Eigenvalues of one matrix plus on-demand eigenvectors.

    Attributes:
        matrix: the original matrix (inverse iteration runs on it).
        eigenvalues: sorted by (real, imaginary).
        converged: per-eigenvalue convergence flags, aligned with
            ``eigenvalues``.
        sweeps: total implicit-shift sweeps spent.
        method: which path solved the matrix.
        perturbations: isotropic rotations broken by a nudge (0 in
            ordinary runs).
    """

    matrix: NDArray[np.complex128]
    eigenvalues: NDArray[np.complex128]
    converged: NDArray[np.bool_]
    sweeps: int
    method: str
    perturbations: int = 0
    _vector_cache: dict[int, NDArray[np.complex128]] = field(
        default_factory=dict, repr=False
    )
    _band: tuple[int, int] = field(default=(0, 0), repr=False)

    def eigenvector(self, index: int, iterations: int = 3) -> NDArray[np.complex128]:
        """Unit eigenvector for eigenvalues[index], by inverse iteration."""
        if index in self._vector_cache:
            return self._vector_cache[index]
        if not 0 <= index < self.eigenvalues.size:
            raise ParameterError(f"eigenvector index {index} out of range")
        lam = complex(self.eigenvalues[index])
        n = self.matrix.shape[0]
        kl, ku = self._band
        banded = 0 < kl + ku < n // 4
        rng = np.random.default_rng(0x5EED + index)
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.sqrt(np.sum(np.abs(v) ** 2))
        bump = 1e-11 * max(1.0, abs(lam))
        for attempt in range(6):
            shift = lam + bump * (attempt + 1) * (1 + 0.3j)
            a = self.matrix - shift * np.eye(n, dtype=np.complex128)
            try:
                lu = _BandedLU(a, kl, ku) if banded else _DenseLU(a)
            except ZeroDivisionError:
                continue
            w = v.copy()
            try:
                for _ in range(max(1, iterations)):
                    w = lu.solve(w)
                    norm = np.sqrt(np.sum(np.abs(w) ** 2))
                    if not np.isfinite(norm) or norm == 0.0:
                        raise ZeroDivisionError
                    w /= norm
            except (ZeroDivisionError, FloatingPointError):
                continue
            self._vector_cache[index] = w
            return w
        raise ParameterError(
            f"inverse iteration failed for eigenvalue {lam!r} (matrix too singular)"
        )

    def residual(self, index: int) -> float:
        """||M v - lambda v||_2 / max(1, |lambda|) with ||v|| = 1."""
        v = self.eigenvector(index)
        lam = self.eigenvalues[index]
        r = self.matrix @ v - lam * v
        return float(np.sqrt(np.sum(np.abs(r) ** 2)) / max(1.0, abs(lam)))


def eig_complex(
    matrix: NDArray[np.complex128],
    tol: float = 1e-12,
    max_sweeps: int = 40,
) -> EigenResult:
    """All eigenvalues of a complex square matrix.

    The matrix structure picks the path: complex symmetric tridiagonal
    and pentadiagonal matrices go through the structure-preserving
    rotations (fast, O(n^2)); everything else is reduced to Hessenberg
    form and iterated densely.  Unconverged eigenvalues are reported
    with ``converged[i] = False`` rather than raised.

    Args:
        matrix: square 2-d complex array.
        tol: relative off-diagonal deflation threshold.
        max_sweeps: shift sweeps allowed per eigenvalue.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError(f"eig_complex: matrix shape {m.shape} is not square")
    if m.size == 0:
        raise ParameterError("eig_complex: empty matrix")
    if not np.all(np.isfinite(m)):
        raise ParameterError("eig_complex: matrix holds non-finite entries")
    n = m.shape[0]
    kl, ku = _bandwidths(m)
    nudges = 0
    if n == 1:
        vals = [complex(m[0, 0])]
        flags = [True]
        sweeps = 0
        method = "trivial"
    elif kl <= 1 and ku <= 1 and np.array_equal(m, m.T):
        d = [complex(v) for v in np.diag(m)]
        e = [complex(v) for v in np.diag(m, -1)]
        vals, flags, sweeps, nudges = _ql_complex_symmetric(d, e, tol, max_sweeps)
        method = "tridiagonal-ql"
    elif kl <= 2 and ku <= 2 and np.array_equal(m, m.T):
        d0 = [complex(v) for v in np.diag(m)]
        d1 = [complex(v) for v in np.diag(m, -1)]
        d2 = [complex(v) for v in np.diag(m, -2)]
        d0r, d1r, nudge_a = _reduce_pentadiagonal(d0, d1, d2)
        vals, flags, sweeps, nudge_b = _ql_complex_symmetric(d0r, d1r, tol, max_sweeps)
        nudges = nudge_a + nudge_b
        method = "pentadiagonal-ql"
    else:
        h = _householder_hessenberg(m)
        evals, conv, sweeps = _qr_hessenberg(h, tol, max_sweeps)
        vals = list(evals)
        flags = list(conv)
        method = "hessenberg-qr"
    order = sorted(range(n), key=lambda i: (vals[i].real, vals[i].imag))
    eigenvalues = np.array([vals[i] for i in order], dtype=np.complex128)
    converged = np.array([flags[i] for i in order], dtype=bool)
    return EigenResult(
        matrix=m,
        eigenvalues=eigenvalues,
        converged=converged,
        sweeps=sweeps,
        method=method,
        perturbations=nudges,
        _band=(kl, ku),
    )
