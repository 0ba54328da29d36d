"""One-period propagation of the driven clock chain and its eigenphases.

The propagator is a time-ordered product of exact exponentials of the
instantaneous Hamiltonian sampled at step midpoints (second order in the
step size). Each step diagonalizes the real symmetric tridiagonal matrix
obtained by gauging away the hopping phase, then accumulates the product
with dense multiplications -- the hot spot of the whole library.

Eigenphases come from the commuting Hermitian parts of the unitary:
A = (U + U^dag)/2 is diagonalized first and B = (U - U^dag)/(2i) is
diagonalized inside near-degenerate clusters of A, avoiding a general
nonsymmetric eigensolver. A residual check guards the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from .config import DEFAULTS
from .drive import DriveProtocol
from .errors import NumericalQualityError, ValidationError
from .hamiltonians import ClockHamiltonian, build_clock_hamiltonian


@dataclass(frozen=True)
class FloquetOperator:
    """One-period unitary of the driven clock chain."""

    unitary: np.ndarray
    omega: float
    steps_used: int
    unitarity_residual: float

    @property
    def dimension(self) -> int:
        return self.unitary.shape[0]


@dataclass(frozen=True)
class QuasiSpectrum:
    """Sorted eigenphases in (-pi, pi], eigenvectors, and per-pair residuals.

    phases[n] = -arg(lambda_n); eigenvectors are the columns of `eigenvectors`
    in the constrained-basis ordering.
    """

    phases: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.phases)


def _real_matmul(r: np.ndarray, m: np.ndarray) -> np.ndarray:
    # real @ complex via two contiguous real GEMMs; the strided .real/.imag
    # views would otherwise bypass BLAS entirely
    return r @ np.ascontiguousarray(m.real) + 1j * (r @ np.ascontiguousarray(m.imag))


def _apply_step(h: ClockHamiltonian, dt: float, state: np.ndarray) -> np.ndarray:
    """exp(-i h dt) @ state for a tridiagonal clock generator, exactly.

    With G = diag(e^{-i k phase}) the generator is G T G^dag for a real
    symmetric tridiagonal T, so one real eigendecomposition per step suffices.
    """
    n = h.dimension
    w, q = eigh_tridiagonal(h.diag, np.full(n - 1, h.hop))
    g = np.exp(-1j * h.phase * np.arange(n))
    v = g.conj()[:, None] * state if state.ndim == 2 else g.conj() * state
    if state.ndim == 2:
        b = _real_matmul(q.T, v)
        b *= np.exp(-1j * w * dt)[:, None]
        v = _real_matmul(q, b)
        return g[:, None] * v
    b = q.T @ v
    b *= np.exp(-1j * w * dt)
    return g * (q @ b)


def floquet_operator(
    n_sites: int,
    drive: DriveProtocol,
    steps: int = DEFAULTS.floquet_steps,
    t_start: float = 0.0,
) -> FloquetOperator:
    """Time-ordered one-period propagator with midpoint-sampled exponentials.

    Parameters
    ----------
    n_sites : int
        Chain length; the clock basis has n_sites + 1 states.
    drive : DriveProtocol
        Controls J(t), A(t), phi(t); the period is 2*pi/drive.omega.
    steps : int
        Number of equal time slices per period (>= 2; powers of two recommended).
    t_start : float
        Origin of the period; the spectrum is invariant under shifting it.
    """
    if steps < 2:
        raise ValidationError("steps must be >= 2")
    dt = drive.period / steps
    u = np.eye(n_sites + 1, dtype=complex)
    for m in range(steps):
        h = build_clock_hamiltonian(n_sites, t_start + (m + 0.5) * dt, drive)
        u = _apply_step(h, dt, u)
    eye = np.eye(n_sites + 1)
    residual = float(np.abs(u.conj().T @ u - eye).max())
    return FloquetOperator(u, drive.omega, steps, residual)


def converged_floquet_operator(
    n_sites: int,
    drive: DriveProtocol,
    target: float = DEFAULTS.converge_target,
    start_steps: int = DEFAULTS.floquet_steps,
    max_steps: int = 1 << 16,
    t_start: float = 0.0,
) -> FloquetOperator:
    """Double the step count until consecutive propagators differ by < target.

    Returns the finer of the last pair. The midpoint scheme converges as
    O(dt^2), so each doubling shrinks the difference about fourfold.
    """
    coarse = floquet_operator(n_sites, drive, start_steps, t_start)
    steps = start_steps
    while steps < max_steps:
        steps *= 2
        fine = floquet_operator(n_sites, drive, steps, t_start)
        if float(np.abs(fine.unitary - coarse.unitary).max()) < target:
            return fine
        coarse = fine
    raise NumericalQualityError(
        f"propagator not converged to {target} within {max_steps} steps per period"
    )


def quasi_spectrum(
    fop: FloquetOperator,
    cluster_tol: float = DEFAULTS.cluster_tol,
    residual_tol: float = DEFAULTS.residual_tol,
    unitarity_tol: float = DEFAULTS.unitarity_tol,
) -> QuasiSpectrum:
    """Full eigen-decomposition of the one-period unitary.

    Raises
    ------
    NumericalQualityError
        If the propagator's unitarity residual exceeds ``unitarity_tol`` or
        any eigenpair residual exceeds ``residual_tol``.
    """
    if fop.unitarity_residual > unitarity_tol:
        raise NumericalQualityError(
            f"unitarity residual {fop.unitarity_residual:.3e} exceeds {unitarity_tol:.1e}; "
            "increase the step count before extracting a spectrum"
        )
    u = fop.unitary
    n = u.shape[0]
    herm = (u + u.conj().T) / 2
    anti = (u - u.conj().T) / 2j
    a_vals, basis = eigh(herm)
    vectors = np.array(basis, copy=True)
    b_vals = np.empty(n)
    # B restricted to a cluster of nearly equal A-eigenvalues is Hermitian and
    # commutes with A there, so diagonalizing it resolves the cluster
    boundaries = np.nonzero(np.diff(a_vals) > cluster_tol)[0] + 1
    for group in np.split(np.arange(n), boundaries):
        sub = basis[:, group]
        block = sub.conj().T @ anti @ sub
        if len(group) == 1:
            b_vals[group] = block[0, 0].real
        else:
            vals, rot = eigh((block + block.conj().T) / 2)
            b_vals[group] = vals
            vectors[:, group] = sub @ rot
    phases = -np.angle(a_vals + 1j * b_vals)
    order = np.argsort(phases, kind="stable")
    phases = phases[order]
    vectors = vectors[:, order]
    residuals = np.linalg.norm(u @ vectors - vectors * np.exp(-1j * phases)[None, :], axis=0)
    worst = float(residuals.max())
    if worst > residual_tol:
        raise NumericalQualityError(
            f"eigenpair residual {worst:.3e} exceeds {residual_tol:.1e}"
        )
    return QuasiSpectrum(phases, vectors, residuals)


def evolve_state(
    psi0: np.ndarray,
    drive: DriveProtocol,
    t_final: float,
    steps_per_period: int = DEFAULTS.floquet_steps,
) -> np.ndarray:
    """Propagate a normalized clock-basis state to t_final (same stepping scheme).

    A trailing partial step, if any, uses its own midpoint so the scheme
    stays second order for arbitrary t_final.
    """
    psi0 = np.asarray(psi0, dtype=complex)
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-8:
        raise ValidationError(f"initial state must be normalized, got ||psi|| = {norm}")
    n_sites = len(psi0) - 1
    dt = drive.period / steps_per_period
    whole, part = divmod(t_final, dt)
    psi = psi0.copy()
    t = 0.0
    for _ in range(int(whole)):
        h = build_clock_hamiltonian(n_sites, t + dt / 2, drive)
        psi = _apply_step(h, dt, psi)
        t += dt
    if part > 1e-15 * max(1.0, abs(t_final)):
        h = build_clock_hamiltonian(n_sites, t + part / 2, drive)
        psi = _apply_step(h, part, psi)
    return psi


def write_spectrum_csv(spectrum: QuasiSpectrum, path: str | Path) -> None:
    with open(path, "w") as fh:
        fh.write("index,phase,residual\n")
        for i, (p, r) in enumerate(zip(spectrum.phases, spectrum.residuals)):
            fh.write(f"{i},{float(p)!r},{float(r)!r}\n")


def write_eigenvectors_bin(spectrum: QuasiSpectrum, path: str | Path) -> None:
    """Binary sidecar: little-endian header (dimension, count) as two uint64,
    then vectors in phase order, each entry as interleaved re, im float64."""
    vecs = spectrum.eigenvectors
    dim, count = vecs.shape
    with open(path, "wb") as fh:
        np.array([dim, count], dtype="<u8").tofile(fh)
        interleaved = np.empty((count, dim, 2), dtype="<f8")
        cols = vecs.T
        interleaved[:, :, 0] = cols.real
        interleaved[:, :, 1] = cols.imag
        interleaved.tofile(fh)


def read_eigenvectors_bin(path: str | Path) -> np.ndarray:
    with open(path, "rb") as fh:
        dim, count = (int(x) for x in np.fromfile(fh, dtype="<u8", count=2))
        flat = np.fromfile(fh, dtype="<f8", count=dim * count * 2)
    interleaved = flat.reshape(count, dim, 2)
    return (interleaved[:, :, 0] + 1j * interleaved[:, :, 1]).T
