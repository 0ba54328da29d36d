"""Hermitian generators: solution-space walks, the driven clock chain, and
the full 2^N blockade chain for small-N validation.

Conventions (hbar = 1, dimensionless time throughout):

* Full chain, sites j = 1..N with site 1 as the leftmost bit of a state:
  H = sum_j (rabi/2)(e^{i phase}|0><1|_j + h.c.) - detuning * sum_j n_j
      + interaction * sum_j n_j (1 - n_{j+1}),
  so the interaction penalizes every "10" substring. Basis index of a
  product state is its bitstring read as a binary integer.

* Clock chain in the packed-excitation basis |k> = |0^(N-k) 1^k>:
  tridiagonal with diagonal A(t)(2k - N) and sub-diagonal J(t) e^{-i phi},
  the projection of the driven chain onto the clock states.

* Generic walk on a solution space: H = detuning * D + (rabi/2) * O with
  D_ii the excitation count of state i and O the Hamming-1 adjacency.
  The diagonal enters with the sign of `detuning` exactly as given; the
  projected full chain corresponds to `detuning = -Delta_full`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import DEFAULTS
from .constraints import SolutionSpace
from .drive import DriveProtocol
from .errors import CapacityError, ValidationError


@dataclass(frozen=True)
class ClockHamiltonian:
    """Tridiagonal Hermitian generator in the clock basis.

    Stored as O(N) data: real diagonal, one hopping amplitude, one hopping
    phase. The dense form has H[k+1, k] = hop * exp(-i*phase).
    """

    diag: np.ndarray
    hop: float
    phase: float

    @property
    def dimension(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        n = self.dimension
        h = np.zeros((n, n), dtype=complex)
        h[np.arange(n), np.arange(n)] = self.diag
        off = self.hop * np.exp(-1j * self.phase)
        idx = np.arange(n - 1)
        h[idx + 1, idx] = off
        h[idx, idx + 1] = np.conj(off)
        return h


@dataclass(frozen=True)
class WalkMatrix:
    """Dense Hermitian matrix tied to the ordering of its solution space."""

    matrix: np.ndarray
    space: SolutionSpace

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class FullChainParams:
    """Static parameters of the full 2^N chain."""

    n_sites: int
    interaction: float
    rabi: float = 0.0
    detuning: float = 0.0
    phase: float = 0.0


def build_walk_hamiltonian(space: SolutionSpace, rabi: float, detuning: float) -> WalkMatrix:
    """H = detuning * D + (rabi/2) * O on the space's Hamming graph.

    D is diagonal with the number of excited sites per basis state; O has a
    unit entry exactly where two basis states differ in one variable.
    """
    dim = space.dimension
    h = np.zeros((dim, dim))
    h[np.arange(dim), np.arange(dim)] = detuning * space.popcounts()
    for u, state in enumerate(space.states):
        for pos in range(space.num_vars):
            flipped = state[:pos] + ("1" if state[pos] == "0" else "0") + state[pos + 1 :]
            v = space.index_of.get(flipped)
            if v is not None:
                h[u, v] += rabi / 2.0
    return WalkMatrix(h, space)


def build_clock_hamiltonian(n_sites: int, t: float, drive: DriveProtocol) -> ClockHamiltonian:
    """Instantaneous clock-chain generator at time t under the given drive."""
    if n_sites < 1:
        raise ValidationError("n_sites must be >= 1")
    j, a, phi = drive.controls(t)
    k = np.arange(n_sites + 1)
    return ClockHamiltonian(diag=a * (2.0 * k - n_sites), hop=j, phase=phi)


def build_full_hamiltonian(params: FullChainParams, cap: int = DEFAULTS.full_chain_cap) -> np.ndarray:
    """Dense 2^N Hamiltonian of the blockade chain with static controls."""
    n = params.n_sites
    if n < 1:
        raise ValidationError("n_sites must be >= 1")
    if n > cap:
        raise CapacityError(f"n_sites={n} exceeds dense-chain cap {cap}")
    dim = 1 << n
    states = np.arange(dim)
    bits = [(states >> (n - j)) & 1 for j in range(1, n + 1)]  # site j, 1-based
    h = np.zeros((dim, dim), dtype=complex)
    occupancy = sum(bits)
    wall_count = sum(bits[j] * (1 - bits[j + 1]) for j in range(n - 1))
    h[states, states] = -params.detuning * occupancy + params.interaction * wall_count
    half = params.rabi / 2.0
    for j in range(n):
        mask = 1 << (n - 1 - j)
        # |0><1| at site j carries e^{+i phase}: rows with the bit cleared
        amp = np.where(bits[j] == 1, half * np.exp(1j * params.phase), half * np.exp(-1j * params.phase))
        h[states ^ mask, states] += amp
    return h


def project_to_subspace(h_full: np.ndarray, space: SolutionSpace) -> WalkMatrix:
    """Restrict a 2^N operator to the basis states of the space, in its order."""
    dim = 1 << space.num_vars
    if h_full.shape != (dim, dim):
        raise ValidationError(
            f"operator shape {h_full.shape} does not match 2^{space.num_vars} = {dim}"
        )
    idx = np.array([int(s, 2) for s in space.states])
    return WalkMatrix(h_full[np.ix_(idx, idx)].copy(), space)


def driven_walk_hamiltonian(space: SolutionSpace, t: float, drive: DriveProtocol) -> WalkMatrix:
    """Drive a generic solution-space walk the way the clock chain is driven.

    Hamming-1 edges that raise the excitation count carry J(t) e^{-i phi(t)}
    (matching the clock sub-diagonal) and the diagonal is A(t)(2 D - N).
    On the clock space this reproduces `build_clock_hamiltonian` exactly;
    for designed spaces it is the natural extension.
    """
    j, a, phi = drive.controls(t)
    dim = space.dimension
    pop = space.popcounts()
    h = np.zeros((dim, dim), dtype=complex)
    h[np.arange(dim), np.arange(dim)] = a * (2.0 * pop - space.num_vars)
    raise_amp = j * np.exp(-1j * phi)
    for u, state in enumerate(space.states):
        for pos in range(space.num_vars):
            if state[pos] == "0":
                flipped = state[:pos] + "1" + state[pos + 1 :]
                v = space.index_of.get(flipped)
                if v is not None:
                    h[v, u] += raise_amp
                    h[u, v] += np.conj(raise_amp)
    return WalkMatrix(h, space)


def write_matrix_csv(matrix: np.ndarray, path: str | Path) -> None:
    """Dump nonzero entries as ``row, col, re, im`` lines."""
    rows, cols = np.nonzero(matrix)
    with open(path, "w") as fh:
        fh.write("row,col,re,im\n")
        for r, c in zip(rows.tolist(), cols.tolist()):
            z = complex(matrix[r, c])
            fh.write(f"{r},{c},{z.real!r},{z.imag!r}\n")
