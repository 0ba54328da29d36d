"""Bipartite entanglement of states in constrained subspaces.

Amplitudes are arranged into a coefficient matrix indexed by the distinct
left and right sub-patterns that actually occur in the space; its singular
values are the Schmidt spectrum. Constrained spaces make this matrix
sparse in a structured way -- for the clock space only the first row and
last column can be populated, so the rank is at most 2 and every half-cut
entropy is bounded by ln 2 regardless of system size. A dedicated O(N)
path exploits that structure; the generic SVD path works for any space.

Entropies are in nats, with 0 * ln 0 := 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import DEFAULTS
from .constraints import SolutionSpace
from .errors import ValidationError


@dataclass(frozen=True)
class Bipartition:
    """Disjoint variable index sets covering all variables; left/right order preserved."""

    left: tuple[int, ...]
    right: tuple[int, ...]

    @classmethod
    def half(cls, num_vars: int) -> "Bipartition":
        """Default cut: first half of the chain against the rest."""
        mid = num_vars // 2
        return cls(tuple(range(mid)), tuple(range(mid, num_vars)))

    def validate(self, num_vars: int) -> None:
        combined = sorted(self.left + self.right)
        if combined != list(range(num_vars)):
            raise ValidationError(
                f"bipartition {self.left}|{self.right} is not a partition of {num_vars} variables"
            )


@dataclass(frozen=True)
class CoefficientMatrix:
    """State amplitudes routed to (left-pattern, right-pattern) cells."""

    left_labels: tuple[str, ...]
    right_labels: tuple[str, ...]
    entries: np.ndarray


@dataclass(frozen=True)
class EntanglementReport:
    """Schmidt data of one state: entropy (nats), rank, singular values."""

    entropy: float
    schmidt_rank: int
    singular_values: np.ndarray


def _entropy_from_weights(weights: np.ndarray) -> float:
    w = weights[weights > 0]
    return float(-(w * np.log(w)).sum()) if w.size else 0.0


def coefficient_matrix(
    psi: np.ndarray,
    space: SolutionSpace,
    cut: Bipartition | None = None,
) -> CoefficientMatrix:
    """Arrange amplitudes (indexed by the space ordering) on the cut's grid.

    Rows and columns are labeled by the distinct left/right patterns present
    in the space, so memory stays linear in the subspace size.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (space.dimension,):
        raise ValidationError(f"psi has shape {psi.shape}, expected ({space.dimension},)")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-8:
        raise ValidationError(f"state must be normalized, got ||psi|| = {norm}")
    if cut is None:
        cut = Bipartition.half(space.num_vars)
    cut.validate(space.num_vars)

    def split(state: str) -> tuple[str, str]:
        return "".join(state[i] for i in cut.left), "".join(state[i] for i in cut.right)

    pairs = [split(s) for s in space.states]
    left_labels = tuple(sorted({l for l, _ in pairs}))
    right_labels = tuple(sorted({r for _, r in pairs}))
    lidx = {l: i for i, l in enumerate(left_labels)}
    ridx = {r: i for i, r in enumerate(right_labels)}
    entries = np.zeros((len(left_labels), len(right_labels)), dtype=complex)
    for amp, (l, r) in zip(psi, pairs):
        entries[lidx[l], ridx[r]] += amp
    return CoefficientMatrix(left_labels, right_labels, entries)


def entropy_svd(cmat: CoefficientMatrix, rank_tol: float = DEFAULTS.rank_tol) -> EntanglementReport:
    """Schmidt spectrum via singular value decomposition of the coefficient matrix."""
    sigma = np.linalg.svd(cmat.entries, compute_uv=False)
    rank = int(np.count_nonzero(sigma > rank_tol))
    return EntanglementReport(_entropy_from_weights(sigma**2), rank, sigma)


def clock_entropy_rank2(amplitudes: np.ndarray, rank_tol: float = DEFAULTS.rank_tol) -> EntanglementReport:
    """Half-cut entanglement of a clock-basis state in O(N).

    The coefficient matrix of a clock state occupies a single row plus a
    single column sharing one corner cell, so the nonzero Schmidt weights
    are the eigenvalues of a 2x2 Gram matrix built from the row norm, the
    column norm (corner excluded), and the corner amplitude.
    """
    c = np.asarray(amplitudes, dtype=complex)
    n_sites = len(c) - 1
    if n_sites < 2 or n_sites % 2:
        raise ValidationError(f"half cut needs an even chain, got n_sites={n_sites}")
    norm = np.linalg.norm(c)
    if abs(norm - 1.0) > 1e-8:
        raise ValidationError(f"state must be normalized, got ||c|| = {norm}")
    half = n_sites // 2
    row_w = float(np.sum(np.abs(c[: half + 1]) ** 2))
    col_w = float(np.sum(np.abs(c[half + 1 :]) ** 2))
    corner = complex(c[half])
    cross = corner * np.sqrt(col_w)
    gram = np.array([[row_w, cross], [np.conj(cross), col_w]])
    weights = np.linalg.eigvalsh(gram)
    weights = np.clip(weights, 0.0, None)
    sigma = np.sqrt(weights)[::-1]
    rank = int(np.count_nonzero(sigma > rank_tol))
    return EntanglementReport(_entropy_from_weights(weights), rank, sigma)


def local_x_expectation(amplitudes: np.ndarray, site: int) -> float:
    """<X_site> for a clock-basis state (sites are 1-based).

    Flipping site j maps clock state |k> to a clock state only at the domain
    wall, so the expectation reduces to one coherence term,
    2 Re(conj(c[N-j]) c[N-j+1]); wall indices outside [0, N] contribute 0.
    """
    c = np.asarray(amplitudes, dtype=complex)
    n_sites = len(c) - 1
    if not 1 <= site <= n_sites:
        raise ValidationError(f"site must lie in 1..{n_sites}, got {site}")
    lo, hi = n_sites - site, n_sites - site + 1
    if lo < 0 or hi > n_sites:
        return 0.0
    return float(2.0 * np.real(np.conj(c[lo]) * c[hi]))


@dataclass(frozen=True)
class EigenstateSweep:
    """Per-eigenstate half-cut entropies and local observables of a spectrum."""

    phases: np.ndarray
    entropies: np.ndarray
    schmidt_ranks: np.ndarray
    x_expectations: np.ndarray
    site: int

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w") as fh:
            fh.write("index,quasi_phase,entropy,schmidt_rank,x_expectation\n")
            for i in range(len(self.phases)):
                fh.write(
                    f"{i},{float(self.phases[i])!r},{float(self.entropies[i])!r},"
                    f"{int(self.schmidt_ranks[i])},{float(self.x_expectations[i])!r}\n"
                )


def eigenstate_sweep(phases: np.ndarray, eigenvectors: np.ndarray, site: int | None = None) -> EigenstateSweep:
    """Half-cut entropy and <X_site> for every eigenvector column.

    ``site`` defaults to a quarter of the chain.
    """
    n_sites = eigenvectors.shape[0] - 1
    if site is None:
        site = max(1, n_sites // 4)
    count = eigenvectors.shape[1]
    entropies = np.empty(count)
    ranks = np.empty(count, dtype=int)
    xvals = np.empty(count)
    for i in range(count):
        column = eigenvectors[:, i]
        report = clock_entropy_rank2(column)
        entropies[i] = report.entropy
        ranks[i] = report.schmidt_rank
        xvals[i] = local_x_expectation(column, site)
    return EigenstateSweep(np.asarray(phases), entropies, ranks, xvals, site)
