"""Designing constrained models with a prescribed entanglement bound.

The pipeline starts from a sparsity pattern for the half-cut coefficient
matrix whose admissible rank is bounded, labels each allowed cell by a pair
of packed-excitation half-chain patterns, and checks whether the resulting
vertex set is a median graph. If it is, the canonical clause set is
recovered and certified by re-enumeration; the entropy of every eigenstate
of the induced walk is then bounded by the log of the pattern's rank bound.
The bound is always measured, never assumed: starting from an arbitrary
median graph gives no such guarantee.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .constraints import Clause, ConstraintSet, SolutionSpace, enumerate_solutions, recover_2sat
from .entanglement import coefficient_matrix, entropy_svd
from .errors import NotTwoSatDefinableError, ValidationError
from .graphs import MedianVerdict, all_pairs_distances, build_hamming_graph, is_median_graph
from .hamiltonians import build_walk_hamiltonian


@dataclass(frozen=True)
class SparsityPattern:
    """Cells of an (rows x cols) coefficient matrix permitted to be nonzero."""

    rows: int
    cols: int
    cells: frozenset

    def __post_init__(self):
        cells = frozenset((int(m), int(n)) for m, n in self.cells)
        if not cells:
            raise ValidationError("a sparsity pattern needs at least one cell")
        for m, n in cells:
            if not (0 <= m < self.rows and 0 <= n < self.cols):
                raise ValidationError(f"cell ({m}, {n}) outside {self.rows} x {self.cols}")
        object.__setattr__(self, "cells", cells)

    def rank_bound(self) -> int:
        """Largest rank any admissible matrix can reach: the maximum matching
        between occupied rows and columns (generic fillings attain it)."""
        rows, cols = zip(*self.cells)
        sparse = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.rows, self.cols))
        match = maximum_bipartite_matching(sparse, perm_type="column")
        return int(np.count_nonzero(match >= 0))


def cross_pattern(half_dim: int) -> SparsityPattern:
    """First row plus last column: rank bound 2; reproduces the clock space."""
    cells = {(0, n) for n in range(half_dim)} | {(m, half_dim - 1) for m in range(half_dim)}
    return SparsityPattern(half_dim, half_dim, frozenset(cells))


def band_cross_pattern(half_dim: int, band: int = 2) -> SparsityPattern:
    """First `band` rows plus the last column: rank bound band + 1.

    band = 2 is the modified-chain family whose entropies are bounded by ln 3.
    """
    if not 1 <= band < half_dim:
        raise ValidationError(f"band must lie in 1..{half_dim - 1}")
    cells = {(m, n) for m in range(band) for n in range(half_dim)}
    cells |= {(m, half_dim - 1) for m in range(half_dim)}
    return SparsityPattern(half_dim, half_dim, frozenset(cells))


def full_pattern(half_dim: int) -> SparsityPattern:
    cells = {(m, n) for m in range(half_dim) for n in range(half_dim)}
    return SparsityPattern(half_dim, half_dim, frozenset(cells))


def read_pattern(path: str | Path) -> SparsityPattern:
    """Pattern file: header ``dims R C``, then one allowed cell ``m n`` per line."""
    dims = None
    cells = set()
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if dims is None:
            if len(parts) != 3 or parts[0] != "dims":
                raise ValidationError(f"{path}:{lineno}: expected header 'dims R C'")
            dims = (int(parts[1]), int(parts[2]))
            continue
        if len(parts) != 2:
            raise ValidationError(f"{path}:{lineno}: expected 'm n'")
        cells.add((int(parts[0]), int(parts[1])))
    if dims is None:
        raise ValidationError(f"{path}: missing 'dims R C' header")
    return SparsityPattern(dims[0], dims[1], frozenset(cells))


def write_pattern(pattern: SparsityPattern, path: str | Path) -> None:
    lines = [f"dims {pattern.rows} {pattern.cols}"]
    lines += [f"{m} {n}" for m, n in sorted(pattern.cells)]
    Path(path).write_text("\n".join(lines) + "\n")


def _half_label(count: int, half: int) -> str:
    return "0" * (half - count) + "1" * count


def pattern_to_space(pattern: SparsityPattern, n_sites: int) -> SolutionSpace:
    """Vertex set {left(m) + right(n) : (m, n) allowed}, with packed half labels.

    Both halves are labeled by packed-excitation patterns 0^(N/2-k) 1^k, so
    rows and columns must both have N/2 + 1 entries.
    """
    if n_sites % 2 or n_sites < 2:
        raise ValidationError("n_sites must be even and >= 2")
    half = n_sites // 2
    if pattern.rows != half + 1 or pattern.cols != half + 1:
        raise ValidationError(
            f"pattern is {pattern.rows} x {pattern.cols}, need {half + 1} x {half + 1} for n_sites={n_sites}"
        )
    states = sorted(_half_label(m, half) + _half_label(n, half) for m, n in pattern.cells)
    return SolutionSpace(n_sites, tuple(states))


def ln3_chain_constraints(n_sites: int) -> ConstraintSet:
    """Modified chain: skip the middle-bond clause, add a next-nearest one.

    With 0-based variables, "10" is forbidden on every adjacent pair except
    (N/2 - 1, N/2), and additionally on the pair (N/2 - 2, N/2). Half-cut
    coefficient matrices of states in this space fit the band = 2 pattern,
    so their entropy is bounded by ln 3.
    """
    if n_sites < 4 or n_sites % 2:
        raise ValidationError("n_sites must be even and >= 4")
    mid = n_sites // 2
    clauses = [Clause(i, i + 1, (1, 0)) for i in range(n_sites - 1) if i != mid - 1]
    clauses.append(Clause(mid - 2, mid, (1, 0)))
    return ConstraintSet(n_sites, tuple(sorted(clauses)))


def build_ln3_family(n_sites: int, rabi: float = 1.0, detuning: float = 0.0):
    """(constraints, space, walk) for the ln 3 modified-chain family."""
    constraints = ln3_chain_constraints(n_sites)
    space = enumerate_solutions(constraints)
    walk = build_walk_hamiltonian(space, rabi, detuning)
    return constraints, space, walk


@dataclass(frozen=True)
class DesignOutcome:
    """Result of the design pipeline: clauses plus certificate, or a rejection."""

    accepted: bool
    constraints: ConstraintSet | None = None
    space: SolutionSpace | None = None
    certificate: dict | None = None
    reason: str | None = None
    witness: tuple | None = None
    spurious: str | None = None


def design_pipeline(
    pattern: SparsityPattern,
    n_sites: int,
    draws: int = 10,
    seed: int = 7,
) -> DesignOutcome:
    """Pattern -> space -> median check -> clause recovery -> entropy certificate.

    The certificate records the pattern's rank bound, the corresponding
    entropy bound, and the largest half-cut eigenstate entropy of the walk
    over `draws` random (rabi, detuning) pairs, both through the generic
    SVD path and -- when the space supports it -- the structural fast path.
    """
    space = pattern_to_space(pattern, n_sites)
    graph = build_hamming_graph(space)
    if np.any(all_pairs_distances(graph) < 0):
        return DesignOutcome(False, reason="graph disconnected", space=space)
    verdict: MedianVerdict = is_median_graph(graph)
    if not verdict.is_median:
        return DesignOutcome(False, reason="not a median graph", witness=verdict.witness, space=space)
    try:
        constraints = recover_2sat(space)
    except NotTwoSatDefinableError as exc:
        return DesignOutcome(False, reason="clause recovery mismatch", spurious=exc.spurious, space=space)
    round_trip = enumerate_solutions(constraints).states == space.states

    rank_bound = pattern.rank_bound()
    rng = np.random.default_rng(seed)
    max_entropy = 0.0
    for _ in range(draws):
        rabi = rng.uniform(0.2, 2.0)
        detuning = rng.uniform(-1.0, 1.0)
        walk = build_walk_hamiltonian(space, rabi, detuning)
        _, vectors = np.linalg.eigh(walk.matrix)
        for i in range(space.dimension):
            report = entropy_svd(coefficient_matrix(vectors[:, i], space))
            max_entropy = max(max_entropy, report.entropy)
    certificate = {
        "n_sites": n_sites,
        "dimension": space.dimension,
        "round_trip_exact": bool(round_trip),
        "rank_bound": rank_bound,
        "entropy_bound": math.log(rank_bound),
        "max_eigenstate_entropy": max_entropy,
        "draws": draws,
        "clause_count": len(constraints.clauses),
    }
    return DesignOutcome(True, constraints=constraints, space=space, certificate=certificate)
