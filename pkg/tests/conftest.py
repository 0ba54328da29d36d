"""Shared brute-force oracles, deliberately independent of the library paths."""

import itertools

import numpy as np
import pytest

from satwalk import Clause, ConstraintSet, SolutionSpace


def brute_force_solutions(constraints: ConstraintSet) -> tuple[str, ...]:
    """Exhaustive 2^N scan; the oracle for the DFS enumerator."""
    n = constraints.num_vars
    out = []
    for value in range(1 << n):
        state = format(value, f"0{n}b")
        if constraints.satisfied_by(state):
            out.append(state)
    return tuple(out)


def random_constraint_set(rng: np.random.Generator, num_vars: int, num_clauses: int) -> ConstraintSet:
    pairs = list(itertools.combinations(range(num_vars), 2))
    clauses = {}
    while len(clauses) < min(num_clauses, 4 * len(pairs)):
        i, j = pairs[rng.integers(len(pairs))]
        pattern = (int(rng.integers(2)), int(rng.integers(2)))
        clauses[(i, j, pattern)] = Clause(i, j, pattern)
    return ConstraintSet(num_vars, tuple(clauses.values()))


def embed_full(psi: np.ndarray, space: SolutionSpace) -> np.ndarray:
    """Lift amplitudes from the constrained basis into the full 2^N space."""
    full = np.zeros(1 << space.num_vars, dtype=complex)
    for amp, state in zip(psi, space.states):
        full[int(state, 2)] = amp
    return full


def reduced_entropy_full(psi_full: np.ndarray, num_vars: int, left_vars: tuple[int, ...]) -> float:
    """Partial-trace entropy oracle on the full 2^N state, any variable split."""
    right_vars = tuple(v for v in range(num_vars) if v not in left_vars)
    perm = left_vars + right_vars
    tensor = psi_full.reshape([2] * num_vars).transpose(perm)
    matrix = tensor.reshape(1 << len(left_vars), 1 << len(right_vars))
    sigma = np.linalg.svd(matrix, compute_uv=False)
    weights = sigma**2
    weights = weights[weights > 1e-300]
    return float(-(weights * np.log(weights)).sum())


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
