"""Two-variable forbidden-pattern constraints and their solution spaces.

A clause forbids exactly one of the four assignments of an ordered variable
pair, which is the blockade picture of a 2-SAT clause: the interaction
penalizes one local pattern, the clause excludes it. A constraint set is a
conjunction of such clauses; its solution space is the ordered basis of the
blockade-constrained Hilbert space.

Variables are 0-based. States are bitstrings with variable 0 leftmost, kept
in lexicographic order so basis indices are reproducible across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .config import DEFAULTS
from .errors import CapacityError, NotTwoSatDefinableError, UnsatisfiableError, ValidationError

PATTERNS = ((0, 0), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True, order=True)
class Clause:
    """Forbid the assignment (x[var_i], x[var_j]) == pattern."""

    var_i: int
    var_j: int
    pattern: tuple[int, int]

    def __post_init__(self):
        if not 0 <= self.var_i < self.var_j:
            raise ValidationError(f"clause requires 0 <= var_i < var_j, got ({self.var_i}, {self.var_j})")
        if self.pattern not in PATTERNS:
            raise ValidationError(f"forbidden pattern must be a bit pair, got {self.pattern!r}")

    def violated_by(self, bits) -> bool:
        return bits[self.var_i] == self.pattern[0] and bits[self.var_j] == self.pattern[1]


@dataclass(frozen=True)
class ConstraintSet:
    """A conjunction of pairwise forbidden-pattern clauses over num_vars variables."""

    num_vars: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValidationError("num_vars must be positive")
        object.__setattr__(self, "clauses", tuple(self.clauses))
        seen = set()
        for c in self.clauses:
            if c.var_j >= self.num_vars:
                raise ValidationError(f"clause {c} references variable beyond num_vars={self.num_vars}")
            key = (c.var_i, c.var_j, c.pattern)
            if key in seen:
                raise ValidationError(f"duplicate clause {c}")
            seen.add(key)

    def satisfied_by(self, state: str) -> bool:
        bits = [int(ch) for ch in state]
        return not any(c.violated_by(bits) for c in self.clauses)


@dataclass(frozen=True)
class SolutionSpace:
    """Lexicographically ordered satisfying assignments; the constrained basis."""

    num_vars: int
    states: tuple[str, ...]
    index_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        states = tuple(self.states)
        object.__setattr__(self, "states", states)
        if not states:
            raise ValidationError("a solution space must be nonempty")
        if any(len(s) != self.num_vars or set(s) - {"0", "1"} for s in states):
            raise ValidationError("states must be bitstrings of length num_vars")
        if list(states) != sorted(set(states)):
            raise ValidationError("states must be sorted and duplicate-free")
        object.__setattr__(self, "index_of", {s: i for i, s in enumerate(states)})

    @property
    def dimension(self) -> int:
        return len(self.states)

    def bit_array(self) -> np.ndarray:
        """(dimension, num_vars) uint8 matrix of state bits."""
        return np.array([[int(ch) for ch in s] for s in self.states], dtype=np.uint8)

    def popcounts(self) -> np.ndarray:
        return np.array([s.count("1") for s in self.states])


def clock_constraints(num_vars: int) -> ConstraintSet:
    """Forbid "10" on every adjacent pair; solutions are the monotone (clock) states."""
    clauses = [Clause(i, i + 1, (1, 0)) for i in range(num_vars - 1)]
    return ConstraintSet(num_vars, tuple(clauses))


def pxp_constraints(num_vars: int) -> ConstraintSet:
    """Forbid "11" on every adjacent pair; solutions form the Fibonacci cube."""
    clauses = [Clause(i, i + 1, (1, 1)) for i in range(num_vars - 1)]
    return ConstraintSet(num_vars, tuple(clauses))


def clock_space(num_vars: int) -> SolutionSpace:
    """The packed-excitation basis 0^(N-k) 1^k for k = 0..N, built directly."""
    states = sorted("0" * (num_vars - k) + "1" * k for k in range(num_vars + 1))
    return SolutionSpace(num_vars, tuple(states))


def enumerate_solutions(constraints: ConstraintSet, cap: int = DEFAULTS.enum_cap) -> SolutionSpace:
    """Enumerate every satisfying assignment, in lexicographic order.

    Depth-first search branching on the lowest unassigned variable with unit
    propagation over half-violated clauses; exact, and output-sensitive enough
    for the constrained spaces this library targets.

    Raises
    ------
    CapacityError
        If ``constraints.num_vars`` exceeds ``cap``.
    UnsatisfiableError
        If no assignment satisfies every clause.
    """
    n = constraints.num_vars
    if n > cap:
        raise CapacityError(f"num_vars={n} exceeds enumeration cap {cap}")

    # watch[v] holds (u, bit_v, bit_u): assigning x_v = bit_v forces x_u != bit_u
    watch: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
    for c in constraints.clauses:
        a, b = c.pattern
        watch[c.var_i].append((c.var_j, a, b))
        watch[c.var_j].append((c.var_i, b, a))

    assign = [-1] * n
    solutions: list[str] = []

    def propagate(var: int, val: int, trail: list[int]) -> bool:
        stack = [(var, val)]
        while stack:
            v, x = stack.pop()
            if assign[v] != -1:
                if assign[v] != x:
                    return False
                continue
            assign[v] = x
            trail.append(v)
            for u, mine, theirs in watch[v]:
                if x == mine:
                    forced = 1 - theirs
                    if assign[u] == -1:
                        stack.append((u, forced))
                    elif assign[u] != forced:
                        return False
        return True

    def descend(start: int):
        v = start
        while v < n and assign[v] != -1:
            v += 1
        if v == n:
            solutions.append("".join(str(b) for b in assign))
            return
        for val in (0, 1):
            trail: list[int] = []
            if propagate(v, val, trail):
                descend(v + 1)
            for u in trail:
                assign[u] = -1

    descend(0)
    if not solutions:
        raise UnsatisfiableError(f"no assignment of {n} variables satisfies all {len(constraints.clauses)} clauses")
    return SolutionSpace(n, tuple(sorted(solutions)))


def recover_2sat(space: SolutionSpace, cap: int = DEFAULTS.enum_cap) -> ConstraintSet:
    """Recover the canonical maximal clause set whose solutions are exactly `space`.

    Every two-variable pattern absent from all states becomes a forbidden-pattern
    clause (the unique maximal set, independent of state order). The result is
    verified by re-enumeration; a mismatch means the input is not the solution
    set of any two-variable clause system.

    Raises
    ------
    NotTwoSatDefinableError
        If re-enumeration yields extra states; carries one spurious state.
    """
    n = space.num_vars
    bits = space.bit_array()
    clauses = []
    for i, j in itertools.combinations(range(n), 2):
        present = set(zip(bits[:, i].tolist(), bits[:, j].tolist()))
        for pattern in PATTERNS:
            if pattern not in present:
                clauses.append(Clause(i, j, pattern))
    recovered = ConstraintSet(n, tuple(clauses))
    re_space = enumerate_solutions(recovered, cap=max(cap, n))
    if re_space.states != space.states:
        extras = sorted(set(re_space.states) - set(space.states))
        # input states satisfy every absent-pattern clause by construction,
        # so any mismatch is an extra state
        raise NotTwoSatDefinableError(extras[0])
    return recovered


# --- constraint files: header "vars N", then one clause per line "i j PATTERN" ---

def write_constraints(constraints: ConstraintSet, path: str | Path) -> None:
    lines = [f"vars {constraints.num_vars}"]
    for c in constraints.clauses:
        lines.append(f"{c.var_i} {c.var_j} {c.pattern[0]}{c.pattern[1]}")
    Path(path).write_text("\n".join(lines) + "\n")


def read_constraints(path: str | Path) -> ConstraintSet:
    num_vars = None
    clauses = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if num_vars is None:
            if len(parts) != 2 or parts[0] != "vars":
                raise ValidationError(f"{path}:{lineno}: expected header 'vars N'")
            num_vars = int(parts[1])
            continue
        if len(parts) != 3 or len(parts[2]) != 2 or set(parts[2]) - {"0", "1"}:
            raise ValidationError(f"{path}:{lineno}: expected 'i j PATTERN' with PATTERN in 00/01/10/11")
        i, j = int(parts[0]), int(parts[1])
        clauses.append(Clause(i, j, (int(parts[2][0]), int(parts[2][1]))))
    if num_vars is None:
        raise ValidationError(f"{path}: missing 'vars N' header")
    return ConstraintSet(num_vars, tuple(clauses))
