"""Two-valued measures, their convex mixtures, and partition logics.

Everything here is exact: values are 0/1 integers or ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .logic import Logic

__all__ = [
    "Classification",
    "NonUnitalError",
    "PartitionLogic",
    "ProbabilityAssignment",
    "StateSet",
    "TwoValuedMeasure",
    "VacuousPremiseError",
    "classify",
    "enumerate_states",
    "implication_check",
    "mix",
    "partition_logic",
    "symbolic_mix",
]


class VacuousPremiseError(ValueError):
    pass


class NonUnitalError(ValueError):
    pass


@dataclass(frozen=True)
class TwoValuedMeasure:
    atoms: tuple[str, ...]
    values: tuple[int, ...]

    def __getitem__(self, atom: str) -> int:
        return self.values[self.atoms.index(atom)]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.atoms, self.values))

    def __str__(self) -> str:
        return "".join(map(str, self.values))


@dataclass(frozen=True)
class StateSet:
    """All admissible two-valued measures of ``logic``, canonically ordered.

    Measures are sorted by their 0/1 string in descending order, so measures
    that value earlier atoms with 1 come first.  Index ``k`` in partition
    logics and mixtures is 1-based into this order.
    """

    logic: Logic
    measures: tuple[TwoValuedMeasure, ...]

    @property
    def m(self) -> int:
        return len(self.measures)

    def __len__(self) -> int:
        return len(self.measures)

    def __iter__(self) -> Iterator[TwoValuedMeasure]:
        return iter(self.measures)

    def __getitem__(self, k: int) -> TwoValuedMeasure:
        return self.measures[k]

    def vectors(self) -> list[tuple[int, ...]]:
        return [v.values for v in self.measures]

    def format(self) -> str:
        return "".join(f"{v}\n" for v in self.measures)


class ProbabilityAssignment(Mapping[str, object]):
    """Atom -> probability.  Exact values are checked to lie in [0, 1]."""

    def __init__(self, values: Mapping[str, object]):
        self._values = dict(values)
        for atom, x in self._values.items():
            if isinstance(x, (int, Fraction)) and not 0 <= x <= 1:
                raise ValueError(f"value {x} for atom {atom} outside [0, 1]")

    def __getitem__(self, atom: str):
        return self._values[atom]

    def __iter__(self):
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def vector(self, atoms: Sequence[str]) -> tuple:
        return tuple(self._values[a] for a in atoms)

    def __repr__(self) -> str:
        return f"ProbabilityAssignment({self._values!r})"


def enumerate_states(logic: Logic) -> StateSet:
    """Backtracking search for every admissible two-valued measure.

    At each step the unsatisfied context with the fewest open atoms is
    branched on (fail first); choosing an atom sets it to 1 and every atom
    orthogonal to it to 0.
    """
    n = len(logic.atoms)
    ctx = logic.context_indices()
    neighbours = [set() for _ in range(n)]
    for c in ctx:
        for i in c:
            neighbours[i].update(j for j in c if j != i)
    values: list[int | None] = [None] * n
    found: list[tuple[int, ...]] = []

    def search():
        best = None
        for c in ctx:
            if any(values[i] == 1 for i in c):
                continue
            open_atoms = [i for i in c if values[i] is None]
            if not open_atoms:
                return
            if best is None or len(open_atoms) < len(best):
                best = open_atoms
        if best is None:
            found.append(tuple(values))  # type: ignore[arg-type]
            return
        for i in best:
            changed = [i]
            values[i] = 1
            for j in neighbours[i]:
                if values[j] is None:
                    values[j] = 0
                    changed.append(j)
            search()
            for j in changed:
                values[j] = None

    search()
    for v in found:
        for c in ctx:
            if sum(v[i] for i in c) != 1:
                raise AssertionError(f"search produced a non-admissible measure {v}")
    found = sorted(set(found), reverse=True)
    return StateSet(logic, tuple(TwoValuedMeasure(logic.atoms, v) for v in found))


@dataclass(frozen=True)
class Classification:
    has_states: bool
    m: int
    unital: bool
    separating: bool
    never_one: str | None = None
    inseparable: tuple[str, str] | None = None

    @property
    def partition_representable(self) -> bool:
        return self.has_states and self.unital and self.separating

    def summary(self) -> str:
        if not self.has_states:
            return "not partition-representable: no two-valued state"
        if self.m == 1:
            return "not partition-representable: single state cannot separate"
        if not self.unital:
            return f"not partition-representable: atom {self.never_one} is never 1"
        if not self.separating:
            a, b = self.inseparable  # type: ignore[misc]
            return f"not partition-representable: states cannot separate {a} and {b}"
        return "partition-representable: states are unital and separating"


def classify(logic: Logic, states: StateSet) -> Classification:
    vecs = states.vectors()
    n = len(logic.atoms)
    never = next((logic.atoms[i] for i in range(n) if not any(v[i] for v in vecs)), None)
    pair = None
    for i in range(n):
        for j in range(i + 1, n):
            if all(v[i] == v[j] for v in vecs):
                pair = (logic.atoms[i], logic.atoms[j])
                break
        if pair:
            break
    return Classification(bool(vecs), len(vecs), never is None, pair is None, never, pair)


def implication_check(states: StateSet, premise: str, consequent: str) -> bool:
    """True iff every measure with ``v(premise) = 1`` has ``v(consequent) = 0``."""
    relevant = [v for v in states if v[premise] == 1]
    if not relevant:
        raise VacuousPremiseError(f"no two-valued measure has {premise} = 1")
    return all(v[consequent] == 0 for v in relevant)


def symbolic_mix(states: StateSet) -> dict[str, tuple[int, ...]]:
    """For each atom, the 1-based indices of the measures that value it 1."""
    return {
        a: tuple(k + 1 for k, v in enumerate(states.measures) if v.values[i])
        for i, a in enumerate(states.logic.atoms)
    }


@dataclass(frozen=True)
class PartitionLogic:
    logic: Logic
    m: int
    blocks: tuple[tuple[frozenset[int], ...], ...]

    def format(self) -> str:
        def fmt(s):
            return "{" + ",".join(map(str, sorted(s))) + "}"

        lines = [
            f"{c.name}: {{" + ", ".join(fmt(s) for s in block) + "}"
            for c, block in zip(self.logic.contexts, self.blocks)
        ]
        return "\n".join(lines) + "\n"


def partition_logic(states: StateSet) -> PartitionLogic:
    logic = states.logic
    sets = {a: frozenset(ix) for a, ix in symbolic_mix(states).items()}
    empty = [a for a in logic.atoms if not sets[a]]
    if empty:
        raise NonUnitalError(f"atom {empty[0]} takes value 1 in no measure")
    everything = frozenset(range(1, states.m + 1))
    blocks = []
    for c in logic.contexts:
        block = tuple(sets[a] for a in c.atoms)
        union = frozenset().union(*block)
        if union != everything or sum(map(len, block)) != states.m:
            raise AssertionError(f"context {c.name} is not partitioned")
        blocks.append(block)
    return PartitionLogic(logic, states.m, tuple(blocks))


def mix(states: StateSet, weights: Sequence) -> ProbabilityAssignment:
    """Convex combination ``sum_k w_k v_k`` of the measures."""
    w = [Fraction(x) for x in weights]
    if len(w) != states.m:
        raise ValueError(f"expected {states.m} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise ValueError("negative weight")
    if sum(w) != 1:
        raise ValueError(f"weights sum to {sum(w)}, not 1")
    atoms = states.logic.atoms
    return ProbabilityAssignment(
        {a: sum((wk for wk, v in zip(w, states.measures) if v.values[i]), Fraction(0))
         for i, a in enumerate(atoms)}
    )
