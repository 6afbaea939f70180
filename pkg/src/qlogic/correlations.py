"""Per-context product observables over unrestricted 0/1 assignments.

Dropping admissibility, every atom may independently be 0 or 1.  For a
context ``C`` the joint probability is ``P_C = prod v(a)`` and the joint
expectation is ``E_C = prod (1 - 2 v(a))``.  Scans run over all ``2**n``
assignments, vectorized with numpy over bit-encoded assignments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .geometry import VPolytope
from .logic import Logic

__all__ = [
    "ContextProducts",
    "EClaim",
    "MAX_ATOMS",
    "ScanResult",
    "correlation_polytope",
    "products",
    "scan",
    "subclassical_E_claim",
]

MAX_ATOMS = 24


@dataclass(frozen=True)
class ContextProducts:
    P: tuple[int, ...]
    E: tuple[int, ...]


def products(logic: Logic, asg: Mapping[str, int]) -> ContextProducts:
    missing = [a for a in logic.atoms if a not in asg]
    if missing:
        raise KeyError(f"assignment has no value for atom {missing[0]}")
    P, E = [], []
    for c in logic.contexts:
        p, e = 1, 1
        for a in c.atoms:
            v = asg[a]
            if v not in (0, 1):
                raise ValueError(f"value of {a} must be 0 or 1")
            p *= v
            e *= 1 - 2 * v
        P.append(p)
        E.append(e)
    return ContextProducts(tuple(P), tuple(E))


def _check_size(logic: Logic):
    if len(logic.atoms) > MAX_ATOMS:
        raise ValueError(f"{len(logic.atoms)} atoms exceeds the exhaustive-scan limit of {MAX_ATOMS}")


def _context_masks(logic: Logic) -> list[int]:
    return [sum(1 << i for i in idx) for idx in logic.context_indices()]


def _product_table(logic: Logic, coords: str) -> np.ndarray:
    """One row per assignment (bit i = atom i), one column per context."""
    _check_size(logic)
    x = np.arange(1 << len(logic.atoms), dtype=np.uint32)
    cols = []
    for mask in _context_masks(logic):
        hit = x & np.uint32(mask)
        if coords == "P":
            cols.append((hit == mask).astype(np.int8))
        else:
            odd = np.bitwise_count(hit) & 1
            cols.append((1 - 2 * odd.astype(np.int8)).astype(np.int8))
    return np.stack(cols, axis=1)


@dataclass(frozen=True)
class ScanResult:
    objective: str
    min: int
    max: int
    count_at_min: int
    count_at_max: int

    def format(self) -> str:
        return (
            f"objective\t{self.objective}\nmin\t{self.min}\nmax\t{self.max}\n"
            f"count_at_min\t{self.count_at_min}\ncount_at_max\t{self.count_at_max}\n"
        )


def scan(logic: Logic, objective: str) -> ScanResult:
    """Extremes of ``sum_E`` or ``sum_P`` over all 0/1 assignments."""
    if objective not in ("sum_E", "sum_P"):
        raise ValueError("objective must be sum_E or sum_P")
    totals = _product_table(logic, objective[-1]).sum(axis=1, dtype=np.int64)
    lo, hi = int(totals.min()), int(totals.max())
    return ScanResult(
        objective, lo, hi, int((totals == lo).sum()), int((totals == hi).sum())
    )


def correlation_polytope(logic: Logic, coords: str) -> VPolytope:
    """Distinct product vectors over all assignments.

    ``coords`` is ``"P"``, ``"E"`` or ``"PE"`` (the joint vector, P block first).
    """
    names = [c.name.lstrip("C") if c.name.startswith("C") else c.name for c in logic.contexts]
    if coords in ("P", "E"):
        table = _product_table(logic, coords)
        labels = [f"{coords}{k}" for k in names]
    elif coords == "PE":
        table = np.concatenate([_product_table(logic, "P"), _product_table(logic, "E")], axis=1)
        labels = [f"P{k}" for k in names] + [f"E{k}" for k in names]
    else:
        raise ValueError("coords must be P, E or PE")
    rows = np.unique(table, axis=0)[::-1]
    return VPolytope(tuple(labels), tuple(tuple(int(x) for x in r) for r in rows))


@dataclass(frozen=True)
class EClaim:
    per_context: dict[str, tuple[int, ...]]
    hypothetical_total: int

    @property
    def holds(self) -> bool:
        return all(all(e == -1 for e in es) for es in self.per_context.values())


def subclassical_E_claim(logic: Logic) -> EClaim:
    """E of every admissible single-context pattern (exactly one 1).

    Restricted to even-arity contexts; an admissible global assignment, if
    one existed, would then give ``sum_E = -(number of contexts)``.
    """
    odd = [c.name for c in logic.contexts if len(c) % 2]
    if odd:
        raise ValueError(f"odd-arity context present: {odd[0]}")
    per = {}
    for c in logic.contexts:
        es = []
        for one in c.atoms:
            asg = {a: int(a == one) for a in c.atoms}
            e = 1
            for a in c.atoms:
                e *= 1 - 2 * asg[a]
            es.append(e)
        per[c.name] = tuple(es)
    return EClaim(per, -len(logic.contexts))
