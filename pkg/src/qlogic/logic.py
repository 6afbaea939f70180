"""Orthogonality diagrams: contexts of atoms pasted along shared atoms.

A :class:`Logic` is nothing more than an ordered list of atom names and an
ordered list of named contexts.  Two atoms are orthogonal iff some context
contains both.  There is no lattice machinery here; everything downstream
works at the level of the diagram.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

__all__ = [
    "Context",
    "Logic",
    "LogicError",
    "LoopReport",
    "ParseError",
    "context_profile",
    "detect_loops",
    "horizontal_pasting",
    "parse_logic",
    "serialize_logic",
    "specker_oracle_check",
    "to_dot",
]

ATOM_RE = re.compile(r"[A-Za-z0-9_]+\Z")
_CONTEXT_RE = re.compile(r"context\s+([A-Za-z0-9_]+)\s*:(.*)\Z")


class LogicError(ValueError):
    """Structurally invalid logic (duplicate atoms, duplicate contexts, ...)."""


class ParseError(LogicError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Context:
    name: str
    atoms: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.atoms)

    def __contains__(self, atom: object) -> bool:
        return atom in self.atoms


@dataclass(frozen=True)
class Logic:
    """Atoms in first-appearance order plus contexts in input order."""

    atoms: tuple[str, ...]
    contexts: tuple[Context, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.atoms)) != len(self.atoms):
            raise LogicError("atom listed twice")
        index = {a: i for i, a in enumerate(self.atoms)}
        seen_names: set[str] = set()
        seen_sets: dict[frozenset[str], str] = {}
        used: set[str] = set()
        for ctx in self.contexts:
            if ctx.name in seen_names:
                raise LogicError(f"context name {ctx.name!r} used twice")
            seen_names.add(ctx.name)
            if len(ctx.atoms) < 2:
                raise LogicError(f"context {ctx.name} has fewer than 2 atoms")
            if len(set(ctx.atoms)) != len(ctx.atoms):
                raise LogicError(f"context {ctx.name} lists an atom twice")
            for a in ctx.atoms:
                if a not in index:
                    raise LogicError(f"context {ctx.name} uses unknown atom {a!r}")
            key = frozenset(ctx.atoms)
            if key in seen_sets:
                raise LogicError(
                    f"context {ctx.name} duplicates context {seen_sets[key]}"
                )
            seen_sets[key] = ctx.name
            used.update(ctx.atoms)
        unused = [a for a in self.atoms if a not in used]
        if unused:
            raise LogicError(f"atom {unused[0]!r} is in no context")
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_contexts(cls, contexts) -> "Logic":
        """Build from ``(name, atoms)`` pairs; atom order is first appearance."""
        ctxs = tuple(Context(name, tuple(atoms)) for name, atoms in contexts)
        atoms: dict[str, None] = {}
        for ctx in ctxs:
            for a in ctx.atoms:
                atoms.setdefault(a, None)
        return cls(tuple(atoms), ctxs)

    def index(self, atom: str) -> int:
        return self._index[atom]

    def context_indices(self) -> list[tuple[int, ...]]:
        return [tuple(self._index[a] for a in ctx.atoms) for ctx in self.contexts]

    def contexts_of(self, atom: str) -> list[int]:
        return [i for i, ctx in enumerate(self.contexts) if atom in ctx.atoms]

    def orthogonal(self, a: str, b: str) -> bool:
        return a != b and any(a in c.atoms and b in c.atoms for c in self.contexts)


@dataclass(frozen=True)
class LoopReport:
    order: int
    contexts: tuple[str, ...]
    linking_atoms: tuple[str, ...]


def parse_logic(text: str) -> Logic:
    contexts: list[tuple[str, tuple[str, ...], int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _CONTEXT_RE.match(line)
        if not m:
            raise ParseError(f"cannot parse {raw.strip()!r}", lineno)
        name, rest = m.group(1), m.group(2).split()
        for a in rest:
            if not ATOM_RE.match(a):
                raise ParseError(f"bad atom name {a!r}", lineno)
        if len(rest) < 2:
            raise ParseError(f"context {name} needs at least 2 atoms", lineno)
        if len(set(rest)) != len(rest):
            dup = next(a for a, n in Counter(rest).items() if n > 1)
            raise ParseError(f"atom {dup!r} repeated in context {name}", lineno)
        for prev_name, prev_atoms, prev_line in contexts:
            if prev_name == name:
                raise ParseError(f"context name {name} already used on line {prev_line}", lineno)
            if set(prev_atoms) == set(rest):
                raise ParseError(f"context {name} duplicates {prev_name} (line {prev_line})", lineno)
        contexts.append((name, tuple(rest), lineno))
    if not contexts:
        raise ParseError("no contexts", 1)
    return Logic.from_contexts((name, atoms) for name, atoms, _ in contexts)


def serialize_logic(logic: Logic) -> str:
    return "".join(f"context {c.name}: {' '.join(c.atoms)}\n" for c in logic.contexts)


def horizontal_pasting(n: int, arity: int) -> Logic:
    """``n`` pairwise disjoint contexts of ``arity`` atoms (MO_n for arity 2)."""
    if n < 1 or arity < 2:
        raise ValueError("need n >= 1 and arity >= 2")
    return Logic.from_contexts(
        (f"C{i + 1}", [f"a{i * arity + j + 1}" for j in range(arity)]) for i in range(n)
    )


def context_profile(logic: Logic) -> tuple[dict[int, int], bool]:
    hist = Counter(len(c) for c in logic.contexts)
    profile = dict(sorted(hist.items()))
    return profile, len(profile) >= 2


def detect_loops(logic: Logic, max_order: int) -> list[LoopReport]:
    """All minimal loops of order 3..max_order.

    A loop is a cyclic sequence of distinct contexts in which neighbours share
    exactly one atom, the shared atoms are pairwise distinct, and contexts
    that are not neighbours in the cycle are disjoint.  Each loop is reported
    once, starting at its lowest-indexed context.
    """
    if max_order < 3:
        raise ValueError("max_order must be >= 3")
    sets = [frozenset(c.atoms) for c in logic.contexts]
    n = len(sets)
    meets = [[len(sets[i] & sets[j]) for j in range(n)] for i in range(n)]
    found: list[tuple[int, ...]] = []

    def extend(path: list[int]):
        start, last = path[0], path[-1]
        if len(path) >= 3 and meets[last][start]:
            # touching the start context ends the walk: closed or invalid
            if meets[last][start] == 1 and path[1] < last:
                found.append(tuple(path))
            return
        if len(path) == max_order:
            return
        for nxt in range(start + 1, n):
            if nxt in path or meets[last][nxt] != 1:
                continue
            if any(meets[nxt][p] for p in path[1:-1]):
                continue
            extend(path + [nxt])

    for s in range(n):
        extend([s])

    reports = []
    for cyc in sorted(found, key=lambda c: (len(c), c)):
        k = len(cyc)
        links = tuple(
            next(iter(sets[cyc[i]] & sets[cyc[(i + 1) % k]])) for i in range(k)
        )
        if len(set(links)) != k:
            continue
        reports.append(
            LoopReport(k, tuple(logic.contexts[i].name for i in cyc), links)
        )
    return reports


@dataclass(frozen=True)
class SpeckerReport:
    states: tuple[str, ...]
    equal_pairs: dict[str, tuple[tuple[int, int], ...]]
    classes: tuple[tuple[str, ...], ...]

    @property
    def always_pair(self) -> bool:
        return all(self.equal_pairs[s] for s in self.states)


def specker_oracle_check() -> SpeckerReport:
    """Three boxes, each empty (``e``) or filled (``f``).

    Classically some pair of boxes always agrees; the states fall into four
    classes by how many boxes are filled.
    """
    states = tuple("".join(s) for s in product("ef", repeat=3))
    pairs = {
        s: tuple((i + 1, j + 1) for i in range(3) for j in range(i + 1, 3) if s[i] == s[j])
        for s in states
    }
    by_fill: dict[int, list[str]] = {}
    for s in states:
        by_fill.setdefault(s.count("f"), []).append(s)
    report = SpeckerReport(states, pairs, tuple(tuple(v) for _, v in sorted(by_fill.items())))
    assert report.always_pair
    return report


_DOT_COLORS = (
    "blue", "red", "green", "magenta", "cyan", "orange", "gray", "brown",
    "olive", "violet", "gold", "black",
)


def to_dot(logic: Logic) -> str:
    lines = ["graph logic {", "  node [shape=point];"]
    for a in logic.atoms:
        lines.append(f'  "{a}" [xlabel="{a}"];')
    for i, c in enumerate(logic.contexts):
        path = " -- ".join(f'"{a}"' for a in c.atoms)
        color = _DOT_COLORS[i % len(_DOT_COLORS)]
        lines.append(f'  {path} [color={color}, penwidth=2, label="{c.name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
