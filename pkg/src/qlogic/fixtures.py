"""Built-in logics, realizations and assignments.

Atom numbering follows the drawings the fixtures were transcribed from;
for the unlabeled diagrams atoms are numbered around the outline starting
at the bottom-left corner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .logic import Logic, parse_logic

__all__ = ["FIXTURES", "Fixture", "get_fixture", "fixture_names"]


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    logic_text: str
    realization_text: str | None = None
    assignments: dict[str, dict[str, Fraction]] = field(default_factory=dict)
    # inequalities to check against the state polytope in reports
    checks: tuple[str, ...] = ()
    expected: dict[str, object] = field(default_factory=dict)

    @property
    def logic(self) -> Logic:
        return parse_logic(self.logic_text)


_MO3 = """\
# three disjoint two-atom contexts
context C1: a1 a2
context C2: a3 a4
context C3: a5 a6
"""

_FIG1I = """\
# a three-atom and a two-atom context, disjoint
context C1: a1 a2 a3
context C2: a4 a5
"""

_FIG1II = """\
# rectangle: three-atom rows a1 a2 a3 (bottom) and a4 a5 a6 (top),
# two-atom end columns
context C1: a1 a2 a3
context C2: a3 a6
context C3: a4 a5 a6
context C4: a4 a1
"""

_FIG1III = _FIG1II + """\
# middle column
context C5: a2 a5
"""

_FIG2I = """\
# triangle of two-atom contexts on the corners a1 a2 a3
context C1: a1 a2
context C2: a1 a3
context C3: a2 a3
"""

_FIG2II = """\
# triangle of three-atom contexts; corners a1 a3 a5, midpoints a2 a4 a6
context C1: a1 a2 a3
context C2: a3 a4 a5
context C3: a5 a6 a1
"""

_FIG2III = _FIG2II + """\
# three extra contexts through the centre a7, each joining a midpoint
# with the opposite corner
context C4: a2 a7 a5
context C5: a6 a7 a3
context C6: a4 a7 a1
"""

_FIG3I = """\
# square of two-atom contexts on the corners a1 (bottom-left) .. a4
context C1: a1 a2
context C2: a2 a3
context C3: a3 a4
context C4: a4 a1
"""

_FIG3II = """\
# square of three-atom contexts; corners a1 a3 a5 a7, midpoints a2 a4 a6 a8
context C1: a1 a2 a3
context C2: a3 a4 a5
context C3: a5 a6 a7
context C4: a7 a8 a1
"""

_FIG3III = _FIG3II + """\
# middle row and middle column through the centre a9 (a 3x3 grid)
context C5: a8 a9 a4
context C6: a2 a9 a6
"""

_FIG3IV = _FIG3III + """\
# both diagonals through the centre
context C7: a1 a9 a5
context C8: a3 a9 a7
"""

_CATS_CRADLE = """\
# seven three-atom contexts; a1 and a7 are the two outer tips
context C1: a1 a2 a3
context C2: a3 a4 a5
context C3: a5 a6 a7
context C4: a7 a8 a9
context C5: a9 a10 a11
context C6: a11 a12 a1
context C7: a4 a13 a10
"""

_PENTAGON = """\
# five three-atom contexts; corners a1 a3 a5 a7 a9 intertwine
context C1: a1 a2 a3
context C2: a3 a4 a5
context C3: a5 a6 a7
context C4: a7 a8 a9
context C5: a9 a10 a1
"""

_REDUCED_PENTAGON = """\
# the pentagon with the middle atoms removed
context C1: a1 a3
context C2: a3 a5
context C3: a5 a7
context C4: a7 a9
context C5: a9 a1
"""

_TRIANGLE4 = """\
# triangle of four-atom contexts; corners a1 a4 a7
context C1: a1 a2 a3 a4
context C2: a4 a5 a6 a7
context C3: a7 a8 a9 a1
"""

# Eighteen atoms numbered around the hexagonal outline of the drawing,
# starting at the bottom-left corner; every atom lies in exactly two contexts.
# C7 and C9 are the two crossing curves: C7 is the one through a2 a9 a11 a18,
# which is the labelling under which the printed product-correlation bounds
# hold (the drawing itself attaches the two labels the other way round).
_CABELLO18 = """\
context C1: a1 a2 a3 a4
context C2: a4 a5 a6 a7
context C3: a7 a8 a9 a10
context C4: a10 a11 a12 a13
context C5: a13 a14 a15 a16
context C6: a16 a17 a18 a1
context C7: a2 a9 a11 a18
context C8: a3 a5 a12 a14
context C9: a6 a8 a15 a17
"""


def _cats_cradle_vectors() -> dict[str, tuple[float, ...]]:
    r2, r3 = math.sqrt(2), math.sqrt(3)
    # a1, a7, a13, a6, a8 are given; the rest follow by orthogonal completion
    return {
        "a1": (r2 / r3, -1 / r3, 0.0),
        "a2": (1 / (2 * r3), r2 / (2 * r3), -3 / (2 * r3)),
        "a3": (-0.5, -r2 / 2, -0.5),
        "a4": (-1 / r2, 0.0, 1 / r2),
        "a5": (-0.5, r2 / 2, -0.5),
        "a6": (-1 / (2 * r3), r2 / (2 * r3), 3 / (2 * r3)),
        "a7": (r2 / r3, 1 / r3, 0.0),
        "a8": (-1 / (2 * r3), r2 / (2 * r3), -3 / (2 * r3)),
        "a9": (-0.5, r2 / 2, 0.5),
        "a10": (1 / r2, 0.0, 1 / r2),
        "a11": (0.5, r2 / 2, -0.5),
        "a12": (1 / (2 * r3), r2 / (2 * r3), 3 / (2 * r3)),
        "a13": (0.0, 1.0, 0.0),
    }


def _realization_text(vectors: dict[str, tuple[float, ...]], header: str) -> str:
    dim = len(next(iter(vectors.values())))
    lines = [header, f"dim {dim}"]
    for atom, vec in vectors.items():
        lines.append(f"{atom}: " + " ".join(f"{x:.17g}" for x in vec))
    return "\n".join(lines) + "\n"


_CC_VECTORS = _cats_cradle_vectors()
_CATS_CRADLE_REAL = _realization_text(_CC_VECTORS, "# unit vectors in R^3, one orthonormal basis per context")
_CATS_CRADLE_PARTIAL = _realization_text(
    {a: _CC_VECTORS[a] for a in ("a1", "a7", "a13", "a6", "a8")},
    "# the five explicitly given vectors only",
)

_HALF = Fraction(1, 2)


def _wright(logic_text: str, corners: tuple[str, ...]) -> dict[str, Fraction]:
    logic = parse_logic(logic_text)
    return {a: (_HALF if a in corners else Fraction(0)) for a in logic.atoms}


_CC_CHECKS = (
    "p1+p2+p6>=p4+p8",
    "p1+p2>=p4",
    "p1+2p2+p6>=2p4+p8",
    "p2+p6>=p4",
    "p10+p2+p6>=p4+p8",
    "p4+p8+1>=p1+p10+p2+p6",
    "p8+1>=p1+p10+p2",
    "p4+1>=p1+p2+p6",
    "p4+p5>=p1+p2",
    "p1+p2+p6+p7>=p4+1",
    "p4+p8+p9>=p1+p2+p6",
    "p1+p10+p11+p2+p6>=p4+p8+1",
    "p12+p4+p8>=p10+p2+p6",
    "p10+p13+p4>=1",
    "p1+p7<=3/2",
)

_PENTAGON_CHECKS = (
    "p4+p8>=p1",
    "p4+1>=p1+p2+p6",
    "p4+p8+1>=2p1+p2+p6",
    "p1+p2>=p4",
    "p1+p2+p6>=p4+p8",
    "2p1+p10+p2+p6>=p4+p8+1",
)

_TRIANGLE4_CHECKS = (
    "p5+p6>=p1",
    "p5+p6+1>=2p1+p2+p3+p8",
    "p1+p2+p3>=p5+p6",
    "p5+p6+p7>=p1+p2+p3",
    "2p1+p2+p3+p8+p9>=p5+p6+1",
)


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture("mo3", "three disjoint two-atom contexts", _MO3, expected={"states": 8}),
        Fixture("fig1i", "disjoint three- and two-atom contexts", _FIG1I, expected={"states": 6}),
        Fixture("fig1ii", "rectangle of mixed-arity contexts", _FIG1II),
        Fixture("fig1iii", "rectangle of mixed-arity contexts with a middle column", _FIG1III,
                expected={"states": 0}),
        Fixture("fig2i", "triangle of two-atom contexts", _FIG2I, expected={"states": 0, "loops": (3,)}),
        Fixture("fig2ii", "triangle of three-atom contexts", _FIG2II, expected={"states": 4, "loops": (3,)}),
        Fixture("fig2iii", "triangle of three-atom contexts with three central contexts", _FIG2III,
                expected={"states": 1}),
        Fixture("fig3i", "square of two-atom contexts", _FIG3I, expected={"states": 2, "loops": (4,)}),
        Fixture("fig3ii", "square of three-atom contexts", _FIG3II),
        Fixture("fig3iii", "3x3 grid of three-atom contexts", _FIG3III, expected={"states": 6}),
        Fixture("fig3iv", "3x3 grid with both diagonals", _FIG3IV, expected={"states": 0}),
        Fixture("cats-cradle", "cat's cradle: seven intertwined three-atom contexts", _CATS_CRADLE,
                realization_text=_CATS_CRADLE_REAL, checks=_CC_CHECKS, expected={"states": 14}),
        Fixture("cats-cradle-partial", "cat's cradle with only five vectors given", _CATS_CRADLE,
                realization_text=_CATS_CRADLE_PARTIAL, checks=_CC_CHECKS, expected={"states": 14}),
        Fixture("pentagon", "pentagon of three-atom contexts", _PENTAGON,
                assignments={"wright": _wright(_PENTAGON, ("a1", "a3", "a5", "a7", "a9"))},
                checks=_PENTAGON_CHECKS, expected={"states": 11}),
        Fixture("reduced-pentagon", "pentagon of two-atom contexts", _REDUCED_PENTAGON,
                expected={"states": 0}),
        Fixture("triangle4", "triangle of four-atom contexts", _TRIANGLE4,
                assignments={"wright": _wright(_TRIANGLE4, ("a1", "a4", "a7"))},
                checks=_TRIANGLE4_CHECKS, expected={"states": 14}),
        Fixture("cabello18", "nine four-atom contexts, eighteen atoms, no two-valued state", _CABELLO18,
                expected={"states": 0, "min_sum_E": -7, "count_min_sum_E": 1152}),
    ]
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}") from None
