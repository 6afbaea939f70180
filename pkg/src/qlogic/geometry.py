"""Exact polyhedral computations: facets from vertices and vertices from facets.

Both directions run the double description method on integer data, so no
result depends on a tolerance.  Polytopes that are not full-dimensional are
handled by splitting off the affine hull first; the reported facet
inequalities then live in ambient coordinates but only use the coordinates
that parametrize the affine hull, so they are one representative out of many.
Compare inequalities with :func:`verify_inequality`, not by coefficients.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, Sequence

from . import _linalg as la
from .logic import Logic

__all__ = [
    "Equation",
    "Evaluation",
    "HPolytope",
    "Inequality",
    "BudgetExceeded",
    "UnboundedError",
    "VPolytope",
    "Verdict",
    "evaluate",
    "format_hpolytope",
    "format_vertices",
    "frame_function_system",
    "hull",
    "parse_inequality",
    "verify_inequality",
    "vertex_enumerate",
]


class BudgetExceeded(RuntimeError):
    """The double description run needed more intermediate rays than allowed."""


class UnboundedError(ValueError):
    pass


def _integral(coeffs, rhs) -> tuple[tuple[int, ...], int]:
    row = la.primitive(list(coeffs) + [rhs])
    return row[:-1], row[-1]


@dataclass(frozen=True, order=True)
class Inequality:
    """``sum(c_i * x_i) >= bound`` with coprime integer data."""

    coefficients: tuple[int, ...]
    bound: int

    @classmethod
    def make(cls, coefficients, bound) -> "Inequality":
        # scaling by a positive factor keeps the sense
        c, b = _integral(coefficients, bound)
        return cls(c, b)

    def slack(self, x) -> Fraction:
        return la.dot(self.coefficients, x) - self.bound

    def format(self, labels: Sequence[str]) -> str:
        return _format_relation(self.coefficients, self.bound, ">=", labels)


@dataclass(frozen=True, order=True)
class Equation:
    """``sum(c_i * x_i) == rhs``; sign fixed so the first nonzero of (c, -rhs) is positive."""

    coefficients: tuple[int, ...]
    rhs: int

    @classmethod
    def make(cls, coefficients, rhs) -> "Equation":
        c, b = _integral(coefficients, rhs)
        lead = next((x for x in list(c) + [-b] if x), 0)
        if lead < 0:
            c, b = tuple(-x for x in c), -b
        return cls(c, b)

    def format(self, labels: Sequence[str]) -> str:
        return _format_relation(self.coefficients, self.rhs, "=", labels)


def _format_relation(coeffs, rhs, rel: str, labels) -> str:
    """Human form with positive terms on each side, e.g. ``p4 + p8 >= p1``."""
    left, right = [], []
    for c, lab in zip(coeffs, labels):
        if c == 0:
            continue
        term = lab if abs(c) == 1 else f"{abs(c)}{lab}"
        (left if c > 0 else right).append(term)
    if rhs < 0:
        left.append(str(-rhs))
    elif rhs > 0 or not right:
        right.append(str(rhs))
    return f"{' + '.join(left) or '0'} {rel} {' + '.join(right)}"


def _frac_vec(v) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


@dataclass(frozen=True)
class VPolytope:
    labels: tuple[str, ...]
    vertices: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        seen: dict[tuple[Fraction, ...], None] = {}
        for v in self.vertices:
            v = _frac_vec(v)
            if len(v) != len(self.labels):
                raise ValueError("vertex dimension does not match labels")
            seen.setdefault(v, None)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "vertices", tuple(seen))

    @property
    def dimension(self) -> int:
        """Dimension of the affine hull (-1 when empty)."""
        if not self.vertices:
            return -1
        return la.rank([(1,) + v for v in self.vertices]) - 1

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class HPolytope:
    labels: tuple[str, ...]
    equations: tuple[Equation, ...]
    inequalities: tuple[Inequality, ...]

    def contains(self, x) -> bool:
        return all(la.dot(e.coefficients, x) == e.rhs for e in self.equations) and all(
            h.slack(x) >= 0 for h in self.inequalities
        )


# ---------------------------------------------------------------------------
# double description core


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _initial_basis(rows: list[tuple[int, ...]], order: list[int], d: int) -> list[int]:
    chosen: list[int] = []
    for i in order:
        if la.rank([rows[j] for j in chosen] + [rows[i]]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d:
                break
    return chosen


def _extreme_rays(rows: list[tuple[int, ...]], d: int, max_rays: int | None = None) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : r . y >= 0 for r in rows}``.

    ``rows`` must span R^d.  Rows are inserted by ascending support size;
    adjacency of a (+, -) ray pair is the combinatorial test: their common
    tight set is not contained in the tight set of any third ray.
    """
    order = sorted(range(len(rows)), key=lambda i: (sum(1 for x in rows[i] if x), rows[i]))
    basis = _initial_basis(rows, order, d)
    if len(basis) < d:
        raise ValueError("constraint rows do not span the space")
    inv_rows, _ = la.rref([list(rows[i]) + [int(j == k) for k in range(d)] for j, i in enumerate(basis)])
    inverse = [row[d:] for row in inv_rows]
    rays: list[tuple[int, ...]] = []
    for j in range(d):
        rays.append(la.primitive([inverse[r][j] for r in range(d)]))
    done = set(basis)
    tight: list[int] = []
    for ray in rays:
        mask = 0
        for i in basis:
            if la.dot(rows[i], ray) == 0:
                mask |= 1 << i
        tight.append(mask)

    for i in order:
        if i in done:
            continue
        done.add(i)
        row = rows[i]
        bit = 1 << i
        vals = [la.dot(row, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            for k, v in enumerate(vals):
                if v == 0:
                    tight[k] |= bit
            continue
        new_rays: list[tuple[int, ...]] = []
        new_tight: list[int] = []
        for p in pos:
            tp = tight[p]
            for n in neg:
                common = tp & tight[n]
                if _popcount(common) < d - 2:
                    continue
                if any(
                    (t & common) == common
                    for k, t in enumerate(tight)
                    if k != p and k != n
                ):
                    continue
                vp, vn = vals[p], vals[n]
                new = la.primitive([vp * b - vn * a for a, b in zip(rays[p], rays[n])])
                new_rays.append(new)
                new_tight.append(common | bit)
        keep = [k for k, v in enumerate(vals) if v >= 0]
        rays = [rays[k] for k in keep] + new_rays
        tight = [tight[k] | (bit if vals[k] == 0 else 0) for k in keep] + new_tight
        if max_rays is not None and len(rays) > max_rays:
            raise BudgetExceeded(f"more than {max_rays} intermediate rays")
    return rays


def _cone_generators(rows: list[tuple[int, ...]], d: int):
    """Extreme rays and lineality basis of ``{y : rows @ y >= 0}`` in R^d."""
    lineality = la.nullspace(rows, d)
    if not lineality:
        return _extreme_rays(rows, d), []
    # restrict to the row space, where the cone is pointed
    space, _ = la.rref(rows)
    k = len(space)
    if k == 0:
        return [], lineality
    reduced = [la.primitive([la.dot(r, s) for s in space]) if any(r) else tuple([0] * k) for r in rows]
    zrays = _extreme_rays(reduced, k)
    rays = [la.primitive([sum(z[j] * space[j][c] for j in range(k)) for c in range(d)]) for z in zrays]
    return rays, lineality


# ---------------------------------------------------------------------------
# public operations


def hull(poly: VPolytope, max_rays: int | None = None) -> HPolytope:
    """Affine hull equations and the complete facet list of ``conv(vertices)``.

    ``max_rays`` caps the intermediate ray count of the double description
    run; exceeding it raises :class:`BudgetExceeded` instead of running on.
    """
    if not poly.vertices:
        raise ValueError("hull of an empty vertex set")
    n = len(poly.labels)
    homog = [(Fraction(1),) + v for v in poly.vertices]
    red, pivots = la.rref(homog)
    free = [c - 1 for c in pivots if c > 0]

    equations = []
    for col in range(1, n + 1):
        if col in pivots:
            continue
        # x_col = r0 + sum_k r_k x_{pivot_k}
        coeffs = [Fraction(0)] * n
        coeffs[col - 1] = Fraction(1)
        rhs = Fraction(0)
        for row, p in zip(red, pivots):
            if p == 0:
                rhs = row[col]
            else:
                coeffs[p - 1] -= row[col]
        equations.append(Equation.make(coeffs, rhs))

    inequalities: list[Inequality] = []
    if free:
        rows = [la.primitive([1] + [v[j] for j in free]) for v in poly.vertices]
        for ray in _extreme_rays(rows, len(free) + 1, max_rays):
            coeffs = [0] * n
            for j, c in zip(free, ray[1:]):
                coeffs[j] = c
            inequalities.append(Inequality.make(coeffs, -ray[0]))
    return HPolytope(
        poly.labels,
        tuple(sorted(equations, key=_row_key)),
        tuple(sorted(inequalities, key=_row_key)),
    )


def _row_key(r):
    coeffs = r.coefficients
    return (sum(1 for c in coeffs if c), tuple(-c for c in coeffs), r.bound if isinstance(r, Inequality) else r.rhs)


def vertex_enumerate(h: HPolytope) -> VPolytope:
    """Vertices of ``{x : equations, inequalities}``; empty if infeasible."""
    n = len(h.labels)
    if h.equations:
        red, pivots = la.rref([list(e.coefficients) + [e.rhs] for e in h.equations])
        if n in pivots:
            return VPolytope(h.labels, ())
        x0 = [Fraction(0)] * n
        for row, p in zip(red, pivots):
            x0[p] = row[n]
        basis = la.nullspace([row[:n] for row in red], n)
    else:
        x0 = [Fraction(0)] * n
        basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    k = len(basis)
    # homogenized cone over (s, t): s >= 0 and s*(a.x0 - b) + (a.N) t >= 0
    rows = [tuple([1] + [0] * k)]
    for ineq in h.inequalities:
        a = ineq.coefficients
        rows.append(la.primitive([la.dot(a, x0) - ineq.bound] + [la.dot(a, col) for col in basis]))
    rays, lineality = _cone_generators(rows, k + 1)
    feasible = any(r[0] > 0 for r in rays)
    if feasible and (lineality or any(r[0] == 0 for r in rays)):
        raise UnboundedError("polyhedron is unbounded")
    verts = []
    for r in rays:
        s = r[0]
        t = [Fraction(x, s) for x in r[1:]]
        verts.append(tuple(x0[i] + sum(t[j] * basis[j][i] for j in range(k)) for i in range(n)))
    return VPolytope(h.labels, tuple(sorted(verts, reverse=True)))


class Verdict(enum.Enum):
    INVALID = "invalid"
    VALID = "valid"
    SUPPORTING = "supporting"
    FACET = "facet"

    def __str__(self) -> str:
        return self.value


def verify_inequality(poly: VPolytope, ineq: Inequality) -> Verdict:
    """Classify ``ineq`` against the vertex set.

    A valid inequality that is tight on every vertex (an implicit equation
    of the affine hull) counts as supporting: its face is the whole polytope.
    """
    if len(ineq.coefficients) != len(poly.labels):
        raise ValueError("dimension mismatch")
    tight = []
    for v in poly.vertices:
        s = ineq.slack(v)
        if s < 0:
            return Verdict.INVALID
        if s == 0:
            tight.append(v)
    if not tight:
        return Verdict.VALID
    face_dim = la.rank([(1,) + v for v in tight]) - 1
    if face_dim == poly.dimension - 1:
        return Verdict.FACET
    return Verdict.SUPPORTING


@dataclass(frozen=True)
class Evaluation:
    satisfied: bool
    slack: object


def evaluate(assignment, ineq: Inequality, tol: float = 0.0) -> Evaluation:
    """Slack ``c.x - b``; works for exact rationals and for floats (with ``tol``)."""
    if len(assignment) != len(ineq.coefficients):
        raise ValueError("dimension mismatch")
    slack = sum(c * x for c, x in zip(ineq.coefficients, assignment)) - ineq.bound
    return Evaluation(slack >= -tol, slack)


_TERM_RE = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*\*?\s*([A-Za-z_][A-Za-z0-9_]*)?")


def _parse_side(text: str, labels: Sequence[str]) -> tuple[list[Fraction], Fraction]:
    coeffs = [Fraction(0)] * len(labels)
    const = Fraction(0)
    pos = 0
    text = text.strip()
    if not text:
        raise ValueError("empty side in inequality")
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse term at {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        num = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            coeffs[_resolve(m.group(3), labels)] += sign * num
        else:
            const += sign * num
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos < len(text) and text[pos] not in "+-":
            raise ValueError(f"expected + or - at {text[pos:]!r}")
    return coeffs, const


def _resolve(name: str, labels: Sequence[str]) -> int:
    if name in labels:
        return list(labels).index(name)
    m = re.fullmatch(r"[A-Za-z]+(\d+)", name)
    if m:
        k = int(m.group(1))
        if 1 <= k <= len(labels):
            return k - 1
    raise ValueError(f"unknown coordinate {name!r}")


def parse_inequality(text: str, labels: Sequence[str], normalize: bool = True) -> Inequality:
    """Parse ``"p4+p8>=p1"``, ``"2*p1 + 1 <= 3/2"`` and the like.

    A name is either a label itself or ``<letters><N>``, meaning the Nth
    coordinate (1-based), so ``p4`` and ``E4`` both denote the fourth one.
    With ``normalize=False`` the data keep the scale as written (rational
    entries), so slacks read in the units of the original text.
    """
    m = re.fullmatch(r"(.*?)(>=|<=|=>|=<)(.*)", text.strip())
    if not m:
        raise ValueError(f"no >= or <= in {text!r}")
    lhs, rel, rhs = m.groups()
    lc, lk = _parse_side(lhs, labels)
    rc, rk = _parse_side(rhs, labels)
    coeffs = [a - b for a, b in zip(lc, rc)]
    bound = rk - lk
    if rel in ("<=", "=<"):
        coeffs, bound = [-c for c in coeffs], -bound
    if not normalize:
        return Inequality(tuple(coeffs), bound)
    return Inequality.make(coeffs, bound)


def frame_function_system(logic: Logic) -> HPolytope:
    """Nonnegative atom weights summing to one on every context."""
    n = len(logic.atoms)
    eqs = []
    for idx in logic.context_indices():
        row = [0] * n
        for i in idx:
            row[i] = 1
        eqs.append(Equation.make(row, 1))
    ineqs = [Inequality.make([int(i == j) for j in range(n)], 0) for i in range(n)]
    return HPolytope(logic.atoms, tuple(eqs), tuple(ineqs))


def _fmt_num(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_hpolytope(h: HPolytope, fmt: str = "text", labels: Sequence[str] | None = None) -> str:
    """Equations under ``# affine hull`` then one tab-separated facet per line."""
    labels = labels or h.labels
    out = ["# affine hull"]
    for e in h.equations:
        line = "\t".join(map(str, e.coefficients)) + f"\t=\t{e.rhs}"
        out.append(line if fmt == "tsv" else f"{line}\t# {e.format(labels)}")
    out.append(f"# facets ({len(h.inequalities)})")
    for q in h.inequalities:
        line = "\t".join(map(str, q.coefficients)) + f"\t>=\t{q.bound}"
        out.append(line if fmt == "tsv" else f"{line}\t# {q.format(labels)}")
    return "\n".join(out) + "\n"


def format_vertices(poly: VPolytope) -> str:
    out = ["\t".join(poly.labels)]
    out += ["\t".join(_fmt_num(x) for x in v) for v in poly.vertices]
    return "\n".join(out) + "\n"
