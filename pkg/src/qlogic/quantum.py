"""Vector realizations of logics and Born-rule probabilities.

Floating point throughout; every comparison goes through a tolerance
``tol`` (default 1e-9).  Realizations may be partial: only contexts whose
atoms all carry vectors are checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .logic import Logic
from .states import ProbabilityAssignment

__all__ = [
    "DEFAULT_TOL",
    "Realization",
    "RealizationError",
    "RealizationReport",
    "born",
    "complete_by_additivity",
    "is_frame_function",
    "parse_realization",
    "pure_state",
    "validate_realization",
]

DEFAULT_TOL = 1e-9


class RealizationError(ValueError):
    pass


@dataclass(frozen=True)
class Realization:
    dim: int
    vectors: Mapping[str, np.ndarray]

    def __post_init__(self):
        vecs = {}
        for atom, v in self.vectors.items():
            arr = np.asarray(v, dtype=complex)
            if arr.shape != (self.dim,):
                raise RealizationError(f"vector for {atom} has {arr.size} components, expected {self.dim}")
            vecs[atom] = arr
        object.__setattr__(self, "vectors", vecs)

    def __contains__(self, atom: object) -> bool:
        return atom in self.vectors

    def __getitem__(self, atom: str) -> np.ndarray:
        return self.vectors[atom]


def _parse_component(tok: str) -> complex:
    tok = tok.strip()
    if tok.endswith(("j", "J")):
        return complex(tok.replace("J", "j"))
    return complex(float(tok))


def parse_realization(text: str) -> Realization:
    """``dim <d>`` then ``<atom>: <c1> ... <cd>``; complex entries as ``re+imj``."""
    dim = None
    vectors: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if dim is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "dim" or not parts[1].isdigit():
                raise RealizationError(f"line {lineno}: expected 'dim <d>' header")
            dim = int(parts[1])
            continue
        atom, sep, rest = line.partition(":")
        if not sep:
            raise RealizationError(f"line {lineno}: expected '<atom>: components'")
        atom = atom.strip()
        if atom in vectors:
            raise RealizationError(f"line {lineno}: atom {atom} given twice")
        try:
            comps = [_parse_component(t) for t in rest.split()]
        except ValueError as exc:
            raise RealizationError(f"line {lineno}: {exc}") from None
        if len(comps) != dim:
            raise RealizationError(f"line {lineno}: {len(comps)} components, expected {dim}")
        vectors[atom] = np.array(comps)
    if dim is None:
        raise RealizationError("missing 'dim <d>' header")
    return Realization(dim, vectors)


@dataclass(frozen=True)
class RealizationReport:
    norms_ok: bool
    context_ok: dict[str, bool]
    skipped: tuple[str, ...]
    worst_deviation: float
    missing: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.norms_ok and all(self.context_ok.values())

    def format(self) -> str:
        lines = [f"unit norms\t{'ok' if self.norms_ok else 'FAIL'}"]
        for name, good in self.context_ok.items():
            lines.append(f"context {name}\t{'orthonormal' if good else 'FAIL'}")
        for name in self.skipped:
            lines.append(f"context {name}\tskipped (incomplete)")
        # below 1e-12 the exact value is rounding noise and platform dependent
        dev = "< 1e-12" if self.worst_deviation < 1e-12 else f"{self.worst_deviation:.3e}"
        lines.append(f"worst deviation\t{dev}")
        lines.append(f"verdict\t{'pass' if self.ok else 'fail'}")
        return "\n".join(lines) + "\n"


def validate_realization(
    logic: Logic, real: Realization, tol: float = DEFAULT_TOL, require_complete: bool = False
) -> RealizationReport:
    """Check unit norms and per-context orthonormality (Gram matrix = identity)."""
    missing = tuple(a for a in logic.atoms if a not in real)
    if missing and require_complete:
        raise RealizationError(f"no vector for atom {missing[0]}")
    worst = 0.0
    for atom, v in real.vectors.items():
        worst = max(worst, abs(np.linalg.norm(v) - 1.0))
    norms_ok = worst <= tol
    verdicts: dict[str, bool] = {}
    skipped = []
    for c in logic.contexts:
        if any(a not in real for a in c.atoms):
            skipped.append(c.name)
            continue
        if len(c) != real.dim:
            raise RealizationError(f"context {c.name} has {len(c)} atoms but dimension is {real.dim}")
        m = np.array([real[a] for a in c.atoms])
        dev = float(np.abs(m.conj() @ m.T - np.eye(real.dim)).max())
        worst = max(worst, dev)
        verdicts[c.name] = dev <= tol
    return RealizationReport(norms_ok, verdicts, tuple(skipped), worst, missing)


def pure_state(vec, tol: float = DEFAULT_TOL) -> np.ndarray:
    v = np.asarray(vec, dtype=complex)
    if abs(np.linalg.norm(v) - 1.0) > tol:
        raise ValueError(f"state vector has norm {np.linalg.norm(v):.12g}, not 1")
    return v


def born(state, real: Realization) -> ProbabilityAssignment:
    """``|<e_a|rho>|^2`` for every atom ``a`` that carries a vector."""
    rho = np.asarray(state, dtype=complex)
    if rho.shape != (real.dim,):
        raise ValueError(f"state has dimension {rho.size}, realization has {real.dim}")
    return ProbabilityAssignment(
        {a: float(abs(np.vdot(e, rho)) ** 2) for a, e in real.vectors.items()}
    )


def is_frame_function(logic: Logic, p: Mapping[str, object], tol: float = DEFAULT_TOL) -> bool:
    """Values in [-tol, 1+tol] and every context summing to 1 within ``tol``.

    Exact (``Fraction``) values are compared the same way, so ``tol=0``
    gives an exact check.
    """
    missing = [a for a in logic.atoms if a not in p]
    if missing:
        raise KeyError(f"no value for atom {missing[0]}")
    if any(not (-tol <= p[a] <= 1 + tol) for a in logic.atoms):
        return False
    return all(abs(sum(p[a] for a in c.atoms) - 1) <= tol for c in logic.contexts)


def complete_by_additivity(
    logic: Logic, p: Mapping[str, float], tol: float = DEFAULT_TOL
) -> tuple[dict[str, float], tuple[str, ...]]:
    """Fill in atoms without vectors from context sums and nonnegativity.

    Repeats until nothing changes: a context with one unknown atom fixes it
    to ``1 - rest``; a context whose known values already sum to 1 forces
    its unknown atoms to 0.  Returns the values and the inferred atoms in
    inference order; atoms that stay undetermined are left out.
    """
    vals = {a: p[a] for a in logic.atoms if a in p}
    inferred: list[str] = []
    changed = True
    while changed:
        changed = False
        for c in logic.contexts:
            unknown = [a for a in c.atoms if a not in vals]
            if not unknown:
                continue
            known = sum(vals[a] for a in c.atoms if a in vals)
            if len(unknown) == 1:
                vals[unknown[0]] = 1.0 - known
            elif abs(known - 1.0) <= tol:
                vals.update((a, 0.0) for a in unknown)
            else:
                continue
            inferred.extend(unknown)
            changed = True
    return vals, tuple(inferred)
