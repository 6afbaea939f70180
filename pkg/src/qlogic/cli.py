"""Command-line front end.

Every subcommand reads a logic either from a file argument or from a
built-in fixture (``--fixture NAME``) and writes deterministic text to
stdout.  Exit codes: 0 success, 1 usage or parse error, 2 internal
invariant failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import correlations, geometry, quantum, states
from .fixtures import FIXTURES, Fixture, get_fixture
from .logic import Logic, LogicError, context_profile, detect_loops, parse_logic, serialize_logic, to_dot

EXIT_OK, EXIT_USAGE, EXIT_INVARIANT = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _load(args) -> tuple[Logic, Fixture | None]:
    if args.fixture and args.logic:
        raise UsageError("give either a logic file or --fixture, not both")
    if args.fixture:
        try:
            fx = get_fixture(args.fixture)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        return fx.logic, fx
    if not args.logic:
        raise UsageError("a logic file or --fixture NAME is required")
    try:
        text = Path(args.logic).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.logic}: {exc.strerror}") from None
    return parse_logic(text), None


def _realization(args, fx: Fixture | None) -> quantum.Realization:
    if args.realization:
        try:
            text = Path(args.realization).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.realization}: {exc.strerror}") from None
    elif fx is not None and fx.realization_text:
        text = fx.realization_text
    else:
        raise UsageError("no realization: pass --realization FILE")
    return quantum.parse_realization(text)


def _state_vector(args, real: quantum.Realization) -> tuple[str, np.ndarray]:
    if args.vec:
        comps = [quantum._parse_component(t) for t in args.vec.replace(",", " ").split()]
        try:
            return "vector", quantum.pure_state(comps, args.tol)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    atom = args.state or next(iter(real.vectors))
    if atom not in real:
        raise UsageError(f"no vector for atom {atom}")
    return atom, real[atom]


def _num(x) -> str:
    if isinstance(x, Fraction):
        return geometry._fmt_num(x)
    x = float(x)
    if x == 0:
        x = 0.0  # no negative zero
    return f"{x:.9g}"


def _approx(x: float, tol: float) -> str:
    f = Fraction(x).limit_denominator(1000)
    if f.denominator > 1 and abs(float(f) - x) <= tol:
        return f" (~{geometry._fmt_num(f)})"
    return ""


def _state_polytope(st: states.StateSet) -> geometry.VPolytope:
    return geometry.VPolytope(st.logic.atoms, tuple(st.vectors()))


# ---------------------------------------------------------------------------
# section writers shared by the single commands and the report


def _states_text(st: states.StateSet, fmt: str) -> list[str]:
    if fmt == "tsv":
        out = ["\t".join(st.logic.atoms)] if st.m else []
        out += ["\t".join(map(str, v.values)) for v in st]
    else:
        out = [str(v) for v in st]
    return out


def _classification_text(st: states.StateSet) -> list[str]:
    c = states.classify(st.logic, st)
    yn = lambda b: "true" if b else "false"  # noqa: E731
    return [
        f"# m = {st.m}",
        f"# has_states\t{yn(c.has_states)}",
        f"# unital\t{yn(c.unital)}",
        f"# separating\t{yn(c.separating)}",
        f"# {c.summary()}",
    ]


def _checks_text(poly: geometry.VPolytope, checks) -> list[str]:
    out = []
    for text in checks:
        ineq = geometry.parse_inequality(text, poly.labels)
        out.append(f"{text}\t{geometry.verify_inequality(poly, ineq)}")
    return out


def _violations(
    logic: Logic,
    values: dict,
    ineqs: list[tuple[str, geometry.Inequality]],
    tol: float,
) -> list[str]:
    vec = [values.get(a) for a in logic.atoms]
    out = []
    for text, ineq in ineqs:
        if any(c and v is None for c, v in zip(ineq.coefficients, vec)):
            out.append(f"undetermined\t{text}")
            continue
        ev = geometry.evaluate([0 if v is None else v for v in vec], ineq, tol)
        status = "satisfied" if ev.satisfied else "violated"
        slack, extra = ev.slack, ""
        if isinstance(slack, float):
            slack = 0.0 if abs(slack) <= tol else slack
            extra = _approx(slack, tol)
        out.append(f"{status}\t{text}\tslack {_num(slack)}{extra}")
    return out


def _inequalities_for(logic: Logic, st: states.StateSet, fx: Fixture | None):
    """Hull facets plus the fixture's listed inequalities, as (text, Inequality)."""
    out = []
    if st.m:
        for q in geometry.hull(_state_polytope(st)).inequalities:
            out.append((q.format(logic.atoms), q))
    if fx is not None:
        for text in fx.checks:
            out.append((text, geometry.parse_inequality(text, logic.atoms, normalize=False)))
    return out


def _born_text(logic, fx, real, label, rho, tol, against) -> list[str]:
    out = []
    rep = quantum.validate_realization(logic, real, tol)
    out += ["# realization", *rep.format().splitlines()]
    if not rep.ok:
        return out
    p = quantum.born(rho, real)
    values, inferred = quantum.complete_by_additivity(logic, p, tol)
    out.append(f"# born probabilities, state {label}")
    for a in logic.atoms:
        if a in values:
            x = 0.0 if abs(values[a]) <= tol else values[a]
            out.append(f"{a}\t{_num(x)}" + ("" if a in p else "\tinferred"))
        else:
            out.append(f"{a}\t?")
    if len(values) == len(logic.atoms):
        ff = quantum.is_frame_function(logic, values, tol)
        out.append(f"# frame function\t{'yes' if ff else 'no'}")
    else:
        out.append("# frame function\tundetermined")
    if against:
        st = states.enumerate_states(logic)
        out.append("# classical inequalities")
        out += _violations(logic, values, _inequalities_for(logic, st, fx), tol)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_states(args) -> list[str]:
    logic, _ = _load(args)
    st = states.enumerate_states(logic)
    return _states_text(st, args.format) + _classification_text(st)


def cmd_facets(args) -> list[str]:
    logic, _ = _load(args)
    st = states.enumerate_states(logic)
    if not st.m:
        return ["# no two-valued states: the polytope is empty"]
    poly = _state_polytope(st)
    if args.check:
        try:
            return _checks_text(poly, args.check)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return geometry.format_hpolytope(geometry.hull(poly), args.format).splitlines()


def cmd_born(args) -> list[str]:
    logic, fx = _load(args)
    real = _realization(args, fx)
    label, rho = _state_vector(args, real)
    if rho.shape != (real.dim,):
        raise UsageError(f"state has dimension {rho.size}, realization has {real.dim}")
    return _born_text(logic, fx, real, label, rho, args.tol, args.against_facets)


def cmd_scan(args) -> list[str]:
    logic, _ = _load(args)
    try:
        return correlations.scan(logic, args.objective).format().splitlines()
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _loops_text(logic: Logic, max_order: int) -> list[str]:
    out = []
    for lp in detect_loops(logic, max_order):
        out.append(f"{lp.order}\t{' '.join(lp.contexts)}\t{' '.join(lp.linking_atoms)}")
    return out


def cmd_loops(args) -> list[str]:
    logic, _ = _load(args)
    max_order = args.max_order or max(3, len(logic.contexts))
    if max_order < 3:
        raise UsageError("--max-order must be at least 3")
    return _loops_text(logic, max_order)


def cmd_partition(args) -> list[str]:
    logic, _ = _load(args)
    st = states.enumerate_states(logic)
    try:
        return states.partition_logic(st).format().splitlines()
    except states.NonUnitalError as exc:
        raise UsageError(f"no partition logic: {exc}") from None


def cmd_polytope(args) -> list[str]:
    logic, _ = _load(args)
    if args.correlation:
        try:
            poly = correlations.correlation_polytope(logic, args.correlation)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        poly = geometry.vertex_enumerate(geometry.frame_function_system(logic))
    if args.hull:
        if not poly.vertices:
            return ["# empty polytope"]
        try:
            h = geometry.hull(poly, max_rays=args.max_rays or None)
        except geometry.BudgetExceeded as exc:
            raise UsageError(f"hull not computed: {exc} (raise --max-rays, 0 for no limit)") from None
        out = [f"# vertices {len(poly)}", f"# dimension {poly.dimension}"]
        return out + geometry.format_hpolytope(h, args.format).splitlines()
    return geometry.format_vertices(poly).splitlines()


def cmd_dot(args) -> list[str]:
    logic, _ = _load(args)
    return to_dot(logic).splitlines()


def cmd_report(args) -> list[str]:
    logic, fx = _load(args)
    tol = args.tol
    name = fx.name if fx else args.logic
    out = [f"# report {name}"]
    if fx:
        out.append(f"# {fx.description}")

    out += ["", "## logic", *serialize_logic(logic).splitlines()]

    profile, mixed = context_profile(logic)
    out += ["", "## profile", f"atoms\t{len(logic.atoms)}", f"contexts\t{len(logic.contexts)}"]
    out += [f"arity {k}\t{v}" for k, v in sorted(profile.items())]
    out.append(f"mixed arity\t{'yes' if mixed else 'no'}")

    max_order = max(3, len(logic.contexts))
    loops = _loops_text(logic, max_order)
    out += ["", f"## loops (order <= {max_order}): {len(loops)}", *loops]

    st = states.enumerate_states(logic)
    out += ["", f"## states ({st.m})", *_states_text(st, args.format), *_classification_text(st)]

    if st.m and states.classify(logic, st).unital:
        out += ["", "## partition logic", *states.partition_logic(st).format().splitlines()]

    if st.m:
        poly = _state_polytope(st)
        out += ["", f"## state polytope (dimension {poly.dimension})"]
        out += geometry.format_hpolytope(geometry.hull(poly), args.format).splitlines()
        if fx and fx.checks:
            out += ["", "## inequality checks", *_checks_text(poly, fx.checks)]

    ff = geometry.vertex_enumerate(geometry.frame_function_system(logic))
    out += ["", f"## frame-function polytope ({len(ff)} {'vertex' if len(ff) == 1 else 'vertices'})"]
    if ff.vertices:
        out += geometry.format_vertices(ff).splitlines()

    if fx:
        for aname, asg in fx.assignments.items():
            out += ["", f"## assignment {aname}"]
            out.append("\t".join(f"{a}={_num(asg[a])}" for a in logic.atoms))
            ok = quantum.is_frame_function(logic, asg, 0)
            out.append(f"# frame function\t{'yes' if ok else 'no'}")
            out += _violations(logic, asg, _inequalities_for(logic, st, fx), 0)

    if len(logic.atoms) <= correlations.MAX_ATOMS:
        out += ["", "## correlation scan"]
        for obj in ("sum_E", "sum_P"):
            r = correlations.scan(logic, obj)
            out.append(f"{obj}\tmin {r.min} ({r.count_at_min})\tmax {r.max} ({r.count_at_max})")

    if fx and fx.realization_text:
        real = quantum.parse_realization(fx.realization_text)
        atom = next(iter(real.vectors))
        out += ["", "## born"]
        out += _born_text(logic, fx, real, atom, real[atom], tol, True)
    return out


def cmd_export_fixture(args) -> list[str]:
    if not args.fixture:
        raise UsageError("export-fixture needs --fixture NAME (or --fixture all)")
    names = list(FIXTURES) if args.fixture == "all" else [args.fixture]
    fixtures = []
    for n in names:
        try:
            fixtures.append(get_fixture(n))
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    if not args.output_dir:
        if len(fixtures) > 1:
            raise UsageError("exporting all fixtures needs --output-dir")
        return fixtures[0].logic_text.splitlines()
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for fx in fixtures:
        files = {f"{fx.name}.logic": fx.logic_text}
        if fx.realization_text:
            files[f"{fx.name}.real"] = fx.realization_text
        for aname, asg in fx.assignments.items():
            files[f"{fx.name}.{aname}.tsv"] = "".join(f"{a}\t{_num(v)}\n" for a, v in asg.items())
        for fname, text in files.items():
            (outdir / fname).write_text(text)
            written.append(str(outdir / fname))
    return written


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("logic", nargs="?", help="logic file (omit when using --fixture)")
    common.add_argument("--fixture", metavar="NAME", help="use a built-in fixture: " + ", ".join(FIXTURES))
    common.add_argument("--tol", type=float, default=quantum.DEFAULT_TOL, help="numerical tolerance (default 1e-9)")
    common.add_argument("--format", choices=("text", "tsv"), default="text")

    parser = argparse.ArgumentParser(prog="qlogic", description="Orthogonality diagrams, two-valued states and their polytopes.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=func)
        return p

    add("states", cmd_states, "list two-valued measures and classify them")
    p = add("facets", cmd_facets, "affine hull and facets of the two-valued state polytope")
    p.add_argument("--check", action="append", metavar="INEQ", help='classify an inequality, e.g. "p4+p8>=p1"')
    p = add("born", cmd_born, "Born-rule probabilities on a vector realization")
    p.add_argument("--realization", metavar="FILE")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--state", metavar="ATOM", help="prepare the state along this atom's vector")
    g.add_argument("--vec", metavar="COMPONENTS", help='explicit unit state vector, e.g. "1 0 0"')
    p.add_argument("--against-facets", action="store_true", help="evaluate the classical inequalities")
    p = add("scan", cmd_scan, "extremes of summed context products over all 0/1 assignments")
    p.add_argument("--objective", choices=("sum_E", "sum_P"), default="sum_E")
    p = add("loops", cmd_loops, "minimal loops of contexts")
    p.add_argument("--max-order", type=int, metavar="N")
    add("partition", cmd_partition, "partition logic of the two-valued states")
    p = add("polytope", cmd_polytope, "vertices of the frame-function or a correlation polytope")
    p.add_argument("--correlation", choices=("P", "E", "PE"))
    p.add_argument("--hull", action="store_true", help="print facets instead of vertices")
    p.add_argument("--max-rays", type=int, default=20000, metavar="N",
                   help="abandon the facet computation beyond N intermediate rays (0: no limit)")
    add("dot", cmd_dot, "Graphviz rendering of the diagram")
    add("report", cmd_report, "full analysis bundle")
    p = add("export-fixture", cmd_export_fixture, "write a fixture's embedded files")
    p.add_argument("--output-dir", metavar="DIR")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        lines = args.func(args)
    except (UsageError, LogicError, quantum.RealizationError, geometry.UnboundedError) as exc:
        print(f"qlogic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"qlogic: invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    sys.stdout.write("".join(f"{line}\n" for line in lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
