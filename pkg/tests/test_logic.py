import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic.fixtures import FIXTURES, get_fixture
from qlogic.logic import (
    Logic,
    LogicError,
    ParseError,
    context_profile,
    detect_loops,
    horizontal_pasting,
    parse_logic,
    serialize_logic,
    specker_oracle_check,
    to_dot,
)


def test_parse_pentagon_shape():
    logic = get_fixture("pentagon").logic
    assert len(logic.atoms) == 10
    assert len(logic.contexts) == 5
    assert all(len(c) == 3 for c in logic.contexts)


def test_atoms_in_first_appearance_order():
    logic = parse_logic("context X: b a\ncontext Y: a c\n")
    assert logic.atoms == ("b", "a", "c")


def test_comments_and_blank_lines_ignored():
    logic = parse_logic("# header\n\ncontext C1: a1 a2  # trailing\n")
    assert logic.contexts[0].atoms == ("a1", "a2")


@pytest.mark.parametrize(
    "text, line",
    [
        ("context C1: a1 a1\n", 1),
        ("context C1: a1 a2\ncontext C1: a3 a4\n", 2),
        ("context C1: a1 a2\ncontext C2: a2 a1\n", 2),
        ("context C1: a1 a2\n\ncontext C2: a3\n", 3),
        ("context C1: a1 a2\nbasis a1 a2\n", 2),
        ("context C1: a1 a-2\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_logic(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}:")


def test_empty_text_is_an_error():
    with pytest.raises(ParseError):
        parse_logic("# nothing here\n")


def test_logic_rejects_unused_atom():
    with pytest.raises(LogicError):
        Logic(("a", "b", "c"), ())


def test_orthogonality():
    logic = get_fixture("pentagon").logic
    assert logic.orthogonal("a1", "a2")
    assert logic.orthogonal("a1", "a10")
    assert not logic.orthogonal("a1", "a4")
    assert not logic.orthogonal("a1", "a1")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_serialize_round_trip_fixtures(name):
    logic = get_fixture(name).logic
    assert parse_logic(serialize_logic(logic)) == logic


@st.composite
def logics(draw):
    n_atoms = draw(st.integers(2, 9))
    atoms = [f"a{i + 1}" for i in range(n_atoms)]
    contexts = []
    seen = set()
    for _ in range(draw(st.integers(1, 6))):
        members = draw(st.lists(st.sampled_from(atoms), min_size=2, max_size=4, unique=True))
        if frozenset(members) not in seen:
            seen.add(frozenset(members))
            contexts.append(members)
    used = {a for c in contexts for a in c}
    return Logic.from_contexts(
        (f"C{i + 1}", [a for a in c if a in used]) for i, c in enumerate(contexts)
    )


@given(logics())
def test_serialize_round_trip_random(logic):
    assert parse_logic(serialize_logic(logic)) == logic


def test_horizontal_pasting():
    logic = horizontal_pasting(3, 2)
    assert serialize_logic(logic) == "context C1: a1 a2\ncontext C2: a3 a4\ncontext C3: a5 a6\n"
    assert parse_logic(serialize_logic(logic)) == get_fixture("mo3").logic


@pytest.mark.parametrize(
    "name, profile, mixed",
    [
        ("fig1iii", {2: 3, 3: 2}, True),
        ("pentagon", {3: 5}, False),
        ("cabello18", {4: 9}, False),
        ("mo3", {2: 3}, False),
    ],
)
def test_context_profile(name, profile, mixed):
    assert context_profile(get_fixture(name).logic) == (profile, mixed)


@pytest.mark.parametrize(
    "name, orders",
    [
        ("fig2i", [3]),
        ("fig2ii", [3]),
        ("fig3i", [4]),
        ("fig3ii", [4]),
        ("pentagon", [5]),
        ("reduced-pentagon", [5]),
        ("cats-cradle", [5, 5, 6]),
        ("mo3", []),
        ("fig1i", []),
    ],
)
def test_loop_orders(name, orders):
    logic = get_fixture(name).logic
    assert [lp.order for lp in detect_loops(logic, 8)] == orders


def test_loop_report_contents():
    (lp,) = detect_loops(get_fixture("pentagon").logic, 5)
    assert lp.contexts == ("C1", "C2", "C3", "C4", "C5")
    assert lp.linking_atoms == ("a3", "a5", "a7", "a9", "a1")


def test_max_order_cuts_off():
    assert detect_loops(get_fixture("pentagon").logic, 4) == []
    with pytest.raises(ValueError):
        detect_loops(get_fixture("pentagon").logic, 2)


def _brute_force_loops(logic):
    """Independent oracle: check every cyclic context sequence directly."""
    sets = [frozenset(c.atoms) for c in logic.contexts]
    n = len(sets)
    found = set()
    for k in range(3, n + 1):
        for combo in itertools.permutations(range(n), k):
            if combo[0] != min(combo) or combo[1] > combo[-1]:
                continue
            ok = True
            links = []
            for i in range(k):
                for j in range(i + 1, k):
                    inter = sets[combo[i]] & sets[combo[j]]
                    adjacent = j == i + 1 or (i == 0 and j == k - 1)
                    if adjacent and len(inter) != 1 or not adjacent and inter:
                        ok = False
            if not ok:
                continue
            links = [next(iter(sets[combo[i]] & sets[combo[(i + 1) % k]])) for i in range(k)]
            if len(set(links)) == k:
                found.add(tuple(logic.contexts[i].name for i in combo))
    return found


@pytest.mark.parametrize("name", ["fig2iii", "fig3iii", "fig3iv", "cats-cradle", "triangle4", "fig1iii"])
def test_loops_match_brute_force(name):
    logic = get_fixture(name).logic
    got = {lp.contexts for lp in detect_loops(logic, len(logic.contexts))}
    assert got == _brute_force_loops(logic)


def _canonical_cycles(logic, reports):
    """Loops as sets of context atom-sets, independent of naming and order."""
    by_name = {c.name: frozenset(c.atoms) for c in logic.contexts}
    return {frozenset(by_name[n] for n in lp.contexts) for lp in reports}


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["cats-cradle", "fig3iii", "fig2iii", "pentagon"]), st.randoms(use_true_random=False))
def test_loops_invariant_under_context_permutation(name, rnd: random.Random):
    logic = get_fixture(name).logic
    ctx = list(logic.contexts)
    rnd.shuffle(ctx)
    shuffled = Logic.from_contexts((c.name, c.atoms) for c in ctx)
    k = len(ctx)
    assert _canonical_cycles(logic, detect_loops(logic, k)) == _canonical_cycles(
        shuffled, detect_loops(shuffled, k)
    )


def test_specker_oracle():
    report = specker_oracle_check()
    assert len(report.states) == 8
    assert report.always_pair
    assert [len(c) for c in report.classes] == [1, 3, 3, 1]


def test_dot_output():
    dot = to_dot(get_fixture("fig2i").logic)
    assert dot.startswith("graph logic {")
    assert dot.count(" -- ") == 3
    assert 'label="C3"' in dot
