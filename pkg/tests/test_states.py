import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlogic.fixtures import FIXTURES, get_fixture
from qlogic.logic import Logic, horizontal_pasting
from qlogic.quantum import is_frame_function
from qlogic.states import (
    NonUnitalError,
    ProbabilityAssignment,
    VacuousPremiseError,
    classify,
    enumerate_states,
    implication_check,
    mix,
    partition_logic,
    symbolic_mix,
)


def brute_force_states(logic: Logic) -> set[tuple[int, ...]]:
    idx = logic.context_indices()
    return {
        v
        for v in itertools.product((0, 1), repeat=len(logic.atoms))
        if all(sum(v[i] for i in c) == 1 for c in idx)
    }


SMALL = [n for n, f in FIXTURES.items() if len(f.logic.atoms) <= 13]


@pytest.mark.parametrize("name", SMALL)
def test_enumeration_matches_brute_force(name):
    logic = get_fixture(name).logic
    assert set(enumerate_states(logic).vectors()) == brute_force_states(logic)


@pytest.mark.parametrize("name", [n for n, f in FIXTURES.items() if "states" in f.expected])
def test_expected_counts(name):
    fx = get_fixture(name)
    assert enumerate_states(fx.logic).m == fx.expected["states"]


def test_canonical_order_is_descending():
    vecs = enumerate_states(get_fixture("pentagon").logic).vectors()
    assert vecs == sorted(vecs, reverse=True)
    assert "".join(map(str, vecs[0])) == "1001010100"


@pytest.mark.parametrize("n, k", [(n, k) for k in range(2, 6) for n in range(1, 9) if n * k <= 16])
def test_horizontal_pasting_counts(n, k):
    assert enumerate_states(horizontal_pasting(n, k)).m == k**n


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["pentagon", "cats-cradle", "fig3iii", "triangle4"]), st.randoms(use_true_random=False))
def test_enumeration_invariant_under_relabelling(name, rnd):
    logic = get_fixture(name).logic
    perm = list(logic.atoms)
    rnd.shuffle(perm)
    rename = dict(zip(logic.atoms, perm))
    ctx = [(c.name, [rename[a] for a in c.atoms]) for c in logic.contexts]
    rnd.shuffle(ctx)
    other = Logic.from_contexts(ctx)
    ours = {frozenset(a for a, x in m.as_dict().items() if x) for m in enumerate_states(logic)}
    theirs = {frozenset(a for a, x in m.as_dict().items() if x) for m in enumerate_states(other)}
    assert {frozenset(rename[a] for a in s) for s in ours} == theirs


@pytest.mark.parametrize(
    "name, has_states, unital, separating",
    [
        ("pentagon", True, True, True),
        ("cats-cradle", True, True, True),
        ("fig2ii", True, True, True),
        ("fig3i", True, True, False),
        ("fig2iii", True, False, False),
        ("fig2i", False, False, False),
        ("cabello18", False, False, False),
    ],
)
def test_classification(name, has_states, unital, separating):
    logic = get_fixture(name).logic
    c = classify(logic, enumerate_states(logic))
    assert (c.has_states, c.unital, c.separating) == (has_states, unital, separating)


def test_classification_witness_and_summary():
    logic = get_fixture("fig3i").logic
    c = classify(logic, enumerate_states(logic))
    assert c.inseparable == ("a1", "a3")
    assert c.summary() == "not partition-representable: states cannot separate a1 and a3"
    single = get_fixture("fig2iii").logic
    assert classify(single, enumerate_states(single)).summary() == (
        "not partition-representable: single state cannot separate"
    )


def test_cats_cradle_implication():
    st_ = enumerate_states(get_fixture("cats-cradle").logic)
    assert implication_check(st_, "a1", "a7")
    assert not implication_check(st_, "a1", "a4")


def test_vacuous_premise():
    logic = get_fixture("fig2iii").logic
    st_ = enumerate_states(logic)
    never = classify(logic, st_).never_one
    with pytest.raises(VacuousPremiseError):
        implication_check(st_, never, "a1")


@pytest.mark.parametrize(
    "name, atom, indices",
    # indices refer to the canonical (descending) order, not to a drawing's numbering
    [("pentagon", "a9", (5, 8, 10)), ("cats-cradle", "a1", (1, 2, 3)), ("pentagon", "a1", (1, 2, 3))],
)
def test_symbolic_mix(name, atom, indices):
    assert symbolic_mix(enumerate_states(get_fixture(name).logic))[atom] == indices


def test_single_context_singletons():
    logic = horizontal_pasting(1, 4)
    assert symbolic_mix(enumerate_states(logic)) == {"a1": (1,), "a2": (2,), "a3": (3,), "a4": (4,)}


@pytest.mark.parametrize("name", ["pentagon", "cats-cradle", "triangle4", "fig3ii", "mo3", "fig2ii"])
def test_partition_property(name):
    st_ = enumerate_states(get_fixture(name).logic)
    pl = partition_logic(st_)
    for block in pl.blocks:
        assert frozenset().union(*block) == frozenset(range(1, st_.m + 1))
        for a, b in itertools.combinations(block, 2):
            assert not a & b


def test_partition_non_unital():
    with pytest.raises(NonUnitalError):
        partition_logic(enumerate_states(get_fixture("fig2iii").logic))


def test_partition_format():
    text = partition_logic(enumerate_states(get_fixture("pentagon").logic)).format()
    assert text.splitlines()[0] == "C1: {{1,2,3}, {4,5,6,7,8}, {9,10,11}}"


def test_mix_indicator_gives_measure():
    st_ = enumerate_states(get_fixture("pentagon").logic)
    w = [0] * st_.m
    w[4] = 1
    assert mix(st_, w).vector(st_.logic.atoms) == st_[4].values


def test_mix_uniform_pentagon():
    st_ = enumerate_states(get_fixture("pentagon").logic)
    p = mix(st_, [Fraction(1, 11)] * 11)
    assert p["a1"] == Fraction(3, 11)
    assert p["a2"] == Fraction(5, 11)


def test_mix_cats_cradle_parametrization():
    st_ = enumerate_states(get_fixture("cats-cradle").logic)
    x, y = Fraction(1, 5), Fraction(3, 10)
    z = 1 - x - y
    p = mix(st_, [x, y, z] + [0] * (st_.m - 3))
    assert p["a1"] == 1
    assert p["a7"] == 0
    # the third measure with v(a1) = 1 is the one with v(a13) = 1
    assert p["a13"] == z


@pytest.mark.parametrize("weights", [[1, 0], [Fraction(1, 2)] * 3, [2, -1] + [0] * 9, [Fraction(1, 11)] * 10 + [0]])
def test_mix_rejects_bad_weights(weights):
    st_ = enumerate_states(get_fixture("pentagon").logic)
    with pytest.raises(ValueError):
        mix(st_, weights)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["pentagon", "cats-cradle", "triangle4", "fig3iii"]), st.data())
def test_mix_is_frame_function(name, data):
    st_ = enumerate_states(get_fixture(name).logic)
    raw = data.draw(st.lists(st.integers(0, 20), min_size=st_.m, max_size=st_.m).filter(any))
    total = sum(raw)
    p = mix(st_, [Fraction(r, total) for r in raw])
    assert is_frame_function(st_.logic, p, 0)


def test_probability_assignment_range():
    with pytest.raises(ValueError):
        ProbabilityAssignment({"a1": Fraction(3, 2)})
    assert ProbabilityAssignment({"a1": 0.5})["a1"] == 0.5


def test_enumeration_count_formula_on_mixed_disjoint():
    logic = Logic.from_contexts([("C1", ["a", "b", "c"]), ("C2", ["d", "e"]), ("C3", ["f", "g", "h", "i"])])
    assert enumerate_states(logic).m == math.prod([3, 2, 4])
