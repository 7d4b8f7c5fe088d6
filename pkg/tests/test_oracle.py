import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fixtures import WEAK_LOOP, WEAK_LOOP_PAIR, WEAK_LOOP_RULE, MINUS_RULES, F, a, b, x
from generators import random_dpp
from oracles import classic_loop_exists
from reldp.oracle import (
    Bounds,
    ChainStep,
    ChainWitness,
    Minimality,
    RewriteStep,
    Status,
    bounded_finiteness,
    check_fragment,
    find_witness,
    seed_terms,
    unroll,
    verify_witness,
)
from reldp.problem import initial, make
from reldp.serialize import witness_from_json, witness_to_json
from reldp.terms import Symbol, apply, fun
from reldp.trs import Rule


def s(t):
    return fun("s", t)


class TestWeakLoop:
    def test_witness_shape(self):
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        assert w is not None
        assert len(w.steps) == 1
        step = w.steps[0]
        assert step.pair_index == 0 and not step.strict and step.sigma == {}
        assert step.connection == (RewriteStep(0, (1,), True),)
        assert w.theta == {}
        assert w.minimality is Minimality.VERIFIED
        assert w.start(WEAK_LOOP) == F(a)

    def test_verified_and_certified(self):
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        assert verify_witness(WEAK_LOOP, w)
        r = bounded_finiteness(WEAK_LOOP, Bounds(4, 5, 50))
        assert r.status is Status.NOT_FINITE and r.witness == w

    def test_corrupted_rule_index(self):
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        bad = replace(w, steps=(replace(w.steps[0], connection=(RewriteStep(7, (1,), True),)),))
        v = verify_witness(WEAK_LOOP, bad)
        assert not v and "condition (2)" in v.diagnostic

    def test_all_weak_variant_violates_strictness(self):
        weak_only = make([], [WEAK_LOOP_PAIR], [], [WEAK_LOOP_RULE])
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        reused = replace(w, steps=(replace(w.steps[0], connection=(RewriteStep(0, (1,), False),)),))
        v = verify_witness(weak_only, reused)
        assert not v and "condition (3)" in v.diagnostic
        assert find_witness(weak_only, 4, 5, 50) is None

    def test_wrong_claimed_strictness(self):
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        v = verify_witness(WEAK_LOOP, replace(w, steps=(replace(w.steps[0], strict=True),)))
        assert not v and "condition (1)" in v.diagnostic

    def test_unknown_pair(self):
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        v = verify_witness(WEAK_LOOP, replace(w, steps=(replace(w.steps[0], pair_index=3),)))
        assert not v and "condition (1)" in v.diagnostic

    def test_json_round_trip(self):
        w = find_witness(WEAK_LOOP, 4, 5, 50)
        assert witness_from_json(witness_to_json(w)) == w


class TestAbsence:
    def test_no_pairs(self):
        assert find_witness(make([], [], [Rule(a, b)]), 4, 5, 50) is None

    def test_shrinking_pair(self):
        d = make([Rule(F(s(x)), F(x))])
        assert find_witness(d, 6, 6, 50) is None

    def test_bounds_must_be_positive(self):
        with pytest.raises(ValueError):
            find_witness(WEAK_LOOP, 0, 5, 50)
        with pytest.raises(ValueError):
            Bounds(1, 0, 1)


class TestBoundedFiniteness:
    def test_empty_problem(self):
        assert bounded_finiteness(make()).status is Status.FINITE

    def test_minus_never_not_finite(self):
        for bounds in (Bounds(2, 3, 5), Bounds(4, 5, 50)):
            assert bounded_finiteness(initial(MINUS_RULES), bounds).status is not Status.NOT_FINITE

    def test_absorption_of_ground_weak_cycle(self):
        d = make([], [WEAK_LOOP_PAIR], [], [WEAK_LOOP_RULE])
        assert bounded_finiteness(d).status is Status.FINITE

    def test_nonminimal_loop_is_unknown(self):
        # F#(a) -> F#(a) loops, but a -> a makes the argument nonterminating
        d = make([Rule(F(a), F(a))], [], [], [Rule(a, a)])
        w = find_witness(d, 4, 5, 50)
        assert w is not None and w.minimality is Minimality.UNKNOWN
        assert verify_witness(d, w)
        assert bounded_finiteness(d).status is Status.UNKNOWN
        v = verify_witness(d, replace(w, minimality=Minimality.VERIFIED))
        assert not v and "condition (4)" in v.diagnostic

    def test_growing_loop_is_not_minimal(self):
        G = Symbol("G", 1, marked=True)
        d = make([Rule(G(x), G(s(x)))])
        w = find_witness(d, 3, 5, 10)
        assert w is not None and w.minimality is Minimality.UNKNOWN
        assert verify_witness(d, w)


class TestSeeds:
    def test_seed_terms_cover_small_ground_terms(self):
        d = make([Rule(F(s(x)), F(x))], [], [], [Rule(b, a)])
        seeds = seed_terms(d)
        assert a in seeds and b in seeds and s(a) in seeds and s(s(a)) not in seeds

    def test_labeled_families_are_completed(self):
        h0, h1 = Symbol("h", 1, label=(0,)), Symbol("h", 1, label=(1,))
        g01 = Symbol("g", 2, label=(0, 1))
        d = make([Rule(F(h0(a)), F(a))], [], [], [Rule(g01(a, a), a)])
        seeds = seed_terms(d)
        assert h1(a) in seeds and Symbol("g", 2, label=(1, 1))(a, a) in seeds


def _random_not_finite(rng, bounds, count):
    out = []
    while len(out) < count:
        d = random_dpp(rng)
        r = bounded_finiteness(d, bounds)
        if r.status is Status.NOT_FINITE:
            out.append((d, r.witness))
    return out


def test_witnesses_pump():
    rng = random.Random(21)
    for d, w in _random_not_finite(rng, Bounds(2, 3, 5), 40):
        assert verify_witness(d, w)
        start = w.start(d)
        for k in (1, 2, 3):
            steps, power = unroll(w, k)
            assert check_fragment(d, steps, apply(power, start))
            strict = sum(st.strict for st in steps) + sum(r.strict for st in steps for r in st.connection)
            assert strict >= k


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 100_000))
def test_larger_bounds_never_lose_a_certificate(seed):
    d = random_dpp(random.Random(seed))
    small = bounded_finiteness(d, Bounds(2, 3, 5)).status
    large = bounded_finiteness(d, Bounds(3, 4, 8)).status
    if small is Status.NOT_FINITE:
        assert large is not Status.FINITE


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_embedding_agrees_with_classic_finder(seed):
    d = random_dpp(random.Random(seed), shape="classic")
    found = find_witness(d, 3, 4, 10) is not None
    assert found == classic_loop_exists(d.strict_pairs, d.weak_rules, 3, 4, 10)


def test_chain_step_fields_are_data():
    step = ChainStep(0, True, {"x": a}, (RewriteStep(0, (), False),))
    w = ChainWitness((step,), {}, Minimality.UNKNOWN)
    assert w.pair_sequence() == [0]
    assert w.closing_reduction == step.connection
