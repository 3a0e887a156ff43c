import random
from math import comb, factorial

import pytest

from sforest import exhaustive as ex
from sforest.errors import BudgetExceeded, DomainOverlap, NotInDomain, NotPartialOrder, PairConflict
from sforest.relations import chain, concatenation, disjoint_union, is_linear_order, is_partial_order, relation
from sforest.relationships import (
    Relationship,
    concat_product,
    extend_with_pair,
    find_Q1_not_Q2_witness,
    linear_extension_through,
    linear_extensions,
    linear_order,
    map_E,
    map_L,
    map_P,
    satisfies_q2,
    sequence_of,
    shuffle_sum,
    singleton,
)

from oracles import all_pair_sets, brute_is_po, brute_linear_extensions, brute_shuffle


def family(*members):
    return frozenset(frozenset(m) for m in members)


def point(v):
    return singleton(relation(v))


# -- examples -------------------------------------------------------------------

def test_shuffle_examples():
    lin = shuffle_sum(singleton(chain("x", "y")), point("z"), "linear-orders")
    assert lin.sequences() == [("x", "y", "z"), ("x", "z", "y"), ("z", "x", "y")]
    allq = shuffle_sum(point("x"), point("y"), "all")
    assert allq.family == family((), [("x", "y")], [("y", "x")], [("x", "y"), ("y", "x")])
    empty = Relationship("xy", [])
    assert len(shuffle_sum(empty, point("z"), "linear-orders")) == 0
    with pytest.raises(DomainOverlap):
        shuffle_sum(point("x"), point("x"))


def test_shuffle_budget_only_in_all_mode():
    big = singleton(chain("x", "y", "z"))
    with pytest.raises(BudgetExceeded):
        shuffle_sum(big, singleton(chain("u", "v")), "all")
    out = shuffle_sum(big, singleton(chain("u", "v")), "partial-orders")
    assert len(out) > 0 and all(is_partial_order(r) for r in out.relations())
    with pytest.raises(ValueError):
        shuffle_sum(point("x"), point("y"), "some")


def test_concat_product_examples():
    assert concat_product(point("x"), point("y")) == singleton(chain("x", "y"))
    assert len(concat_product(Relationship("x", []), point("y"))) == 0
    with pytest.raises(DomainOverlap):
        concat_product(point("x"), point("x"))


def test_map_examples():
    assert map_E(relation("x")).family == family((), [("x", "x")])
    assert map_P(relation("x")) == point("x")
    assert map_L(relation("x")) == point("x")
    three = map_L(relation("xyz", [("x", "y")]))
    assert three.sequences() == [("x", "y", "z"), ("x", "z", "y"), ("z", "x", "y")]


def test_map_errors():
    with pytest.raises(NotPartialOrder):
        map_P(relation("xy", [("x", "y"), ("y", "x")]))
    with pytest.raises(NotPartialOrder):
        map_L(relation("x", [("x", "x")]))
    with pytest.raises(BudgetExceeded):
        map_E(relation("xyzuv"))
    with pytest.raises(BudgetExceeded):
        map_P(relation("xyzuv"))
    assert len(map_L(relation("xyzuvw"))) == 720


def test_extend_with_pair_examples():
    assert extend_with_pair(relation("xy"), "x", "y") == chain("x", "y")
    assert extend_with_pair(relation("xyz", [("x", "y")]), "y", "z") == chain("x", "y", "z")
    with pytest.raises(PairConflict):
        extend_with_pair(chain("x", "y"), "y", "x")
    with pytest.raises(PairConflict):
        extend_with_pair(chain("x", "y"), "x", "x")
    with pytest.raises(NotInDomain):
        extend_with_pair(chain("x", "y"), "x", "q")


def test_q1_not_q2_witness_examples():
    assert find_Q1_not_Q2_witness(relation("x"), relation("y")) == relation(
        "xy", [("x", "y"), ("y", "x")]
    )
    with pytest.raises(DomainOverlap):
        find_Q1_not_Q2_witness(relation("x"), relation("x"))
    with pytest.raises(BudgetExceeded):
        find_Q1_not_Q2_witness(relation("xyz"), relation("uv"))


def test_sequences_and_linear_orders():
    r = linear_order(["z", "x", "y"])
    assert is_linear_order(r) and sequence_of(r) == ("z", "x", "y")
    with pytest.raises(ValueError):
        sequence_of(relation("xy"))
    with pytest.raises(ValueError):
        Relationship("xy", [[("x", "y")], []]).sequences()


def test_json_form_is_sorted():
    u = shuffle_sum(point("y"), point("x"), "all")
    obj = u.to_json()
    assert obj["domain"] == ["x", "y"]
    assert obj["family"] == [[], [["x", "y"]], [["x", "y"], ["y", "x"]], [["y", "x"]]]
    assert Relationship.from_json(obj) == u


# -- against brute force --------------------------------------------------------------

def small_pairs(limit, irreflexive=False):
    for k in range(2, limit + 1):
        for xs, ys in ex.splits(ex.names(k), allow_empty=False):
            for r in ex.all_relations(xs, irreflexive=irreflexive):
                for s in ex.all_relations(ys, irreflexive=irreflexive):
                    yield r, s


def test_shuffle_all_mode_matches_filtering():
    for k in range(2, 4):
        for xs, ys in ex.splits(ex.names(k), allow_empty=False):
            rs = list(ex.all_relations(xs))
            rng = random.Random(k)
            for _ in range(5):
                ufam = frozenset(r.pairs for r in rng.sample(rs, min(3, len(rs))))
                vfam = frozenset(r.pairs for r in ex.all_relations(ys))
                got = shuffle_sum(Relationship(xs, ufam), Relationship(ys, vfam), "all")
                assert got.family == brute_shuffle(ufam, xs, vfam, ys)


def order_pairs_for_filtering():
    pairs = [(r, s) for r, s in small_pairs(4, irreflexive=True) if is_partial_order(r) and is_partial_order(s)]
    small = [(r, s) for r, s in pairs if len(r.domain | s.domain) <= 3]
    rest = [(r, s) for r, s in pairs if len(r.domain | s.domain) == 4]
    return small + random.Random(4).sample(rest, 40)


def test_shuffle_order_modes_match_filtering():
    for r, s in order_pairs_for_filtering():
        u, v = singleton(r), singleton(s)
        brute = brute_shuffle({r.pairs}, r.domain, {s.pairs}, s.domain, brute_is_po)
        assert shuffle_sum(u, v, "partial-orders").family == brute
        if is_linear_order(r) and is_linear_order(s):
            n = len(r.domain | s.domain)
            lin = {q for q in brute if len(q) == n * (n - 1) // 2}
            assert shuffle_sum(u, v, "linear-orders").family == lin


def test_map_E_and_P_match_filtering():
    for k in range(1, 4):
        dom = ex.names(k)
        subsets = list(all_pair_sets(dom))
        for r in ex.all_relations(dom):
            assert map_E(r).family == {q for q in subsets if r.pairs <= q}
            if is_partial_order(r):
                assert map_P(r).family == {q for q in subsets if r.pairs <= q and brute_is_po(q)}


def test_linear_extensions_match_permutation_filtering():
    for k in range(1, 6):
        for r in ex.all_partial_orders(ex.names(k)):
            assert linear_extensions(r) == brute_linear_extensions(r)


@pytest.mark.parametrize("n", range(1, 7))
def test_antichain_has_factorial_extensions(n):
    assert len(map_L(relation(ex.names(n)))) == factorial(n)


@pytest.mark.parametrize("a, b", [(1, 1), (2, 1), (2, 3), (3, 3), (4, 2)])
def test_two_chains_give_binomial(a, b):
    names = ex.names(a + b)
    r = disjoint_union(chain(*names[:a]), chain(*names[a:]))
    assert len(map_L(r)) == comb(a + b, a)
    assert len(brute_linear_extensions(r)) == comb(a + b, a)


# -- homomorphism laws --------------------------------------------------------------

def test_E_turns_sum_into_shuffle():
    for r, s in small_pairs(4):
        assert map_E(disjoint_union(r, s)) == shuffle_sum(map_E(r), map_E(s), "all")


def test_P_homomorphic_for_both_operations():
    for r, s in small_pairs(4, irreflexive=True):
        if is_partial_order(r) and is_partial_order(s):
            assert map_P(disjoint_union(r, s)) == shuffle_sum(map_P(r), map_P(s), "partial-orders")
            assert map_P(concatenation(r, s)) == concat_product(map_P(r), map_P(s))


def test_L_homomorphic_for_both_operations():
    for r, s in small_pairs(5, irreflexive=True):
        if is_partial_order(r) and is_partial_order(s):
            assert map_L(disjoint_union(r, s)) == shuffle_sum(map_L(r), map_L(s), "linear-orders")
            assert map_L(concatenation(r, s)) == concat_product(map_L(r), map_L(s))


def test_L_one_one():
    for k in range(1, 5):
        images = {}
        for r in ex.all_partial_orders(ex.names(k)):
            assert images.setdefault(map_L(r), r) == r


def test_E_one_one_via_intersection():
    for k in range(1, 4):
        for r in ex.all_relations(ex.names(k)):
            assert frozenset.intersection(*map_E(r).family) == r.pairs


def test_sum_and_concatenation_are_limit_cases_of_shuffles():
    for r, s in small_pairs(4):
        fam = shuffle_sum(singleton(r), singleton(s), "all").family
        assert disjoint_union(r, s).pairs in fam
        assert concatenation(r, s).pairs in fam


# -- extension lemmas and the Q1/Q2 gap -----------------------------------------------

def test_extend_with_pair_stays_partial_order_and_reaches_linear_extension():
    for k in range(2, 5):
        for r in ex.all_partial_orders(ex.names(k)):
            for a in r.domain:
                for b in r.domain:
                    if a == b or (b, a) in r.pairs:
                        continue
                    assert is_partial_order(extend_with_pair(r, a, b))
                    lin = linear_extension_through(r, a, b)
                    assert is_linear_order(lin) and (a, b) in lin.pairs and r.pairs <= lin.pairs


def test_q1_without_q2_exists_but_not_for_partial_orders():
    found = 0
    for r, s in small_pairs(4):
        w = find_Q1_not_Q2_witness(r, s)
        if w is not None:
            found += 1
            assert (r.pairs | s.pairs) <= w.pairs and not satisfies_q2(w, r, s)
        if is_partial_order(r) and is_partial_order(s):
            assert find_Q1_not_Q2_witness(r, s, partial_orders_only=True) is None
    assert found > 0
