import random

import pytest
from hypothesis import given, strategies as st

from sforest import exhaustive as ex
from sforest.errors import NotDiversified, NotFTP, ParseError
from sforest.relations import chain, is_ftp_forest, is_ftp_tree, is_trifunctional, relation
from sforest.sterm import (
    Prod,
    Sum,
    Var,
    diversified_terms,
    is_diversified,
    is_s_forest,
    is_s_tree,
    kappa,
    make_prod,
    make_sum,
    parse_sterm,
    render_sterm,
    sterm_of_ftp,
    variables,
)

from oracles import all_s_forests

x, y, z, u = (Var(c) for c in "xyzu")


def test_parse_flattens_and_sorts():
    assert parse_sterm("x*y*z*u") == Prod((x, y, z, u))
    assert parse_sterm("u+(x*y)") == parse_sterm("(x*y)+u")
    assert parse_sterm("((x*y)*z)+u") == parse_sterm("(x*(y*z))+u")
    assert parse_sterm(" x *  ( y + z ) ") == Prod((x, Sum((y, z))))


@pytest.mark.parametrize("text, pos", [("x*", 2), ("(x+y", 4), ("x y", 2), ("", 0), ("x+X", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_sterm(text)
    assert info.value.position == pos


def test_render():
    assert render_sterm(Prod((x, y, z))) == "x*y*z"
    assert render_sterm(Sum((x, Prod((y, z))))) == "x+y*z"
    assert render_sterm(make_prod(z, make_sum(make_prod(x, y), u))) == "z*(u+x*y)"
    # same class as the label "z·((x·y)+u)"
    assert parse_sterm("z*((x*y)+u)") == make_prod(z, make_sum(make_prod(x, y), u))


def test_canonical_order_kinds():
    assert x < Sum((y, z)) < Prod((x, y))
    assert x < y
    assert Prod((x, y)) < Prod((x, z))


@pytest.mark.parametrize("text, expected", [("x*y+z", True), ("x*x", False), ("x*(y+x)", False)])
def test_is_diversified(text, expected):
    assert is_diversified(parse_sterm(text)) is expected


def test_variables():
    assert variables(parse_sterm("x")) == {"x"}
    assert variables(parse_sterm("x*(y+u)")) == {"x", "y", "u"}
    assert variables(parse_sterm("z*(x*y+u)")) == {"x", "y", "z", "u"}


def test_forest_and_tree_examples():
    t = parse_sterm("((x*y)*z)+u")
    assert is_s_forest(t) and not is_s_tree(t)
    assert is_s_tree(parse_sterm("w*(((x*y)*z)+(u+v))"))
    assert not is_s_forest(parse_sterm("(x+y)*z"))
    assert not is_s_forest(parse_sterm("x*x"))


def test_kappa_examples():
    assert kappa(x) == relation("x")
    assert kappa(parse_sterm("x*y*z")) == chain("x", "y", "z")
    assert kappa(parse_sterm("z*(x+y)")) == relation("xyz", [("z", "x"), ("z", "y")])
    with pytest.raises(NotDiversified):
        kappa(parse_sterm("x*(y+x)"))


def test_sterm_of_ftp_examples():
    assert sterm_of_ftp(relation("x")) == x
    assert render_sterm(sterm_of_ftp(chain("x", "y", "z"))) == "x*y*z"
    assert render_sterm(sterm_of_ftp(relation("xyz", [("z", "x"), ("z", "y")]))) == "z*(x+y)"
    with pytest.raises(NotFTP):
        sterm_of_ftp(relation("xyzu", [("x", "z"), ("y", "z"), ("y", "u")]))


def test_term_counts_match_n_free_poset_counts():
    # brute-force counts of trifunctional partial orders, by filtering all orders
    counts = []
    for k in range(1, 5):
        ftp = [r for r in ex.all_partial_orders(ex.names(k)) if is_trifunctional(r)]
        assert len(diversified_terms(ex.names(k))) == len(ftp)
        counts.append(len(ftp))
    assert counts == [1, 3, 19, 195]


def test_roundtrip_and_injectivity_exhaustive():
    for k in range(1, 5):
        terms = diversified_terms(ex.names(k))
        images = [kappa(t) for t in terms]
        assert len(set(images)) == len(terms)
        for t, r in zip(terms, images):
            assert sterm_of_ftp(r) == t


def test_totality_exhaustive():
    for k in range(1, 5):
        ftp = {r for r in ex.all_partial_orders(ex.names(k)) if is_trifunctional(r)}
        assert {kappa(t) for t in diversified_terms(ex.names(k))} == ftp
        for r in ftp:
            assert kappa(sterm_of_ftp(r)) == r


def test_roundtrip_sampled_at_five():
    terms = diversified_terms(ex.names(5))
    assert len(terms) == 2791
    for t in random.Random(5).sample(terms, 300):
        assert sterm_of_ftp(kappa(t)) == t


def test_forest_correspondence_exhaustive():
    for k in range(1, 5):
        for t in diversified_terms(ex.names(k)):
            r = kappa(t)
            assert is_s_forest(t) == is_ftp_forest(r)
            assert is_s_tree(t) == (is_ftp_tree(r) is not None)


def test_forest_predicate_matches_inductive_generation():
    for k in range(1, 5):
        generated = set(all_s_forests(ex.names(k)))
        assert generated == {t for t in diversified_terms(ex.names(k)) if is_s_forest(t)}


# -- random terms -------------------------------------------------------------------

def terms(names=("x", "y", "z", "u", "v")):
    leaves = st.sampled_from(names).map(Var)
    return st.recursive(
        leaves,
        lambda kids: st.one_of(
            st.lists(kids, min_size=2, max_size=3).map(lambda a: make_sum(*a)),
            st.lists(kids, min_size=2, max_size=3).map(lambda a: make_prod(*a)),
        ),
        max_leaves=8,
    )


@given(terms())
def test_render_parse_roundtrip(t):
    assert parse_sterm(render_sterm(t)) == t
    assert render_sterm(parse_sterm(render_sterm(t))) == render_sterm(t)


@given(terms(), terms())
def test_canonical_forms_absorb_axioms(a, b):
    assert make_sum(a, b) == make_sum(b, a)
    assert make_prod(make_prod(a, b), a) == make_prod(a, make_prod(b, a))
    assert make_sum(make_sum(a)) == make_sum(a)


@given(terms(names=("x", "y", "z", "u", "v", "w")).filter(is_diversified))
def test_kappa_roundtrip_random(t):
    assert sterm_of_ftp(kappa(t)) == t
