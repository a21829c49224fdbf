import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_gk.constructions import make_abelian, make_dihedral, named_group, quaternion_group
from cayley_gk.errors import GroupConstructionError, NotNormal, UnknownLabel
from cayley_gk.group import (
    Group,
    abelian_basis,
    abelian_invariants,
    all_subgroups,
    derived_subgroup,
    fingerprint,
    generated_subgroup,
    is_normal,
    minimal_nonabelian_subgroups,
    order_profile,
    quotient,
)


def test_identity_must_be_index_zero():
    mul = np.array([[1, 0], [0, 1]])
    with pytest.raises(GroupConstructionError):
        Group(mul)


def test_rejects_non_associative_latin_square():
    # Latin square with identity 0 that is not associative (order 5 loop)
    mul = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(GroupConstructionError):
        Group(mul)


def test_tables_are_read_only():
    G = make_abelian([4])
    with pytest.raises(ValueError):
        G.mul[0, 0] = 1


def test_conventions():
    G = make_dihedral(8)
    a, b = G.element("a"), G.element("b")
    # y^x = x^-1 y x
    assert G.conj(a, b) == G.element("a^-1")
    # [x, y] = x^-1 y^-1 x y
    assert G.commutator(a, b) == G.product(G.inv[a], G.inv[b], a, b)
    assert G.commutator(a, b) == G.element("a^2")


def test_word_parser_forms():
    Q = quaternion_group()
    assert Q.element("i j") == Q.element("k")
    assert Q.element("i*j") == Q.element("k")
    assert Q.element("(ij)^-1") == Q.element("-k")
    assert Q.element("1") == 0
    assert Q.element("i^4") == 0


def test_unknown_label_suggests():
    Q = quaternion_group()
    with pytest.raises(UnknownLabel) as exc:
        Q.element("-q")
    assert "-k" in exc.value.suggestions


@pytest.mark.parametrize(
    "name, profile",
    [
        ("Q8", {1: 1, 2: 1, 4: 6}),
        ("D8", {1: 1, 2: 5, 4: 2}),
        ("H2", {1: 1, 2: 3, 4: 12}),
        ("H16", {1: 1, 2: 7, 4: 8}),
        ("H32", {1: 1, 2: 7, 4: 24}),
        ("H27", {1: 1, 3: 26}),
        ("A4", {1: 1, 2: 3, 3: 8}),
    ],
)
def test_order_profiles(name, profile):
    assert order_profile(named_group(name)) == profile


def test_generated_subgroup_and_normality():
    G = named_group("A4")
    V = generated_subgroup(G, G.elements(["a", "b"]))
    assert V.order == 4 and V.is_abelian and V.is_normal
    C = generated_subgroup(G, [G.element("c")])
    assert C.order == 3 and not is_normal(G, C.elements)
    with pytest.raises(NotNormal):
        quotient(G, C)


def test_quotient_by_center_of_q8():
    Q = quaternion_group()
    Z = generated_subgroup(Q, [Q.element("-1")])
    q = quotient(Q, Z)
    assert q.group.order == 4 and q.group.exponent == 2
    # projection is a homomorphism
    for g, h in itertools.product(range(8), repeat=2):
        assert q.projection[Q.op(g, h)] == q.group.op(q.projection[g], q.projection[h])


def test_subgroup_lattice_counts():
    # S3 has 6 subgroups, Q8 has 6, D8 has 10
    assert len(all_subgroups(make_dihedral(6))) == 6
    assert len(all_subgroups(quaternion_group())) == 6
    assert len(all_subgroups(make_dihedral(8))) == 10


def test_minimal_nonabelian():
    assert [H.order for H in minimal_nonabelian_subgroups(named_group("Q8"))] == [8]
    assert [H.order for H in minimal_nonabelian_subgroups(named_group("H32"))] == [32]
    # Q8 x E4 contains only copies of Q8
    from cayley_gk.spec_grammar import build

    orders = {H.order for H in minimal_nonabelian_subgroups(build("Q8 x E(4)"))}
    assert orders == {8}


def test_abelian_invariants_and_basis():
    G = make_abelian([6, 4, 2])
    assert abelian_invariants(G) == (2, 2, 12)
    assert abelian_invariants(make_abelian([2, 3, 4, 2])) == (2, 2, 12)
    B = abelian_basis(G)
    assert np.prod(B.orders) == G.order
    # coordinates are a bijection onto the product of the cyclic orders
    assert len({tuple(c) for c in B.coords.values()}) == G.order


def test_derived_subgroup_and_fingerprint():
    assert derived_subgroup(named_group("A4")).order == 4
    fp = fingerprint(named_group("H27"))
    assert fp.exponent == 3 and fp.center_order == 3 and fp.abelianization == (3, 3)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 6), min_size=1, max_size=3))
def test_abelian_tables_commute_and_invert(orders):
    G = make_abelian(orders)
    assert np.array_equal(G.mul, G.mul.T)
    assert all(G.op(g, int(G.inv[g])) == 0 for g in range(G.order))
    assert G.exponent == int(np.lcm.reduce(orders))
