import numpy as np
import pytest

from cayley_gk.constructions import (
    NAMED_GROUPS,
    automorphism,
    direct_product,
    from_permutations,
    generalized_dicyclic,
    is_automorphism,
    make_abelian,
    make_dihedral,
    named_group,
    semidirect_product,
)
from cayley_gk.errors import (
    ActionInconsistent,
    ClosureExceedsCap,
    GroupConstructionError,
    NoUniqueInvolution,
    NotAbelian,
    NotAutomorphism,
    TooSmall,
    UnknownName,
)
from cayley_gk.group import fingerprint


@pytest.mark.parametrize("name", NAMED_GROUPS)
def test_named_groups_are_groups(name):
    G = named_group(name)
    m = np.asarray(G.mul)
    n = G.order
    # associativity checked independently of the constructor
    for x in range(n):
        assert np.array_equal(m[m[x]], m[x][m])
    assert all(sorted(row) == list(range(n)) for row in m.tolist())


@pytest.mark.parametrize(
    "name, order, center",
    [("Q8", 8, 2), ("D6", 6, 1), ("D8", 8, 2), ("D12", 12, 2), ("H2", 16, 4), ("H16", 16, 4), ("H27", 27, 3),
     ("H32", 32, 8), ("A4", 12, 1), ("Q8sZ3", 24, 2), ("E9sZ2", 18, 1), ("D6xZ3", 18, 3), ("Dic12", 12, 2)],
)
def test_named_group_invariants(name, order, center):
    G = named_group(name)
    assert G.order == order and len(G.center) == center


def test_redei_relations_hold():
    # H16, H32, H27: [a, b] = c central; H2: a^b = a^-1
    for name in ("H16", "H32", "H27"):
        G = named_group(name)
        a, b, c = (G.element(x) for x in "abc")
        assert G.conj(a, b) == G.op(a, c)
        assert c in G.center
    G = named_group("H2")
    assert G.conj(G.element("a"), G.element("b")) == G.element("a^-1")


def test_q8_semidirect_z3_action():
    G = named_group("Q8sZ3")
    s = G.element("σ")
    assert G.conj(G.element("i"), s) == G.element("j")
    assert G.conj(G.element("j"), s) == G.element("k")
    assert G.conj(G.element("k"), s) == G.element("i")


def test_a4_matches_permutation_closure_oracle():
    # independent closure in pure Python, composing left to right
    gens = [(1, 0, 3, 2), (2, 3, 0, 1), (1, 2, 0, 3)]
    seen = {(0, 1, 2, 3)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i]] for i in range(4))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    assert len(seen) == 12
    assert fingerprint(named_group("A4")) == fingerprint(from_permutations(gens))


def test_permutation_cap():
    with pytest.raises(ClosureExceedsCap):
        from_permutations(["(1,2)", "(1,2,3,4,5,6)"], cap=100)


def test_dihedral_rejects_odd_order():
    with pytest.raises(GroupConstructionError):
        make_dihedral(7)


def test_dicyclic_preconditions():
    with pytest.raises(NoUniqueInvolution):
        generalized_dicyclic(make_abelian([2, 2]))
    with pytest.raises(NotAbelian):
        generalized_dicyclic(make_dihedral(6))
    with pytest.raises(TooSmall):
        generalized_dicyclic(make_abelian([2]))


def test_dicyclic_structure():
    G = generalized_dicyclic(make_abelian([3, 6]))
    x = G.gens["x"]
    t = G.op(x, x)
    assert G.element_orders[t] == 2 and t in G.center
    for a in range(G.order // 2):
        assert G.conj(a, x) == G.inv[a]
    assert list(G.involutions) == [t]


def test_generalized_quaternion_is_q8():
    assert fingerprint(generalized_dicyclic(make_abelian([4]))) == fingerprint(named_group("Q8"))


def test_automorphism_checks():
    A = make_abelian([3, 3], names=["u", "v"])
    perm = automorphism(A, {"u": "v", "v": "u"})
    assert is_automorphism(A, perm)
    with pytest.raises(NotAutomorphism):
        automorphism(A, {"u": "v", "v": "v"})


def test_semidirect_rejects_non_homomorphism():
    A = make_abelian([3], names=["a"])
    B = make_abelian([3], names=["b"])
    inv = automorphism(A, {"a": "a^-1"})
    with pytest.raises(ActionInconsistent):
        semidirect_product(A, B, {"b": inv})


def test_direct_product_order_and_center():
    G = direct_product(named_group("Q8"), make_abelian([2]))
    assert G.order == 16 and len(G.center) == 4


def test_unknown_name():
    with pytest.raises(UnknownName):
        named_group("Q16")


def test_distinct_order16_fingerprints():
    fps = {fingerprint(named_group(n)) for n in ("H2", "H16")}
    fps.add(fingerprint(direct_product(named_group("Q8"), make_abelian([2]))))
    assert len(fps) == 3
