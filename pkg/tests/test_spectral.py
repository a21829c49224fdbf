import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_gk.charpoly import char_poly
from cayley_gk.constructions import make_abelian, make_dihedral, named_group, quaternion_group
from cayley_gk.errors import AsymmetricInput, InvalidConnectionSet
from cayley_gk.spectral import (
    ConnectionSet,
    atoms,
    cayley_adjacency,
    float_spectrum,
    integer_spectrum,
    integrality_test,
    nonintegral_evidence,
    spectrum_report,
)


def test_connection_set_validation():
    Q = quaternion_group()
    with pytest.raises(InvalidConnectionSet):
        ConnectionSet.from_labels(Q, ["1", "i", "-i"])
    with pytest.raises(InvalidConnectionSet):
        ConnectionSet.from_labels(Q, ["i"])
    S = ConnectionSet.from_labels(Q, ["-i", "i", "i"])
    assert S.elements == tuple(sorted(S.elements)) and len(S) == 2


def test_atoms_partition():
    Q = quaternion_group()
    ats = atoms(Q)
    assert [a.kind for a in ats].count("involution") == 1 and len(ats) == 4
    assert sorted(x for a in ats for x in a.elements) == list(range(1, 8))
    assert all(a.kind == "involution" for a in atoms(make_abelian([2, 2])))


def test_adjacency_convention():
    # A[g, h] = 1 iff h g^-1 in S; on a non-abelian group this is not h^-1 g
    G = make_dihedral(6)
    S = ConnectionSet.from_labels(G, ["b"])
    A = cayley_adjacency(G, S)
    for g in range(6):
        for h in range(6):
            assert A[g, h] == (G.op(h, int(G.inv[g])) in S.elements)
    assert np.array_equal(A, A.T) and not A.diagonal().any()


def test_eight_cycle_in_d8():
    G = make_dihedral(8)
    S = ConnectionSet.from_labels(G, ["ab", "b"])
    rep = spectrum_report(cayley_adjacency(G, S), 2)
    assert not rep.integral
    assert abs(abs(rep.evidence) - math.sqrt(2)) < 1e-9


def test_complete_graph_integer_spectrum():
    G = make_abelian([2, 2])
    S = ConnectionSet(G, (1, 2, 3))
    rep = spectrum_report(cayley_adjacency(G, S), 3)
    assert rep.integral and rep.integer_spectrum == [(-1, 3), (3, 1)]


def test_integrality_rejects_bad_input():
    with pytest.raises(AsymmetricInput):
        integrality_test(np.array([[0, 1], [0, 0]]), 1)
    with pytest.raises(ValueError):
        integrality_test(np.ones((3, 3), dtype=int) - np.eye(3, dtype=int), 1)


def test_integer_spectrum_deflation():
    A = np.array([[0, 1], [1, 0]])
    assert integer_spectrum(char_poly(A), 1) == [(-1, 1), (1, 1)]
    C5 = np.roll(np.eye(5, dtype=int), 1, axis=1)
    assert integer_spectrum(char_poly(C5 + C5.T), 2) is None


def test_nonintegral_evidence_tolerance():
    assert nonintegral_evidence(np.array([1.0, 2.0 + 1e-9])) is None
    assert nonintegral_evidence(np.array([1.0, 1.5])) == 1.5


def _cycle(n):
    P = np.roll(np.eye(n, dtype=np.int64), 1, axis=1)
    return P + P.T


@pytest.mark.parametrize("n, integral", [(3, True), (4, True), (5, False), (6, True), (7, False), (8, False), (12, False)])
def test_cycles_match_known_spectra(n, integral):
    # C_n is integral exactly for n in {3, 4, 6}
    assert integrality_test(_cycle(n), 2) is integral
    assert spectrum_report(_cycle(n), 2).integral is integral


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["Q8", "D6", "D8", "A4", "H16", "Dic12"]), st.data())
def test_three_routes_agree_on_random_sets(name, data):
    G = named_group(name)
    ats = atoms(G)
    mask = data.draw(st.lists(st.booleans(), min_size=len(ats), max_size=len(ats)))
    S = ConnectionSet(G, tuple(x for a, m in zip(ats, mask) if m for x in a.elements))
    A = cayley_adjacency(G, S)
    rep = spectrum_report(A, len(S))  # raises on any disagreement
    assert rep.integral == integrality_test(A, len(S))
    spec = float_spectrum(A)
    assert abs(spec.sum()) < 1e-8
    assert abs((spec**2).sum() - G.order * len(S)) < 1e-6
