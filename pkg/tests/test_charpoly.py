import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_gk.charpoly import IntPolynomial, _berkowitz_exact, char_poly, coefficient_bound


def _sympy_coeffs(A):
    x = sympy.Symbol("x")
    return tuple(int(c) for c in sympy.Matrix(A.tolist()).charpoly(x).all_coeffs())


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 9).flatmap(lambda n: st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n).map(
    lambda v: np.array(v, dtype=np.int64).reshape(n, n))))
def test_matches_sympy_on_01_matrices(A):
    assert char_poly(A).coeffs == _sympy_coeffs(A)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(-7, 7), min_size=n * n, max_size=n * n).map(
    lambda v: np.array(v, dtype=np.int64).reshape(n, n))))
def test_exact_path_with_negative_entries(A):
    assert char_poly(A).coeffs == _sympy_coeffs(A)


def test_modular_path_on_large_cayley_graph():
    from cayley_gk.spectral import ConnectionSet, cayley_adjacency
    from cayley_gk.spec_grammar import build

    G = build("Dic(C(3) x C(6))")
    S = ConnectionSet.from_labels(G, ["x", "xa", "xb", "xb^3", "xab^3", "xb^4"])
    A = cayley_adjacency(G, S)
    p = char_poly(A)
    assert list(p.coeffs) == _berkowitz_exact(A.tolist())
    # constant term is (-1)^n det(A); here A is singular
    assert p.coeffs[-1] == 0


def test_complete_graph_k4():
    A = np.ones((4, 4), dtype=np.int64) - np.eye(4, dtype=np.int64)
    p = char_poly(A)
    assert p.coeffs == (1, 0, -6, -8, -3)
    assert str(p) == "x^4-6x^2-8x-3"
    assert p(3) == 0 and p(-1) == 0


def test_coefficient_bound_dominates():
    rng = np.random.default_rng(1)
    A = rng.integers(0, 2, size=(12, 12))
    assert max(abs(c) for c in char_poly(A).coeffs) <= coefficient_bound(A)


def test_polynomial_must_be_monic():
    with pytest.raises(ValueError):
        IntPolynomial((2, 1))


def test_empty_matrix():
    assert char_poly(np.zeros((0, 0), dtype=np.int64)).coeffs == (1,)
