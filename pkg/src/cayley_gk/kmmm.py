"""Eigenvalues of Cayley graphs through an abelian semiregular subgroup.

A subgroup H acts on G by right multiplication ``g -> g·x``; its orbits are
the left cosets ``t·H``.  Relative to representatives ``t_1..t_m`` the graph
is encoded by the symbol ``S_ij = {x in H : t_i ~ t_j·x} = H ∩ t_j^-1 S t_i``,
and the spectrum of ``Cay(G, S)`` is the union over the characters χ of H
of the spectra of the m×m matrices ``χ(S)_ij = Σ_{s in S_ij} χ(s)``.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .errors import EvenOrderSubgroup, NonAbelianSubgroup, NotNormal, PinnedCollision
from .group import AbelianBasis, Group, SubgroupHandle, abelian_basis, is_normal
from .spectral import ConnectionSet


@dataclass(frozen=True)
class Transversal:
    subgroup: SubgroupHandle = field(repr=False)
    reps: tuple[int, ...]
    coset_of: np.ndarray = field(repr=False, compare=False)
    h_of: np.ndarray = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.reps)


def left_transversal(G: Group, H: SubgroupHandle, pinned: Sequence[int] = ()) -> Transversal:
    """Representatives of the cosets ``g·H``: the identity, then ``pinned`` in
    order, then the smallest index of each remaining coset."""
    pinned = [int(p) for p in pinned]
    if 0 not in pinned:
        pinned.insert(0, 0)
    elif pinned[0] != 0:
        raise PinnedCollision("the identity must be the first pinned representative")
    hidx = np.array(H.elements)
    coset_of = np.full(G.order, -1, dtype=np.intp)
    h_of = np.full(G.order, -1, dtype=np.intp)
    reps: list[int] = []

    def claim(t):
        members = G.mul[t, hidx]
        coset_of[members] = len(reps)
        h_of[members] = hidx
        reps.append(t)

    for p in pinned:
        if coset_of[p] >= 0:
            raise PinnedCollision(
                f"{G.labels[p]} lies in the coset of {G.labels[reps[coset_of[p]]]}"
            )
        claim(p)
    for g in range(G.order):
        if coset_of[g] < 0:
            claim(g)
    coset_of.flags.writeable = False
    h_of.flags.writeable = False
    return Transversal(H, tuple(reps), coset_of, h_of)


@dataclass(frozen=True)
class SymbolMatrix:
    cells: tuple[tuple[tuple[int, ...], ...], ...]
    group: Group = field(repr=False, compare=False)
    connection_set: ConnectionSet = field(repr=False, compare=False)
    transversal: Transversal = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.cells)

    def cell_labels(self) -> list[list[list[str]]]:
        lab = self.group.labels
        return [[[lab[x] for x in cell] for cell in row] for row in self.cells]

    def sizes(self) -> np.ndarray:
        return np.array([[len(c) for c in row] for row in self.cells], dtype=int)


def _require_abelian(H: SubgroupHandle) -> None:
    if not H.is_abelian:
        raise NonAbelianSubgroup(f"subgroup of order {H.order} is not abelian")


def symbol_matrix(G: Group, S: ConnectionSet, T: Transversal) -> SymbolMatrix:
    _require_abelian(T.subgroup)
    m = T.m
    cells: list[list[set[int]]] = [[set() for _ in range(m)] for _ in range(m)]
    for i, t in enumerate(T.reps):
        for s in S:
            nb = int(G.mul[s, t])  # the neighbour s·t_i equals t_j·x
            cells[i][int(T.coset_of[nb])].add(int(T.h_of[nb]))
    frozen = tuple(tuple(tuple(sorted(c)) for c in row) for row in cells)
    return SymbolMatrix(frozen, G, S, T)


@dataclass(frozen=True)
class Character:
    """``χ(h) = ζ_N^(Σ e_i a_i N/d_i)`` where h has basis coordinates a."""

    basis: AbelianBasis = field(repr=False)
    exponents: tuple[int, ...]

    @property
    def root_order(self) -> int:
        return self.basis.exponent

    def power(self, h: int) -> int:
        """The r with χ(h) = ζ_N^r."""
        N = self.root_order
        a = self.basis.coords[h]
        return sum(e * x * (N // d) for e, x, d in zip(self.exponents, a, self.basis.orders)) % N

    def __call__(self, h: int) -> complex:
        return _root(self.root_order, self.power(h))

    @property
    def is_trivial(self) -> bool:
        return not any(self.exponents)


@lru_cache(maxsize=None)
def _roots(N: int) -> np.ndarray:
    r = np.exp(2j * np.pi * np.arange(N) / N)
    # pin the exactly representable values
    for k in range(N):
        if (4 * k) % N == 0:
            r[k] = [1, 1j, -1, -1j][(4 * k) // N]
    return r


def _root(N: int, r: int) -> complex:
    return complex(_roots(N)[r % N])


def abelian_characters(G: Group, H: SubgroupHandle) -> list[Character]:
    _require_abelian(H)
    basis = abelian_basis(G, H)
    return [Character(basis, e) for e in itertools.product(*(range(d) for d in basis.orders))]


def character_with_values(chars: Sequence[Character], values: Mapping[int, complex], tol: float = 1e-9) -> Character:
    """The first character taking the given values on the given elements."""
    for chi in chars:
        if all(abs(chi(h) - v) < tol for h, v in values.items()):
            return chi
    raise LookupError("no character takes the requested values")


@dataclass(frozen=True)
class ChiMatrix:
    """Entries as cyclotomic integers: ``counts[i, j, r]`` copies of ``ζ_N^r``."""

    counts: np.ndarray
    root_order: int

    @property
    def m(self) -> int:
        return self.counts.shape[0]

    @property
    def values(self) -> np.ndarray:
        return self.counts @ _roots(self.root_order)

    def entry(self, i: int, j: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.counts[i, j])


def chi_matrix(chi: Character, M: SymbolMatrix) -> ChiMatrix:
    N = chi.root_order
    m = M.m
    counts = np.zeros((m, m, N), dtype=np.int64)
    for i, row in enumerate(M.cells):
        for j, cell in enumerate(row):
            for s in cell:
                counts[i, j, chi.power(s)] += 1
    return ChiMatrix(counts, N)


# -- exact cyclotomic helpers ---------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> tuple[int, ...]:
    """Coefficients of Φ_N, lowest degree first."""
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_polynomial(d)))
    return tuple(num)


def _polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    a = a[:]
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(q) - 1, -1, -1):
        c = a[k + len(b) - 1] // b[-1]
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] -= c * bi
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def reduce_cyclotomic(vec: Sequence[int], N: int) -> list[int]:
    """Canonical form of ``Σ vec[r] ζ_N^r`` modulo Φ_N (lowest degree first)."""
    a = [int(v) for v in vec]
    phi = cyclotomic_polynomial(N)
    deg = len(phi) - 1
    for k in range(len(a) - 1, deg - 1, -1):
        c = a[k]
        if c:
            for i, pi in enumerate(phi):
                a[k - deg + i] -= c * pi
    a = a[:deg] if deg else a[:1]
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def as_rational_integer(vec: Sequence[int], N: int) -> int | None:
    red = reduce_cyclotomic(vec, N)
    if all(c == 0 for c in red[1:]):
        return red[0] if red else 0
    return None


def _cmul(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros(N, dtype=object)
    for r in np.flatnonzero(a):
        for s in np.flatnonzero(b):
            out[(r + s) % N] += int(a[r]) * int(b[s])
    return out


def _conj(a: np.ndarray) -> np.ndarray:
    N = len(a)
    return np.array([a[(-r) % N] for r in range(N)], dtype=object)


@dataclass(frozen=True)
class QuadraticEigen:
    """Eigenvalues ``(trace ± sqrt(radicand)) / 2`` of a 2×2 Hermitian χ(S).

    ``trace`` and ``radicand`` are rational integers when the cyclotomic
    arithmetic reduces to them, otherwise None.
    """

    trace: int | None
    radicand: int | None
    values: tuple[float, float]


def quadratic_eigen(C: ChiMatrix) -> QuadraticEigen:
    if C.m != 2:
        raise ValueError("closed form only for 2×2 matrices")
    N = C.root_order
    p, r = C.counts[0, 0].astype(object), C.counts[1, 1].astype(object)
    q = C.counts[0, 1].astype(object)
    diff = p - r
    rad = _cmul(diff, diff, N) + 4 * _cmul(q, _conj(q), N)
    tr = as_rational_integer(p + r, N)
    rd = as_rational_integer(rad, N)
    vals = C.values
    tf = float((vals[0, 0] + vals[1, 1]).real)
    radf = float(((vals[0, 0] - vals[1, 1]) ** 2).real + 4 * abs(vals[0, 1]) ** 2)
    root = math.sqrt(max(radf, 0.0))
    return QuadraticEigen(tr, rd, ((tf - root) / 2, (tf + root) / 2))


def chi_eigenvalues(C: ChiMatrix) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian χ(S): closed form for m ≤ 2, LAPACK above."""
    if C.m == 0:
        return np.zeros(0)
    if C.m == 1:
        return np.array([float(C.values[0, 0].real)])
    if C.m == 2:
        return np.array(quadratic_eigen(C).values)
    return np.linalg.eigvalsh(C.values)


def kmmm_spectrum(G: Group, S: ConnectionSet, H: SubgroupHandle, pinned: Sequence[int] = ()) -> np.ndarray:
    """Union of the χ(S) spectra over all characters of H, ascending."""
    _require_abelian(H)
    M = symbol_matrix(G, S, left_transversal(G, H, pinned))
    parts = [chi_eigenvalues(chi_matrix(chi, M)) for chi in abelian_characters(G, H)]
    return np.sort(np.concatenate(parts)) if parts else np.zeros(0)


def lift_connection_set(G: Group, N: SubgroupHandle, quotient_set: ConnectionSet, projection) -> ConnectionSet:
    """Pick one element of G in every coset of ``quotient_set`` so that the
    result is again identity-free and inverse-closed.

    Inverse pairs of cosets get ``r`` and ``r^-1`` with r the smallest index in
    its coset; a self-inverse coset ``Nr`` gets its smallest involution, which
    exists because ``<N, r>`` has order ``2|N|`` with ``|N|`` odd.
    """
    if not is_normal(G, N.elements):
        raise NotNormal("N is not normal")
    if not N.is_abelian:
        raise NonAbelianSubgroup("N is not abelian")
    if N.order % 2 == 0:
        raise EvenOrderSubgroup(f"|N| = {N.order} is even")
    projection = np.asarray(projection)
    Q = quotient_set.parent
    chosen: list[int] = []
    done: set[int] = set()
    for c in quotient_set.elements:
        if c in done:
            continue
        ci = int(Q.inv[c])
        members = np.flatnonzero(projection == c)
        if ci == c:
            invs = [int(g) for g in members if G.element_orders[g] == 2]
            if not invs:
                raise AssertionError("self-inverse coset without an involution")
            chosen.append(invs[0])
        else:
            r = int(members[0])
            chosen += [r, int(G.inv[r])]
        done |= {c, ci}
    return ConnectionSet(G, tuple(chosen))
