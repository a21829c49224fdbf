"""Finite groups stored as multiplication tables.

Elements are dense indices ``0..n-1`` with the identity fixed at index 0.
Every higher-level module works on indices only; labels exist for display and
for reading element words typed by a user (``"ba^-1c"``, ``"(ac)^-1"``, ``"x*u"``).
"""

from __future__ import annotations

import difflib
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    GroupConstructionError,
    NonAbelianSubgroup,
    NotNormal,
    UnknownLabel,
)

#: Largest order for which table-quadratic algorithms run by default.
DEFAULT_CAP = 256


def _validate_table(mul: np.ndarray, check_assoc: bool) -> None:
    n = mul.shape[0]
    if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
        raise GroupConstructionError("multiplication table must be a non-empty square array")
    if mul.min() < 0 or mul.max() >= n:
        raise GroupConstructionError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(mul[0], ar) and np.array_equal(mul[:, 0], ar)):
        raise GroupConstructionError("index 0 is not a two-sided identity")
    srt = np.sort(mul, axis=1)
    if not (srt == ar).all() or not (np.sort(mul, axis=0) == ar[:, None]).all():
        raise GroupConstructionError("table is not a Latin square")
    if check_assoc:
        for a in range(n):
            # (a*b)*c versus a*(b*c) for all b, c
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise GroupConstructionError(f"associativity fails for left factor {a}")


class Group:
    """An immutable finite group given by its multiplication table.

    ``mul[g, h]`` is the index of ``g*h``.  ``gens`` maps generator names to
    element indices and drives the word parser; ``aliases`` are extra names
    (``"-"`` for ``-1`` in quaternion groups, ``"σ"`` for ``s``) that are
    accepted in input but never produced in labels.
    """

    def __init__(
        self,
        mul,
        labels: Sequence[str] | None = None,
        name: str = "G",
        gens: dict[str, int] | None = None,
        aliases: dict[str, int] | None = None,
        validate: bool = True,
    ):
        mul = np.array(mul, dtype=np.intp)
        n = mul.shape[0]
        if validate:
            _validate_table(mul, check_assoc=n <= DEFAULT_CAP)
        mul.flags.writeable = False
        self.mul = mul
        self.order = n
        inv = np.argmin(mul, axis=1).astype(np.intp)
        inv.flags.writeable = False
        self.inv = inv
        if labels is None:
            labels = ["1"] + [f"e{i}" for i in range(1, n)]
        if len(labels) != n:
            raise GroupConstructionError("label count does not match the group order")
        self.labels = tuple(labels)
        self.name = name
        self.gens = dict(gens or {})
        self.aliases = dict(aliases or {})
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Group({self.name!r}, order={self.order})"

    # -- arithmetic -------------------------------------------------------

    def op(self, g: int, h: int) -> int:
        return int(self.mul[g, h])

    def product(self, *elements: int) -> int:
        acc = 0
        for g in elements:
            acc = int(self.mul[acc, g])
        return acc

    def power(self, g: int, e: int) -> int:
        if e < 0:
            g, e = int(self.inv[g]), -e
        acc, base = 0, g
        while e:
            if e & 1:
                acc = int(self.mul[acc, base])
            base = int(self.mul[base, base])
            e >>= 1
        return acc

    def conj(self, y: int, x: int) -> int:
        """``y^x = x^-1 y x``."""
        return int(self.mul[self.mul[self.inv[x], y], x])

    def commutator(self, x: int, y: int) -> int:
        """``[x, y] = x^-1 y^-1 x y``."""
        return self.product(int(self.inv[x]), int(self.inv[y]), x, y)

    # -- cached invariants -----------------------------------------------

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        ar = np.arange(n)
        orders = np.zeros(n, dtype=np.intp)
        cur = ar.copy()
        m = 1
        while (orders == 0).any():
            hit = (cur == 0) & (orders == 0)
            orders[hit] = m
            cur = self.mul[cur, ar]
            m += 1
        orders.flags.writeable = False
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*map(int, set(self.element_orders.tolist())))

    @cached_property
    def center(self) -> tuple[int, ...]:
        return tuple(int(g) for g in np.flatnonzero((self.mul == self.mul.T).all(axis=1)))

    @cached_property
    def involutions(self) -> tuple[int, ...]:
        return tuple(int(g) for g in np.flatnonzero(self.element_orders == 2))

    # -- labels and words -------------------------------------------------

    def label(self, g: int) -> str:
        return self.labels[g]

    def element(self, text: str) -> int:
        """Resolve a label or a word in the generators to an element index."""
        text = text.strip()
        if text in self._label_index:
            return self._label_index[text]
        try:
            return _WordParser(self, text).parse()
        except _WordError:
            pass
        close = difflib.get_close_matches(text, self.labels, n=5, cutoff=0.5)
        raise UnknownLabel(text, close)

    def elements(self, texts: Iterable[str]) -> list[int]:
        return [self.element(t) for t in texts]

    @property
    def names(self) -> dict[str, int]:
        out = dict(self.aliases)
        out.update(self.gens)
        return out


class _WordError(Exception):
    pass


class _WordParser:
    # word := factor* ; factor := primary ("^" int)? ; primary := name | "1" | "(" word ")"
    _int = re.compile(r"\s*(-?\d+)")

    def __init__(self, group: Group, text: str):
        self.g = group
        self.text = text
        self.pos = 0
        self.names = sorted(group.names.items(), key=lambda kv: -len(kv[0]))

    def parse(self) -> int:
        val = self.word()
        self.skip()
        if self.pos != len(self.text):
            raise _WordError(self.pos)
        return val

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " *·":
            self.pos += 1

    def word(self) -> int:
        acc = 0
        while True:
            self.skip()
            if self.pos >= len(self.text) or self.text[self.pos] == ")":
                return acc
            acc = self.g.op(acc, self.factor())

    def factor(self) -> int:
        val = self.primary()
        self.skip()
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            m = self._int.match(self.text, self.pos + 1)
            if not m:
                raise _WordError(self.pos)
            self.pos = m.end()
            val = self.g.power(val, int(m.group(1)))
        return val

    def primary(self) -> int:
        t, p = self.text, self.pos
        if t.startswith("(", p):
            self.pos += 1
            val = self.word()
            if not t.startswith(")", self.pos):
                raise _WordError(self.pos)
            self.pos += 1
            return val
        for nm, idx in self.names:
            if t.startswith(nm, p):
                self.pos += len(nm)
                return idx
        if t.startswith("1", p) and not t[p + 1 : p + 2].isdigit():
            self.pos += 1
            return 0
        raise _WordError(p)


def format_word(word: Sequence[tuple[str, int]]) -> str:
    """``[("a", 1), ("b", -1)]`` -> ``"ab^-1"``; the empty word is ``"1"``."""
    if not word:
        return "1"
    return "".join(nm if e == 1 else f"{nm}^{e}" for nm, e in word)


def shortlex_labels(mul: np.ndarray, gens: dict[str, int]) -> list[str]:
    """Label every element by a shortest word in ``gens`` and their inverses.

    Ties are broken by generator order, inverses after the generator itself.
    Elements outside the generated subgroup keep an ``e<index>`` placeholder.
    """
    n = mul.shape[0]
    inv = np.argmin(mul, axis=1)
    steps = []
    for nm, g in gens.items():
        if g == 0:
            continue
        steps.append((nm, 1, g))
        if inv[g] != g:
            steps.append((nm, -1, int(inv[g])))
    words: list[list | None] = [None] * n
    words[0] = []
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for nm, e, g in steps:
                k = int(mul[h, g])
                if words[k] is not None:
                    continue
                w = [list(p) for p in words[h]]
                if w and w[-1][0] == nm and (w[-1][1] > 0) == (e > 0):
                    w[-1][1] += e
                else:
                    w.append([nm, e])
                words[k] = w
                nxt.append(k)
        frontier = nxt
    return [format_word(w) if w is not None else f"e{i}" for i, w in enumerate(words)]


# -- subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupHandle:
    parent: Group = field(repr=False, compare=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements))))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self._members

    @cached_property
    def _members(self) -> frozenset[int]:
        return frozenset(self.elements)

    @property
    def is_abelian(self) -> bool:
        idx = np.array(self.elements)
        sub = self.parent.mul[np.ix_(idx, idx)]
        return bool(np.array_equal(sub, sub.T))

    @property
    def is_normal(self) -> bool:
        return is_normal(self.parent, self.elements)

    def as_group(self, name: str | None = None) -> Group:
        """Re-index the subgroup as a standalone group (parent order preserved)."""
        G = self.parent
        idx = np.array(self.elements)
        pos = np.full(G.order, -1, dtype=np.intp)
        pos[idx] = np.arange(len(idx))
        sub = pos[G.mul[np.ix_(idx, idx)]]
        gens = {nm: int(pos[g]) for nm, g in G.gens.items() if pos[g] >= 0}
        aliases = {nm: int(pos[g]) for nm, g in G.aliases.items() if pos[g] >= 0}
        labels = [G.labels[g] for g in self.elements]
        if name is None:
            name = f"<{','.join(labels[1:4])}{',...' if len(labels) > 4 else ''}> in {G.name}"
        return Group(sub, labels=labels, name=name, gens=gens, aliases=aliases, validate=False)


def element_order(G: Group, g: int) -> int:
    return int(G.element_orders[g])


def order_profile(G: Group) -> dict[int, int]:
    """Census ``{element order: count}`` in increasing order."""
    return dict(sorted(Counter(G.element_orders.tolist()).items()))


def generated_subgroup(G: Group, seed: Iterable[int]) -> SubgroupHandle:
    seed = [int(s) for s in seed if s != 0]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            row = G.mul[h]
            for s in seed:
                k = int(row[s])
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return SubgroupHandle(G, tuple(seen))


def is_normal(G: Group, elements: Sequence[int]) -> bool:
    members = np.zeros(G.order, dtype=bool)
    idx = np.asarray(elements, dtype=np.intp)
    members[idx] = True
    # g^-1 N g for every g at once
    conj = G.mul[G.mul[G.inv[:, None], idx[None, :]], np.arange(G.order)[:, None]]
    return bool(members[conj].all())


class Quotient(NamedTuple):
    group: Group
    projection: np.ndarray


def quotient(G: Group, N: SubgroupHandle) -> Quotient:
    """Factor group ``G/N`` with cosets ordered by their smallest element."""
    if not is_normal(G, N.elements):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    idx = np.array(N.elements)
    coset = np.full(G.order, -1, dtype=np.intp)
    reps = []
    for g in range(G.order):
        if coset[g] < 0:
            coset[G.mul[g, idx]] = len(reps)
            reps.append(g)
    reps_a = np.array(reps)
    qmul = coset[G.mul[np.ix_(reps_a, reps_a)]]
    gens = {nm: int(coset[g]) for nm, g in G.gens.items()}
    aliases = {nm: int(coset[g]) for nm, g in G.aliases.items()}
    labels = [G.labels[r] for r in reps]
    gen_labels = ",".join(G.labels[g] for g in N.elements[1:3]) or "1"
    Q = Group(qmul, labels=labels, name=f"{G.name}/<{gen_labels}>", gens=gens, aliases=aliases)
    coset.flags.writeable = False
    return Quotient(Q, coset)


def all_subgroups(G: Group, cap: int = DEFAULT_CAP) -> list[SubgroupHandle]:
    """Every subgroup, found by joining cyclic subgroups until nothing new appears."""
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds cap {cap}")
    cyclic = {frozenset(generated_subgroup(G, [g]).elements): g for g in range(G.order)}
    cyc_gens = list(cyclic.values())
    found = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for K in frontier:
            for g in cyc_gens:
                if g in K:
                    continue
                J = frozenset(generated_subgroup(G, list(K) + [g]).elements)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted((SubgroupHandle(G, tuple(K)) for K in found), key=lambda s: (s.order, s.elements))


def minimal_nonabelian_subgroups(G: Group, cap: int = DEFAULT_CAP) -> list[SubgroupHandle]:
    """Inclusion-minimal members of ``{<a, b> : ab != ba}``.

    A minimal non-abelian group is generated by any two of its non-commuting
    elements, so these are exactly the minimal non-abelian subgroups.
    """
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds cap {cap}")
    if G.is_abelian:
        return []
    mul = G.mul
    cands: set[frozenset[int]] = set()
    for a in range(1, G.order):
        for b in np.flatnonzero(mul[a] != mul[:, a]):
            b = int(b)
            if b > a:
                cands.add(frozenset(generated_subgroup(G, [a, b]).elements))
    minimal: list[frozenset[int]] = []
    for K in sorted(cands, key=len):
        if not any(M < K for M in minimal):
            minimal.append(K)
    return [SubgroupHandle(G, tuple(K)) for K in minimal]


# -- abelian structure ---------------------------------------------------------


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _primary_type(orders: Sequence[int], p: int) -> list[int]:
    """Exponents of the p-primary cyclic factors of an abelian group with these element orders."""
    counts = Counter(orders)
    ppart = [o for o in counts if o > 0 and (o & (o - 1) == 0 if p == 2 else _is_power(o, p))]
    top = max((round(math.log(o, p)) for o in ppart), default=0)
    # N_j = #{g : g^(p^j) = 1}, and log_p(N_j / N_{j-1}) = #{factors with exponent >= j}
    ns = [sum(c for o, c in counts.items() if o in ppart and o <= p**j) for j in range(top + 1)]
    ge = [round(math.log(ns[j] // ns[j - 1], p)) for j in range(1, top + 1)]
    exps = []
    for j, r in enumerate(ge, start=1):
        nxt = ge[j] if j < len(ge) else 0
        exps += [j] * (r - nxt)
    return sorted(exps, reverse=True)


def _is_power(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def abelian_invariants(G: Group) -> tuple[int, ...]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group (empty for trivial)."""
    if not G.is_abelian:
        raise NonAbelianSubgroup(f"{G.name} is not abelian")
    orders = G.element_orders.tolist()
    cols: list[list[int]] = []
    for p in _prime_factors(G.order):
        cols.append([p**e for e in _primary_type(orders, p)])
    width = max((len(c) for c in cols), default=0)
    factors = []
    for i in range(width):
        factors.append(math.prod(c[i] for c in cols if i < len(c)))
    return tuple(sorted(factors))


@dataclass(frozen=True)
class AbelianBasis:
    """Independent generators of an abelian subgroup, one per cyclic factor."""

    generators: tuple[int, ...]
    orders: tuple[int, ...]
    coords: dict[int, tuple[int, ...]] = field(repr=False, compare=False)

    @property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1


def abelian_basis(G: Group, H: SubgroupHandle | None = None) -> AbelianBasis:
    """Primary decomposition of an abelian subgroup into cyclic factors.

    Generators are chosen per prime by a backtracking search over elements of
    the required orders, preferring small indices, so the result is deterministic.
    """
    elems = list(H.elements) if H is not None else list(range(G.order))
    sub = SubgroupHandle(G, tuple(elems))
    if not sub.is_abelian:
        raise NonAbelianSubgroup("subgroup is not abelian")
    orders = {g: int(G.element_orders[g]) for g in elems}
    gens: list[int] = []
    gorders: list[int] = []
    for p in _prime_factors(len(elems)):
        exps = _primary_type(list(orders.values()), p)
        pick = _independent(G, [g for g in elems if orders[g] > 1 and _is_power(orders[g], p)],
                            [p**e for e in exps], orders)
        gens += pick
        gorders += [p**e for e in exps]
    coords: dict[int, tuple[int, ...]] = {0: (0,) * len(gens)}
    for i, (g, d) in enumerate(zip(gens, gorders)):
        new = {}
        for h, c in coords.items():
            x = h
            for e in range(1, d):
                x = G.op(x, g)
                new[x] = c[:i] + (e,) + c[i + 1 :]
        coords.update(new)
    if len(coords) != len(elems):
        raise AssertionError("abelian basis does not span the subgroup")
    return AbelianBasis(tuple(gens), tuple(gorders), coords)


def _independent(G: Group, pool: list[int], targets: list[int], orders: dict[int, int]) -> list[int]:
    def rec(chosen: list[int], span: frozenset[int]) -> list[int] | None:
        if len(chosen) == len(targets):
            return chosen
        want = targets[len(chosen)]
        for g in pool:
            if orders[g] != want:
                continue
            if G.power(g, want // _smallest_prime(want)) in span:
                continue
            new = set(span)
            x = 0
            for _ in range(want - 1):
                x = G.op(x, g)
                new |= {G.op(s, x) for s in span}
            out = rec(chosen + [g], frozenset(new))
            if out is not None:
                return out
        return None

    res = rec([], frozenset([0]))
    if res is None:
        raise AssertionError("no independent generating set found")
    return res


def _smallest_prime(n: int) -> int:
    return _prime_factors(n)[0]


class Fingerprint(NamedTuple):
    order: int
    abelian: bool
    exponent: int
    center_order: int
    order_profile: tuple[tuple[int, int], ...]
    abelianization: tuple[int, ...]


def derived_subgroup(G: Group) -> SubgroupHandle:
    comms = {G.commutator(a, b) for a in range(G.order) for b in range(a + 1, G.order)}
    return generated_subgroup(G, comms)


def fingerprint(G: Group) -> Fingerprint:
    """Cheap isomorphism invariants; enough to tell apart the small groups used here."""
    ab = quotient(G, derived_subgroup(G)).group
    return Fingerprint(
        order=G.order,
        abelian=G.is_abelian,
        exponent=G.exponent,
        center_order=len(G.center),
        order_profile=tuple(order_profile(G).items()),
        abelianization=abelian_invariants(ab),
    )
