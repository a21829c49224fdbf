"""Deciding membership in G_k (every Cayley graph with |S| <= k is integral)
by exhaustive enumeration, plus the witness and property sweeps built on it."""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import AtomCapExceeded, CapExceeded, NotTwoGroup
from .group import (
    DEFAULT_CAP,
    Group,
    SubgroupHandle,
    all_subgroups,
    fingerprint,
    generated_subgroup,
    is_normal,
    minimal_nonabelian_subgroups,
    order_profile,
    quotient,
)
from .kmmm import (
    abelian_characters,
    character_with_values,
    chi_eigenvalues,
    chi_matrix,
    kmmm_spectrum,
    left_transversal,
    symbol_matrix,
)
from .spectral import (
    FLOAT_TOL,
    ConnectionSet,
    atoms,
    cayley_adjacency,
    float_spectrum,
    integrality_test,
    nonintegral_evidence,
    spectrum_report,
)

JOBS_ENV = "CAYLEY_GK_JOBS"


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def enumerate_connection_sets(G: Group, k: int) -> Iterator[ConnectionSet]:
    """Every identity-free inverse-closed S with ``1 <= |S| <= k``, once each.

    Sets are unions of atoms, emitted in lexicographic order of their sorted
    atom-index tuples.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ats = atoms(G)
    sizes = [len(a.elements) for a in ats]

    def rec(start: int, size: int, chosen: list[int]):
        for i in range(start, len(ats)):
            s = size + sizes[i]
            if s > k:
                continue
            pick = chosen + [i]
            yield ConnectionSet(G, tuple(x for j in pick for x in ats[j].elements))
            yield from rec(i + 1, s, pick)

    yield from rec(0, 0, [])


def count_connection_sets(G: Group, k: int) -> int:
    """Closed-form count of ``enumerate_connection_sets(G, k)``."""
    ats = atoms(G)
    t = sum(1 for a in ats if a.kind == "involution")
    p = len(ats) - t
    return sum(math.comb(p, i) * math.comb(t, j) for i in range(p + 1) for j in range(t + 1) if 0 < 2 * i + j <= k)


@dataclass
class GkVerdict:
    group: str
    k: int
    member: bool
    witness: ConnectionSet | None = None
    evidence: float | None = None
    annihilation_failed: bool = False
    witness_spectrum: np.ndarray | None = field(default=None, repr=False)
    sets_examined: int = 0
    failures: int = 0
    elapsed: float = 0.0

    @property
    def decision(self) -> str:
        return "member" if self.member else "nonmember"


def _evaluate(G: Group, S: ConnectionSet, cross_check: bool) -> bool:
    A = cayley_adjacency(G, S)
    if cross_check:
        return spectrum_report(A, len(S)).integral
    return integrality_test(A, len(S))


def gk_membership(
    G: Group,
    k: int,
    full: bool = False,
    jobs: int | None = None,
    cross_check: bool = False,
    cap: int = DEFAULT_CAP,
    sets: Iterable[ConnectionSet] | None = None,
) -> GkVerdict:
    """Decide whether every ``Cay(G, S)`` with ``|S| <= k`` is integral.

    Stops at the first non-integral graph unless ``full``; the reported
    witness is always the failure with the smallest enumeration index, also
    when graphs are evaluated on several threads.  ``cross_check`` runs the
    three-way oracle comparison on every graph.
    """
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds cap {cap}")
    jobs = default_jobs() if jobs is None else max(1, jobs)
    t0 = time.perf_counter()
    stream = enumerate_connection_sets(G, k) if sets is None else iter(sets)
    examined = failures = 0
    witness = None
    pool = ThreadPoolExecutor(jobs) if jobs > 1 else None
    try:
        batch_size = 32 * jobs
        while True:
            batch = [S for _, S in zip(range(batch_size), stream)]
            if not batch:
                break
            if pool is None:
                results = []
                for S in batch:
                    ok = _evaluate(G, S, cross_check)
                    results.append(ok)
                    if not ok and not full:
                        break
            else:
                results = list(pool.map(lambda S: _evaluate(G, S, cross_check), batch))
            for S, ok in zip(batch, results):
                examined += 1
                if not ok:
                    failures += 1
                    if witness is None:
                        witness = S
                    if not full:
                        break
            if witness is not None and not full:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    verdict = GkVerdict(G.name, k, witness is None, sets_examined=examined, failures=failures)
    if witness is not None:
        spec = float_spectrum(cayley_adjacency(G, witness))
        verdict.witness = witness
        verdict.witness_spectrum = spec
        verdict.evidence = nonintegral_evidence(spec)
        verdict.annihilation_failed = True
    verdict.elapsed = time.perf_counter() - t0
    return verdict


def cayley_integral_check(G: Group, atom_cap: int = 20, **kw) -> GkVerdict:
    """Full Cayley integrality: every inverse-closed identity-free subset."""
    n_atoms = len(atoms(G))
    if n_atoms > atom_cap:
        raise AtomCapExceeded(f"{n_atoms} atoms exceed the cap {atom_cap}; use gk_membership with a bounded k")
    return gk_membership(G, max(G.order - 1, 1), **kw)


G2_ORDERS = frozenset({1, 2, 3, 4, 6})


def g2_order_test(G: Group) -> bool:
    """Every element order lies in {1, 2, 3, 4, 6}."""
    return set(order_profile(G)) <= G2_ORDERS


def g2_criterion(G: Group) -> bool:
    """Exact test for G_2: the order condition, and no two involutions whose
    product has order 4 or 6 (those span an 8- or 12-cycle)."""
    if not g2_order_test(G):
        return False
    invs = G.involutions
    orders = G.element_orders
    for i, s in enumerate(invs):
        for t in invs[i + 1 :]:
            if orders[G.op(s, t)] in (4, 6):
                return False
    return True


# -- hereditary properties ---------------------------------------------------------


@dataclass
class PropertyCheck:
    kind: str
    subject: str
    k: int
    passed: bool


@dataclass
class HereditaryReport:
    group: str
    k: int
    checks: list[PropertyCheck]
    quotient_drops: list[PropertyCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _describe(G: Group, H: SubgroupHandle) -> str:
    gens = ",".join(G.labels[g] for g in H.elements[1:4])
    return f"order {H.order} <{gens}{',...' if H.order > 4 else ''}>"


def verify_hereditary_properties(G: Group, k: int, cap: int = DEFAULT_CAP) -> HereditaryReport:
    """Check closure of G_k under subgroups and under the allowed quotients.

    * every ``<a, b>`` is in G_k;
    * ``G/N`` is in ``G_(k/|N|)`` for normal N with ``|N|`` dividing k;
    * ``G/N`` is in G_k for abelian normal N of odd order.

    Normal N for which ``G/N`` falls out of G_k are listed in
    ``quotient_drops`` for information only.
    """
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds cap {cap}")
    if not gk_membership(G, k).member:
        raise ValueError(f"{G.name} is not in G_{k}")
    checks: list[PropertyCheck] = []
    drops: list[PropertyCheck] = []
    seen: set[tuple[int, ...]] = set()
    for a in range(G.order):
        for b in range(a, G.order):
            H = generated_subgroup(G, [a, b])
            if H.elements in seen or H.order == G.order:
                continue
            seen.add(H.elements)
            ok = gk_membership(H.as_group(), k).member
            checks.append(PropertyCheck("subgroup", _describe(G, H), k, ok))
    for N in all_subgroups(G, cap):
        if N.order in (1, G.order) or not is_normal(G, N.elements):
            continue
        Q = quotient(G, N).group
        desc = _describe(G, N)
        in_k = None
        if k % N.order == 0:
            ok = gk_membership(Q, k // N.order).member
            checks.append(PropertyCheck("quotient", desc, k // N.order, ok))
        if N.order % 2 == 1 and N.is_abelian:
            in_k = gk_membership(Q, k).member
            checks.append(PropertyCheck("odd-abelian-quotient", desc, k, in_k))
        if in_k is None:
            in_k = gk_membership(Q, k).member
        if not in_k:
            drops.append(PropertyCheck("quotient-not-in-Gk", f"{desc}; G/N {fingerprint(Q)[:3]}", k, False))
    return HereditaryReport(G.name, k, checks, drops)


# -- minimal non-abelian subgroups of 2-groups ---------------------------------------------


ALLOWED_G3_MINIMAL = ("Q8", "H2", "H32")


@dataclass
class MinimalNonabelianReport:
    group: str
    applies: bool
    in_g3: bool
    minimal_subgroups: list[str]
    all_allowed: bool

    @property
    def agree(self) -> bool:
        return self.in_g3 == self.all_allowed


def minimal_nonabelian_report(G: Group) -> MinimalNonabelianReport:
    """Compare ``G in G_3`` with "every minimal non-abelian subgroup is Q8, H2 or H32"."""
    from .constructions import named_group

    if G.order & (G.order - 1):
        raise NotTwoGroup(f"order {G.order} is not a power of 2")
    names = {fingerprint(named_group(nm)): nm for nm in ("Q8", "D8", "H2", "H16", "H32")}
    kinds = []
    for H in minimal_nonabelian_subgroups(G):
        kinds.append(names.get(fingerprint(H.as_group()), "other"))
    allowed = all(kind in ALLOWED_G3_MINIMAL for kind in kinds)
    return MinimalNonabelianReport(
        group=G.name,
        applies=not G.is_abelian and G.exponent == 4,
        in_g3=gk_membership(G, 3).member,
        minimal_subgroups=kinds,
        all_allowed=allowed,
    )


# -- witness graphs -----------------------------------------------------------------


_W = 2 * math.pi / 3
OMEGA = complex(math.cos(_W), math.sin(_W))
SQ3, SQ5, SQ17 = math.sqrt(3), math.sqrt(5), math.sqrt(17)


@dataclass(frozen=True)
class Witness:
    key: str
    group: str
    connection_set: tuple[str, ...]
    subgroup: tuple[str, ...]
    pinned: tuple[str, ...]
    character: tuple[tuple[str, complex], ...]
    eigenvalues: tuple[float, ...]
    note: str


WITNESSES: tuple[Witness, ...] = (
    Witness("H27", "H27", ("a", "a^-1", "b", "b^-1"), ("a", "c"), ("1", "b", "b^-1"),
            (("a", 1), ("c", OMEGA)), (-2.0, 1 - SQ3, 1 + SQ3), "exponent-3 minimal non-abelian group"),
    Witness("H16", "H16", ("ba", "ba^-1c", "b"), ("a", "c"), ("1", "b"),
            (("a", 1j), ("c", -1)), (-SQ5, SQ5), "minimal non-abelian, excluded from G_3"),
    Witness("H32", "H32", ("ba", "b^-1a^-1c", "b", "b^-1"), ("a", "b^2", "c"), ("1", "b"),
            (("a", 1j), ("b^2", 1), ("c", -1)), (-2 * math.sqrt(2), 2 * math.sqrt(2)), "minimal non-abelian, excluded from G_4"),
    Witness("A4", "A4", ("a", "b", "c", "c^-1"), ("a", "b"), ("1", "c", "c^-1"),
            (("a", 1), ("b", -1)), (-1.0, (-1 - SQ17) / 2, (-1 + SQ17) / 2), "non-nilpotent with normal Klein four-group"),
    Witness("Q8sZ3", "Q8sZ3", ("i", "-i", "σ", "σ^-1"), ("-1", "σ"), ("1", "i", "j", "k"),
            (), (4.0, -3.0, (1 - SQ17) / 2, (1 + SQ17) / 2), "non-nilpotent with normal Q8"),
    Witness("D6xZ3", "D6xZ3", ("xu", "xu^-1", "xv"), ("u", "v"), ("1", "x"),
            (("u", 1), ("v", OMEGA)), (-SQ3, SQ3), "E9 with an involution inverting one factor"),
    Witness("E9sZ2", "E9sZ2", ("xu", "xu^-1", "xv"), ("u", "v"), ("1", "x"),
            (("u", 1), ("v", OMEGA)), (-SQ3, SQ3), "E9 with an inverting involution"),
    Witness("D8", "D8", ("ab", "b"), ("a",), ("1", "b"),
            (("a", 1j),), (-math.sqrt(2), math.sqrt(2)), "8-cycle from two reflections"),
)


@dataclass
class WitnessResult:
    key: str
    group: Group = field(repr=False)
    connection_set: ConnectionSet = field(repr=False)
    symbol_cells: list
    chi_values: np.ndarray = field(repr=False)
    chi_eigenvalues: np.ndarray
    expected: tuple[float, ...]
    float_spectrum: np.ndarray = field(repr=False)
    integral: bool
    closed_form_error: float
    spectrum_error: float
    tol: float

    @property
    def confirmed(self) -> bool:
        return (not self.integral) and self.closed_form_error <= self.tol and self.spectrum_error <= self.tol


def check_witness(w: Witness, tol: float = 1e-9) -> WitnessResult:
    from .constructions import named_group

    G = named_group(w.group)
    S = ConnectionSet.from_labels(G, w.connection_set)
    H = generated_subgroup(G, G.elements(w.subgroup))
    M = symbol_matrix(G, S, left_transversal(G, H, G.elements(w.pinned)))
    chars = abelian_characters(G, H)
    chi = character_with_values(chars, {G.element(lab): v for lab, v in w.character})
    C = chi_matrix(chi, M)
    ev = chi_eigenvalues(C)
    expected = np.sort(np.array(w.eigenvalues))
    report = spectrum_report(cayley_adjacency(G, S), len(S))
    spec = report.float_spectrum
    spectrum_err = max(float(np.min(np.abs(spec - x))) for x in expected)
    return WitnessResult(
        key=w.key,
        group=G,
        connection_set=S,
        symbol_cells=M.cell_labels(),
        chi_values=C.values,
        chi_eigenvalues=ev,
        expected=tuple(expected.tolist()),
        float_spectrum=spec,
        integral=report.integral,
        closed_form_error=float(np.max(np.abs(np.sort(ev) - expected))),
        spectrum_error=spectrum_err,
        tol=tol,
    )


def witness_suite(tol: float = 1e-9) -> list[WitnessResult]:
    return [check_witness(w, tol) for w in WITNESSES]


# -- KMMM property sweep ----------------------------------------------------------------


@dataclass
class KmmmTrial:
    group: str
    subgroup_order: int
    index: int
    set_size: int
    max_error: float
    integral: bool


def kmmm_property_suite(
    groups: Sequence[Group],
    trials: int = 100,
    seed: int = 0,
    max_index: int = 6,
    cross_check: bool = True,
) -> list[KmmmTrial]:
    """Random (G, S, H) triples with H abelian of index <= max_index; compare the
    character-block spectrum with the full adjacency spectrum."""
    rng = random.Random(seed)
    pools = []
    for G in groups:
        subs = [H for H in all_subgroups(G) if H.is_abelian and G.order // H.order <= max_index]
        if subs:
            pools.append((G, subs, atoms(G)))
    out = []
    for _ in range(trials):
        G, subs, ats = rng.choice(pools)
        H = rng.choice(subs)
        pick = [a for a in ats if rng.random() < 0.3]
        S = ConnectionSet(G, tuple(x for a in pick for x in a.elements))
        spare = [g for g in range(1, G.order) if g not in H]
        pinned = [0] + ([rng.choice(spare)] if spare else [])
        ks = kmmm_spectrum(G, S, H, pinned)
        A = cayley_adjacency(G, S)
        fs = spectrum_report(A, len(S)).float_spectrum if cross_check else float_spectrum(A)
        out.append(
            KmmmTrial(G.name, H.order, G.order // H.order, len(S), float(np.max(np.abs(ks - fs))) if len(fs) else 0.0,
                      integrality_test(A, len(S)))
        )
    return out


# -- dicyclic closed forms ------------------------------------------------------------------


@dataclass
class ClosedFormCheck:
    case: str
    u: int
    v: int
    characters: int
    max_error: float


def dicyclic_closed_forms(G: Group) -> list[ClosedFormCheck]:
    """Check both 2×2 eigenvalue formulas for ``Dic(E_3^n x Z_6)``.

    H = ``<P, x^2>`` is the index-2 abelian subgroup and the transversal is
    ``(1, x)``.  For every admissible (u, v) in H and every character χ:

    * ``S = {xu, x^-1u, xv, x^-1v}``: eigenvalues ``±|1+χ(x^2)|·|χ(u)+χ(v)|``;
    * ``S = {xu, x^-1u, v, v^-1}``: ``χ(v)+χ(v^-1) ± |1+χ(x^2)|``.
    """
    x = G.gens["x"]
    x_inv = int(G.inv[x])
    t = G.op(x, x)
    H = SubgroupHandle(G, tuple(range(G.order // 2)))
    T = left_transversal(G, H, [0, x])
    chars = abelian_characters(G, H)
    results = []
    hs = list(H.elements)
    for u in hs:
        for v in hs:
            if v <= u or v == G.op(t, u):
                continue
            S = ConnectionSet(G, (G.op(x, u), G.op(x_inv, u), G.op(x, v), G.op(x_inv, v)))
            M = symbol_matrix(G, S, T)
            err = 0.0
            for chi in chars:
                r = abs(1 + chi(t)) * abs(chi(u) + chi(v))
                err = max(err, float(np.max(np.abs(chi_eigenvalues(chi_matrix(chi, M)) - [-r, r]))))
            results.append(ClosedFormCheck("disjoint", u, v, len(chars), err))
    for u in hs:
        for v in hs:
            if G.element_orders[v] <= 2:
                continue
            S = ConnectionSet(G, (G.op(x, u), G.op(x_inv, u), v, int(G.inv[v])))
            M = symbol_matrix(G, S, T)
            err = 0.0
            for chi in chars:
                c = (chi(v) + chi(int(G.inv[v]))).real
                d = abs(1 + chi(t))
                err = max(err, float(np.max(np.abs(chi_eigenvalues(chi_matrix(chi, M)) - [c - d, c + d]))))
            results.append(ClosedFormCheck("meets-H", u, v, len(chars), err))
    return results


@dataclass
class QuotientDrop:
    group: str
    k: int
    normal_subgroup: tuple[str, ...]
    quotient_fingerprint: tuple
    group_in_gk: bool
    quotient_in_g2: bool
    quotient_is_d8: bool

    @property
    def reproduced(self) -> bool:
        return self.group_in_gk and not self.quotient_in_g2 and self.quotient_is_d8


def z4_z4_quotient_example(k: int = 3) -> QuotientDrop:
    """Z4 ⋊ Z4 lies in G_3 yet its quotient by the central ``<b^2>`` is D8,
    which is not even in G_2: G_k is not closed under quotients."""
    from .constructions import make_dihedral, named_group

    G = named_group("Z4sZ4")
    N = generated_subgroup(G, [G.element("b^2")])
    Q = quotient(G, N).group
    return QuotientDrop(
        group=G.name,
        k=k,
        normal_subgroup=tuple(G.labels[g] for g in N.elements),
        quotient_fingerprint=tuple(fingerprint(Q)),
        group_in_gk=gk_membership(G, k).member,
        quotient_in_g2=gk_membership(Q, 2).member,
        quotient_is_d8=fingerprint(Q) == fingerprint(make_dihedral(8)),
    )
