"""Reference groups with their expected G_k verdicts for k = 2..6.

Verdict strings read left to right for k = 2, 3, 4, 5, 6: ``M`` member,
``N`` nonmember.  Fingerprints are frozen so that a silent change in a
constructor shows up as a catalog mismatch rather than a wrong verdict.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable

from .group import Fingerprint, Group, fingerprint
from .spec_grammar import build

K_RANGE = (2, 3, 4, 5, 6)


@dataclass(frozen=True)
class CatalogEntry:
    spec: str
    verdicts: str
    note: str
    fingerprint: Fingerprint

    def expected(self, k: int) -> bool:
        if k < 2:
            return True
        return self.verdicts[min(k, 6) - 2] == "M"

    def build(self) -> Group:
        return build(self.spec)


def _fp(order, abelian, exponent, center, profile, ab) -> Fingerprint:
    return Fingerprint(order, abelian, exponent, center, tuple(profile), tuple(ab))


CATALOG: tuple[CatalogEntry, ...] = (
    # abelian Cayley integral groups
    CatalogEntry("C(3)", "MMMMM", "cyclic, Cayley integral",
                 _fp(3, True, 3, 3, ((1, 1), (3, 2)), (3,))),
    CatalogEntry("C(4)", "MMMMM", "cyclic, Cayley integral",
                 _fp(4, True, 4, 4, ((1, 1), (2, 1), (4, 2)), (4,))),
    CatalogEntry("E(4)", "MMMMM", "elementary abelian, Cayley integral",
                 _fp(4, True, 2, 4, ((1, 1), (2, 3)), (2, 2))),
    CatalogEntry("C(6)", "MMMMM", "cyclic, Cayley integral",
                 _fp(6, True, 6, 6, ((1, 1), (2, 1), (3, 2), (6, 2)), (6,))),
    CatalogEntry("E(8)", "MMMMM", "elementary abelian, Cayley integral",
                 _fp(8, True, 2, 8, ((1, 1), (2, 7)), (2, 2, 2))),
    CatalogEntry("E(9)", "MMMMM", "elementary abelian, Cayley integral",
                 _fp(9, True, 3, 9, ((1, 1), (3, 8)), (3, 3))),
    CatalogEntry("E(4) x C(4)", "MMMMM", "abelian of exponent 4, Cayley integral",
                 _fp(16, True, 4, 16, ((1, 1), (2, 7), (4, 8)), (2, 2, 4))),
    CatalogEntry("C(5)", "NNNNN", "order 5 element: 5-cycle has irrational eigenvalues",
                 _fp(5, True, 5, 5, ((1, 1), (5, 4)), (5,))),
    CatalogEntry("C(12)", "NNNNN", "order 12 element: 12-cycle",
                 _fp(12, True, 12, 12, ((1, 1), (2, 1), (3, 2), (4, 2), (6, 2), (12, 4)), (12,))),
    # non-abelian Cayley integral groups
    CatalogEntry("D(6)", "MMMMM", "S3, Cayley integral",
                 _fp(6, False, 6, 1, ((1, 1), (2, 3), (3, 2)), (2,))),
    CatalogEntry("Dic12", "MMMMM", "dicyclic of order 12, Cayley integral",
                 _fp(12, False, 12, 2, ((1, 1), (2, 1), (3, 2), (4, 6), (6, 2)), (4,))),
    CatalogEntry("Q8", "MMMMM", "quaternion, Cayley integral",
                 _fp(8, False, 4, 2, ((1, 1), (2, 1), (4, 6)), (2, 2))),
    CatalogEntry("Q8 x C(2)", "MMMMM", "Q8 x E_2, Cayley integral",
                 _fp(16, False, 4, 4, ((1, 1), (2, 3), (4, 12)), (2, 2, 2))),
    CatalogEntry("Q8 x E(4)", "MMMMM", "Q8 x E_4, Cayley integral",
                 _fp(32, False, 4, 8, ((1, 1), (2, 7), (4, 24)), (2, 2, 2, 2))),
    # in G_4 = G_5 but not Cayley integral
    CatalogEntry("Dic(C(3) x C(6))", "MMMMN", "generalized dicyclic, in G_5, not in G_6",
                 _fp(36, False, 12, 2, ((1, 1), (2, 1), (3, 8), (4, 18), (6, 8)), (4,))),
    # dropping out at k = 2
    CatalogEntry("D(8)", "NNNNN", "two involutions with product of order 4: 8-cycle",
                 _fp(8, False, 4, 2, ((1, 1), (2, 5), (4, 2)), (2, 2))),
    CatalogEntry("D(12)", "NNNNN", "two involutions with product of order 6: 12-cycle",
                 _fp(12, False, 6, 2, ((1, 1), (2, 7), (3, 2), (6, 2)), (2, 2))),
    # dropping out at k = 3
    CatalogEntry("H16", "MNNNN", "minimal non-abelian, witness with eigenvalues ±√5",
                 _fp(16, False, 4, 4, ((1, 1), (2, 7), (4, 8)), (2, 4))),
    CatalogEntry("D6xZ3", "MNNNN", "witness with eigenvalues ±√3",
                 _fp(18, False, 6, 3, ((1, 1), (2, 3), (3, 8), (6, 6)), (6,))),
    CatalogEntry("E9sZ2", "MNNNN", "witness with eigenvalues ±√3",
                 _fp(18, False, 6, 1, ((1, 1), (2, 9), (3, 8)), (2,))),
    # in G_3, dropping out at k = 4
    CatalogEntry("H2", "MMNNN", "Z4 ⋊ Z4; in G_3, not in G_4",
                 _fp(16, False, 4, 4, ((1, 1), (2, 3), (4, 12)), (2, 4))),
    CatalogEntry("H32", "MMNNN", "in G_3, witness of size 4 with eigenvalues ±2√2",
                 _fp(32, False, 4, 8, ((1, 1), (2, 7), (4, 24)), (4, 4))),
    CatalogEntry("H27", "MMNNN", "exponent 3; witness of size 4 with eigenvalues -2, 1±√3",
                 _fp(27, False, 3, 3, ((1, 1), (3, 26)), (3, 3))),
    CatalogEntry("A4", "MMNNN", "witness of size 4 with eigenvalues -1, (-1±√17)/2",
                 _fp(12, False, 6, 1, ((1, 1), (2, 3), (3, 8)), (3,))),
    CatalogEntry("Q8sZ3", "MMNNN", "witness of size 4 with eigenvalues 4, -3, (1±√17)/2",
                 _fp(24, False, 12, 2, ((1, 1), (2, 1), (3, 8), (4, 6), (6, 8)), (3,))),
    CatalogEntry("Dic12 x C(2)", "MMNNN", "central involution outside Dic12; verdicts by sweep",
                 _fp(24, False, 12, 4, ((1, 1), (2, 3), (3, 2), (4, 12), (6, 6)), (2, 4))),
)


def catalog_entry(spec: str) -> CatalogEntry:
    for e in CATALOG:
        if e.spec == spec:
            return e
    raise KeyError(spec)


@dataclass
class CatalogRow:
    spec: str
    k: int
    expected: bool
    computed: bool
    sets_examined: int
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.expected == self.computed


@dataclass
class CatalogResult:
    rows: list[CatalogRow]
    fingerprint_mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.fingerprint_mismatches and all(r.ok for r in self.rows)

    def members(self, k: int) -> set[str]:
        return {r.spec for r in self.rows if r.k == k and r.computed}


def classify_catalog(k_range: Iterable[int] = K_RANGE, entries: Iterable[CatalogEntry] = CATALOG,
                     cross_check: bool = False) -> CatalogResult:
    from .classifier import gk_membership

    rows, bad = [], []
    for e in entries:
        G = e.build()
        if fingerprint(G) != e.fingerprint:
            bad.append(e.spec)
        for k in k_range:
            t0 = time.perf_counter()
            v = gk_membership(G, k, cross_check=cross_check)
            rows.append(CatalogRow(e.spec, k, e.expected(k), v.member, v.sets_examined, time.perf_counter() - t0))
    return CatalogResult(rows, bad)
