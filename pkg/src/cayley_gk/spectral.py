"""Cayley graph adjacency matrices and exact integrality decisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .charpoly import IntPolynomial, char_poly
from .errors import AsymmetricInput, InvalidConnectionSet, InvariantViolation
from .group import Group

#: Diagnostic tolerance for "float eigenvalue is an integer".
FLOAT_TOL = 1e-6
_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class ConnectionSet:
    """Identity-free, inverse-closed set of group elements."""

    parent: Group = field(repr=False, compare=False)
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted({int(g) for g in self.elements}))
        object.__setattr__(self, "elements", els)
        G = self.parent
        if any(g < 0 or g >= G.order for g in els):
            raise InvalidConnectionSet("element index out of range")
        if 0 in els:
            raise InvalidConnectionSet("connection set contains the identity")
        missing = [G.labels[G.inv[g]] for g in els if int(G.inv[g]) not in els]
        if missing:
            raise InvalidConnectionSet(f"not inverse-closed; missing {', '.join(missing)}")

    @classmethod
    def from_labels(cls, G: Group, labels: Iterable[str]) -> "ConnectionSet":
        return cls(G, tuple(G.elements(labels)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def labels(self) -> list[str]:
        return [self.parent.labels[g] for g in self.elements]


class Atom(NamedTuple):
    kind: str  # "involution" or "pair"
    elements: tuple[int, ...]


def atoms(G: Group) -> list[Atom]:
    """Partition of the non-identity elements into ``{t}`` and ``{s, s^-1}``, by smallest index."""
    out = []
    for g in range(1, G.order):
        h = int(G.inv[g])
        if h == g:
            out.append(Atom("involution", (g,)))
        elif g < h:
            out.append(Atom("pair", (g, h)))
    return out


def cayley_adjacency(G: Group, S: ConnectionSet | Iterable[int]) -> np.ndarray:
    """``A[g, h] = 1`` iff ``h g^-1`` lies in S, i.e. h = s·g for some s in S."""
    n = G.order
    A = np.zeros((n, n), dtype=np.int64)
    rows = np.arange(n)
    for s in S:
        A[rows, G.mul[s]] = 1
    return A


def _check_symmetric(A: np.ndarray) -> None:
    if A.ndim != 2 or A.shape[0] != A.shape[1] or not np.array_equal(A, A.T):
        raise AsymmetricInput("adjacency matrix must be square and symmetric")


def integrality_test(A, degree: int) -> bool:
    """True iff the product of ``A - λI`` over integers ``-degree..degree`` vanishes.

    A is real symmetric with spectral radius at most ``degree``, hence
    diagonalizable with eigenvalues in ``[-degree, degree]``; the product is
    zero exactly when every eigenvalue is one of those integers.  The factors
    are paired as ``A·∏(A² - λ²I)`` so only ``degree + 1`` products are taken.
    """
    A = np.asarray(A)
    _check_symmetric(A)
    n = A.shape[0]
    if n and int(np.abs(A).sum(axis=1).max()) > degree:
        raise ValueError(f"row sums exceed the stated degree {degree}")
    d = int(degree)
    bound = max(d, 1) * (2 * d * d + 1) ** d
    dtype = np.int64 if bound < _INT64_SAFE else object
    A = A.astype(dtype)
    P = A.copy()
    if not P.any():
        return True
    A2 = A @ A
    eye = np.eye(n, dtype=dtype)
    for lam in range(1, d + 1):
        P = P @ (A2 - (lam * lam) * eye)
        if not P.any():
            return True
    return False


def integer_spectrum(p: IntPolynomial, bound: int) -> list[tuple[int, int]] | None:
    """Deflate p by integer roots ``bound, bound-1, ..., -bound``.

    Returns ``[(eigenvalue, multiplicity), ...]`` ascending when p splits
    completely into such linear factors, otherwise None.
    """
    coeffs = list(p.coeffs)
    found: dict[int, int] = {}
    for lam in range(bound, -bound - 1, -1):
        while len(coeffs) > 1:
            # synthetic division by (x - lam)
            q, acc = [], 0
            for c in coeffs:
                acc = acc * lam + c
                q.append(acc)
            if q[-1] != 0:
                break
            coeffs = q[:-1]
            found[lam] = found.get(lam, 0) + 1
    if len(coeffs) != 1:
        return None
    return sorted(found.items())


def float_spectrum(A) -> np.ndarray:
    """Ascending eigenvalues of a symmetric matrix (LAPACK ``syevd``)."""
    A = np.asarray(A)
    _check_symmetric(A)
    return np.linalg.eigvalsh(A.astype(np.float64))


def nonintegral_evidence(spectrum: np.ndarray, tol: float = FLOAT_TOL) -> float | None:
    """The eigenvalue farthest from its nearest integer, if that distance exceeds tol."""
    if len(spectrum) == 0:
        return None
    dist = np.abs(spectrum - np.round(spectrum))
    i = int(np.argmax(dist))
    return float(spectrum[i]) if dist[i] > tol else None


@dataclass
class SpectrumReport:
    integral: bool
    integer_spectrum: list[tuple[int, int]] | None
    float_spectrum: np.ndarray
    evidence: float | None
    char_poly: IntPolynomial | None = None


def spectrum_report(A, degree: int, tol: float = FLOAT_TOL) -> SpectrumReport:
    """Run all three integrality routes and insist that they agree.

    The exact annihilating product is authoritative; deflation of the exact
    characteristic polynomial and the rounded float spectrum are independent
    cross-checks.  Disagreement raises :class:`InvariantViolation`.
    """
    A = np.asarray(A)
    exact = integrality_test(A, degree)
    poly = char_poly(A)
    ints = integer_spectrum(poly, degree)
    spec = float_spectrum(A)
    ev = nonintegral_evidence(spec, tol)
    if not (exact == (ints is not None) == (ev is None)):
        raise InvariantViolation(
            f"integrality routes disagree: product={exact}, deflation={ints is not None}, float={ev is None}"
        )
    if ints is not None:
        n = A.shape[0]
        total = sum(m for _, m in ints)
        s1 = sum(l * m for l, m in ints)
        s2 = sum(l * l * m for l, m in ints)
        if total != n or s1 != int(np.trace(A)) or s2 != int((A * A).sum()):
            raise InvariantViolation("integer spectrum fails the trace identities")
    return SpectrumReport(exact, ints, spec, ev, poly)
