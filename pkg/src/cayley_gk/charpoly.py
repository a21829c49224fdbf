"""Exact characteristic polynomials of integer matrices.

Berkowitz's algorithm needs only ring operations, so it runs unchanged in
``Z/pZ``.  Small non-negative matrices are handled modulo several primes
below 2**21 at once, in float64 where every intermediate is an exact
integer below 2**53, and the coefficients are recovered by the Chinese
remainder theorem under a Hadamard bound.  Anything else falls back to
Berkowitz over Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

_PRIME_CEIL = 1 << 21
_EXACT_FLOAT = 1 << 53


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients from the highest degree down."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            d = self.degree - i
            if c == 0:
                continue
            mon = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
            if mon and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            terms.append(f"{coef}{mon}")
        s = "".join(terms) or "0"
        return s[1:] if s.startswith("+") else s


@lru_cache(maxsize=1)
def _primes_below_ceiling(count: int = 64) -> tuple[int, ...]:
    out = []
    q = _PRIME_CEIL - 1
    while len(out) < count:
        if all(q % d for d in range(3, math.isqrt(q) + 1, 2)):
            out.append(q)
        q -= 2
    return tuple(out)


def coefficient_bound(A: np.ndarray) -> int:
    """Bound on |c_k| for det(xI - A): C(n,k) times a Hadamard bound on k×k minors."""
    n = A.shape[0]
    rho2 = int(max((int(v) for v in (np.asarray(A, dtype=object) ** 2).sum(axis=1)), default=0))
    best = 1
    for k in range(n + 1):
        best = max(best, math.comb(n, k) * (math.isqrt(rho2**k) + 1))
    return best


def _berkowitz_exact(A) -> list[int]:
    n = len(A)
    A = [[int(x) for x in row] for row in A]
    poly = [1]
    for r in range(n):
        a = A[r][r]
        R = A[r][:r]
        v = [A[i][r] for i in range(r)]
        t = [1, -a]
        for j in range(r):
            t.append(-sum(x * y for x, y in zip(R, v)))
            if j < r - 1:
                v = [sum(A[i][k] * v[k] for k in range(r)) for i in range(r)]
        poly = [sum(t[i - j] * poly[j] for j in range(len(poly)) if 0 <= i - j < len(t)) for i in range(r + 2)]
    return poly


def _berkowitz_modular(A: np.ndarray, primes: np.ndarray) -> np.ndarray:
    # rows of the result: coefficient vectors modulo each prime
    n = A.shape[0]
    P = len(primes)
    ps = primes.astype(np.float64)
    Af = A.astype(np.float64)
    poly = np.ones((P, 1))
    for r in range(n):
        t = np.empty((P, r + 2))
        t[:, 0] = 1.0
        t[:, 1] = np.mod(-Af[r, r], ps)
        R = Af[r, :r]
        Ar = Af[:r, :r]
        v = np.repeat(Af[:r, r][:, None], P, axis=1)  # (r, P)
        for j in range(r):
            t[:, j + 2] = np.mod(-(R @ v), ps)
            if j < r - 1:
                v = np.mod(Ar @ v, ps)
        new = np.empty((P, r + 2))
        for i in range(P):
            new[i] = np.mod(np.convolve(t[i], poly[i])[: r + 2], ps[i])
        poly = new
    return poly.astype(np.int64)


def _crt(residues: np.ndarray, primes: np.ndarray) -> list[int]:
    M = 1
    for p in primes.tolist():
        M *= p
    parts = []
    for p in primes.tolist():
        Mi = M // p
        parts.append((Mi, Mi * pow(Mi, -1, p)))
    out = []
    for col in residues.T.tolist():
        x = sum(int(c) * w for c, (_, w) in zip(col, parts)) % M
        out.append(x - M if x > M // 2 else x)
    return out


def char_poly(A) -> IntPolynomial:
    """``det(xI - A)`` with exact integer coefficients."""
    A = np.asarray(A)
    n = A.shape[0]
    if A.ndim != 2 or A.shape != (n, n):
        raise ValueError("char_poly needs a square matrix")
    if n == 0:
        return IntPolynomial((1,))
    amax = int(np.abs(A).max()) if A.size else 0
    fast = (
        A.dtype.kind in "iub"
        and int(A.min()) >= 0
        and amax * n * _PRIME_CEIL < _EXACT_FLOAT
        and (n + 1) * _PRIME_CEIL**2 < _EXACT_FLOAT
    )
    if not fast:
        return IntPolynomial(tuple(_berkowitz_exact(A.tolist())))
    need = 2 * coefficient_bound(A) + 1
    primes, M = [], 1
    for p in _primes_below_ceiling():
        primes.append(p)
        M *= p
        if M > need:
            break
    else:
        return IntPolynomial(tuple(_berkowitz_exact(A.tolist())))
    ps = np.array(primes, dtype=np.int64)
    return IntPolynomial(tuple(_crt(_berkowitz_modular(A, ps), ps)))
