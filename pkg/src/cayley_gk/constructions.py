"""Group constructors: abelian, dihedral, generalized dicyclic, semidirect
products, permutation closures, and the named groups used as witnesses."""

from __future__ import annotations

import math
import re
import string
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ActionInconsistent,
    ClosureExceedsCap,
    GroupConstructionError,
    NoUniqueInvolution,
    NotAbelian,
    NotAutomorphism,
    TooSmall,
    UnknownName,
)
from .group import Group, format_word, shortlex_labels

PERMUTATION_CAP = 512
_LETTERS = [c for c in string.ascii_lowercase if c not in "ex"]


def make_abelian(orders: Sequence[int], names: Sequence[str] | None = None, name: str | None = None) -> Group:
    """Direct product ``Z_d1 x ... x Z_dr``.

    Element indices are mixed-radix exponent tuples (first factor least
    significant) and labels spell the tuple as a word, e.g. ``"a^2b"``.
    """
    orders = [int(d) for d in orders]
    if any(d < 1 for d in orders):
        raise GroupConstructionError("cyclic factor orders must be positive")
    if names is None:
        names = _LETTERS[: len(orders)]
    n = math.prod(orders)
    coords = np.zeros((n, len(orders)), dtype=np.intp)
    rem = np.arange(n)
    radix = []
    r = 1
    for i, d in enumerate(orders):
        coords[:, i] = rem % d
        rem //= d
        radix.append(r)
        r *= d
    radix = np.array(radix, dtype=np.intp)
    dvec = np.array(orders, dtype=np.intp)
    summed = (coords[:, None, :] + coords[None, :, :]) % dvec
    mul = summed @ radix if orders else np.zeros((1, 1), dtype=np.intp)
    labels = [format_word([(names[i], int(e)) for i, e in enumerate(c) if e]) for c in coords]
    gens = {names[i]: int(radix[i]) for i, d in enumerate(orders) if d > 1}
    if name is None:
        name = " x ".join(f"Z{d}" for d in orders) or "1"
    return Group(mul, labels=labels, name=name, gens=gens, validate=False)


def make_dihedral(order: int) -> Group:
    """Dihedral group of the given ORDER (``make_dihedral(6)`` is S3).

    ``<a, b | a^(order/2) = b^2 = 1, a^b = a^-1>``; element ``a^i b^e`` has index ``i + m*e``.
    """
    if order < 4 or order % 2:
        raise GroupConstructionError(f"dihedral order must be even and >= 4, got {order}")
    m = order // 2
    idx = np.arange(order)
    i, e = idx % m, idx // m
    # a^i b^e * a^j b^f = a^(i + (-1)^e j) b^(e+f)
    sign = np.where(e == 1, -1, 1)
    ni = (i[:, None] + sign[:, None] * i[None, :]) % m
    ne = (e[:, None] + e[None, :]) % 2
    mul = ni + m * ne
    labels = [format_word(([("a", int(a))] if a else []) + ([("b", 1)] if b else [])) for a, b in zip(i, e)]
    return Group(mul, labels=labels, name=f"D{order}", gens={"a": 1 % order, "b": m})


def generalized_dicyclic(A: Group, xname: str = "x") -> Group:
    """``Dic(A) = <A, x>`` with ``x^2 = t`` (the unique involution of A) and ``a^x = a^-1``."""
    if not A.is_abelian:
        raise NotAbelian(f"{A.name} is not abelian")
    if A.order <= 2:
        raise TooSmall(f"Dic(A) needs |A| > 2, got {A.order}")
    invs = A.involutions
    if len(invs) != 1:
        raise NoUniqueInvolution(f"{A.name} has {len(invs)} involutions")
    t = invs[0]
    n = A.order
    am, ai = A.mul, A.inv
    a = np.arange(n)
    mul = np.empty((2 * n, 2 * n), dtype=np.intp)
    mul[:n, :n] = am
    mul[n:, :n] = n + am  # (x a) b = x (ab)
    mul[:n, n:] = n + am[ai[:, None], a[None, :]]  # a (x b) = x a^-1 b
    mul[n:, n:] = am[t, am[ai[:, None], a[None, :]]]  # (x a)(x b) = t a^-1 b
    xname = _fresh(xname, set(A.names))
    labels = list(A.labels) + [xname if lab == "1" else xname + lab for lab in A.labels]
    gens = dict(A.gens)
    gens[xname] = n
    return Group(mul, labels=labels, name=f"Dic({A.name})", gens=gens, aliases=dict(A.aliases))


def _fresh(nm: str, used: set[str]) -> str:
    if nm not in used:
        return nm
    for c in _LETTERS:
        if c not in used:
            return c
    k = 2
    while f"{nm}{k}" in used:
        k += 1
    return f"{nm}{k}"


def _retokenize(label: str, names: Sequence[str], mapping: Mapping[str, str]) -> str:
    names = sorted(names, key=len, reverse=True)
    out, p = [], 0
    while p < len(label):
        for nm in names:
            if label.startswith(nm, p):
                out.append(mapping.get(nm, nm))
                p += len(nm)
                break
        else:
            out.append(label[p])
            p += 1
    return "".join(out)


def rename_generators(G: Group, mapping: Mapping[str, str]) -> Group:
    """Copy of G with generator names (and the labels spelling them) replaced."""
    if not mapping:
        return G
    labels = [_retokenize(lab, list(G.names), mapping) for lab in G.labels]
    gens = {mapping.get(k, k): v for k, v in G.gens.items()}
    aliases = {mapping.get(k, k): v for k, v in G.aliases.items()}
    return Group(G.mul, labels=labels, name=G.name, gens=gens, aliases=aliases, validate=False)


def is_automorphism(A: Group, perm) -> bool:
    perm = np.asarray(perm)
    if perm.shape != (A.order,) or sorted(perm.tolist()) != list(range(A.order)):
        return False
    return bool(np.array_equal(perm[A.mul], A.mul[perm[:, None], perm[None, :]]))


def automorphism(A: Group, images: Mapping[str, int | str]) -> np.ndarray:
    """Extend generator images to an automorphism of A, as a permutation array.

    Generators of A missing from ``images`` are fixed.
    """
    img = {}
    for nm, g in A.gens.items():
        v = images.get(nm, nm)
        img[g] = A.element(v) if isinstance(v, str) else int(v)
    perm = np.full(A.order, -1, dtype=np.intp)
    perm[0] = 0
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g, gi in img.items():
                k = A.op(h, g)
                val = A.op(int(perm[h]), gi)
                if perm[k] < 0:
                    perm[k] = val
                    nxt.append(k)
                elif perm[k] != val:
                    raise NotAutomorphism("generator images do not define a homomorphism")
        frontier = nxt
    if (perm < 0).any() or not is_automorphism(A, perm):
        raise NotAutomorphism("generator images do not define an automorphism")
    return perm


def inverse_permutation(perm) -> np.ndarray:
    perm = np.asarray(perm)
    out = np.empty_like(perm)
    out[perm] = np.arange(len(perm))
    return out


def semidirect_product(
    A: Group,
    B: Group,
    action: Mapping[str, Sequence[int]] | None = None,
    name: str | None = None,
) -> Group:
    """``A ⋊ B`` with ``(a, b)(a', b') = (a·φ_b(a'), bb')``.

    ``action`` maps generator names of B to ``φ_b`` given as a permutation of
    A's indices, where ``φ_b(a) = b a b^-1``.  Missing generators act
    trivially; an empty action yields the direct product.  Element ``(a, b)``
    gets index ``a + |A|·b`` and the label ``label(a) label(b)``.
    """
    action = dict(action or {})
    unknown = set(action) - set(B.names)
    if unknown:
        raise ActionInconsistent(f"action names unknown generators {sorted(unknown)}")
    nA, nB = A.order, B.order
    ident = np.arange(nA)
    gen_maps = {}
    for nm, p in action.items():
        g = B.names[nm]
        p = np.asarray(p, dtype=np.intp)
        if not is_automorphism(A, p):
            raise NotAutomorphism(f"action of {nm} is not an automorphism of {A.name}")
        if g in gen_maps and not np.array_equal(gen_maps[g], p):
            raise ActionInconsistent(f"conflicting actions given for element {B.labels[g]}")
        gen_maps[g] = p
    for g in B.gens.values():
        gen_maps.setdefault(g, ident)
    phi = np.full((nB, nA), -1, dtype=np.intp)
    phi[0] = ident
    frontier = [0]
    while frontier:
        nxt = []
        for h in frontier:
            for g, p in gen_maps.items():
                k = B.op(h, g)
                comp = phi[h][p]
                if phi[k, 0] < 0:
                    phi[k] = comp
                    nxt.append(k)
                elif not np.array_equal(phi[k], comp):
                    raise ActionInconsistent("action violates the relations of B")
        frontier = nxt
    if (phi < 0).any():
        raise ActionInconsistent("B is not generated by its named generators")
    # phi must be a homomorphism B -> Aut(A): phi[b1 b2] = phi[b1] ∘ phi[b2]
    composed = phi[np.arange(nB)[:, None, None], phi[None, :, :]]
    if not np.array_equal(phi[B.mul], composed):
        raise ActionInconsistent("action is not a homomorphism from B")

    idx = np.arange(nA * nB)
    a, b = idx % nA, idx // nA
    new_a = A.mul[a[:, None], phi[b[:, None], a[None, :]]]
    new_b = B.mul[b[:, None], b[None, :]]
    mul = new_a + nA * new_b

    used = set(A.names)
    mapping = {}
    for nm in B.names:
        if nm in used:
            mapping[nm] = _fresh(nm, used | set(B.names) | set(mapping.values()))
    B2 = rename_generators(B, mapping)
    labels = []
    for ai, bi in zip(a, b):
        la, lb = A.labels[ai], B2.labels[bi]
        if lb == "1":
            labels.append(la)
        elif la == "1":
            labels.append(lb)
        else:
            labels.append(la + lb)
    gens = {nm: g for nm, g in A.gens.items()}
    gens.update({nm: nA * g for nm, g in B2.gens.items()})
    aliases = dict(A.aliases)
    aliases.update({nm: nA * g for nm, g in B2.aliases.items()})
    if name is None:
        sym = " x " if not action else " ⋊ "
        name = f"{A.name}{sym}{B.name}"
    return Group(mul, labels=labels, name=name, gens=gens, aliases=aliases)


def direct_product(*factors: Group, name: str | None = None) -> Group:
    if not factors:
        return make_abelian([])
    G = factors[0]
    for H in factors[1:]:
        G = semidirect_product(G, H)
    if name is not None:
        G.name = name
    return G


def _parse_cycles(text: str, degree: int | None) -> list[int]:
    cycles = re.findall(r"\(([^()]*)\)", text)
    pts = [[int(x) for x in c.split(",") if x.strip()] for c in cycles]
    top = max((max(c) for c in pts if c), default=0)
    d = max(degree or 0, top)
    img = list(range(d))
    for c in pts:
        for x, y in zip(c, c[1:] + c[:1]):
            img[x - 1] = y - 1
    return img


def from_permutations(
    generators: Sequence,
    names: Sequence[str] | None = None,
    cap: int = PERMUTATION_CAP,
    name: str | None = None,
) -> Group:
    """Closure of permutation generators as a multiplication table.

    Generators are image tuples on ``0..d-1`` or cycle strings like
    ``"(1,2)(3,4)"`` on ``1..d``.  Products compose left to right:
    ``(p*q)(i) = q(p(i))``.  The identity gets index 0, the rest follow in
    breadth-first order.
    """
    degree = 0
    raw = []
    for g in generators:
        if isinstance(g, str):
            raw.append(g)
        else:
            degree = max(degree, len(g))
            raw.append(tuple(int(x) for x in g))
    for g in raw:
        if isinstance(g, str):
            degree = max(degree, len(_parse_cycles(g, None)))
    perms = []
    for g in raw:
        p = _parse_cycles(g, degree) if isinstance(g, str) else list(g) + list(range(len(g), degree))
        if sorted(p) != list(range(degree)):
            raise GroupConstructionError(f"generator {g!r} is not a bijection")
        perms.append(tuple(p))
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for h in frontier:
            for p in perms:
                k = tuple(p[h[i]] for i in range(degree))
                if k not in index:
                    if len(elems) >= cap:
                        raise ClosureExceedsCap(f"closure exceeds {cap} elements")
                    index[k] = len(elems)
                    elems.append(k)
                    nxt.append(k)
        frontier = nxt
    n = len(elems)
    arr = np.array(elems, dtype=np.intp).reshape(n, degree)
    mul = np.empty((n, n), dtype=np.intp)
    for i, p in enumerate(arr):
        # (p*q)(i) = q[p[i]] for every q at once
        prods = arr[:, p]
        mul[i] = [index[tuple(r)] for r in prods.tolist()]
    if names is None:
        names = [f"g{i + 1}" for i in range(len(perms))]
    gens = {}
    for nm, p in zip(names, perms):
        gens[nm] = index[p]
    labels = shortlex_labels(mul, gens)
    return Group(mul, labels=labels, name=name or f"<{len(perms)} perms>", gens=gens)


def quaternion_group() -> Group:
    """Q8 on ``1, -1, i, -i, j, -j, k, -k`` (index = 2*unit + sign bit)."""
    # unit products: table[u][v] = (sign, unit) for u, v in 1, i, j, k
    table = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ]
    mul = np.empty((8, 8), dtype=np.intp)
    for g in range(8):
        for h in range(8):
            s, u = table[g // 2][h // 2]
            neg = (g % 2) ^ (h % 2) ^ (s < 0)
            mul[g, h] = 2 * u + neg
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    return Group(mul, labels=labels, name="Q8", gens={"i": 2, "j": 4}, aliases={"k": 6, "-1": 1, "-": 1})


def _conjugation_semidirect(A: Group, B: Group, conjugation: Mapping[str, Mapping[str, str]], name: str) -> Group:
    # conjugation[b][a] gives a^b = b^-1 a b; the product wants φ_b(a) = b a b^-1
    action = {b: inverse_permutation(automorphism(A, imgs)) for b, imgs in conjugation.items()}
    return semidirect_product(A, B, action, name=name)


def _h_group(b_order: int, name: str) -> Group:
    A = make_abelian([4, 2], names=["a", "c"])
    B = make_abelian([b_order], names=["b"])
    return _conjugation_semidirect(A, B, {"b": {"a": "ac"}}, name)


def _build_named(key: str) -> Group:
    if key == "Q8":
        return quaternion_group()
    if key in ("D6", "D8", "D12"):
        return make_dihedral(int(key[1:]))
    if key in ("H2", "Z4sZ4"):
        A = make_abelian([4], names=["a"])
        B = make_abelian([4], names=["b"])
        return _conjugation_semidirect(A, B, {"b": {"a": "a^-1"}}, key)
    if key == "H16":
        return _h_group(2, "H16")
    if key == "H32":
        return _h_group(4, "H32")
    if key == "H27":
        A = make_abelian([3, 3], names=["a", "c"])
        B = make_abelian([3], names=["b"])
        return _conjugation_semidirect(A, B, {"b": {"a": "ac"}}, "H27")
    if key == "A4":
        return from_permutations(["(1,2)(3,4)", "(1,3)(2,4)", "(1,2,3)"], names=["a", "b", "c"], name="A4")
    if key == "Q8sZ3":
        B = make_abelian([3], names=["s"])
        B.aliases["σ"] = B.gens["s"]
        return _conjugation_semidirect(quaternion_group(), B, {"s": {"i": "j", "j": "k"}}, "Q8⋊Z3")
    if key == "Dic12":
        G = generalized_dicyclic(make_abelian([6], names=["a"]))
        G.name = "Dic12"
        return G
    if key == "D6xZ3":
        A = make_abelian([3, 3], names=["u", "v"])
        return _conjugation_semidirect(A, make_abelian([2], names=["x"]), {"x": {"v": "v^-1"}}, "D6xZ3")
    if key == "E9sZ2":
        A = make_abelian([3, 3], names=["u", "v"])
        return _conjugation_semidirect(A, make_abelian([2], names=["x"]), {"x": {"u": "u^-1", "v": "v^-1"}}, "E9⋊Z2")
    raise UnknownName(f"unknown group name {key!r}; known: {', '.join(NAMED_GROUPS)}")


NAMED_GROUPS = (
    "Q8", "D6", "D8", "D12", "H2", "H16", "H27", "H32", "A4",
    "Q8sZ3", "Z4sZ4", "E9sZ2", "D6xZ3", "Dic12",
)


def named_group(name: str) -> Group:
    """Build a group from the fixed catalog of names (see ``NAMED_GROUPS``).

    Generator names follow the usual presentations: ``a, b, c`` for the
    Rédei groups and A4, ``i, j, k`` and ``s`` (alias ``σ``) for Q8⋊Z3,
    ``u, v, x`` for D6xZ3 and E9sZ2, ``a, x`` for Dic12.
    """
    if name not in NAMED_GROUPS:
        raise UnknownName(f"unknown group name {name!r}; known: {', '.join(NAMED_GROUPS)}")
    return _build_named(name)
