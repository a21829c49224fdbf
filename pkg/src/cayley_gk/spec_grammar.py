"""Parser and printer for group specifications such as ``"Dic(E(9) x C(6))"``.

Grammar::

    spec := term ("x" term)*
    term := atom | ctor "(" args ")"
    ctor := "C" | "E" | "D" | "Dic"
    args := integer | spec

``C(n)`` is cyclic, ``E(q)`` elementary abelian of prime-power order q,
``D(n)`` dihedral of ORDER n (``D(6)`` is S3, not the group of order 12),
``Dic(spec)`` the generalized dicyclic group over an abelian group with a
unique involution.  Atoms are the names in ``ATOMS``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .constructions import direct_product, generalized_dicyclic, make_abelian, make_dihedral, named_group
from .errors import CayleyGkError, GroupConstructionError
from .group import Group

ATOMS = ("Q8sZ3", "Z4sZ4", "E9sZ2", "D6xZ3", "Dic12", "H16", "H27", "H32", "H2", "Q8", "A4")


class SpecSyntaxError(CayleyGkError, ValueError):
    def __init__(self, line: int, col: int, expected: list[str], found: str):
        self.line, self.col, self.expected, self.found = line, col, sorted(expected), found
        super().__init__(f"{line}:{col}: expected one of {', '.join(self.expected)}; found {found!r}")


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class Elementary:
    q: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Dicyclic:
    arg: "Spec"


@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class Product:
    factors: tuple["Spec", ...]


Spec = Union[Cyclic, Elementary, Dihedral, Dicyclic, Named, Product]

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<atom>" + "|".join(ATOMS) + r")|(?P<ctor>Dic|C|E|D)(?=\s*\()"
    r"|(?P<int>\d+)|(?P<lp>\()|(?P<rp>\))|(?P<x>x)"
)


def _tokenize(text: str):
    pos = 0
    line, line_start = 1, 0
    toks = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise SpecSyntaxError(line, col, ["atom", "constructor", "'('", "')'", "'x'", "integer"], text[pos])
        kind = m.lastgroup
        if kind == "ws":
            chunk = m.group()
            if "\n" in chunk:
                line += chunk.count("\n")
                line_start = pos + chunk.rindex("\n") + 1
        else:
            toks.append((kind, m.group(), line, col))
        pos = m.end()
    toks.append(("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind, expected):
        tok = self.peek()
        if tok[0] != kind:
            raise SpecSyntaxError(tok[2], tok[3], expected, tok[1] or "<end>")
        self.i += 1
        return tok

    def spec(self) -> Spec:
        terms = [self.term()]
        while self.peek()[0] == "x":
            self.i += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Product(tuple(terms))

    def term(self) -> Spec:
        tok = self.peek()
        if tok[0] == "atom":
            self.i += 1
            return Named(tok[1])
        if tok[0] == "ctor":
            self.i += 1
            self.take("lp", ["'('"])
            if tok[1] == "Dic":
                node: Spec = Dicyclic(self.spec())
            else:
                n = int(self.take("int", ["integer"])[1])
                node = {"C": Cyclic, "E": Elementary, "D": Dihedral}[tok[1]](n)
            self.take("rp", ["')'", "'x'"] if tok[1] == "Dic" else ["')'"])
            return node
        raise SpecSyntaxError(tok[2], tok[3], ["atom", "C", "E", "D", "Dic"], tok[1] or "<end>")


def parse_spec(text: str) -> Spec:
    p = _Parser(text)
    node = p.spec()
    p.take("eof", ["'x'", "<end>"])
    return node


def format_spec(node: Spec) -> str:
    if isinstance(node, Product):
        return " x ".join(format_spec(f) for f in node.factors)
    if isinstance(node, Cyclic):
        return f"C({node.n})"
    if isinstance(node, Elementary):
        return f"E({node.q})"
    if isinstance(node, Dihedral):
        return f"D({node.n})"
    if isinstance(node, Dicyclic):
        return f"Dic({format_spec(node.arg)})"
    return node.name


def _abelian_orders(node: Spec) -> list[int] | None:
    if isinstance(node, Cyclic):
        return [node.n]
    if isinstance(node, Elementary):
        return _elementary_orders(node.q)
    if isinstance(node, Product):
        out: list[int] = []
        for f in node.factors:
            part = _abelian_orders(f)
            if part is None:
                return None
            out += part
        return out
    return None


def _elementary_orders(q: int) -> list[int]:
    if q < 1:
        raise GroupConstructionError("E(q) needs q >= 1")
    if q == 1:
        return []
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise GroupConstructionError(f"E({q}): order must be a prime power")
    return [p] * k


def build(node: Spec | str) -> Group:
    """Construct the group a spec describes (validation of Dic arguments happens here)."""
    if isinstance(node, str):
        node = parse_spec(node)
    orders = _abelian_orders(node)
    if orders is not None:
        if any(d < 1 for d in orders):
            raise GroupConstructionError("cyclic orders must be positive")
        G = make_abelian(orders)
    elif isinstance(node, Dihedral):
        G = make_dihedral(node.n)
    elif isinstance(node, Dicyclic):
        G = generalized_dicyclic(build(node.arg))
    elif isinstance(node, Named):
        G = named_group(node.name)
    elif isinstance(node, Product):
        G = direct_product(*(build(f) for f in node.factors))
    else:  # pragma: no cover
        raise TypeError(node)
    G.name = format_spec(node)
    return G
