"""Free rational formulas: DAG nodes, evaluation, inversion height, parser.

A formula is an acyclic graph over Const / Var / Neg / Add / Mul / Inv
nodes; subterms may be shared.  Evaluation follows the usual partial
semantics: a value exists unless some subterm ``inv(b)`` hits a
non-invertible value of ``b``, in which case a ``DomainError`` carrying
that subterm is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from .rings import DomainError, ScalarRing


class RatFormula:
    """Base node; arithmetic operators build shared-subterm graphs."""

    __slots__ = ()

    def __add__(self, other):
        return Add(self, _coerce(other))

    def __radd__(self, other):
        return Add(_coerce(other), self)

    def __sub__(self, other):
        return Add(self, Neg(_coerce(other)))

    def __rsub__(self, other):
        return Add(_coerce(other), Neg(self))

    def __mul__(self, other):
        return Mul(self, _coerce(other))

    def __rmul__(self, other):
        return Mul(_coerce(other), self)

    def __neg__(self):
        return Neg(self)


@dataclass(frozen=True, eq=False)
class Const(RatFormula):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True, eq=False)
class Var(RatFormula):
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable identifier must be nonempty")


@dataclass(frozen=True, eq=False)
class Neg(RatFormula):
    child: RatFormula


@dataclass(frozen=True, eq=False)
class Add(RatFormula):
    left: RatFormula
    right: RatFormula


@dataclass(frozen=True, eq=False)
class Mul(RatFormula):
    left: RatFormula
    right: RatFormula


@dataclass(frozen=True, eq=False)
class Inv(RatFormula):
    child: RatFormula


def inv(f: RatFormula) -> RatFormula:
    return Inv(_coerce(f))


def const(x) -> Const:
    return Const(Fraction(x))


def var(name: str) -> Var:
    return Var(name)


def _coerce(x) -> RatFormula:
    if isinstance(x, RatFormula):
        return x
    if isinstance(x, (int, Fraction)):
        return Const(Fraction(x))
    raise TypeError(f"cannot treat {x!r} as a formula")


def _children(node):
    if isinstance(node, (Neg, Inv)):
        return (node.child,)
    if isinstance(node, (Add, Mul)):
        return (node.left, node.right)
    return ()


def _postorder(f: RatFormula):
    """Iterative postorder over the DAG, each shared node visited once."""
    seen = set()
    order = []
    stack = [(f, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            order.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        for child in _children(node):
            if id(child) not in seen:
                stack.append((child, False))
    return order


def free_vars(f: RatFormula) -> set[str]:
    return {n.name for n in _postorder(f) if isinstance(n, Var)}


def evaluate(f: RatFormula, assignment: dict, ring: ScalarRing):
    """Value of ``f`` at ``assignment`` over ``ring``.

    ``assignment`` maps every free variable name to a ring element.
    Raises DomainError (payload = the offending Inv subterm) exactly when
    some subterm's inverse does not exist.
    """
    values: dict[int, object] = {}
    for node in _postorder(f):
        if isinstance(node, Const):
            num = ring.from_int(node.value.numerator)
            if node.value.denominator == 1:
                values[id(node)] = num
            else:
                den_inv = ring.try_invert(ring.from_int(node.value.denominator))
                if den_inv is None:
                    raise DomainError("constant denominator not invertible", node)
                values[id(node)] = num * den_inv
        elif isinstance(node, Var):
            if node.name not in assignment:
                raise KeyError(f"assignment missing variable {node.name!r}")
            values[id(node)] = assignment[node.name]
        elif isinstance(node, Neg):
            values[id(node)] = -values[id(node.child)]
        elif isinstance(node, Add):
            values[id(node)] = values[id(node.left)] + values[id(node.right)]
        elif isinstance(node, Mul):
            values[id(node)] = values[id(node.left)] * values[id(node.right)]
        elif isinstance(node, Inv):
            result = ring.try_invert(values[id(node.child)])
            if result is None:
                raise DomainError("subterm not invertible at this point", node)
            values[id(node)] = result
        else:  # pragma: no cover
            raise TypeError(f"unknown node {node!r}")
    return values[id(f)]


def formula_height(f: RatFormula) -> int:
    """Maximal number of nested inversions along any path."""
    heights: dict[int, int] = {}
    for node in _postorder(f):
        child_max = max((heights[id(c)] for c in _children(node)), default=0)
        heights[id(node)] = child_max + (1 if isinstance(node, Inv) else 0)
    return heights[id(f)]


def to_text(f: RatFormula) -> str:
    """Render in the expression grammar (parse(to_text(f)) evaluates equally)."""
    texts: dict[int, str] = {}
    for node in _postorder(f):
        if isinstance(node, Const):
            v = node.value
            if v.denominator == 1:
                texts[id(node)] = str(v) if v >= 0 else f"(0 - {-v})"
            else:
                sign = "" if v >= 0 else "0 - "
                texts[id(node)] = f"({sign}{abs(v.numerator)} * inv({v.denominator}))"
        elif isinstance(node, Var):
            texts[id(node)] = node.name
        elif isinstance(node, Neg):
            texts[id(node)] = f"(0 - {texts[id(node.child)]})"
        elif isinstance(node, Add):
            texts[id(node)] = f"({texts[id(node.left)]} + {texts[id(node.right)]})"
        elif isinstance(node, Mul):
            texts[id(node)] = f"({texts[id(node.left)]} * {texts[id(node.right)]})"
        elif isinstance(node, Inv):
            texts[id(node)] = f"inv({texts[id(node.child)]})"
    return texts[id(f)]


# ---------------------------------------------------------------------------
# expression grammar: integers, identifiers, + - *, parentheses, inv(e)


class ParseError(ValueError):
    pass


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j]))
            i = j
            continue
        if ch in "+-*()":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at offset {i}")
    tokens.append(("end", ""))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind}, found {tok[1]!r}")
        self.pos += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Add(node, Neg(rhs))
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = Mul(node, self.factor())
        return node

    def factor(self):
        kind, text = self.peek()
        if kind == "-":
            self.take()
            return Neg(self.factor())
        if kind == "int":
            self.take()
            return Const(Fraction(int(text)))
        if kind == "ident":
            self.take()
            if text == "inv":
                self.take("(")
                node = self.expr()
                self.take(")")
                return Inv(node)
            return Var(text)
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected token {text!r}")


def parse(text: str) -> RatFormula:
    parser = _Parser(_tokenize(text))
    node = parser.expr()
    parser.take("end")
    return node


# ---------------------------------------------------------------------------
# the corner quasideterminant as a formula (shared-subterm recursion)


def entry_var(i: int, j: int) -> Var:
    return Var(f"a_{i}_{j}")


def qdet_formula(n: int, p: int = 1, q: int = 1) -> RatFormula:
    """Formula for the (p, q) quasideterminant of an n x n generic matrix.

    Built by the defining recursion with memoized shared subterms, so
    the inversion height grows by exactly one per matrix size.
    """
    memo: dict = {}

    def build(rows: tuple, cols: tuple, pp: int, qq: int) -> RatFormula:
        key = (rows, cols, pp, qq)
        if key in memo:
            return memo[key]
        if len(rows) == 1:
            memo[key] = entry_var(rows[0], cols[0])
            return memo[key]
        sub_rows = tuple(r for r in rows if r != pp)
        sub_cols = tuple(c for c in cols if c != qq)
        result = entry_var(pp, qq)
        for i in sub_rows:
            for j in sub_cols:
                minor = build(sub_rows, sub_cols, i, j)
                result = result - entry_var(pp, j) * Inv(minor) * entry_var(i, qq)
        memo[key] = result
        return result

    labels = tuple(range(1, n + 1))
    return build(labels, labels, p, q)
