"""Scalar rings with exact arithmetic and partial inversion.

Every ring element is immutable and all arithmetic is exact; no floating
point enters any code path.  A ring object knows how to build, compare,
invert (partially), sample and serialize its elements.  Concrete rings:

* ``Rationals``            -- arbitrary-precision rationals (``Fraction``),
* ``SquareMatrices(d)``    -- d x d rational matrices,
* ``TruncatedSeriesRing``  -- truncated power series in a central variable
                              with coefficients from any base ring,
* ``QRationalFunctions``   -- exact rational functions in one commuting
                              variable q (reduced fractions of polynomials).

Series over ``SquareMatrices`` provide the t-graded scalars used by the
derivation and formal-series checks; series over ``QRationalFunctions``
provide the q-series scalars used by the continued-fraction coefficient
checks.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


class DomainError(Exception):
    """Raised when an inversion (or an operation built on one) is undefined.

    ``payload`` optionally carries the offending object, e.g. the formula
    subterm whose value was not invertible.
    """

    def __init__(self, message: str, payload=None):
        super().__init__(message)
        self.payload = payload


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def format_fraction(x: Fraction) -> str:
    # canonical: reduced, positive denominator, "/q" omitted for integers
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class ScalarRing:
    """Interface contract for a unital ring with partial inversion.

    Elements are expected to implement ``+``, ``-`` (unary and binary),
    ``*`` and ``==`` exactly; the ring supplies identities, inversion,
    sampling and serialization.  ``flat_dim`` is the size of an exact
    rational-matrix embedding when one exists (used to invert matrices
    over the ring by flattening), else ``None``.
    """

    name: str = "ring"
    flat_dim: Optional[int] = None

    @property
    def zero(self):
        raise NotImplementedError

    @property
    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def equals(self, a, b) -> bool:
        return a == b

    def is_zero(self, a) -> bool:
        return self.equals(a, self.zero)

    def coerce(self, x):
        """Canonical ring element for x; ints embed via from_int."""
        if isinstance(x, int):
            return self.from_int(x)
        return x

    def try_invert(self, a):
        """Two-sided inverse of ``a`` or ``None`` when not invertible."""
        raise NotImplementedError

    def invert(self, a):
        inv = self.try_invert(a)
        if inv is None:
            raise DomainError(f"element not invertible in {self.name}", payload=a)
        return inv

    def from_int(self, m: int):
        raise NotImplementedError

    def random_element(self, rng, profile=None):
        raise NotImplementedError

    def serialize(self, a):
        raise NotImplementedError

    def deserialize(self, obj):
        raise NotImplementedError

    def spec(self) -> dict:
        """JSON-able description sufficient to rebuild the ring."""
        raise NotImplementedError

    # exact rational-matrix embedding, defined when flat_dim is not None
    def flatten(self, a) -> list[list[Fraction]]:
        raise NotImplementedError

    def unflatten(self, rows: Sequence[Sequence[Fraction]]):
        raise NotImplementedError

    def __repr__(self):
        return self.name


class SampleProfile:
    """Bounds for random entry generation.

    Numerators are drawn uniformly from [-max_num, max_num] and
    denominators from [1, max_den]; max_den=1 yields integers.
    """

    def __init__(self, max_num: int = 10, max_den: int = 10):
        if max_num < 1 or max_den < 1:
            raise ValueError("sample bounds must be >= 1")
        self.max_num = max_num
        self.max_den = max_den

    def draw_fraction(self, rng) -> Fraction:
        num = rng.randint(-self.max_num, self.max_num)
        den = rng.randint(1, self.max_den)
        return Fraction(num, den)


DEFAULT_PROFILE = SampleProfile()


class Rationals(ScalarRing):
    """Exact rational numbers; inversion fails exactly on zero."""

    name = "Q"
    flat_dim = 1

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def try_invert(self, a):
        a = Fraction(a)
        if a == 0:
            return None
        return 1 / a

    def from_int(self, m: int):
        return Fraction(m)

    def coerce(self, x):
        return Fraction(x)

    def random_element(self, rng, profile=None):
        return (profile or DEFAULT_PROFILE).draw_fraction(rng)

    def serialize(self, a):
        return format_fraction(a)

    def deserialize(self, obj):
        return _parse_fraction(obj)

    def spec(self):
        return {"kind": "rationals"}

    def flatten(self, a):
        return [[a]]

    def unflatten(self, rows):
        return Fraction(rows[0][0])


class MatScalar:
    """Immutable d x d matrix of Fractions, used as a single ring scalar."""

    __slots__ = ("d", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise ValueError("matrix scalar must be square")
        self.d = d
        self.rows = rows

    def __add__(self, other):
        self._check(other)
        return MatScalar(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other):
        self._check(other)
        return MatScalar(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __neg__(self):
        return MatScalar(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, other):
        self._check(other)
        d = self.d
        cols = tuple(zip(*other.rows))
        return MatScalar(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def _check(self, other):
        if not isinstance(other, MatScalar) or other.d != self.d:
            raise TypeError("dimension mismatch between matrix scalars")

    def __eq__(self, other):
        return isinstance(other, MatScalar) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(
            " ".join(format_fraction(x) for x in r) for r in self.rows
        )
        return f"[{body}]"


class SquareMatrices(ScalarRing):
    """Ring of d x d exact-rational matrices; invertible iff det != 0."""

    def __init__(self, d: int):
        if d < 1:
            raise ValueError("dimension must be >= 1")
        self.d = d
        self.name = f"M{d}(Q)"
        self.flat_dim = d
        self._zero = MatScalar([[Fraction(0)] * d for _ in range(d)])
        self._one = MatScalar(
            [[Fraction(1 if i == j else 0) for j in range(d)] for i in range(d)]
        )

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def try_invert(self, a: MatScalar):
        from .exactlin import invert_rational

        inv = invert_rational([list(r) for r in a.rows])
        if inv is None:
            return None
        return MatScalar(inv)

    def from_int(self, m: int):
        d = self.d
        return MatScalar(
            [[Fraction(m if i == j else 0) for j in range(d)] for i in range(d)]
        )

    def scalar_matrix(self, x: Fraction):
        d = self.d
        return MatScalar(
            [[x if i == j else Fraction(0) for j in range(d)] for i in range(d)]
        )

    def unit(self, i: int, j: int):
        """Matrix unit with a single 1 in (1-based) position (i, j)."""
        d = self.d
        return MatScalar(
            [
                [Fraction(1 if (r, c) == (i - 1, j - 1) else 0) for c in range(d)]
                for r in range(d)
            ]
        )

    def random_element(self, rng, profile=None):
        profile = profile or DEFAULT_PROFILE
        return MatScalar(
            [[profile.draw_fraction(rng) for _ in range(self.d)] for _ in range(self.d)]
        )

    def serialize(self, a: MatScalar):
        return [[format_fraction(x) for x in r] for r in a.rows]

    def deserialize(self, obj):
        return MatScalar([[_parse_fraction(x) for x in r] for r in obj])

    def spec(self):
        return {"kind": "matrices", "d": self.d}

    def flatten(self, a: MatScalar):
        return [list(r) for r in a.rows]

    def unflatten(self, rows):
        return MatScalar(rows)


class SeriesElement:
    """Truncated power series c_0 + c_1 t + ... + c_L t^L, t central.

    Coefficients live in the base ring of ``ring``; products above t^L
    are dropped.
    """

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "TruncatedSeriesRing", coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.order + 1:
            raise ValueError("coefficient count must be order + 1")
        self.ring = ring
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, SeriesElement) or other.ring is not self.ring:
            if isinstance(other, SeriesElement) and other.ring.spec() == self.ring.spec():
                return
            raise TypeError("series from different rings")

    def __add__(self, other):
        self._check(other)
        return SeriesElement(
            self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        return SeriesElement(
            self.ring, tuple(a - b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return SeriesElement(self.ring, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        L = self.ring.order
        base = self.ring.base
        out = []
        for k in range(L + 1):
            acc = base.zero
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return SeriesElement(self.ring, out)

    def __eq__(self, other):
        return (
            isinstance(other, SeriesElement)
            and self.ring.spec() == other.ring.spec()
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        var = self.ring.variable
        parts = [f"({c!r})*{var}^{k}" for k, c in enumerate(self.coeffs)]
        return " + ".join(parts)


class TruncatedSeriesRing(ScalarRing):
    """Series truncated at a fixed order over an arbitrary base ring.

    Invertible iff the order-0 coefficient is invertible in the base
    ring; the inverse is computed order by order and is exact.
    """

    def __init__(self, base: ScalarRing, order: int, variable: str = "t"):
        if order < 0:
            raise ValueError("order must be >= 0")
        self.base = base
        self.order = order
        self.variable = variable
        self.name = f"{base.name}[[{variable}]]/{variable}^{order + 1}"
        self.flat_dim = None

    @property
    def zero(self):
        return SeriesElement(self, [self.base.zero] * (self.order + 1))

    @property
    def one(self):
        return SeriesElement(
            self, [self.base.one] + [self.base.zero] * self.order
        )

    def element(self, coeffs):
        coeffs = list(coeffs)
        if len(coeffs) > self.order + 1:
            raise ValueError("too many coefficients")
        coeffs += [self.base.zero] * (self.order + 1 - len(coeffs))
        return SeriesElement(self, coeffs)

    def variable_element(self):
        if self.order < 1:
            return self.zero
        coeffs = [self.base.zero] * (self.order + 1)
        coeffs[1] = self.base.one
        return SeriesElement(self, coeffs)

    def coefficient(self, a: SeriesElement, k: int):
        return a.coeffs[k]

    def try_invert(self, a: SeriesElement):
        b0 = self.base.try_invert(a.coeffs[0])
        if b0 is None:
            return None
        out = [b0]
        for k in range(1, self.order + 1):
            acc = self.base.zero
            for i in range(1, k + 1):
                acc = acc + a.coeffs[i] * out[k - i]
            out.append(-(b0 * acc))
        return SeriesElement(self, out)

    def from_int(self, m: int):
        return self.element([self.base.from_int(m)])

    def random_element(self, rng, profile=None):
        return self.element(
            [self.base.random_element(rng, profile) for _ in range(self.order + 1)]
        )

    def serialize(self, a: SeriesElement):
        return {str(k): self.base.serialize(c) for k, c in enumerate(a.coeffs)}

    def deserialize(self, obj):
        coeffs = [self.base.deserialize(obj[str(k)]) for k in range(self.order + 1)]
        return SeriesElement(self, coeffs)

    def spec(self):
        return {
            "kind": "series",
            "base": self.base.spec(),
            "order": self.order,
            "variable": self.variable,
        }


# ---------------------------------------------------------------------------
# polynomials and rational functions in one commuting variable q


def poly_trim(coeffs) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def poly_add(a, b):
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return poly_trim(out)


def poly_neg(a):
    return tuple(-c for c in a)


def poly_mul(a, b):
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return poly_trim(out)


def poly_divmod(a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(a) >= len(b) and poly_trim(a):
        a = list(poly_trim(a))
        if len(a) < len(b):
            break
        shift = len(a) - len(b)
        factor = a[-1] * inv_lead
        q[shift] = factor
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
    return poly_trim(q), poly_trim(a)


def poly_gcd(a, b):
    a, b = poly_trim(a), poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)  # monic
    return a


class QRat:
    """Reduced fraction of rational-coefficient polynomials in q."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(Fraction(1),), normalize=True):
        num = poly_trim(num)
        den = poly_trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if normalize:
            if not num:
                den = (Fraction(1),)
            else:
                g = poly_gcd(num, den)
                if len(g) > 1:
                    num, _ = poly_divmod(num, g)
                    den, _ = poly_divmod(den, g)
                lead = den[-1]
                if lead != 1:
                    num = tuple(c / lead for c in num)
                    den = tuple(c / lead for c in den)
        self.num = num
        self.den = den

    def __add__(self, other):
        return QRat(
            poly_add(poly_mul(self.num, other.den), poly_mul(other.num, self.den)),
            poly_mul(self.den, other.den),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return QRat(poly_neg(self.num), self.den, normalize=False)

    def __mul__(self, other):
        return QRat(poly_mul(self.num, other.num), poly_mul(self.den, other.den))

    def __eq__(self, other):
        if not isinstance(other, QRat):
            return NotImplemented
        # cross-multiplication of reduced fractions
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)

    def __hash__(self):
        # hash through the canonical form so cross-multiplied equals agree
        canonical = QRat(self.num, self.den)
        return hash((canonical.num, canonical.den))

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            parts = []
            for k, c in enumerate(p):
                if c == 0:
                    continue
                if k == 0:
                    parts.append(format_fraction(c))
                elif k == 1:
                    parts.append(f"{format_fraction(c)}*q" if c != 1 else "q")
                else:
                    parts.append(f"{format_fraction(c)}*q^{k}" if c != 1 else f"q^{k}")
            return " + ".join(parts)

        if self.den == (Fraction(1),):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


class QRationalFunctions(ScalarRing):
    """Field of exact rational functions in q; inversion fails only on 0."""

    name = "Q(q)"
    flat_dim = None

    @property
    def zero(self):
        return QRat(())

    @property
    def one(self):
        return QRat((Fraction(1),))

    def q(self, power: int = 1):
        coeffs = [Fraction(0)] * power + [Fraction(1)]
        return QRat(tuple(coeffs), normalize=False)

    def try_invert(self, a: QRat):
        if not a.num:
            return None
        return QRat(a.den, a.num)

    def from_int(self, m: int):
        return QRat((Fraction(m),)) if m else QRat(())

    def random_element(self, rng, profile=None):
        profile = profile or DEFAULT_PROFILE
        deg = rng.randint(0, 2)
        num = tuple(profile.draw_fraction(rng) for _ in range(deg + 1))
        return QRat(num)

    def serialize(self, a: QRat):
        return {
            "num": [format_fraction(c) for c in a.num],
            "den": [format_fraction(c) for c in a.den],
        }

    def deserialize(self, obj):
        return QRat(
            tuple(_parse_fraction(c) for c in obj["num"]),
            tuple(_parse_fraction(c) for c in obj["den"]),
        )

    def spec(self):
        return {"kind": "qrationals"}


def ring_from_spec(spec: dict) -> ScalarRing:
    """Rebuild a ring from its JSON description (see ``ScalarRing.spec``)."""
    kind = spec["kind"]
    if kind == "rationals":
        return Rationals()
    if kind == "matrices":
        return SquareMatrices(spec["d"])
    if kind == "series":
        return TruncatedSeriesRing(
            ring_from_spec(spec["base"]), spec["order"], spec.get("variable", "t")
        )
    if kind == "qrationals":
        return QRationalFunctions()
    if kind == "matrix-ring":
        from .matrix import MatrixRing

        return MatrixRing(ring_from_spec(spec["base"]), spec["n"])
    raise ValueError(f"unknown ring kind: {kind}")
