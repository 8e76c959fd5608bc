"""Power-matrix quasideterminants, root/coefficient transforms and
noncommutative symmetric functions.

The transformed variables y_k (conjugates of the inputs by the
quasideterminant of the leading power matrix) are the alphabet in which
the factorization and coefficient identities hold; elementary, complete
and ribbon families are word sums over that alphabet, graded by descent
structure.
"""

from __future__ import annotations

from itertools import product as iter_product
from typing import Sequence

from .matrix import NcMatrix
from .qdet import qdet
from .rings import DomainError, ScalarRing, SquareMatrices, TruncatedSeriesRing


def scalar_power(ring: ScalarRing, x, k: int):
    acc = ring.one
    for _ in range(k):
        acc = acc * x
    return acc


def power_matrix(ring: ScalarRing, values: Sequence) -> NcMatrix:
    """Square matrix whose columns are descending powers of the values,
    with a last row of ones; column c holds values[c]^(m-1) .. 1."""
    m = len(values)
    rows = [
        [scalar_power(ring, v, m - r) for v in values] for r in range(1, m + 1)
    ]
    return NcMatrix(ring, rows, range(1, m + 1), range(1, m + 1))


def vandermonde(ring: ScalarRing, values: Sequence):
    """Quasideterminant of the power matrix at (first row, last column).

    For a single value this degenerates to one (the matrix is the single
    row of ones).
    """
    if not values:
        raise ValueError("need at least one value")
    m = len(values)
    return qdet(power_matrix(ring, values), 1, m)


def is_independent(ring: ScalarRing, values: Sequence) -> bool:
    """All leading power-matrix quasideterminants defined and invertible."""
    for k in range(2, len(values) + 1):
        try:
            v = vandermonde(ring, values[:k])
        except DomainError:
            return False
        if ring.try_invert(v) is None:
            return False
    return True


def y_transform(ring: ScalarRing, xs: Sequence) -> list:
    """y_1 = x_1 and y_k = V x_k V^{-1} with V over the first k values."""
    ys = [xs[0]]
    for k in range(2, len(xs) + 1):
        V = vandermonde(ring, xs[:k])
        ys.append(V * xs[k - 1] * ring.invert(V))
    return ys


def z_transform(ring: ScalarRing, xs: Sequence, z) -> list:
    """z_1 = z and z_k = W z W^{-1}, W over the first k-1 values and z."""
    zs = [z]
    for k in range(2, len(xs) + 1):
        W = vandermonde(ring, list(xs[: k - 1]) + [z])
        zs.append(W * z * ring.invert(W))
    return zs


def hat_transform(ring: ScalarRing, xs: Sequence, z):
    """Conjugate the tail values and z by their differences from x_1.

    Returns (hatted x_2..x_n, hatted z); the defining contract is
    V(x_1..x_n, z) = V(hats, hat z) * (z - x_1).
    """
    x1 = xs[0]
    hats = []
    for xk in xs[1:]:
        diff = xk - x1
        hats.append(diff * xk * ring.invert(diff))
    dz = z - x1
    zhat = dz * z * ring.invert(dz)
    return hats, zhat


def bezout_product(ring: ScalarRing, xs: Sequence, z):
    """(z_n - y_n) ... (z_1 - y_1), the factorization of V(x_1..x_n, z)."""
    ys = y_transform(ring, xs)
    zs = z_transform(ring, xs, z)
    acc = ring.one
    for k in range(len(xs), 0, -1):
        acc = acc * (zs[k - 1] - ys[k - 1])
    return acc


class CentralPoly:
    """Polynomial with left coefficients and a central variable.

    Stored as (c_0, ..., c_n) for c_0 z^n + ... + c_n; evaluation at w
    is sum c_k w^(n-k) with every coefficient multiplying from the left.
    """

    def __init__(self, ring: ScalarRing, coeffs: Sequence):
        self.ring = ring
        self.coeffs = tuple(ring.coerce(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("need at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, w):
        ring = self.ring
        n = self.degree
        acc = ring.zero
        for k, c in enumerate(self.coeffs):
            acc = acc + c * scalar_power(ring, w, n - k)
        return acc

    def __eq__(self, other):
        return isinstance(other, CentralPoly) and self.coeffs == other.coeffs


def vieta_from_y(ring: ScalarRing, ys: Sequence) -> list:
    """Coefficients a_1..a_n as signed descending-index sums of y words:
    a_k = (-1)^k sum over i_1 < ... < i_k of y_{i_k} ... y_{i_1}."""
    n = len(ys)
    coeffs = []
    for k in range(1, n + 1):
        acc = ring.zero
        for combo in _combinations(range(n), k):
            word = ring.one
            for idx in reversed(combo):
                word = word * ys[idx]
            acc = acc + word
        if k % 2:
            acc = -acc
        coeffs.append(acc)
    return coeffs


def _combinations(pool, k):
    from itertools import combinations

    return combinations(pool, k)


def vieta_via_qdet(ring: ScalarRing, xs: Sequence) -> list:
    """Coefficients as a ratio of two bordered power-matrix
    quasideterminants: a_k = -|rows n,..,skip n-k,..,0|_{1n} *
    |rows n-1..0|_{kn}^{-1}."""
    n = len(xs)
    coeffs = []
    denom_matrix = _power_rows(ring, xs, list(range(n - 1, -1, -1)))
    for k in range(1, n + 1):
        num_powers = [p for p in range(n, -1, -1) if p != n - k]
        num_matrix = _power_rows(ring, xs, num_powers)
        num = qdet(num_matrix, 1, n)
        den = qdet(denom_matrix, k, n)
        coeffs.append(-(num * ring.invert(den)))
    return coeffs


def _power_rows(ring, values, powers) -> NcMatrix:
    rows = [[scalar_power(ring, v, p) for v in values] for p in powers]
    return NcMatrix(ring, rows, range(1, len(powers) + 1), range(1, len(values) + 1))


def coeffs_from_roots(ring: ScalarRing, xs: Sequence) -> list:
    """Coefficients of the monic left-coefficient polynomial annihilating
    every root, solved from the right-linear system over the power matrix."""
    from .matrix import row_times_matrix

    n = len(xs)
    W = _power_rows(ring, xs, list(range(n - 1, -1, -1)))
    rhs = [-scalar_power(ring, x, n) for x in xs]
    Winv = W.inverse()
    return row_times_matrix(rhs, Winv)


def annihilation_poly(ring: ScalarRing, coeffs: Sequence) -> CentralPoly:
    return CentralPoly(ring, [ring.one] + list(coeffs))


def elementary_lambda(ring: ScalarRing, xs: Sequence) -> list:
    """Unsigned descending word sums over the transformed alphabet."""
    ys = y_transform(ring, xs)
    out = []
    for k, a in enumerate(vieta_from_y(ring, ys), start=1):
        out.append(-a if k % 2 else a)
    return out


def complete_s(ring: ScalarRing, xs: Sequence, up_to: int, route: str = "series") -> list:
    """Complete functions S_1..S_m.

    route "series": invert the alternating-sign generating polynomial of
    the elementary family in a truncated series ring (central variable).
    route "words": sum y words with nondecreasing indices.  The two
    agree exactly.
    """
    ys = y_transform(ring, xs)
    if route == "words":
        return [_word_sum_nondecreasing(ring, ys, k) for k in range(1, up_to + 1)]
    if route != "series":
        raise ValueError(f"unknown route {route!r}")
    lambdas = elementary_lambda(ring, xs)
    T = TruncatedSeriesRing(ring, up_to)
    coeffs = [ring.one]
    for i in range(1, up_to + 1):
        if i <= len(lambdas):
            c = lambdas[i - 1]
            coeffs.append(-c if i % 2 else c)
        else:
            coeffs.append(ring.zero)
    inverse = T.invert(T.element(coeffs))
    return [inverse.coeffs[i] for i in range(1, up_to + 1)]


def _word_sum_nondecreasing(ring, ys, k):
    n = len(ys)
    acc = ring.zero
    for word in iter_product(range(n), repeat=k):
        if any(word[i] > word[i + 1] for i in range(k - 1)):
            continue
        term = ring.one
        for idx in word:
            term = term * ys[idx]
        acc = acc + term
    return acc


def descent_set(word: Sequence[int]) -> frozenset:
    """Positions m (1-based) with word[m-1] > word[m]."""
    return frozenset(
        m for m in range(1, len(word)) if word[m - 1] > word[m]
    )


def composition_descents(J: Sequence[int]) -> frozenset:
    """Partial sums of the composition except the last."""
    acc, out = 0, []
    for part in J[:-1]:
        acc += part
        out.append(acc)
    return frozenset(out)


def compositions(m: int):
    """All compositions of m, ordered lexicographically."""
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in compositions(m - first):
            yield (first,) + rest


def ribbon_schur(ring: ScalarRing, xs: Sequence, J: Sequence[int]) -> object:
    """Sum of y words whose descent set matches the composition exactly."""
    if not J or any(p < 1 for p in J):
        raise ValueError("composition parts must be positive")
    ys = y_transform(ring, xs)
    return ribbon_from_ys(ring, ys, J)


def ribbon_from_ys(ring: ScalarRing, ys: Sequence, J: Sequence[int]):
    m = sum(J)
    want = composition_descents(J)
    n = len(ys)
    acc = ring.zero
    for word in iter_product(range(n), repeat=m):
        if descent_set(word) != want:
            continue
        term = ring.one
        for idx in word:
            term = term * ys[idx]
        acc = acc + term
    return acc


def lambda_word_value(ring: ScalarRing, ys: Sequence, J: Sequence[int]):
    """Value of the product Lambda_{j_1} ... Lambda_{j_k} over given ys."""
    n = len(ys)
    acc = ring.one
    for part in J:
        lam = ring.zero
        for combo in _combinations(range(n), part):
            word = ring.one
            for idx in reversed(combo):
                word = word * ys[idx]
            lam = lam + word
        acc = acc * lam
    return acc


def dual_shift_ring(d: int) -> TruncatedSeriesRing:
    """Order-1 series over d x d matrices: the dual-number scalars used
    to read off directional derivatives exactly."""
    return TruncatedSeriesRing(SquareMatrices(d), 1)


def shift_by_unit(T: TruncatedSeriesRing, x):
    """x + t * identity inside the dual-number ring."""
    return T.element([x, T.base.one])
