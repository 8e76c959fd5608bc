"""Almost-triangular matrices: corner quasideterminants as generalized
continued fractions, convergent numerator/denominator polynomials,
formal-series ratios and the q-series coefficient identity.

An almost-triangular matrix vanishes below the first subdiagonal; the
subdiagonal is -1 in the convergent normal form, or carries arbitrary
invertible entries in the general corner-product identities.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .matrix import NcMatrix
from .qdet import qdet
from .rings import (
    DomainError,
    QRat,
    QRationalFunctions,
    ScalarRing,
    SquareMatrices,
    TruncatedSeriesRing,
)


def almost_triangular(ring: ScalarRing, upper: dict, n: int, subdiag=None) -> NcMatrix:
    """Build the n x n matrix with given entries on and above the
    diagonal, the given subdiagonal (default -1) and zeros below it.

    ``upper`` maps (i, j) with j >= i to ring elements; ``subdiag`` maps
    i to the entry at (i+1, i), defaulting to -1 everywhere.
    """
    minus_one = -ring.one
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if j >= i:
                row.append(ring.coerce(upper[(i, j)]))
            elif j == i - 1:
                row.append(
                    ring.coerce(subdiag[i - 1]) if subdiag is not None else minus_one
                )
            else:
                row.append(ring.zero)
        rows.append(row)
    return NcMatrix(ring, rows, range(1, n + 1), range(1, n + 1))


def random_almost_triangular(ring, n, rng, profile=None, general_subdiag=False):
    upper = {
        (i, j): ring.random_element(rng, profile)
        for i in range(1, n + 1)
        for j in range(i, n + 1)
    }
    subdiag = None
    if general_subdiag:
        from .sampling import sample_invertible_scalar

        subdiag = {
            i: sample_invertible_scalar(ring, rng, profile) for i in range(1, n)
        }
    return almost_triangular(ring, upper, n, subdiag)


def cf_qdet(A: NcMatrix):
    return qdet(A, 1, 1)


def cf_nested(A: NcMatrix):
    """Corner quasideterminant by the explicit nesting
    F_r = a_rr + sum_{j>r} a_rj F_j^{-1} F_{j-1}^{-1} ... F_{r+1}^{-1},
    evaluated bottom-up; the tridiagonal case degenerates to the
    classical a_1 + 1/(a_2 + 1/(...)) tower."""
    ring = A.ring
    labels = list(A.row_labels)
    n = len(labels)
    F: dict[int, object] = {}
    F_inv: dict[int, object] = {}
    for pos in range(n - 1, -1, -1):
        r = labels[pos]
        acc = A.entry(r, r)
        for jpos in range(pos + 1, n):
            j = labels[jpos]
            term = A.entry(r, j)
            for kpos in range(jpos, pos, -1):
                term = term * F_inv[labels[kpos]]
            acc = acc + term
        F[r] = acc
        if pos > 0:
            inv = ring.try_invert(acc)
            if inv is None:
                raise DomainError("nested denominator not invertible", payload=r)
            F_inv[r] = inv
    return F[labels[0]]


def chain_sum(A: NcMatrix, first_row: int, pool: Sequence[int], end: int):
    """sum over subsets {j_1 < ... < j_k} of pool of the word
    a_{first_row, j_1} a_{j_1+1, j_2} ... a_{j_k+1, end}; the empty
    subset contributes the single letter a_{first_row, end}."""
    ring = A.ring
    pool = list(pool)
    acc = ring.zero
    for k in range(len(pool) + 1):
        for subset in combinations(pool, k):
            word = ring.one
            row = first_row
            for j in subset:
                word = word * A.entry(row, j)
                row = j + 1
            word = word * A.entry(row, end)
            acc = acc + word
    return acc


def convergents_explicit(A: NcMatrix):
    """(P_n, Q_n) as the displayed increasing-chain sums."""
    n = A.n_rows
    P = chain_sum(A, 1, range(1, n), n)
    Q = A.ring.one if n == 1 else chain_sum(A, 2, range(2, n), n)
    return P, Q


def convergents_recurrence(A: NcMatrix):
    """All (P_0..P_n, Q_1..Q_n) by the additive recurrences
    P_k = sum_{s<k} P_s a_{s+1,k} and Q_k = sum_{1<=s<k} Q_s a_{s+1,k}."""
    ring = A.ring
    n = A.n_rows
    P = [ring.one]
    for k in range(1, n + 1):
        acc = ring.zero
        for s in range(k):
            acc = acc + P[s] * A.entry(s + 1, k)
        P.append(acc)
    Q = [None, ring.one]
    for k in range(2, n + 1):
        acc = ring.zero
        for s in range(1, k):
            acc = acc + Q[s] * A.entry(s + 1, k)
        Q.append(acc)
    return P, Q


def jacobi_matrix(ring: ScalarRing, diag: Sequence) -> NcMatrix:
    """Tridiagonal normal form: given diagonal, ones above, -1 below."""
    n = len(diag)
    upper = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if j == i:
                upper[(i, j)] = diag[i - 1]
            elif j == i + 1:
                upper[(i, j)] = ring.one
            else:
                upper[(i, j)] = ring.zero
    return almost_triangular(ring, upper, n)


def jacobi_convergents(ring: ScalarRing, diag: Sequence):
    """Three-term recurrences of the tridiagonal case:
    P_k = P_{k-1} a_k + P_{k-2}, Q_k = Q_{k-1} a_k + Q_{k-2}."""
    n = len(diag)
    P = [ring.one]
    if n >= 1:
        P.append(ring.coerce(diag[0]))
    for k in range(2, n + 1):
        P.append(P[k - 1] * ring.coerce(diag[k - 1]) + P[k - 2])
    Q = [None, ring.one]
    if n >= 2:
        Q.append(ring.coerce(diag[1]))
    for k in range(3, n + 1):
        Q.append(Q[k - 1] * ring.coerce(diag[k - 1]) + Q[k - 2])
    return P, Q


# ---------------------------------------------------------------------------
# nilpotent upper-triangular realization of the commutator condition


def heisenberg_diagonal(rng, profile=None, unipotent: bool = True) -> "object":
    """One diagonal entry: identity plus a combination of the three
    strict-upper 3x3 matrix units.  Commutators of two such entries are
    central, multiply to zero, and absorb unipotent diagonal factors;
    all three properties are needed for the descending-product identity.
    ``unipotent=False`` replaces the identity coefficient by a random
    rational (only the commutator conditions survive then)."""
    from .rings import DEFAULT_PROFILE

    profile = profile or DEFAULT_PROFILE
    M3 = SquareMatrices(3)
    alpha, beta, gamma = (profile.draw_fraction(rng) for _ in range(3))
    delta = Fraction(1) if unipotent else profile.draw_fraction(rng)
    return (
        M3.unit(1, 2) * M3.scalar_matrix(alpha)
        + M3.unit(2, 3) * M3.scalar_matrix(beta)
        + M3.unit(1, 3) * M3.scalar_matrix(gamma)
        + M3.scalar_matrix(delta)
    )


def commutator_matrix(diag: Sequence) -> NcMatrix:
    """Almost-triangular matrix whose strict upper entries are the
    commutators a_{ij} = a_jj a_ii - a_ii a_jj of its diagonal."""
    M3 = SquareMatrices(3)
    n = len(diag)
    upper = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            if i == j:
                upper[(i, j)] = diag[i - 1]
            else:
                upper[(i, j)] = diag[j - 1] * diag[i - 1] - diag[i - 1] * diag[j - 1]
    return almost_triangular(M3, upper, n)


def descending_diagonal_product(diag: Sequence):
    M3 = SquareMatrices(3)
    acc = M3.one
    for a in reversed(list(diag)):
        acc = acc * a  # builds a_nn ... a_11 left to right
    return acc


# ---------------------------------------------------------------------------
# formal-series ratio over the t-graded instantiation


def graded_series_matrix(d: int, order: int, size: int, rng, profile=None):
    """Size x size almost-triangular matrix over order-truncated series
    whose diagonal entries are 1 + t M and strict upper entries t M."""
    base = SquareMatrices(d)
    T = TruncatedSeriesRing(base, order)
    upper = {}
    for i in range(1, size + 1):
        for j in range(i, size + 1):
            m = base.random_element(rng, profile)
            lead = base.one if i == j else base.zero
            upper[(i, j)] = T.element([lead, m][: order + 1])
    return almost_triangular(T, upper, size)


def series_numerator(A: NcMatrix):
    """Truncation of the infinite numerator series: terms over rows
    r = 1..size, chains bounded strictly below r-1, each closed by the
    descending inverse tail of the leading diagonal."""
    ring = A.ring
    n = A.n_rows
    acc = ring.zero
    inv_tail = ring.one
    for r in range(1, n + 1):
        inv_tail = ring.invert(A.entry(r, r)) * inv_tail
        term = chain_sum(A, 1, range(1, r - 1), r)
        acc = acc + term * inv_tail
    return acc


def series_denominator(A: NcMatrix):
    ring = A.ring
    n = A.n_rows
    acc = ring.zero
    inv_tail = ring.invert(A.entry(1, 1))
    for r in range(2, n + 1):
        inv_tail = ring.invert(A.entry(r, r)) * inv_tail
        term = chain_sum(A, 2, range(2, r - 1), r)
        acc = acc + term * inv_tail
    return acc


# ---------------------------------------------------------------------------
# corner products of a general almost-triangular matrix


def d_product(B: NcMatrix, start: int, end: int):
    """D(start..end): alternating product of trailing-corner
    quasideterminants and inverted subdiagonal entries of the principal
    submatrix on labels start..end; D over an empty range is one."""
    ring = B.ring
    if start > end:
        return ring.one
    labels = list(range(start, end + 1))
    acc = None
    for k in labels:
        sub = B.select(range(k, end + 1), range(k, end + 1))
        factor = qdet(sub, k, k)
        acc = factor if acc is None else acc * factor
        if k < end:
            acc = acc * ring.invert(B.entry(k + 1, k))
    return acc


def corner_alternating_sum(B: NcMatrix):
    """The corner quasideterminant at (1, n) as an explicit polynomial in
    the entries and inverted subdiagonals: chains of upper entries joined
    by inverted subdiagonal steps, signed by the number of steps."""
    ring = B.ring
    n = B.n_rows
    acc = ring.zero
    for k in range(n):
        for subset in combinations(range(1, n), k):
            word = ring.one
            row = 1
            for j in subset:
                word = word * B.entry(row, j) * ring.invert(B.entry(j + 1, j))
                row = j + 1
            word = word * B.entry(row, n)
            if k % 2:
                word = -word
            acc = acc + word
    return acc


def general_corner_product(B: NcMatrix, i: int, j: int):
    """Every quasideterminant at (i, j), i <= j, as a product of D values:
    (-1)^(j-i) [b_{i,i-1}] D(1..i-1)^{-1} D(1..n) D(j+1..n)^{-1} [b_{j+1,j}],
    the bracketed subdiagonal factors present only when the flanking
    ranges are nonempty."""
    ring = B.ring
    n = B.n_rows
    if i > j:
        raise ValueError("defined only on and above the diagonal")
    value = d_product(B, 1, n)
    if i > 1:
        value = ring.invert(d_product(B, 1, i - 1)) * value
        value = B.entry(i, i - 1) * value
    if j < n:
        value = value * ring.invert(d_product(B, j + 1, n))
        value = value * B.entry(j + 1, j)
    if (j - i) % 2:
        value = -value
    return value


# ---------------------------------------------------------------------------
# the q-series coefficient identity


def qz_series_ring(order: int) -> TruncatedSeriesRing:
    return TruncatedSeriesRing(QRationalFunctions(), order, variable="z")


def rr_continued_fraction(order: int, depth: int):
    """Depth-truncated tower 1/(1 + q z/(1 + q^2 z/(1 + ...))) as an
    exact series in z with rational-function coefficients in q."""
    T = qz_series_ring(order)
    F = T.one
    base = T.base
    z = T.variable_element()
    for i in range(depth, 0, -1):
        qi = T.element([base.q(i)])
        F = T.one + (qi * z) * T.invert(F)
    return T.invert(F)


def _q_factorial_denominator(k: int) -> QRat:
    """(1 - q)(1 - q^2)...(1 - q^k)."""
    acc = (Fraction(1),)
    for i in range(1, k + 1):
        factor = [Fraction(1)] + [Fraction(0)] * (i - 1) + [Fraction(-1)]
        from .rings import poly_mul

        acc = poly_mul(acc, tuple(factor))
    return QRat(acc)


def rr_ratio_sides(order: int):
    """The closed-form numerator and denominator series: coefficients
    q^{k(k+1)} resp. q^{k^2} over (1-q)...(1-q^k)."""
    T = qz_series_ring(order)
    base = T.base
    num = [base.one]
    den = [base.one]
    for k in range(1, order + 1):
        fac = base.try_invert(_q_factorial_denominator(k))
        num.append(base.q(k * (k + 1)) * fac)
        den.append(base.q(k * k) * fac)
    return T.element(num), T.element(den)


def rr_sides(order: int, depth: Optional[int] = None):
    """(continued-fraction series, closed-form ratio series)."""
    depth = depth if depth is not None else order + 2
    lhs = rr_continued_fraction(order, depth)
    num, den = rr_ratio_sides(order)
    T = num.ring
    rhs = num * T.invert(den)
    return lhs, rhs
