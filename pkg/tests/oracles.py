"""Independent oracles used to freeze expected values.

These deliberately avoid the package's computation paths: determinants
by Leibniz permutation sums, ranks by brute minor search, symmetric
functions by direct commutative formulas, continued fractions by nested
Fraction arithmetic.
"""

from fractions import Fraction
from itertools import combinations, permutations


def det_leibniz(rows):
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = Fraction(1)
        for i in range(n):
            term *= Fraction(rows[i][perm[i]])
        total += sign * term
    return total


def rank_by_minors(rows):
    n, m = len(rows), len(rows[0])
    for r in range(min(n, m), 0, -1):
        for rsel in combinations(range(n), r):
            for csel in combinations(range(m), r):
                sub = [[rows[i][j] for j in csel] for i in rsel]
                if det_leibniz(sub) != 0:
                    return r
    return 0


def elementary_classical(xs, k):
    total = Fraction(0)
    for combo in combinations(xs, k):
        term = Fraction(1)
        for v in combo:
            term *= v
        total += term
    return total


def complete_classical(xs, k):
    """Sum over multisets: nondecreasing index words."""
    from itertools import combinations_with_replacement

    total = Fraction(0)
    for combo in combinations_with_replacement(xs, k):
        term = Fraction(1)
        for v in combo:
            term *= v
        total += term
    return total


def ribbon_classical(xs, J):
    """Commutative descent-graded word sum, summed directly."""
    from itertools import product

    m = sum(J)
    want = set()
    acc = 0
    for part in J[:-1]:
        acc += part
        want.add(acc)
    total = Fraction(0)
    for word in product(range(len(xs)), repeat=m):
        descents = {p + 1 for p in range(m - 1) if word[p] > word[p + 1]}
        if descents != want:
            continue
        term = Fraction(1)
        for idx in word:
            term *= xs[idx]
        total += term
    return total


def continued_fraction_tower(diag):
    """a_1 + 1/(a_2 + 1/(... + 1/a_n)) with exact Fractions."""
    acc = Fraction(diag[-1])
    for a in reversed(diag[:-1]):
        acc = Fraction(a) + 1 / acc
    return acc


def vandermonde_ratio_classical(values):
    """Signed alternant ratio matching the corner pivot convention."""
    m = len(values)
    mat = [[Fraction(v) ** (m - r) for v in values] for r in range(1, m + 1)]
    full = det_leibniz(mat)
    sub = det_leibniz([row[: m - 1] for row in mat[1:]])
    return Fraction(-1) ** (1 + m) * full / sub
