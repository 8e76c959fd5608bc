"""Labeled rectangular matrices over a scalar ring.

Rows and columns carry persistent 1-based labels; deletion and selection
preserve the original labels and their order, which is what makes the
index bookkeeping of quasideterminant identities mechanical.  Inversion
swaps the label sets (the inverse of a matrix with rows I and columns J
has rows J and columns I).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactlin import invert_rational
from .rings import DomainError, ScalarRing, TruncatedSeriesRing, SeriesElement


class NcMatrix:
    __slots__ = ("ring", "entries", "row_labels", "col_labels")

    def __init__(self, ring: ScalarRing, entries, row_labels=None, col_labels=None):
        entries = tuple(tuple(ring.coerce(x) for x in row) for row in entries)
        if not entries or not entries[0]:
            raise ValueError("matrix must be nonempty")
        n, m = len(entries), len(entries[0])
        if any(len(r) != m for r in entries):
            raise ValueError("ragged rows")
        row_labels = tuple(row_labels) if row_labels is not None else tuple(range(1, n + 1))
        col_labels = tuple(col_labels) if col_labels is not None else tuple(range(1, m + 1))
        if len(row_labels) != n or len(col_labels) != m:
            raise ValueError("label count mismatch")
        if len(set(row_labels)) != n or len(set(col_labels)) != m:
            raise ValueError("duplicate labels")
        self.ring = ring
        self.entries = entries
        self.row_labels = row_labels
        self.col_labels = col_labels

    # -- shape and access ---------------------------------------------------

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.col_labels)

    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def _row_pos(self, label) -> int:
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown row label {label!r}") from None

    def _col_pos(self, label) -> int:
        try:
            return self.col_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown column label {label!r}") from None

    def entry(self, i, j):
        return self.entries[self._row_pos(i)][self._col_pos(j)]

    def row(self, i):
        return self.entries[self._row_pos(i)]

    def col(self, j):
        pos = self._col_pos(j)
        return tuple(r[pos] for r in self.entries)

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, ring: ScalarRing, n: int, labels=None) -> "NcMatrix":
        labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        return cls(
            ring,
            [
                [ring.one if i == j else ring.zero for j in range(n)]
                for i in range(n)
            ],
            labels,
            labels,
        )

    @classmethod
    def zero(cls, ring: ScalarRing, n: int, m: int, row_labels=None, col_labels=None):
        return cls(
            ring,
            [[ring.zero for _ in range(m)] for _ in range(n)],
            row_labels,
            col_labels,
        )

    @classmethod
    def from_rows(cls, ring, rows, row_labels=None, col_labels=None):
        return cls(ring, rows, row_labels, col_labels)

    # -- submatrices ---------------------------------------------------------

    def delete_row_col(self, p, q) -> "NcMatrix":
        return self.delete_sets([p], [q])

    def delete_sets(self, row_set, col_set) -> "NcMatrix":
        row_set, col_set = set(row_set), set(col_set)
        for lab in row_set:
            self._row_pos(lab)
        for lab in col_set:
            self._col_pos(lab)
        keep_rows = [lab for lab in self.row_labels if lab not in row_set]
        keep_cols = [lab for lab in self.col_labels if lab not in col_set]
        return self.select(keep_rows, keep_cols)

    def select(self, row_subset, col_subset) -> "NcMatrix":
        """Submatrix with the given labels, kept in this matrix's order."""
        rs, cs = set(row_subset), set(col_subset)
        rows = [lab for lab in self.row_labels if lab in rs]
        cols = [lab for lab in self.col_labels if lab in cs]
        if len(rows) != len(rs) or len(cols) != len(cs):
            raise KeyError("selection contains unknown labels")
        rpos = [self._row_pos(lab) for lab in rows]
        cpos = [self._col_pos(lab) for lab in cols]
        return NcMatrix(
            self.ring,
            [[self.entries[r][c] for c in cpos] for r in rpos],
            rows,
            cols,
        )

    def reorder(self, row_order, col_order) -> "NcMatrix":
        """Same matrix with rows/columns permuted; labels travel along."""
        row_order, col_order = tuple(row_order), tuple(col_order)
        if sorted(row_order) != sorted(self.row_labels) or sorted(col_order) != sorted(
            self.col_labels
        ):
            raise ValueError("reorder must permute the existing labels")
        rpos = [self._row_pos(lab) for lab in row_order]
        cpos = [self._col_pos(lab) for lab in col_order]
        return NcMatrix(
            self.ring,
            [[self.entries[r][c] for c in cpos] for r in rpos],
            row_order,
            col_order,
        )

    def block_partition(self, row_sizes: Sequence[int], col_sizes: Sequence[int]):
        """Partition into a grid of submatrices; returns (blocks, row_groups,
        col_groups) where blocks[i][j] is an NcMatrix and the groups are the
        label tuples of each band."""
        if sum(row_sizes) != self.n_rows or sum(col_sizes) != self.n_cols:
            raise ValueError("cut sizes must sum to the dimensions")
        if any(s <= 0 for s in row_sizes) or any(s <= 0 for s in col_sizes):
            raise ValueError("cut sizes must be positive")
        row_groups, pos = [], 0
        for s in row_sizes:
            row_groups.append(self.row_labels[pos : pos + s])
            pos += s
        col_groups, pos = [], 0
        for s in col_sizes:
            col_groups.append(self.col_labels[pos : pos + s])
            pos += s
        blocks = [
            [self.select(rg, cg) for cg in col_groups] for rg in row_groups
        ]
        return blocks, row_groups, col_groups

    # -- one-sided row/column operations --------------------------------------

    def scale_row_left(self, i, lam) -> "NcMatrix":
        pos = self._row_pos(i)
        rows = [
            tuple(lam * x for x in row) if r == pos else row
            for r, row in enumerate(self.entries)
        ]
        return NcMatrix(self.ring, rows, self.row_labels, self.col_labels)

    def scale_col_right(self, j, mu) -> "NcMatrix":
        pos = self._col_pos(j)
        rows = [
            tuple(x * mu if c == pos else x for c, x in enumerate(row))
            for row in self.entries
        ]
        return NcMatrix(self.ring, rows, self.row_labels, self.col_labels)

    def row_op_left(self, target, source, lam) -> "NcMatrix":
        """Add lam * (source row) to the target row, lam multiplying from the left."""
        tpos, spos = self._row_pos(target), self._row_pos(source)
        src = self.entries[spos]
        rows = [
            tuple(x + lam * y for x, y in zip(row, src)) if r == tpos else row
            for r, row in enumerate(self.entries)
        ]
        return NcMatrix(self.ring, rows, self.row_labels, self.col_labels)

    def col_op_right(self, target, source, mu) -> "NcMatrix":
        """Add (source column) * mu to the target column, mu on the right."""
        tpos, spos = self._col_pos(target), self._col_pos(source)
        rows = [
            tuple(
                x + row[spos] * mu if c == tpos else x for c, x in enumerate(row)
            )
            for row in self.entries
        ]
        return NcMatrix(self.ring, rows, self.row_labels, self.col_labels)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "NcMatrix") -> "NcMatrix":
        if self.n_rows != other.n_rows or self.n_cols != other.n_cols:
            raise ValueError("shape mismatch")
        return NcMatrix(
            self.ring,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            self.row_labels,
            self.col_labels,
        )

    def __sub__(self, other: "NcMatrix") -> "NcMatrix":
        return self + (-other)

    def __neg__(self) -> "NcMatrix":
        return NcMatrix(
            self.ring,
            [[-a for a in row] for row in self.entries],
            self.row_labels,
            self.col_labels,
        )

    def __mul__(self, other: "NcMatrix") -> "NcMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError("shape mismatch in product")
        zero = self.ring.zero
        bt = tuple(zip(*other.entries))
        rows = []
        for row in self.entries:
            out = []
            for col in bt:
                acc = zero
                for a, b in zip(row, col):
                    acc = acc + a * b
                out.append(acc)
            rows.append(out)
        return NcMatrix(self.ring, rows, self.row_labels, other.col_labels)

    def scale_left(self, lam) -> "NcMatrix":
        return NcMatrix(
            self.ring,
            [[lam * a for a in row] for row in self.entries],
            self.row_labels,
            self.col_labels,
        )

    def __eq__(self, other):
        return (
            isinstance(other, NcMatrix)
            and self.row_labels == other.row_labels
            and self.col_labels == other.col_labels
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.row_labels, self.col_labels, self.entries))

    def is_identity(self) -> bool:
        if not self.is_square():
            return False
        ring = self.ring
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                want = ring.one if i == j else ring.zero
                if not ring.equals(x, want):
                    return False
        return True

    def is_zero_matrix(self) -> bool:
        ring = self.ring
        return all(ring.is_zero(x) for row in self.entries for x in row)

    # -- inversion ------------------------------------------------------------

    def inverse(self) -> "NcMatrix":
        """Exact two-sided inverse; DomainError when singular.

        Strategy: flatten to one rational matrix when the ring embeds in
        rational matrices; peel truncated series into matrix coefficients
        and invert order by order; otherwise run one-sided elimination
        with invertible-pivot search.
        """
        if not self.is_square():
            raise ValueError("only square matrices can be inverted")
        ring = self.ring
        if ring.flat_dim is not None:
            return self._inverse_flat()
        if isinstance(ring, TruncatedSeriesRing):
            return self._inverse_series()
        return self._inverse_elimination()

    def _inverse_flat(self) -> "NcMatrix":
        ring = self.ring
        k = ring.flat_dim
        n = self.n_rows
        inv = invert_rational(flatten_matrix(self))
        if inv is None:
            raise DomainError("matrix is singular over " + ring.name, payload=self)
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                block = [
                    [inv[i * k + r][j * k + c] for c in range(k)] for r in range(k)
                ]
                row.append(ring.unflatten(block))
            rows.append(row)
        return NcMatrix(ring, rows, self.col_labels, self.row_labels)

    def _inverse_series(self) -> "NcMatrix":
        ring: TruncatedSeriesRing = self.ring  # type: ignore[assignment]
        base = ring.base
        L = ring.order
        n = self.n_rows
        coeff_mats = [
            NcMatrix(
                base,
                [[self.entries[i][j].coeffs[k] for j in range(n)] for i in range(n)],
            )
            for k in range(L + 1)
        ]
        b0 = coeff_mats[0].inverse()
        out = [b0]
        for k in range(1, L + 1):
            acc = None
            for i in range(1, k + 1):
                term = coeff_mats[i] * out[k - i]
                acc = term if acc is None else acc + term
            out.append(-(b0 * acc))
        rows = [
            [
                SeriesElement(ring, [out[k].entries[i][j] for k in range(L + 1)])
                for j in range(n)
            ]
            for i in range(n)
        ]
        return NcMatrix(ring, rows, self.col_labels, self.row_labels)

    def _inverse_elimination(self) -> "NcMatrix":
        ring = self.ring
        n = self.n_rows
        a = [list(row) for row in self.entries]
        x = [
            [ring.one if i == j else ring.zero for j in range(n)] for i in range(n)
        ]
        for col in range(n):
            pivot_row, pivot_inv = None, None
            for r in range(col, n):
                cand = ring.try_invert(a[r][col])
                if cand is not None:
                    pivot_row, pivot_inv = r, cand
                    break
            if pivot_row is None:
                raise DomainError(
                    "no invertible pivot during elimination over " + ring.name,
                    payload=self,
                )
            a[col], a[pivot_row] = a[pivot_row], a[col]
            x[col], x[pivot_row] = x[pivot_row], x[col]
            a[col] = [pivot_inv * v for v in a[col]]
            x[col] = [pivot_inv * v for v in x[col]]
            for r in range(n):
                if r == col:
                    continue
                factor = a[r][col]
                if ring.is_zero(factor):
                    continue
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
                x[r] = [v - factor * w for v, w in zip(x[r], x[col])]
        return NcMatrix(ring, x, self.col_labels, self.row_labels)

    # -- serialization ---------------------------------------------------------

    def serialize(self) -> dict:
        return {
            "ring": self.ring.spec(),
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "entries": [[self.ring.serialize(x) for x in row] for row in self.entries],
        }

    @classmethod
    def deserialize(cls, obj: dict) -> "NcMatrix":
        from .rings import ring_from_spec

        ring = ring_from_spec(obj["ring"])
        entries = [[ring.deserialize(x) for x in row] for row in obj["entries"]]
        return cls(ring, entries, obj["row_labels"], obj["col_labels"])

    def __repr__(self):
        return (
            f"NcMatrix({self.ring.name}, rows={self.row_labels}, "
            f"cols={self.col_labels})"
        )


def flatten_matrix(A: NcMatrix) -> list:
    """Expand a matrix over a rational-embeddable ring into one plain
    Fraction matrix (block structure forgotten)."""
    k = A.ring.flat_dim
    if k is None:
        raise TypeError(f"{A.ring.name} has no rational embedding")
    n, m = A.n_rows, A.n_cols
    big = [[Fraction(0)] * (m * k) for _ in range(n * k)]
    for i in range(n):
        for j in range(m):
            block = A.ring.flatten(A.entries[i][j])
            for r in range(k):
                for c in range(k):
                    big[i * k + r][j * k + c] = block[r][c]
    return big


def unflatten_matrix(ring, big, n_rows: int, n_cols: int, row_labels=None, col_labels=None) -> NcMatrix:
    """Inverse of flatten_matrix for a given target shape."""
    k = ring.flat_dim
    rows = [
        [
            ring.unflatten(
                [[big[i * k + r][j * k + c] for c in range(k)] for r in range(k)]
            )
            for j in range(n_cols)
        ]
        for i in range(n_rows)
    ]
    return NcMatrix(ring, rows, row_labels, col_labels)


def row_times_matrix(row: Sequence, mat: NcMatrix) -> list:
    """Row vector times matrix, products taken as row[k] * entry."""
    if len(row) != mat.n_rows:
        raise ValueError("shape mismatch")
    out = []
    for c in range(mat.n_cols):
        acc = mat.ring.zero
        for k, x in enumerate(row):
            acc = acc + x * mat.entries[k][c]
        out.append(acc)
    return out


def matrix_times_col(mat: NcMatrix, col: Sequence) -> list:
    if len(col) != mat.n_cols:
        raise ValueError("shape mismatch")
    out = []
    for r in range(mat.n_rows):
        acc = mat.ring.zero
        for k, x in enumerate(col):
            acc = acc + mat.entries[r][k] * x
        out.append(acc)
    return out


def matrix_from_expressions(obj: dict) -> NcMatrix:
    """Build a rational matrix from the JSON file format
    {"rows": n, "cols": m, "entries": [[expr, ...], ...]} where each
    entry is an expression string over integers (the grammar with
    + - *, parentheses and inv) or a plain integer."""
    from .formula import evaluate, free_vars, parse
    from .rings import Rationals

    ring = Rationals()
    n, m = obj["rows"], obj["cols"]
    entries = obj["entries"]
    if len(entries) != n or any(len(row) != m for row in entries):
        raise ValueError("entry grid does not match the declared shape")
    rows = []
    for row in entries:
        out = []
        for cell in row:
            if isinstance(cell, int):
                out.append(Fraction(cell))
                continue
            tree = parse(cell)
            names = free_vars(tree)
            if names:
                raise ValueError(
                    f"matrix entries must be closed expressions; found variables {sorted(names)}"
                )
            out.append(evaluate(tree, {}, ring))
        rows.append(out)
    return NcMatrix(ring, rows)


def matrix_to_expressions(A: NcMatrix) -> dict:
    from .rings import format_fraction

    return {
        "rows": A.n_rows,
        "cols": A.n_cols,
        "entries": [[format_fraction(x) for x in row] for row in A.entries],
    }


class MatrixRing(ScalarRing):
    """Ring of n x n matrices over a base ring, used as a single scalar.

    Elements are square NcMatrix values with canonical labels 1..n.  This
    is the lifted ring in which a matrix is substituted for the central
    variable of its own characteristic expressions, and the block ring of
    the heredity identities for uniform partitions.
    """

    def __init__(self, base: ScalarRing, n: int):
        if n < 1:
            raise ValueError("n must be >= 1")
        self.base = base
        self.n = n
        self.name = f"M{n}({base.name})"
        self.flat_dim = base.flat_dim * n if base.flat_dim is not None else None

    @property
    def zero(self):
        return NcMatrix.zero(self.base, self.n, self.n)

    @property
    def one(self):
        return NcMatrix.identity(self.base, self.n)

    def lift(self, x):
        """Embed a base scalar as x times the identity matrix."""
        return NcMatrix(
            self.base,
            [
                [x if i == j else self.base.zero for j in range(self.n)]
                for i in range(self.n)
            ],
        )

    def try_invert(self, a: NcMatrix):
        try:
            return a.inverse()
        except DomainError:
            return None

    def from_int(self, m: int):
        return self.lift(self.base.from_int(m))

    def random_element(self, rng, profile=None):
        return NcMatrix(
            self.base,
            [
                [self.base.random_element(rng, profile) for _ in range(self.n)]
                for _ in range(self.n)
            ],
        )

    def serialize(self, a: NcMatrix):
        return [[self.base.serialize(x) for x in row] for row in a.entries]

    def deserialize(self, obj):
        return NcMatrix(
            self.base, [[self.base.deserialize(x) for x in row] for row in obj]
        )

    def spec(self):
        return {"kind": "matrix-ring", "base": self.base.spec(), "n": self.n}

    def flatten(self, a: NcMatrix):
        k = self.base.flat_dim
        if k is None:
            raise TypeError("base ring has no rational embedding")
        n = self.n
        big = [[Fraction(0)] * (n * k) for _ in range(n * k)]
        for i in range(n):
            for j in range(n):
                block = self.base.flatten(a.entries[i][j])
                for r in range(k):
                    for c in range(k):
                        big[i * k + r][j * k + c] = block[r][c]
        return big

    def unflatten(self, rows):
        k = self.base.flat_dim
        n = self.n
        return NcMatrix(
            self.base,
            [
                [
                    self.base.unflatten(
                        [[rows[i * k + r][j * k + c] for c in range(k)] for r in range(k)]
                    )
                    for j in range(n)
                ]
                for i in range(n)
            ],
        )
