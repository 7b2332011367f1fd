"""Exact integer linear algebra: Smith normal form and homology of complexes.

All arithmetic is over the rational integers with Python's arbitrary-precision
``int``.  No floats enter at any point, so every rank, invariant factor, and
quotient computed here is exact.  Matrices are immutable; the functions below
are pure and deterministic, so results can be compared byte-for-byte across
runs.

The Smith normal form drives everything else: cokernels give finitely
generated abelian groups in invariant-factor form, kernels give free ranks,
and ``chain_homology`` combines the two to compute homology of a complex at a
given spot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotAComplex, ShapeMismatch

__all__ = [
    "FgAbelianGroup",
    "IntMatrix",
    "SnfResult",
    "chain_homology",
    "cokernel",
    "determinant",
    "invariant_factors",
    "kernel_basis",
    "kernel_rank",
    "matrix_rank",
    "smith_normal_form",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row-major as a flat tuple.

    >>> m = IntMatrix.from_rows([[1, 2], [3, 4]])
    >>> m.entry(1, 0)
    3
    >>> (m @ IntMatrix.identity(2)) == m
    True
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, "
                f"got {len(self.entries)}"
            )
        for x in self.entries:
            if type(x) is not int:
                raise ShapeMismatch(f"non-integer entry {x!r}")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
        elif cols is not None:
            width = cols
        else:
            width = 0
        for r in rows:
            if len(r) != width:
                raise ShapeMismatch("ragged rows")
        flat = tuple(int(x) for row in rows for x in row)
        return IntMatrix(len(rows), width, flat)

    @staticmethod
    def zeros(rows: int, cols: int) -> "IntMatrix":
        return IntMatrix(rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return IntMatrix(n, n, tuple(flat))

    @staticmethod
    def diagonal(diag: Iterable[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        d = list(diag)
        r = len(d) if rows is None else rows
        c = len(d) if cols is None else cols
        flat = [0] * (r * c)
        for i, x in enumerate(d):
            flat[i * c + i] = int(x)
        return IntMatrix(r, c, tuple(flat))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        flat = tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows))
        return IntMatrix(self.cols, self.rows, flat)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        a, b = self.to_rows(), other.to_rows()
        out = [0] * (self.rows * other.cols)
        for i in range(self.rows):
            ai = a[i]
            base = i * other.cols
            for k in range(self.cols):
                x = ai[k]
                if x:
                    bk = b[k]
                    for j in range(other.cols):
                        out[base + j] += x * bk[j]
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("shape mismatch in addition")
        return IntMatrix(self.rows, self.cols, tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeMismatch("shape mismatch in subtraction")
        return IntMatrix(self.rows, self.cols, tuple(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-x for x in self.entries))

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(c * x for x in self.entries))

    def power(self, k: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ShapeMismatch("power of a non-square matrix")
        if k < 0:
            raise ValueError("negative matrix power")
        result = IntMatrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ShapeMismatch("hstack needs equal row counts")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return IntMatrix.from_rows(rows, cols=self.cols + other.cols)

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows)) + "]"


@dataclass(frozen=True)
class SnfResult:
    """Smith decomposition U @ M @ V == D.

    ``U`` and ``V`` are unimodular, ``D`` is diagonal with nonnegative entries
    satisfying the divisibility chain d1 | d2 | ... .
    """

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    def diagonal(self) -> list[int]:
        n = min(self.D.rows, self.D.cols)
        return [self.D.entry(i, i) for i in range(n)]

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def _snf_inner(mat: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix, IntMatrix]:
    """Return (U, D, V, Vinv) with U @ mat @ V == D and Vinv == V^-1.

    Pivots are chosen by minimal absolute value with the lowest (row, col)
    index breaking ties; this keeps intermediate entries small and makes the
    decomposition deterministic.
    """
    m, n = mat.rows, mat.cols
    a = mat.to_rows()
    u = IntMatrix.identity(m).to_rows()
    v = IntMatrix.identity(n).to_rows()
    vinv = IntMatrix.identity(n).to_rows()

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    def add_row(i: int, j: int, q: int) -> None:
        # row_i += q * row_j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def swap_cols(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    def add_col(j: int, i: int, q: int) -> None:
        # col_j += q * col_i; the inverse transform adds -q * row_j to row_i,
        # so Vinv picks up +q * row_j on row_i after inverting the sign twice.
        for row in a:
            row[j] += q * row[i]
        for row in v:
            row[j] += q * row[i]
        vinv[i] = [x - q * y for x, y in zip(vinv[i], vinv[j])]

    t = 0
    bound = min(m, n)
    while t < bound:
        # Locate the minimal-absolute-value nonzero entry of the trailing block.
        best: tuple[int, int] | None = None
        best_abs = 0
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best_abs):
                    best = (i, j)
                    best_abs = abs(x)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        if a[t][t] < 0:
            negate_row(t)
        d = a[t][t]

        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                add_row(i, t, -(a[i][t] // d))
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                add_col(j, t, -(a[t][j] // d))
                if a[t][j]:
                    dirty = True
        if dirty:
            continue

        # Row and column are clear; enforce that d divides the trailing block.
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % d:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(t, culprit, 1)
            continue
        t += 1

    return (
        IntMatrix.from_rows(u, cols=m),
        IntMatrix.from_rows(a, cols=n),
        IntMatrix.from_rows(v, cols=n),
        IntMatrix.from_rows(vinv, cols=n),
    )


def smith_normal_form(mat: IntMatrix) -> SnfResult:
    """Diagonalize ``mat`` over the integers.

    >>> res = smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]]))
    >>> res.diagonal()
    [2, 4]
    >>> res.U @ IntMatrix.from_rows([[2, 4], [6, 8]]) @ res.V == res.D
    True
    """
    u, d, v, _ = _snf_inner(mat)
    return SnfResult(U=u, D=d, V=v)


def invariant_factors(mat: IntMatrix) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    return [d for d in smith_normal_form(mat).diagonal() if d != 0]


def matrix_rank(mat: IntMatrix) -> int:
    return smith_normal_form(mat).rank()


def kernel_rank(mat: IntMatrix) -> int:
    """Rank of the kernel lattice, i.e. cols minus rank."""
    return mat.cols - matrix_rank(mat)


def kernel_basis(mat: IntMatrix) -> IntMatrix:
    """Columns form a basis of ker(mat) as a direct summand of Z^cols."""
    _, d, v, _ = _snf_inner(mat)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d.entry(i, i) != 0)
    rows = [[v.entry(i, j) for j in range(r, mat.cols)] for i in range(mat.cols)]
    return IntMatrix.from_rows(rows, cols=mat.cols - r)


def determinant(mat: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if mat.rows != mat.cols:
        raise ShapeMismatch("determinant of a non-square matrix")
    n = mat.rows
    if n == 0:
        return 1
    a = mat.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot_row = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot_row is None:
                return 0
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _canonical_torsion(orders: Iterable[int]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of cyclic groups Z/o for o in orders.

    Computed as the Smith form of the diagonal matrix of the orders, which
    recombines arbitrary cyclic orders into a divisibility chain without any
    integer factorization.
    """
    relevant = [o for o in orders if o > 1]
    if not relevant:
        return ()
    diag = IntMatrix.diagonal(relevant)
    return tuple(d for d in smith_normal_form(diag).diagonal() if d > 1)


@dataclass(frozen=True)
class FgAbelianGroup:
    """Finitely generated abelian group in canonical form.

    ``rank`` counts the free summands; ``torsion`` lists invariant factors,
    each at least 2, each dividing the next.  Equality of instances is
    isomorphism of the groups they denote.

    >>> FgAbelianGroup.cyclic(6).direct_sum(FgAbelianGroup.cyclic(4)).torsion
    (2, 12)
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError(f"negative rank {self.rank}")
        previous = None
        for t in self.torsion:
            if type(t) is not int or t < 2:
                raise ValueError(f"invariant factor {t!r} must be an integer >= 2")
            if previous is not None and t % previous:
                raise ValueError(f"invariant factors {previous}, {t} break the divisibility chain")
            previous = t

    @staticmethod
    def zero() -> "FgAbelianGroup":
        return FgAbelianGroup(0, ())

    @staticmethod
    def free(rank: int) -> "FgAbelianGroup":
        return FgAbelianGroup(rank, ())

    @staticmethod
    def cyclic(order: int) -> "FgAbelianGroup":
        if order < 2:
            raise ValueError("cyclic torsion group needs order >= 2")
        return FgAbelianGroup(0, (order,))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_torsion_free(self) -> bool:
        return not self.torsion

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup(self.rank + other.rank, _canonical_torsion(self.torsion + other.torsion))

    def tensor(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        """Tensor product over Z, in canonical form.

        Free parts multiply; Z/a (x) Z/b is Z/gcd(a, b); Z/a (x) Z^r is
        (Z/a)^r.
        """
        orders: list[int] = []
        orders.extend(d for d in self.torsion for _ in range(other.rank))
        orders.extend(e for e in other.torsion for _ in range(self.rank))
        orders.extend(math.gcd(d, e) for d in self.torsion for e in other.torsion)
        return FgAbelianGroup(self.rank * other.rank, _canonical_torsion(orders))

    def tor(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        """Tor_1 over Z: free parts drop out, Tor(Z/a, Z/b) is Z/gcd(a, b)."""
        orders = [math.gcd(d, e) for d in self.torsion for e in other.torsion]
        return FgAbelianGroup(0, _canonical_torsion(orders))

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(mat: IntMatrix) -> FgAbelianGroup:
    """The quotient Z^rows / im(mat), in canonical form.

    >>> str(cokernel(IntMatrix.from_rows([[2, 4], [6, 8]])))
    'Z/2 + Z/4'
    """
    diag = smith_normal_form(mat).diagonal()
    r = sum(1 for d in diag if d != 0)
    return FgAbelianGroup(mat.rows - r, tuple(d for d in diag if d > 1))


def chain_homology(boundary_in: IntMatrix, boundary_out: IntMatrix) -> FgAbelianGroup:
    """Homology ker(boundary_in) / im(boundary_out) at the middle spot.

    ``boundary_in`` maps the chain group in question down one degree and
    ``boundary_out`` maps into it from one degree up.  Their composite must be
    zero.

    The kernel of ``boundary_in`` is computed as a direct summand via the
    Smith form, ``boundary_out`` is rewritten in that kernel basis, and the
    quotient is the cokernel of the rewritten map.

    >>> z = IntMatrix.zeros(1, 1)
    >>> str(chain_homology(z, IntMatrix.from_rows([[2]])))
    'Z/2'
    """
    if boundary_in.cols != boundary_out.rows:
        raise DimensionMismatch(
            f"boundary shapes {boundary_in.rows}x{boundary_in.cols} and "
            f"{boundary_out.rows}x{boundary_out.cols} do not chain"
        )
    if not (boundary_in @ boundary_out).is_zero():
        raise NotAComplex("composite of consecutive boundaries is nonzero")
    _, d, _, vinv = _snf_inner(boundary_in)
    r = sum(1 for i in range(min(d.rows, d.cols)) if d.entry(i, i) != 0)
    transformed = vinv @ boundary_out
    # Rows 0..r-1 of the transformed matrix vanish because the composite is
    # zero and the first r Smith-basis coordinates carry nonzero elementary
    # divisors; the quotient lives entirely in the kernel coordinates.
    restricted = IntMatrix.from_rows(
        [list(transformed.row(i)) for i in range(r, boundary_in.cols)],
        cols=boundary_out.cols,
    )
    return cokernel(restricted)
