"""Exact linear algebra over the integers.

Matrices are immutable, row-major, and hold arbitrary-precision Python ints,
so nothing here can overflow.  Throughout the package a matrix acts on column
vectors: ``A @ B`` means "apply B, then A", and the *column lattice* of a
matrix is the set of integer combinations of its columns.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd


@dataclass(frozen=True)
class IntMatrix:
    """An immutable ``rows x cols`` integer matrix, stored row-major.

    >>> a = IntMatrix.from_rows([[1, 2], [3, 4]])
    >>> a @ a
    IntMatrix([[7, 10], [15, 22]])
    >>> a.apply((1, 0))
    (1, 3)
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        for e in self.entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError("matrix entries must be Python ints")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rows(cls, rows, cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
        else:
            width = 0 if cols is None else cols
        if cols is not None and rows and width != cols:
            raise ValueError(f"rows have length {width}, expected {cols}")
        flat = tuple(int(e) for row in rows for e in row)
        return cls(len(rows), width, flat)

    @classmethod
    def from_columns(cls, columns, rows: int | None = None) -> "IntMatrix":
        columns = [list(c) for c in columns]
        if columns:
            height = len(columns[0])
            if any(len(c) != height for c in columns):
                raise ValueError("ragged columns")
        else:
            height = 0 if rows is None else rows
        if rows is not None and columns and height != rows:
            raise ValueError(f"columns have length {height}, expected {rows}")
        flat = tuple(int(columns[j][i]) for i in range(height) for j in range(len(columns)))
        return cls(height, len(columns), flat)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def column_vector(cls, vec) -> "IntMatrix":
        vec = tuple(int(x) for x in vec)
        return cls(len(vec), 1, vec)

    # -- access ------------------------------------------------------------

    def at(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def take_rows(self, indices) -> "IntMatrix":
        indices = list(indices)
        return IntMatrix.from_rows([self.row(i) for i in indices], cols=self.cols)

    def take_columns(self, indices) -> "IntMatrix":
        indices = list(indices)
        return IntMatrix.from_columns([self.column(j) for j in indices], rows=self.rows)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()})"

    # -- arithmetic ---------------------------------------------------------

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if not isinstance(other, IntMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        flat = []
        for i in range(self.rows):
            row = self.row(i)
            for j in range(other.cols):
                flat.append(sum(row[k] * other.entries[k * other.cols + j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(flat))

    def apply(self, vec) -> tuple[int, ...]:
        """The image of a column vector, as a tuple."""
        vec = tuple(vec)
        if len(vec) != self.cols:
            raise ValueError(f"vector of length {len(vec)} for {self.rows}x{self.cols} matrix")
        return tuple(
            sum(self.entries[i * self.cols + k] * vec[k] for k in range(self.cols))
            for i in range(self.rows)
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scaled(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(k * a for a in self.entries))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows([list(self.column(j)) for j in range(self.cols)], cols=self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        flat = []
        for i in range(self.rows):
            flat.extend(self.row(i))
            flat.extend(other.row(i))
        return IntMatrix(self.rows, self.cols + other.cols, tuple(flat))

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def kron(self, other: "IntMatrix") -> "IntMatrix":
        """Kronecker product: entry at ((i, k), (j, l)) is self[i,j] * other[k,l]."""
        r, c = self.rows * other.rows, self.cols * other.cols
        flat = [0] * (r * c)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i * self.cols + j]
                if a == 0:
                    continue
                for k in range(other.rows):
                    base = (i * other.rows + k) * c + j * other.cols
                    orow = other.row(k)
                    for l in range(other.cols):
                        flat[base + l] = a * orow[l]
        return IntMatrix(r, c, tuple(flat))

    def det(self) -> int:
        """Determinant by the Bareiss fraction-free algorithm.

        >>> IntMatrix.from_rows([[2, 0], [1, 3]]).det()
        6
        """
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = self.to_rows()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k]:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


def hstack(*mats: IntMatrix) -> IntMatrix:
    if not mats:
        raise ValueError("hstack of nothing")
    out = mats[0]
    for m in mats[1:]:
        out = out.hstack(m)
    return out


def vstack(*mats: IntMatrix) -> IntMatrix:
    if not mats:
        raise ValueError("vstack of nothing")
    out = mats[0]
    for m in mats[1:]:
        out = out.vstack(m)
    return out


def block_diagonal(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    top = a.hstack(IntMatrix.zeros(a.rows, b.cols))
    bot = IntMatrix.zeros(b.rows, a.cols).hstack(b)
    return top.vstack(bot)


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b) >= 0``.

    >>> extended_gcd(12, -8)
    (4, -1, -2)
    """
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# -- Smith normal form ------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """Unimodular U, V and diagonal S with ``U @ A @ V == S``.

    The diagonal is nonnegative, each entry divides the next, and zeros come
    last.
    """

    u: IntMatrix
    s: IntMatrix
    v: IntMatrix

    def diagonal(self) -> tuple[int, ...]:
        n = min(self.s.rows, self.s.cols)
        return tuple(self.s.at(i, i) for i in range(n))

    def rank(self) -> int:
        return sum(1 for d in self.diagonal() if d != 0)


def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _add_row(m, dst, src, q):
    if q:
        m[dst] = [a + q * b for a, b in zip(m[dst], m[src])]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _add_col(m, dst, src, q):
    if q:
        for row in m:
            row[dst] += q * row[src]


def _smith(a: IntMatrix) -> SmithDecomposition:
    m, n = a.rows, a.cols
    s = a.to_rows()
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    for t in range(min(m, n)):
        # pivot: entry of least absolute value in the remaining block
        best, pi, pj = 0, -1, -1
        for i in range(t, m):
            for j in range(t, n):
                e = s[i][j]
                if e and (best == 0 or abs(e) < best):
                    best, pi, pj = abs(e), i, j
        if best == 0:
            break
        if pi != t:
            _swap_rows(s, t, pi)
            _swap_rows(u, t, pi)
        if pj != t:
            _swap_cols(s, t, pj)
            _swap_cols(v, t, pj)
        while True:
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    if s[i][t]:
                        q = s[i][t] // s[t][t]
                        _add_row(s, i, t, -q)
                        _add_row(u, i, t, -q)
                        if s[i][t]:  # nonzero remainder becomes the smaller pivot
                            _swap_rows(s, t, i)
                            _swap_rows(u, t, i)
                            dirty = True
            dirty = True
            while dirty:
                dirty = False
                for j in range(t + 1, n):
                    if s[t][j]:
                        q = s[t][j] // s[t][t]
                        _add_col(s, j, t, -q)
                        _add_col(v, j, t, -q)
                        if s[t][j]:
                            _swap_cols(s, t, j)
                            _swap_cols(v, t, j)
                            dirty = True
            if any(s[i][t] for i in range(t + 1, m)):
                continue  # a column swap disturbed the cleared column
            # make the pivot divide everything that remains, so the final
            # diagonal automatically forms a divisibility chain
            piv = s[t][t]
            viol = None
            for i in range(t + 1, m):
                if any(s[i][j] % piv for j in range(t + 1, n)):
                    viol = i
                    break
            if viol is None:
                break
            _add_row(s, t, viol, 1)
            _add_row(u, t, viol, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]

    mk = IntMatrix.from_rows
    return SmithDecomposition(mk(u, cols=m), mk(s, cols=n), mk(v, cols=n))


@lru_cache(maxsize=4096)
def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    >>> smith_normal_form(IntMatrix.from_rows([[2, 4], [6, 8]])).diagonal()
    (2, 4)
    """
    return _smith(a)


# -- Hermite normal form -----------------------------------------------------


def _hermite(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    m, n = a.rows, a.cols
    h = a.to_rows()
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    pc = 0  # next pivot column
    for r in range(m):
        if pc == n:
            break
        while True:
            nz = [j for j in range(pc, n) if h[r][j]]
            if not nz:
                break
            jmin = min(nz, key=lambda j: (abs(h[r][j]), j))
            if jmin != pc:
                _swap_cols(h, pc, jmin)
                _swap_cols(u, pc, jmin)
            done = True
            for j in range(pc + 1, n):
                if h[r][j]:
                    q = h[r][j] // h[r][pc]
                    _add_col(h, j, pc, -q)
                    _add_col(u, j, pc, -q)
                    if h[r][j]:
                        done = False
            if done:
                break
        if h[r][pc] == 0:
            continue  # no pivot in this row
        if h[r][pc] < 0:
            for row in h:
                row[pc] = -row[pc]
            for row in u:
                row[pc] = -row[pc]
        piv = h[r][pc]
        for l in range(pc):  # reduce earlier columns: 0 <= h[r][l] < pivot
            q = h[r][l] // piv
            _add_col(h, l, pc, -q)
            _add_col(u, l, pc, -q)
        pc += 1
    mk = IntMatrix.from_rows
    return mk(h, cols=n), mk(u, cols=n)


@lru_cache(maxsize=4096)
def hermite_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form ``(H, U)`` with ``A @ U == H``.

    U is unimodular; H is the canonical lower column echelon form (positive
    pivots, entries left of a pivot reduced into [0, pivot), zero columns
    last), so two matrices span the same column lattice iff their H agree.

    >>> hermite_normal_form(IntMatrix.from_rows([[2, 3]]))[0]
    IntMatrix([[1, 0]])
    """
    return _hermite(a)


def lattice_basis(a: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice (nonzero Hermite columns)."""
    h, _ = hermite_normal_form(a)
    keep = [j for j in range(h.cols) if any(h.column(j))]
    return h.take_columns(keep)


def solve_linear(a: IntMatrix, b) -> tuple[int, ...] | None:
    """An integer solution x of ``A x = b``, or None.

    >>> solve_linear(IntMatrix.from_rows([[2, 4], [6, 8]]), (2, 10))
    (3, -1)
    >>> solve_linear(IntMatrix.from_rows([[2]]), (3,)) is None
    True
    """
    b = tuple(int(x) for x in b)
    if len(b) != a.rows:
        raise ValueError(f"right-hand side of length {len(b)} for {a.rows} rows")
    dec = smith_normal_form(a)
    c = dec.u.apply(b)
    diag = dec.diagonal()
    y = [0] * a.cols
    for i in range(a.rows):
        d = diag[i] if i < len(diag) else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return dec.v.apply(y)


def lattice_contains(a: IntMatrix, vec) -> bool:
    """Whether vec lies in the column lattice of a."""
    return solve_linear(a, vec) is not None


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns forming a basis of the integer kernel ``{x : A x = 0}``.

    >>> kernel_basis(IntMatrix.from_rows([[1, 2, 3]])).cols
    2
    """
    dec = smith_normal_form(a)
    return dec.v.take_columns(range(dec.rank(), a.cols))


def invert_unimodular(a: IntMatrix) -> IntMatrix:
    """Inverse of a determinant-±1 integer matrix."""
    if a.rows != a.cols:
        raise ValueError("only square matrices can be unimodular")
    dec = smith_normal_form(a)
    if dec.s != IntMatrix.identity(a.rows):
        raise ValueError("matrix is not unimodular")
    return dec.v @ dec.u
