"""Exact scalars and dense matrices.

Two scalar domains are supported: arbitrary-precision rationals and prime
fields F_p. Every matrix carries its field descriptor and all operations
refuse to mix fields. No floating point exists anywhere in this package;
equality of matrices is literal equality of entries.

Dimension-zero matrices (0 x n and n x 0) are first class: graded
components are frequently zero and their (empty) morphisms must compose
like any others.

Kronecker convention, fixed globally: for f with shape (m', m) and g with
shape (n', n), kron(f, g) has shape (m'n', mn) and

    kron(f, g)[i*n' + j, k*n + l] = f[i, k] * g[j, l].

That is, the left factor owns the outer (coarse) index on both rows and
columns. Every flattening of a tensor product in this package uses this
convention.
"""

from __future__ import annotations

from fractions import Fraction

from sympy import isprime


class RationalField:
    """The field of rationals. Elements are `fractions.Fraction` values."""

    name = "rational"

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into the rational field")

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def format(self, a) -> str:
        return str(a)

    def parse(self, s: str):
        return Fraction(s.strip())

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational-field")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_p for a prime p. Elements are ints in [0, p)."""

    name = "prime"

    def __init__(self, p: int):
        if not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def coerce(self, x):
        if isinstance(x, int):
            return x % self.p
        raise TypeError(f"cannot coerce {x!r} into F_{self.p}")

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def format(self, a) -> str:
        return f"{a % self.p} mod {self.p}"

    def parse(self, s: str):
        s = s.strip()
        if "mod" in s:
            value, modulus = s.split("mod")
            if int(modulus) != self.p:
                raise ValueError(f"scalar {s!r} has modulus {modulus.strip()}, field is F_{self.p}")
            return int(value) % self.p
        return int(s) % self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime-field", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


class SingularMatrixError(ArithmeticError):
    """Raised when a matrix that was claimed invertible is not."""


class Matrix:
    """Immutable dense matrix over a fixed field.

    Entries are stored row-major in a flat tuple. Equality and hashing are
    by (rows, cols, field, entries), so matrices can key dicts and compare
    bit-exactly.
    """

    __slots__ = ("rows", "cols", "field", "data")

    def __init__(self, rows: int, cols: int, field, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        data = tuple(field.coerce(x) for x in entries)
        if len(data) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(data)}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, rows_of_entries, field) -> "Matrix":
        rows = len(rows_of_entries)
        cols = len(rows_of_entries[0]) if rows else 0
        flat = []
        for row in rows_of_entries:
            if len(row) != cols:
                raise ValueError("ragged rows")
            flat.extend(row)
        return cls(rows, cols, field, flat)

    @classmethod
    def identity(cls, n: int, field) -> "Matrix":
        return cls(n, n, field, [field.one if i == j else field.zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int, field) -> "Matrix":
        return cls(rows, cols, field, [field.zero] * (rows * cols))

    @classmethod
    def column(cls, entries, field) -> "Matrix":
        entries = list(entries)
        return cls(len(entries), 1, field, entries)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for {self.rows}x{self.cols}")
        return self.data[i * self.cols + j]

    def row(self, i):
        return self.data[i * self.cols : (i + 1) * self.cols]

    def col(self, j):
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.field == other.field
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.field, self.data))

    def __repr__(self):
        if self.rows * self.cols == 0:
            return f"Matrix({self.rows}x{self.cols} empty)"
        body = "; ".join(" ".join(self.field.format(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def _check_same_field(self, other):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in addition")
        add = self.field.add
        return Matrix(self.rows, self.cols, self.field, [add(a, b) for a, b in zip(self.data, other.data)])

    def __sub__(self, other):
        self._check_same_field(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in subtraction")
        sub = self.field.sub
        return Matrix(self.rows, self.cols, self.field, [sub(a, b) for a, b in zip(self.data, other.data)])

    def __neg__(self):
        neg = self.field.neg
        return Matrix(self.rows, self.cols, self.field, [neg(a) for a in self.data])

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c) if isinstance(c, int) else c
        mul = self.field.mul
        return Matrix(self.rows, self.cols, self.field, [mul(c, a) for a in self.data])

    def __matmul__(self, other):
        return mat_mul(self, other)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            self.field,
            [self.data[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for x in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows, self.field)

    def power(self, n: int) -> "Matrix":
        """n-th power of a square matrix; negative n inverts first."""
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return inverse(self).power(-n)
        result = Matrix.identity(self.rows, self.field)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return result


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product. (m x 0) times (0 x n) is the m x n zero matrix."""
    a._check_same_field(b)
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.rows}x{a.cols} times {b.rows}x{b.cols}")
    field = a.field
    zero, add, mul = field.zero, field.add, field.mul
    out = []
    bt = b.transpose()  # walk b by columns contiguously
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            bcol = bt.row(j)
            acc = zero
            for x, y in zip(arow, bcol):
                if x != zero and y != zero:
                    acc = add(acc, mul(x, y))
            out.append(acc)
    return Matrix(a.rows, b.cols, field, out)


def kron(f: Matrix, g: Matrix) -> Matrix:
    """Kronecker product in the fixed convention (left factor outer).

    kron(f, g)[i*g.rows + j, k*g.cols + l] = f[i, k] * g[j, l].
    """
    f._check_same_field(g)
    field = f.field
    mul = field.mul
    rows, cols = f.rows * g.rows, f.cols * g.cols
    out = [field.zero] * (rows * cols)
    for i in range(f.rows):
        for k in range(f.cols):
            fik = f.data[i * f.cols + k]
            for j in range(g.rows):
                r = i * g.rows + j
                base = r * cols + k * g.cols
                grow = j * g.cols
                for l in range(g.cols):
                    out[base + l] = mul(fik, g.data[grow + l])
    return Matrix(rows, cols, field, out)


def rref(m: Matrix):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    field = m.field
    zero, one = field.zero, field.one
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r >= m.rows:
            break
        pivot_row = None
        for i in range(r, m.rows):
            if rows[i][c] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        scale = field.inv(rows[r][c])
        if scale != one:
            rows[r] = [field.mul(scale, x) for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != zero:
                factor = rows[i][c]
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    flat = [x for row in rows for x in row]
    return Matrix(m.rows, m.cols, field, flat), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def column_echelon(m: Matrix) -> Matrix:
    """Reduced column echelon form with zero columns dropped.

    The result depends only on the column span of m, which makes it the
    canonical representative for comparing subspaces bit-exactly.
    """
    r, pivots = rref(m.transpose())
    cols = [r.row(i) for i in range(len(pivots))]
    return Matrix(len(pivots), m.rows, m.field, [x for c in cols for x in c]).transpose()


def kernel_basis(m: Matrix) -> list[Matrix]:
    """Canonical basis of {v : m v = 0} as a list of column vectors.

    The basis matrix is in reduced column echelon form, so two equal
    kernels always produce identical output.
    """
    return list(_columns(kernel_matrix(m)))


def kernel_matrix(m: Matrix) -> Matrix:
    """Canonical kernel basis packed as the columns of one cols x k matrix."""
    field = m.field
    r, pivots = rref(m)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    if not free:
        return Matrix.zeros(m.cols, 0, field)
    vectors = []
    for j in free:
        v = [field.zero] * m.cols
        v[j] = field.one
        for row_index, p in enumerate(pivots):
            v[p] = field.neg(r[row_index, j])
        vectors.append(v)
    raw = Matrix(len(free), m.cols, field, [x for v in vectors for x in v]).transpose()
    return column_echelon(raw)


def _columns(m: Matrix):
    for j in range(m.cols):
        yield Matrix(m.rows, 1, m.field, m.col(j))


def inverse(m: Matrix) -> Matrix:
    """Exact inverse; raises SingularMatrixError when none exists."""
    if m.rows != m.cols:
        raise ValueError(f"inverse of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    aug = hstack([m, Matrix.identity(n, m.field)])
    r, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
        raise SingularMatrixError(f"matrix of rank {rank(m)} is singular at size {n}")
    return Matrix(n, n, m.field, [r[i, n + j] for i in range(n) for j in range(n)])


def try_inverse(m: Matrix):
    """inverse(m), or None when m is singular (still raises on non-square)."""
    try:
        return inverse(m)
    except SingularMatrixError:
        return None


def solve(a: Matrix, b: Matrix) -> Matrix:
    """Solve a X = b exactly for full-column-rank a; raises if inconsistent.

    b may have several columns; the result has shape a.cols x b.cols.
    """
    a._check_same_field(b)
    if a.rows != b.rows:
        raise ValueError("dimension mismatch in solve")
    aug = hstack([a, b])
    r, pivots = rref(aug)
    n = a.cols
    if any(p >= n for p in pivots):
        raise ValueError("inconsistent system: right-hand side outside the column span")
    if len(pivots) < n:
        raise ValueError("coefficient matrix does not have full column rank")
    rows = [r.row(i)[n:] for i in range(n)]
    return Matrix(n, b.cols, a.field, [x for row in rows for x in row])


def hstack(mats: list[Matrix]) -> Matrix:
    """Concatenate matrices left to right (all with equal row counts)."""
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    field = mats[0].field
    for m in mats:
        if m.rows != rows:
            raise ValueError("row count mismatch in hstack")
        m._check_same_field(mats[0])
    out = []
    for i in range(rows):
        for m in mats:
            out.extend(m.row(i))
    return Matrix(rows, sum(m.cols for m in mats), field, out)


def vstack(mats: list[Matrix]) -> Matrix:
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    for m in mats:
        if m.cols != cols:
            raise ValueError("column count mismatch in vstack")
        m._check_same_field(mats[0])
    out = []
    for m in mats:
        out.extend(m.data)
    return Matrix(sum(m.rows for m in mats), cols, mats[0].field, out)


def block_matrix(row_dims, col_dims, blocks, field) -> Matrix:
    """Assemble a block matrix from a {(i, j): Matrix} dict.

    row_dims and col_dims give the heights and widths of the block grid;
    omitted blocks are zero. Shapes of provided blocks are checked.
    """
    row_offsets = _offsets(row_dims)
    col_offsets = _offsets(col_dims)
    total_rows = row_offsets[-1]
    total_cols = col_offsets[-1]
    out = [field.zero] * (total_rows * total_cols)
    for (bi, bj), block in blocks.items():
        if block.rows != row_dims[bi] or block.cols != col_dims[bj]:
            raise ValueError(
                f"block ({bi},{bj}) has shape {block.rows}x{block.cols}, "
                f"expected {row_dims[bi]}x{col_dims[bj]}"
            )
        if block.field != field:
            raise ValueError("field mismatch in block_matrix")
        r0, c0 = row_offsets[bi], col_offsets[bj]
        for i in range(block.rows):
            base = (r0 + i) * total_cols + c0
            row = block.row(i)
            out[base : base + block.cols] = row
    return Matrix(total_rows, total_cols, field, out)


def _offsets(dims):
    offsets = [0]
    for d in dims:
        offsets.append(offsets[-1] + d)
    return offsets
