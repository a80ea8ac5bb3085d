"""Exact linear algebra over the rationals and the integers.

Everything here is arbitrary-precision and exact; there is no floating
point anywhere in the package.  Rational matrices carry
``fractions.Fraction`` entries, integer matrices carry Python ints.
Matrices are immutable after construction and safe to share.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class RationalMatrix:
    """Dense matrix with exact rational entries, row-major."""

    __slots__ = ("rows", "cols", "data", "_rref")

    def __init__(self, entries: Sequence[Sequence], _shape: Optional[tuple] = None) -> None:
        data = tuple(tuple(as_fraction(x) for x in row) for row in entries)
        if data:
            self.rows = len(data)
            self.cols = len(data[0])
            if _shape is not None and _shape != (self.rows, self.cols):
                raise ValueError("shape hint mismatch")
        else:
            # empty row list: the column count must come from the hint
            self.rows, self.cols = _shape if _shape is not None else (0, 0)
        if any(len(row) != self.cols for row in data):
            raise ValueError("ragged rows")
        self.data = data
        self._rref = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        zero = Fraction(0)
        return cls([[zero] * cols for _ in range(rows)], _shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls([[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: Optional[int] = None) -> "RationalMatrix":
        cols = [list(c) for c in columns]
        if not cols:
            return cls.zeros(rows or 0, 0)
        height = len(cols[0])
        return cls(
            [[cols[j][i] for j in range(len(cols))] for i in range(height)],
            _shape=(height, len(cols)),
        )

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"RationalMatrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            _shape=(self.rows, self.cols),
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return RationalMatrix(
            [[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)],
            _shape=(self.rows, self.cols),
        )

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(
            [[-a for a in row] for row in self.data], _shape=(self.rows, self.cols)
        )

    def scale(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix(
            [[c * a for a in row] for row in self.data], _shape=(self.rows, self.cols)
        )

    def __mul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        ocols = list(zip(*other.data)) if other.data else []
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, col)) for col in ocols])
        if not out or not ocols:
            return RationalMatrix.zeros(self.rows, other.cols)
        return RationalMatrix(out)

    def apply(self, vec: Sequence) -> list:
        """Matrix times column vector, returned as a list of Fractions."""
        v = [as_fraction(x) for x in vec]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def transpose(self) -> "RationalMatrix":
        if self.rows == 0 or self.cols == 0:
            return RationalMatrix.zeros(self.cols, self.rows)
        return RationalMatrix(list(zip(*self.data)))

    @classmethod
    def hstack(cls, mats: Sequence["RationalMatrix"]) -> "RationalMatrix":
        mats = [m for m in mats]
        if not mats:
            return cls.zeros(0, 0)
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("row mismatch in hstack")
        cols = sum(m.cols for m in mats)
        return cls(
            [sum((list(m.data[i]) for m in mats), []) for i in range(rows)],
            _shape=(rows, cols),
        )

    @classmethod
    def vstack(cls, mats: Sequence["RationalMatrix"]) -> "RationalMatrix":
        mats = [m for m in mats]
        if not mats:
            return cls.zeros(0, 0)
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column mismatch in vstack")
        rows = sum(m.rows for m in mats)
        return cls([list(row) for m in mats for row in m.data], _shape=(rows, cols))

    @classmethod
    def block_diag(cls, mats: Sequence["RationalMatrix"]) -> "RationalMatrix":
        mats = [m for m in mats]
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        r = c = 0
        for m in mats:
            for i in range(m.rows):
                out[r + i][c : c + m.cols] = list(m.data[i])
            r += m.rows
            c += m.cols
        return cls(out, _shape=(rows, cols))

    def rref(self):
        """Reduced row echelon form; returns (rows as list of lists, pivot columns)."""
        if self._rref is not None:
            return self._rref
        mat = [list(row) for row in self.data]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, self.rows):
                if mat[i][c] != 0:
                    pivot = i
                    break
            if pivot is None:
                continue
            mat[r], mat[pivot] = mat[pivot], mat[r]
            pv = mat[r][c]
            mat[r] = [x / pv for x in mat[r]]
            for i in range(self.rows):
                if i != r and mat[i][c] != 0:
                    f = mat[i][c]
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        self._rref = (mat, tuple(pivots))
        return self._rref

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        mat = [list(row) for row in self.data]
        det = Fraction(1)
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if mat[i][c] != 0:
                    pivot = i
                    break
            if pivot is None:
                return Fraction(0)
            if pivot != c:
                mat[c], mat[pivot] = mat[pivot], mat[c]
                det = -det
            det *= mat[c][c]
            inv = 1 / mat[c][c]
            for i in range(c + 1, n):
                if mat[i][c] != 0:
                    f = mat[i][c] * inv
                    mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
        return det

    def inverse(self) -> "RationalMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = RationalMatrix.hstack([self, RationalMatrix.identity(n)])
        red, pivots = aug.rref()
        if list(pivots[:n]) != list(range(n)):
            raise ValueError("matrix is singular")
        return RationalMatrix([row[n:] for row in red[:n]])


def kernel_basis(m: RationalMatrix) -> RationalMatrix:
    """Basis of the right null space, as columns; width = cols - rank."""
    red, pivots = m.rref()
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][j]
        basis.append(v)
    return RationalMatrix.from_columns(basis, rows=m.cols)


def solve(a: RationalMatrix, b: Sequence) -> Optional[list]:
    """Some exact solution x of a*x = b, or None when inconsistent."""
    b = [as_fraction(x) for x in b]
    if len(b) != a.rows:
        raise ValueError("right-hand side length mismatch")
    if a.rows == 0:
        return [Fraction(0)] * a.cols
    aug = RationalMatrix(
        [list(row) + [bv] for row, bv in zip(a.data, b)], _shape=(a.rows, a.cols + 1)
    )
    red, pivots = aug.rref()
    if pivots and pivots[-1] == a.cols:
        return None
    x = [Fraction(0)] * a.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][a.cols]
    return x


class ColumnSpace:
    """Helper for repeated membership and coordinate queries against a
    fixed set of spanning columns."""

    def __init__(self, columns: Sequence[Sequence], length: int) -> None:
        self.length = length
        self.matrix = RationalMatrix.from_columns(list(columns), rows=length)

    def rank(self) -> int:
        return self.matrix.rank()

    def contains(self, vec: Sequence) -> bool:
        return solve(self.matrix, vec) is not None

    def coordinates(self, vec: Sequence) -> Optional[list]:
        return solve(self.matrix, vec)


class IntegerMatrix:
    """Dense matrix with arbitrary-precision integer entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Sequence[Sequence[int]], _shape: Optional[tuple] = None) -> None:
        data = tuple(tuple(int(x) for x in row) for row in entries)
        if data:
            self.rows = len(data)
            self.cols = len(data[0])
            if _shape is not None and _shape != (self.rows, self.cols):
                raise ValueError("shape hint mismatch")
        else:
            self.rows, self.cols = _shape if _shape is not None else (0, 0)
        if any(len(row) != self.cols for row in data):
            raise ValueError("ragged rows")
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls([[0] * cols for _ in range(rows)], _shape=(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], _shape=(n, n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: Optional[int] = None) -> "IntegerMatrix":
        cols = [list(c) for c in columns]
        if not cols:
            return cls.zeros(rows or 0, 0)
        height = len(cols[0])
        return cls(
            [[cols[j][i] for j in range(len(cols))] for i in range(height)],
            _shape=(height, len(cols)),
        )

    def entry(self, i: int, j: int) -> int:
        return self.data[i][j]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntegerMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in row) for row in self.data)
        return f"IntegerMatrix({self.rows}x{self.cols}: {body})"

    def __mul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ocols = list(zip(*other.data)) if other.data else []
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, col)) for col in ocols])
        if not out or not ocols:
            return IntegerMatrix.zeros(self.rows, other.cols)
        return IntegerMatrix(out)

    def apply(self, vec: Sequence[int]) -> list:
        v = [int(x) for x in vec]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(row, v)) for row in self.data]

    def transpose(self) -> "IntegerMatrix":
        if self.rows == 0 or self.cols == 0:
            return IntegerMatrix.zeros(self.cols, self.rows)
        return IntegerMatrix(list(zip(*self.data)))

    def to_rational(self) -> RationalMatrix:
        return RationalMatrix(self.data)

    def det(self) -> int:
        """Exact integer determinant via fraction-free Bareiss elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        mat = [list(row) for row in self.data]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if mat[k][k] == 0:
                pivot = None
                for i in range(k + 1, n):
                    if mat[i][k] != 0:
                        pivot = i
                        break
                if pivot is None:
                    return 0
                mat[k], mat[pivot] = mat[pivot], mat[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
                mat[i][k] = 0
            prev = mat[k][k]
        return sign * mat[n - 1][n - 1]

    def rank(self) -> int:
        return self.to_rational().rank()


class SmithDecomposition:
    """u * source * v = d with u, v unimodular and d diagonal with a
    divisibility chain.  Validated exactly on construction."""

    __slots__ = ("source", "u", "d", "v")

    def __init__(self, source: IntegerMatrix, u: IntegerMatrix, d: IntegerMatrix, v: IntegerMatrix) -> None:
        self.source = source
        self.u = u
        self.d = d
        self.v = v
        self._validate()

    def _validate(self) -> None:
        if (self.u * self.source) * self.v != self.d:
            raise ValueError("u*a*v does not re-multiply to d")
        if abs(self.u.det()) != 1 or abs(self.v.det()) != 1:
            raise ValueError("transforms are not unimodular")
        diag = self.invariant_factors()
        for i in range(self.d.rows):
            for j in range(self.d.cols):
                if i != j and self.d.entry(i, j) != 0:
                    raise ValueError("d is not diagonal")
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                raise ValueError("zero before nonzero on the diagonal")
            if a != 0 and b % a != 0:
                raise ValueError("divisibility chain broken")
        if any(x < 0 for x in diag):
            raise ValueError("negative diagonal entry")

    def invariant_factors(self) -> list:
        n = min(self.d.rows, self.d.cols)
        return [self.d.entry(i, i) for i in range(n)]

    def nonzero_invariant_factors(self) -> list:
        return [x for x in self.invariant_factors() if x != 0]

    def rank(self) -> int:
        return len(self.nonzero_invariant_factors())


def smith_normal_form(a: IntegerMatrix) -> SmithDecomposition:
    """Smith decomposition; pivots are chosen by smallest nonzero
    absolute value to limit coefficient growth."""
    rows, cols = a.rows, a.cols
    m = [list(row) for row in a.data]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row dst += c * row src
        m[dst] = [x + c * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in m:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    n = min(rows, cols)
    for s in range(n):
        while True:
            pivot = None
            best = None
            for i in range(s, rows):
                for j in range(s, cols):
                    x = abs(m[i][j])
                    if x != 0 and (best is None or x < best):
                        best = x
                        pivot = (i, j)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != s:
                swap_rows(s, pi)
            if pj != s:
                swap_cols(s, pj)
            if m[s][s] < 0:
                negate_row(s)
            dirty = False
            for i in range(s + 1, rows):
                if m[i][s] != 0:
                    q = m[i][s] // m[s][s]
                    add_row(i, s, -q)
                    if m[i][s] != 0:
                        dirty = True
            for j in range(s + 1, cols):
                if m[s][j] != 0:
                    q = m[s][j] // m[s][s]
                    add_col(j, s, -q)
                    if m[s][j] != 0:
                        dirty = True
            if dirty:
                continue
            # divisibility fixup: fold a bad entry into the pivot's row
            bad = None
            for i in range(s + 1, rows):
                for j in range(s + 1, cols):
                    if m[i][j] % m[s][s] != 0:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(s, bad, 1)
        if s < n - 1 and all(
            m[i][j] == 0 for i in range(s, rows) for j in range(s, cols)
        ):
            break

    return SmithDecomposition(a, IntegerMatrix(u), IntegerMatrix(m), IntegerMatrix(v))


def lattice_membership(b: IntegerMatrix, vec: Sequence[int]) -> bool:
    """Whether vec lies in the integer span of the columns of b, decided
    exactly through the Smith decomposition of b."""
    v = [int(x) for x in vec]
    if len(v) != b.rows:
        raise ValueError("vector length mismatch")
    if b.cols == 0:
        return all(x == 0 for x in v)
    snf = smith_normal_form(b)
    w = snf.u.apply(v)
    n = min(b.rows, b.cols)
    for i in range(b.rows):
        d = snf.d.entry(i, i) if i < n else 0
        if d == 0:
            if w[i] != 0:
                return False
        elif w[i] % d != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# polynomials over the rationals, used by the splitting machinery


def poly_normalize(coeffs: Sequence) -> tuple:
    cs = [as_fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def poly_degree(p: tuple) -> int:
    return len(p) - 1


def poly_mul(p: tuple, q: tuple) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return poly_normalize(out)


def poly_divmod(p: tuple, q: tuple):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quot = [Fraction(0)] * max(0, len(p) - len(q) + 1)
    dq = len(q) - 1
    lead = q[-1]
    while len(rem) - 1 >= dq and any(x != 0 for x in rem):
        if rem[-1] == 0:
            rem.pop()
            continue
        shift = len(rem) - 1 - dq
        c = rem[-1] / lead
        quot[shift] = c
        for i in range(len(q)):
            rem[shift + i] -= c * q[i]
        rem.pop()
    return poly_normalize(quot), poly_normalize(rem)


def poly_gcd(p: tuple, q: tuple) -> tuple:
    a, b = poly_normalize(p), poly_normalize(q)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if a:
        lead = a[-1]
        a = tuple(c / lead for c in a)
    return a


def poly_derivative(p: tuple) -> tuple:
    return poly_normalize([c * i for i, c in enumerate(p)][1:])


def squarefree_part(p: tuple) -> tuple:
    """The radical of p (product of its distinct irreducible factors)."""
    p = poly_normalize(p)
    if poly_degree(p) < 1:
        return p
    g = poly_gcd(p, poly_derivative(p))
    rad, rem = poly_divmod(p, g)
    assert not rem
    return rad


def rational_irreducible_factors(p: tuple) -> list:
    """Distinct monic irreducible factors of p over the rationals."""
    p = poly_normalize(p)
    if poly_degree(p) < 1:
        return []
    import sympy

    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p))
    _, factors = sympy.Poly(expr, x, domain="QQ").factor_list()
    out = []
    for fac, _mult in factors:
        cs = fac.all_coeffs()[::-1]
        coeffs = [Fraction(sympy.Rational(c).p, sympy.Rational(c).q) for c in cs]
        lead = coeffs[-1]
        out.append(tuple(c / lead for c in coeffs))
    return out
