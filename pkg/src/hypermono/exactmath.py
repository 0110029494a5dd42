"""Exact integer/rational linear algebra on small dense matrices.

Scalars are Python ``int`` and ``fractions.Fraction``.  Matrix entries are
normalized on construction: a rational with denominator 1 is stored as an
``int`` so that integer matrices stay on the fast integer path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence


def _norm(x):
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Rational):
        return _norm(Fraction(x.numerator, x.denominator))
    if isinstance(x, str):
        return _norm(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


class DimensionError(ValueError):
    pass


class SingularMatrixError(ZeroDivisionError):
    pass


# --------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class IntPoly:
    """Monic integer polynomial, coefficients stored low degree first."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        if not cs or cs[-1] != 1:
            raise ValueError(f"polynomial must be monic, got coefficients {cs}")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def x_power_minus_one(cls, d: int) -> "IntPoly":
        return cls((-1,) + (0,) * (d - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(tuple(out))

    def __pow__(self, k: int) -> "IntPoly":
        out = IntPoly((1,))
        for _ in range(k):
            out = out * self
        return out

    def exact_divide(self, other: "IntPoly") -> "IntPoly":
        """Quotient by a monic divisor; raises if the remainder is nonzero."""
        rem = list(self.coeffs)
        dq = self.degree - other.degree
        if dq < 0:
            raise ValueError("divisor has larger degree")
        quot = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            q = rem[k + other.degree]
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        if any(rem):
            raise ValueError(f"{other} does not divide {self}")
        return IntPoly(tuple(quot))

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not terms:
                terms.append(("-" if c < 0 else "") + body)
            else:
                terms.append(("- " if c < 0 else "+ ") + body)
        return " ".join(terms) if terms else "0"


# --------------------------------------------------------------------------
# vectors


@dataclass(frozen=True)
class ExactVector:
    entries: tuple

    def __post_init__(self):
        es = tuple(_norm(e) for e in self.entries)
        if not es:
            raise ValueError("vector must be nonempty")
        object.__setattr__(self, "entries", es)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_integral(self) -> bool:
        return all(isinstance(e, int) for e in self.entries)

    def scale(self, c) -> "ExactVector":
        return ExactVector(tuple(c * e for e in self.entries))

    def canonical(self) -> "ExactVector":
        """Primitive integral multiple with first nonzero coordinate positive."""
        if self.is_zero():
            return self
        fr = [Fraction(e) for e in self.entries]
        den = reduce(lcm, (f.denominator for f in fr), 1)
        ints = [int(f * den) for f in fr]
        g = reduce(gcd, ints, 0)
        ints = [i // g for i in ints]
        lead = next(i for i in ints if i)
        if lead < 0:
            ints = [-i for i in ints]
        return ExactVector(tuple(ints))

    def equal_up_to_sign(self, other: "ExactVector") -> bool:
        return self.entries == other.entries or self.entries == tuple(-e for e in other.entries)

    def __str__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"


# --------------------------------------------------------------------------
# matrices


class ExactMatrix:
    """Dense immutable matrix of exact rationals, row-major."""

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        es = tuple(_norm(e) for e in entries)
        if rows <= 0 or cols <= 0:
            raise DimensionError("dimensions must be positive")
        if len(es) != rows * cols:
            raise DimensionError(f"expected {rows * cols} entries, got {len(es)}")
        self.rows = rows
        self.cols = cols
        self.entries = es
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, entries):
        # trusted constructor: entries already normalized
        m = cls.__new__(cls)
        m.rows, m.cols, m.entries, m._hash = rows, cols, tuple(entries), None
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged or empty row list")
        return cls(len(rows), len(rows[0]), [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._raw(n, n, [int(i == j) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls._raw(rows, cols, [0] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls(n, n, [values[i] if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, v: Sequence) -> "ExactMatrix":
        return cls(len(v), 1, list(v))

    # access -------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_integral(self) -> bool:
        return all(isinstance(e, int) for e in self.entries)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.cols, self.rows,
                                [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def trace(self):
        if not self.is_square():
            raise DimensionError("trace of non-square matrix")
        return _norm(sum(self[i, i] for i in range(self.rows)))

    # arithmetic ---------------------------------------------------------

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._raw(self.rows, self.cols,
                                [_norm(a + b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_shape(other)
        return ExactMatrix._raw(self.rows, self.cols,
                                [_norm(a - b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._raw(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, c) -> "ExactMatrix":
        c = _norm(c)
        return ExactMatrix._raw(self.rows, self.cols, [_norm(c * a) for a in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return mat_mul(self, other)

    def apply(self, v: Sequence) -> ExactVector:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise DimensionError("vector length does not match column count")
        v = list(v)
        return ExactVector(tuple(sum(a * b for a, b in zip(self.row(i), v)) for i in range(self.rows)))

    # comparison ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        return f"ExactMatrix.from_rows({self.to_rows()!r})"

    def __str__(self):
        cells = [[str(e) for e in self.row(i)] for i in range(self.rows)]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    # linear algebra shortcuts ------------------------------------------

    def inverse(self) -> "ExactMatrix":
        return mat_inverse(self)

    def det(self):
        return det(self)

    def rank(self) -> int:
        return rank(self)


def mat_mul(M: ExactMatrix, N: ExactMatrix) -> ExactMatrix:
    if M.cols != N.rows:
        raise DimensionError(f"cannot multiply {M.shape} by {N.shape}")
    ncols = N.cols
    cols = [N.col(j) for j in range(ncols)]
    out = []
    for i in range(M.rows):
        r = M.row(i)
        for c in cols:
            out.append(_norm(sum(a * b for a, b in zip(r, c) if a and b)))
    return ExactMatrix._raw(M.rows, ncols, out)


def _integer_rows(M: ExactMatrix):
    """Rows scaled by their denominator lcm; returns (int rows, scale factors)."""
    rows, scales = [], []
    for i in range(M.rows):
        r = M.row(i)
        d = reduce(lcm, (Fraction(e).denominator for e in r), 1)
        rows.append([int(e * d) for e in r])
        scales.append(d)
    return rows, scales


def _bareiss_echelon(rows: list) -> tuple:
    """Fraction-free row echelon form of an integer matrix (in place).

    Pivot is the first nonzero entry found scanning rows downward in the
    current column.  Returns (pivot columns, number of row swaps).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    swaps = 0
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        p = next((k for k in range(r, m) if rows[k][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            swaps += 1
        piv = rows[r][c]
        for k in range(r + 1, m):
            rk = rows[k]
            f = rk[c]
            for j in range(c, n):
                # exact: Sylvester's identity guarantees divisibility
                rk[j] = (piv * rk[j] - f * rows[r][j]) // prev
            # columns left of c are already zero in rows below r
        # entries left of the pivot in row r+1.. remain zero
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, swaps


def det(M: ExactMatrix):
    """Exact determinant via Bareiss elimination."""
    if not M.is_square():
        raise DimensionError("determinant of non-square matrix")
    rows, scales = _integer_rows(M)
    n = M.rows
    pivots, swaps = _bareiss_echelon(rows)
    if len(pivots) < n:
        return 0
    d = rows[n - 1][n - 1]
    if swaps % 2:
        d = -d
    denom = reduce(lambda a, b: a * b, scales, 1)
    return _norm(Fraction(d, denom))


def rank(M: ExactMatrix) -> int:
    rows, _ = _integer_rows(M)
    pivots, _ = _bareiss_echelon(rows)
    return len(pivots)


def _rref(M: ExactMatrix):
    """Reduced row echelon form over Q; returns (rows as Fractions, pivot columns)."""
    rows, _ = _integer_rows(M)
    pivots, _ = _bareiss_echelon(rows)
    R = [[Fraction(x) for x in row] for row in rows[:len(pivots)]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        p = R[i][c]
        R[i] = [x / p for x in R[i]]
        for k in range(i):
            f = R[k][c]
            if f:
                R[k] = [a - f * b for a, b in zip(R[k], R[i])]
    return R, pivots


def kernel_basis(M: ExactMatrix) -> list:
    """Canonicalized basis of the right null space {v : Mv = 0}."""
    R, pivots = _rref(M)
    free = [j for j in range(M.cols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(ExactVector(tuple(v)).canonical())
    return basis


def image_basis(M: ExactMatrix) -> list:
    """Canonicalized basis of the column space (pivot columns of M)."""
    _, pivots = _rref(M)
    return [ExactVector(M.col(c)).canonical() for c in pivots]


def mat_inverse(M: ExactMatrix) -> ExactMatrix:
    if not M.is_square():
        raise DimensionError("inverse of non-square matrix")
    n = M.rows
    aug = ExactMatrix.from_rows([list(M.row(i)) + [int(i == j) for j in range(n)] for i in range(n)])
    R, pivots = _rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return ExactMatrix(n, n, [R[i][n + j] for i in range(n) for j in range(n)])


def char_poly(M: ExactMatrix) -> IntPoly:
    """det(xI - M) by Faddeev-LeVerrier; every division is exact for integer M."""
    if not M.is_square():
        raise DimensionError("characteristic polynomial of non-square matrix")
    if not M.is_integral():
        raise ValueError("char_poly requires integer entries")
    n = M.rows
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    I = ExactMatrix.identity(n)
    Mk = ExactMatrix.zeros(n)
    for k in range(1, n + 1):
        Mk = mat_mul(M, Mk) + I.scale(coeffs[n - k + 1])
        t = mat_mul(M, Mk).trace()
        q, r = divmod(-t, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact"
        coeffs[n - k] = q
    return IntPoly(tuple(coeffs))


def antisymmetric_basis(n: int) -> list:
    """E_ij - E_ji for i < j, in row-major order of (i, j)."""
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * (n * n)
            e[i * n + j] = 1
            e[j * n + i] = -1
            out.append(ExactMatrix._raw(n, n, e))
    return out


def solve_linear_space(constraints: Sequence[ExactMatrix]) -> list:
    """Basis of antisymmetric X with G^t X G = X for every G in ``constraints``.

    Each basis element is a primitive integral matrix.
    """
    if not constraints:
        raise ValueError("need at least one constraint matrix")
    n = constraints[0].rows
    for G in constraints:
        if G.shape != (n, n):
            raise DimensionError("constraint matrices must be square and equal size")
    basis = antisymmetric_basis(n)
    # column k of the system is vec(G^t E_k G - E_k), stacked over all G
    columns = []
    for E in basis:
        col = []
        for G in constraints:
            col.extend((mat_mul(mat_mul(G.transpose(), E), G) - E).entries)
        columns.append(col)
    system = ExactMatrix(len(columns[0]), len(columns),
                         [columns[k][r] for r in range(len(columns[0])) for k in range(len(columns))])
    out = []
    for v in kernel_basis(system):
        X = ExactMatrix.zeros(n)
        for coef, E in zip(v, basis):
            if coef:
                X = X + E.scale(coef)
        out.append(X)
    return out


def content(M: ExactMatrix) -> int:
    """gcd of the entries of an integer matrix."""
    return reduce(gcd, (int(e) for e in M.entries), 0)
