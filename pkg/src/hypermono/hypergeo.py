"""Hypergeometric cases: parameter multisets, cyclotomic products, companion
matrices and the preserved integral symplectic form."""

from __future__ import annotations

import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .exactmath import (
    ExactMatrix,
    IntPoly,
    content,
    det,
    mat_inverse,
    mat_mul,
    solve_linear_space,
)


class NonGaloisStable(ValueError):
    """Parameters with some denominator do not cover its primitive residues evenly."""

    def __init__(self, denominator: int, numerators):
        self.denominator = denominator
        self.numerators = sorted(numerators)
        super().__init__(
            f"parameter multiset is not Galois-stable for denominator {denominator}: "
            f"numerators {self.numerators} do not cover the residues coprime to "
            f"{denominator} with equal multiplicity"
        )


class AmbiguousForm(ValueError):
    def __init__(self, dimension: int):
        self.dimension = dimension
        super().__init__(f"invariant antisymmetric forms span a space of dimension {dimension}, expected 1")


class DegenerateForm(ValueError):
    pass


@dataclass(frozen=True)
class ParameterMultiset:
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        for v in vals:
            if not 0 <= v < 1:
                raise ValueError(f"parameter {v} outside [0, 1)")
        if not vals:
            raise ValueError("empty parameter multiset")
        object.__setattr__(self, "values", vals)

    @classmethod
    def parse(cls, text: str) -> "ParameterMultiset":
        """Parse comma-separated fractions such as ``"0,0,1/5,2/5,3/5,4/5"``."""
        parts = [p.strip() for p in text.replace(";", ",").split(",") if p.strip()]
        try:
            return cls(tuple(Fraction(p) for p in parts))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse parameter list {text!r}: {exc}") from None

    def __len__(self):
        return len(self.values)

    def __str__(self):
        return ",".join(str(v) for v in self.values)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """d-th cyclotomic polynomial by exact division of x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPoly.x_power_minus_one(d)
    for e in range(1, d):
        if d % e == 0:
            p = p.exact_divide(cyclotomic(e))
    return p


def parameters_to_polynomial(p: ParameterMultiset) -> IntPoly:
    """prod_j (x - exp(2 pi i p_j)) as an integer polynomial.

    The multiset must be a union of full Galois orbits: for each reduced
    denominator d the numerators coprime to d all occur, equally often.
    """
    by_den: dict = {}
    for v in p.values:
        by_den.setdefault(v.denominator, Counter())[v.numerator] += 1
    out = IntPoly((1,))
    for d in sorted(by_den):
        counts = by_den[d]
        units = {k for k in range(d) if gcd(k, d) == 1}
        mults = set(counts.values())
        if set(counts) != units or len(mults) != 1:
            raise NonGaloisStable(d, counts.elements())
        out = out * cyclotomic(d) ** mults.pop()
    return out


def companion(h: IntPoly) -> ExactMatrix:
    """Ones on the subdiagonal, last column -(c_0, ..., c_{n-1})."""
    n = h.degree
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(1, n):
        rows[i][i - 1] = 1
    for i in range(n):
        rows[i][n - 1] = -h.coeffs[i]
    return ExactMatrix.from_rows(rows)


def normalize_form(X: ExactMatrix) -> ExactMatrix:
    """Primitive integral multiple whose first nonzero strict-upper entry is positive."""
    if X.is_zero():
        raise DegenerateForm("zero form")
    from .exactmath import ExactVector

    prim = ExactVector(X.entries).canonical()
    M = ExactMatrix(X.rows, X.cols, prim.entries)
    n = M.rows
    lead = next(M[i, j] for i in range(n) for j in range(i + 1, n) if M[i, j])
    return M if lead > 0 else -M


def invariant_symplectic_form(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    basis = solve_linear_space([A, B])
    if len(basis) != 1:
        raise AmbiguousForm(len(basis))
    omega = normalize_form(basis[0])
    if det(omega) == 0:
        raise DegenerateForm("invariant antisymmetric form is degenerate")
    return omega


def preserves(G: ExactMatrix, omega: ExactMatrix) -> bool:
    return mat_mul(mat_mul(G.transpose(), omega), G) == omega


@dataclass(frozen=True)
class HyperCase:
    label: str
    alpha: ParameterMultiset
    beta: ParameterMultiset
    f: IntPoly
    g: IntPoly
    A: ExactMatrix
    B: ExactMatrix
    omega: ExactMatrix
    a: ExactMatrix = field(repr=False)
    b: ExactMatrix = field(repr=False)

    @property
    def degree(self) -> int:
        return self.f.degree

    @property
    def T(self) -> ExactMatrix:
        """A^{-1} B, the rank-one unipotent local monodromy at 1."""
        return mat_mul(self.a, self.B)

    def generator(self, letter: str) -> ExactMatrix:
        return {"A": self.A, "B": self.B, "a": self.a, "b": self.b}[letter]


def build_case(label: str, alpha, beta, omega: ExactMatrix | None = None,
               any_degree: bool = False) -> HyperCase:
    """Assemble and validate a case from two parameter multisets.

    If ``omega`` is given it is validated instead of recovered.
    """
    if not isinstance(alpha, ParameterMultiset):
        alpha = ParameterMultiset.parse(alpha) if isinstance(alpha, str) else ParameterMultiset(tuple(alpha))
    if not isinstance(beta, ParameterMultiset):
        beta = ParameterMultiset.parse(beta) if isinstance(beta, str) else ParameterMultiset(tuple(beta))
    if len(alpha) != len(beta):
        raise ValueError("alpha and beta must have the same size")
    if not any_degree and len(alpha) != 6:
        raise ValueError(f"degree-six cases only (got {len(alpha)} parameters); pass any_degree=True")
    f = parameters_to_polynomial(alpha)
    g = parameters_to_polynomial(beta)
    if f == g:
        warnings.warn(f"{label}: f and g coincide", stacklevel=2)
    for name, h in (("f", f), ("g", g)):
        if not h.is_palindromic():
            warnings.warn(f"{label}: {name} = {h} is not self-reciprocal", stacklevel=2)
    A, B = companion(f), companion(g)
    if omega is None:
        omega = invariant_symplectic_form(A, B)
    return HyperCase(label, alpha, beta, f, g, A, B, omega, mat_inverse(A), mat_inverse(B))
