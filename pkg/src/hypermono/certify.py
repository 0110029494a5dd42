"""Transvection analysis and arithmeticity-certificate verification.

The criterion being checked: a Zariski-dense subgroup of Sp_Omega(Z) has
finite index iff it contains two Omega-transvections
X_i = I + lambda_i x_i x_i^t Omega whose directions x_1, x_2 are linearly
independent with Omega(x_1, x_2) = 0.  Zariski density itself is taken from
the Beukers-Heckman classification and is never checked here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath import (
    ExactMatrix,
    ExactVector,
    det,
    image_basis,
    mat_mul,
    rank,
)
from .hypergeo import HyperCase, ParameterMultiset, build_case, preserves
from .words import ALPHABET, INVERSE_LETTER, Word, evaluate, invert, parse_and_reduce

ZARISKI_NOTE = ("Zariski density of <A, B> in Sp_Omega is assumed from the "
                "Beukers-Heckman classification; it is not checked.")

CHECK_NAMES = (
    "generators",
    "form",
    "evaluation",
    "transvections",
    "commutation",
    "independence",
    "orthogonality",
    "expected",
)


class TransvectionError(ValueError):
    pass


class NotRankOne(TransvectionError):
    pass


class NotUnipotent(TransvectionError):
    pass


class NotOmegaTransvection(TransvectionError):
    pass


@dataclass(frozen=True)
class TransvectionData:
    """``direction`` is primitive; ``column`` is the first nonzero column of M - I."""

    direction: ExactVector
    lam: Fraction
    column: ExactVector
    source: ExactMatrix = field(repr=False)


def pairing(omega: ExactMatrix, x, y):
    """Omega(x, y) = x^t Omega y."""
    return sum(xi * v for xi, v in zip(x, omega.apply(list(y))) if xi)


def transvection_analyze(M: ExactMatrix, omega: ExactMatrix) -> TransvectionData:
    """Write M = I + lambda x x^t Omega with x primitive integral; raise otherwise."""
    if not (M.is_square() and omega.shape == M.shape):
        raise ValueError("M and omega must be square of the same size")
    n = M.rows
    N = M - ExactMatrix.identity(n)
    r = rank(N)
    if r != 1:
        raise NotRankOne(f"rank(M - I) = {r}, expected 1")
    if not mat_mul(N, N).is_zero():
        raise NotUnipotent("(M - I)^2 != 0")
    (x,) = image_basis(N)
    # row vector x^t Omega
    xo = [sum(x[k] * omega[k, j] for k in range(n)) for j in range(n)]
    j = next((j for j in range(n) if xo[j]), None)
    if j is None:
        raise NotOmegaTransvection("x^t Omega vanishes")
    i = next(i for i in range(n) if x[i])
    lam = Fraction(N[i, j]) / (x[i] * xo[j])
    if lam == 0:
        raise NotOmegaTransvection("lambda = 0")
    for p in range(n):
        for q in range(n):
            if N[p, q] != lam * x[p] * xo[q]:
                raise NotOmegaTransvection(
                    f"M - I != lambda x x^t Omega at entry ({p + 1},{q + 1})")
    col = next(N.col(q) for q in range(n) if any(N.col(q)))
    return TransvectionData(x, lam, ExactVector(col), M)


# --------------------------------------------------------------------------
# certificates


def _vec(v):
    return None if v is None else ExactVector(tuple(int(e) for e in v))


@dataclass(frozen=True)
class Expected:
    det_omega: int | None = None
    x1: ExactVector | None = None
    x2: ExactVector | None = None
    omega: ExactMatrix | None = None

    def is_empty(self):
        return all(v is None for v in (self.det_omega, self.x1, self.x2, self.omega))

    def to_dict(self) -> dict:
        d = {}
        if self.det_omega is not None:
            d["det_omega"] = self.det_omega
        if self.x1 is not None:
            d["x1"] = list(self.x1.entries)
        if self.x2 is not None:
            d["x2"] = list(self.x2.entries)
        if self.omega is not None:
            d["omega"] = [int(e) for e in self.omega.entries]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Expected":
        om = d.get("omega")
        if om is not None:
            om = _square_from_flat(om)
        return cls(d.get("det_omega"), _vec(d.get("x1")), _vec(d.get("x2")), om)


def _square_from_flat(vals) -> ExactMatrix:
    vals = [int(v) for v in vals]
    n = int(round(len(vals) ** 0.5))
    if n * n != len(vals):
        raise ValueError(f"form needs a square number of entries, got {len(vals)}")
    return ExactMatrix(n, n, vals)


@dataclass(frozen=True)
class Certificate:
    """Case parameters, witness word, and optionally pinned/expected data."""

    label: str
    alpha: ParameterMultiset
    beta: ParameterMultiset
    word: str
    omega: ExactMatrix | None = None
    expected: Expected = field(default_factory=Expected)

    def with_word(self, word: str) -> "Certificate":
        return Certificate(self.label, self.alpha, self.beta, word, self.omega, self.expected)

    def with_omega(self, omega: ExactMatrix | None) -> "Certificate":
        return Certificate(self.label, self.alpha, self.beta, self.word, omega, self.expected)

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "alpha": [str(v) for v in self.alpha.values],
            "beta": [str(v) for v in self.beta.values],
            "word": self.word,
        }
        if self.omega is not None:
            d["omega"] = [int(e) for e in self.omega.entries]
        if not self.expected.is_empty():
            d["expected"] = self.expected.to_dict()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        missing = [k for k in ("label", "alpha", "beta", "word") if k not in d]
        if missing:
            raise ValueError(f"certificate missing fields: {', '.join(missing)}")

        def params(v):
            return ParameterMultiset.parse(v) if isinstance(v, str) else ParameterMultiset(tuple(Fraction(str(x)) for x in v))

        om = d.get("omega")
        return cls(
            label=str(d["label"]),
            alpha=params(d["alpha"]),
            beta=params(d["beta"]),
            word="".join(str(d["word"]).split()),
            omega=None if om is None else _square_from_flat(om),
            expected=Expected.from_dict(d.get("expected") or {}),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Certificate":
        return cls.from_dict(json.loads(text))


# --------------------------------------------------------------------------
# verification


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    label: str
    word: str
    checks: list = field(default_factory=list)
    omega: ExactMatrix | None = None
    det_omega: object = None
    x1: ExactVector | None = None
    x2: ExactVector | None = None
    x1_primitive: ExactVector | None = None
    x2_primitive: ExactVector | None = None
    lambda1: Fraction | None = None
    lambda2: Fraction | None = None
    pairing_value: object = None
    note: str = ZARISKI_NOTE

    @property
    def verdict(self) -> bool:
        return bool(self.checks) and all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    @property
    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def to_dict(self) -> dict:
        def s(v):
            return None if v is None else str(v)

        return {
            "label": self.label,
            "word": self.word,
            "word_length": len(self.word),
            "verdict": "PASS" if self.verdict else "FAIL",
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "omega": None if self.omega is None else [[int(e) for e in r] for r in self.omega.to_rows()],
            "det_omega": s(self.det_omega),
            "x1": None if self.x1 is None else [str(e) for e in self.x1],
            "x2": None if self.x2 is None else [str(e) for e in self.x2],
            "x1_primitive": None if self.x1_primitive is None else [str(e) for e in self.x1_primitive],
            "x2_primitive": None if self.x2_primitive is None else [str(e) for e in self.x2_primitive],
            "lambda1": s(self.lambda1),
            "lambda2": s(self.lambda2),
            "omega_x1_x2": s(self.pairing_value),
            "note": self.note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [
            f"case: {self.label}",
            f"word: {self.word if self.word else '(empty)'}",
            f"word length: {len(self.word)}",
        ]
        if self.omega is not None:
            lines.append("omega:")
            lines.extend("  " + line for line in str(self.omega).splitlines())
        for key, val in (("det omega", self.det_omega), ("x1", self.x1), ("x2", self.x2),
                         ("x1 primitive", self.x1_primitive), ("x2 primitive", self.x2_primitive),
                         ("lambda1", self.lambda1), ("lambda2", self.lambda2),
                         ("omega(x1, x2)", self.pairing_value)):
            lines.append(f"{key}: {'-' if val is None else val}")
        lines.append("checks:")
        for i, c in enumerate(self.checks, 1):
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"  ({i}) {c.name:<14} {mark}" + (f"  {c.detail}" if c.detail else ""))
        lines.append(f"note: {self.note}")
        lines.append(f"verdict: {'PASS' if self.verdict else 'FAIL'}")
        return "\n".join(lines) + "\n"


def verify_certificate(cert: Certificate, case: HyperCase | None = None) -> VerificationReport:
    """Run every check in order; a failing check never stops later ones.

    With a pinned ``cert.omega`` that form is validated; otherwise the
    invariant form is recovered from A and B.
    """
    if case is None:
        case = build_case(cert.label, cert.alpha, cert.beta, omega=cert.omega)
    elif cert.omega is not None:
        case = build_case(cert.label, cert.alpha, cert.beta, omega=cert.omega)
    word = parse_and_reduce(cert.word)
    rep = VerificationReport(cert.label, str(word))
    add = rep.checks.append
    n = case.degree
    I = ExactMatrix.identity(n)
    A, B, omega = case.A, case.B, case.omega

    # (1)
    dA, dB = det(A), det(B)
    ok = A.is_integral() and B.is_integral() and dA in (1, -1) and dB in (1, -1)
    add(CheckResult("generators", ok, f"det A = {dA}, det B = {dB}"))

    # (2)
    rep.omega = omega
    d_om = det(omega)
    rep.det_omega = d_om
    antisym = omega.transpose() == -omega
    pa, pb = preserves(A, omega), preserves(B, omega)
    ok = omega.is_integral() and antisym and pa and pb and d_om != 0
    detail = []
    if not antisym:
        detail.append("omega not antisymmetric")
    if not pa:
        detail.append("A^t omega A != omega")
    if not pb:
        detail.append("B^t omega B != omega")
    if d_om == 0:
        detail.append("det omega = 0")
    add(CheckResult("form", ok, "; ".join(detail) or f"A, B preserve omega; det omega = {d_om}"))

    # (3)
    T = mat_mul(case.a, B)
    gamma = evaluate(word, case)
    gamma_inv = evaluate(invert(word), case)
    ok = mat_mul(gamma, gamma_inv) == I and gamma.is_integral()
    S = mat_mul(mat_mul(gamma, T), gamma_inv)
    add(CheckResult("evaluation", ok, f"T = A^-1 B; gamma = M(w), |w| = {len(word)}"))

    # (4)
    errs = []
    t1 = t2 = None
    for name, M in (("T", T), ("gamma T gamma^-1", S)):
        try:
            td = transvection_analyze(M, omega)
        except TransvectionError as exc:
            errs.append(f"{name}: {type(exc).__name__}: {exc}")
            continue
        if name == "T":
            t1 = td
        else:
            t2 = td
    if t1:
        rep.x1, rep.x1_primitive, rep.lambda1 = t1.column, t1.direction, t1.lam
    if t2:
        rep.x2, rep.x2_primitive, rep.lambda2 = t2.column, t2.direction, t2.lam
    add(CheckResult("transvections", not errs,
                    "; ".join(errs) or "both are rank-one unipotent omega-transvections"))

    # (5)
    ok = mat_mul(T, S) == mat_mul(S, T)
    add(CheckResult("commutation", ok, "T S = S T" if ok else "T S != S T"))

    # directions are defined by the image even when the transvection form fails
    x1 = rep.x1_primitive or _direction_or_none(T - I)
    x2 = rep.x2_primitive or _direction_or_none(S - I)

    # (6)
    if x1 is None or x2 is None:
        add(CheckResult("independence", False, "direction undefined"))
    else:
        r = rank(ExactMatrix.from_rows([list(x1), list(x2)]))
        add(CheckResult("independence", r == 2, f"rank [x1; x2] = {r}"))

    # (7)
    if x1 is None or x2 is None:
        add(CheckResult("orthogonality", False, "direction undefined"))
    else:
        pv = pairing(omega, x1, x2)
        rep.pairing_value = pv
        add(CheckResult("orthogonality", pv == 0, f"omega(x1, x2) = {pv}"))

    # (8)
    exp = cert.expected
    if not exp.is_empty():
        bad = []
        if exp.det_omega is not None and exp.det_omega != d_om:
            bad.append(f"det omega {d_om} != expected {exp.det_omega}")
        if exp.omega is not None and exp.omega != omega:
            bad.append("omega differs from expected")
        for name, want, reps in (("x1", exp.x1, (rep.x1, x1)), ("x2", exp.x2, (rep.x2, x2))):
            if want is not None and not any(r is not None and r.equal_up_to_sign(want) for r in reps):
                bad.append(f"{name} differs from expected (up to sign)")
        add(CheckResult("expected", not bad, "; ".join(bad) or "matches expected values"))
    return rep


def _direction_or_none(N: ExactMatrix):
    basis = image_basis(N)
    return basis[0] if len(basis) == 1 else None


# --------------------------------------------------------------------------
# toy search


def search_witness(case: HyperCase, max_len: int, budget: int | None = None) -> Word | None:
    """First word in shortlex order (letters A, B, a, b) of length <= max_len
    that passes the full certificate check, or None.

    Candidates are screened with the integer vector gamma x1, which spans the
    direction of gamma T gamma^-1; only survivors are fully verified.
    ``budget`` caps the number of words examined.
    """
    if max_len <= 0:
        return None
    T = mat_mul(case.a, case.B)
    x1 = transvection_analyze(T, case.omega).direction
    gens = {ch: case.generator(ch) for ch in ALPHABET}
    cert = Certificate(case.label, case.alpha, case.beta, "", case.omega)
    x1l = list(x1)
    ox1 = [sum(x1l[k] * case.omega[k, j] for k in range(case.degree)) for j in range(case.degree)]
    frontier = [("", x1l)]
    seen = 0
    for _length in range(1, max_len + 1):
        nxt = []
        for prefix, v in frontier:
            for ch in ALPHABET:
                if prefix and prefix[-1] == INVERSE_LETTER[ch]:
                    continue
                seen += 1
                if budget is not None and seen > budget:
                    return None
                w = gens[ch].apply(v).entries
                cand = prefix + ch
                if sum(a * b for a, b in zip(ox1, w)) == 0:
                    if rank(ExactMatrix.from_rows([x1l, list(w)])) == 2:
                        if verify_certificate(cert.with_word(cand), case).verdict:
                            return Word(cand)
                nxt.append((cand, list(w)))
        frontier = nxt
    return None
