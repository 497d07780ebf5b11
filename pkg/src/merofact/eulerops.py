"""Euler–Cauchy equations Σ a_k x^k y^(k) = 0 through the operator δ = x·d/dx.

Since x^k D^k = δ(δ−1)…(δ−k+1), an Euler equation becomes a constant
coefficient polynomial P(δ).  Each root r of multiplicity m contributes
x^r (ln x)^j, j < m, which is e^{rz} z^j pulled back along z = ln x.

Equation grammar (whitespace is ignored)::

    equation := side "=" side
    side     := [sign] term { sign term }
    term     := factor { ["*"] factor }
    factor   := number ["/" number]
              | "x" ["^" int]
              | "(" [number ["*"]] "x" [sign number] ")" ["^" int]
              | "y" {"'"} | "y" "^" "(" int ")"
    sign     := "+" | "-"

Every term carries exactly one y factor, except zero constants such as the
right-hand side ``0``.  The power of x (or of the shift factor αx+β for a
Legendre equation) must equal the derivative order.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ConvergenceFailure,
    DomainError,
    EquationSyntaxError,
    NotEulerForm,
    RangeError,
    RealFormUnavailable,
)

MAX_ORDER = 20
CLUSTER_TOL = 1e-8
SNAP_TOL = 1e-9

# ------------------------------------------------------------------- types


@dataclass(frozen=True)
class EulerEquation:
    """Σ coeffs[k] · u^k y^(k) = 0 with u = x, or u = αx+β when ``shift`` is set."""

    coeffs: tuple
    shift: Optional[tuple] = None

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2 or coeffs[-1] == 0:
            raise ValueError("an Euler equation needs order >= 1 and a nonzero leading coefficient")
        if self.shift is not None:
            alpha, beta = self.shift
            if alpha == 0:
                raise ValueError("shift (alpha, beta) needs alpha != 0")
            object.__setattr__(self, "shift", (alpha, beta))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class OperatorPoly:
    """Σ coeffs[j] · op^j with op ∈ {"D", "delta"}; ascending powers."""

    basis: str
    coeffs: tuple

    def __post_init__(self):
        if self.basis not in ("D", "delta"):
            raise ValueError("basis must be 'D' or 'delta'")
        if not self.coeffs or self.coeffs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class RootEntry:
    root: complex
    multiplicity: int
    raw: tuple = ()


@dataclass(frozen=True)
class RootMultiset:
    entries: tuple

    @property
    def degree(self) -> int:
        return sum(e.multiplicity for e in self.entries)

    def as_pairs(self) -> list[tuple[complex, int]]:
        return [(e.root, e.multiplicity) for e in self.entries]


@dataclass(frozen=True)
class BasisTerm:
    """x^r (ln x)^j; kind 'cos'/'sin' means the real or imaginary part of it."""

    exponent: complex
    log_power: int
    kind: str = "power"


@dataclass(frozen=True)
class SolutionBasis:
    terms: tuple
    real_form: bool
    rendered: str = field(default="", compare=False)


# ------------------------------------------------------------------ parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise EquationSyntaxError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def number(self) -> Fraction:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "."):
            self.pos += 1
        token = self.text[start : self.pos]
        if not token or token == "." or token.count(".") > 1:
            raise EquationSyntaxError(f"malformed number {token!r}", start)
        return Fraction(token)

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.pos += 1
            sign = -1
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise EquationSyntaxError("expected an integer", start)
        return sign * int(self.text[start : self.pos])

    def equation(self) -> dict:
        lhs = self.side()
        self.expect("=")
        rhs = self.side()
        if self.peek():
            raise EquationSyntaxError(f"unexpected {self.peek()!r}", self.pos)
        for key, value in rhs.items():
            lhs[key] = lhs.get(key, 0) - value
        return lhs

    def side(self) -> dict:
        terms: dict = {}
        sign = 1
        if self.peek() in "+-" and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        while True:
            key, coef = self.term()
            if key is not None:
                terms[key] = terms.get(key, 0) + sign * coef
            elif coef != 0:
                raise NotEulerForm(f"term without y ({coef}) makes the equation inhomogeneous", str(coef))
            nxt = self.peek()
            if nxt not in ("+", "-") or not nxt:
                return terms
            sign = -1 if nxt == "-" else 1
            self.pos += 1

    def term(self):
        start = self.pos
        coef = Fraction(1)
        power: Optional[int] = None
        shift = None
        deriv: Optional[int] = None
        while True:
            ch = self.peek()
            if ch.isdigit() or ch == ".":
                q = self.number()
                if self.peek() == "/":
                    self.pos += 1
                    den = self.number()
                    if den == 0:
                        raise EquationSyntaxError("division by zero", self.pos)
                    q /= den
                coef *= q
            elif ch == "x":
                self.pos += 1
                p = self._exponent()
                if shift is not None or power is not None:
                    raise NotEulerForm("repeated power factor", self._slice(start))
                power = p
            elif ch == "(":
                s, p = self._shift_factor()
                if shift is not None or power is not None:
                    raise NotEulerForm("repeated power factor", self._slice(start))
                shift, power = s, p
            elif ch == "y":
                if deriv is not None:
                    raise NotEulerForm("more than one y factor", self._slice(start))
                self.pos += 1
                deriv = self._derivative()
            elif ch == "":
                raise EquationSyntaxError("unexpected end of input", self.pos)
            else:
                raise EquationSyntaxError(f"unexpected {ch!r}", self.pos)
            if self.peek() == "*":
                self.pos += 1
                continue
            if self.peek() and self.peek() in "0123456789.xy(":
                continue
            break
        if deriv is None:
            if power is not None:
                raise NotEulerForm("term has no y factor", self._slice(start))
            return None, coef
        if (power or 0) != deriv:
            raise NotEulerForm(
                f"power {power or 0} does not match derivative order {deriv} in {self._slice(start)!r}",
                self._slice(start),
            )
        return (deriv, shift if deriv > 0 else None), coef

    def _slice(self, start: int) -> str:
        return self.text[start : self.pos].strip()

    def _exponent(self) -> int:
        if self.peek() != "^":
            return 1
        self.pos += 1
        return self.integer()

    def _shift_factor(self):
        self.expect("(")
        alpha = Fraction(1)
        if self.peek().isdigit() or self.peek() == ".":
            alpha = self.number()
            if self.peek() == "*":
                self.pos += 1
        self.expect("x")
        beta = Fraction(0)
        if self.peek() in ("+", "-") and self.peek():
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            beta = sign * self.number()
        self.expect(")")
        return (alpha, beta), self._exponent()

    def _derivative(self) -> int:
        if self.peek() == "^":
            self.pos += 1
            self.expect("(")
            k = self.integer()
            self.expect(")")
            if k < 0:
                raise EquationSyntaxError("negative derivative order", self.pos)
            return k
        k = 0
        while self.pos < len(self.text) and self.text[self.pos] == "'":
            k += 1
            self.pos += 1
        return k


def parse_equation(text: str) -> EulerEquation:
    """Parse an Euler (or Legendre) equation into exact rational coefficients."""
    terms = _Parser(text).equation()
    shifts = {s for (k, s) in terms if k > 0 and terms[(k, s)] != 0}
    if len(shifts) > 1:
        raise NotEulerForm("terms mix x powers with (a*x+b) powers or use different shifts", text)
    shift = shifts.pop() if shifts else None
    if shift == (1, 0):
        shift = None
    order = max((k for (k, _), c in terms.items() if c != 0), default=0)
    if order == 0:
        raise NotEulerForm("no derivative terms", text)
    if order > MAX_ORDER:
        raise RangeError(f"order {order} exceeds {MAX_ORDER}")
    coeffs = [Fraction(0)] * (order + 1)
    for (k, _), c in terms.items():
        coeffs[k] += c
    return EulerEquation(tuple(coeffs), shift)


def _fmt_number(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if isinstance(c, complex):
        if c.imag != 0:
            raise ValueError("complex coefficients cannot be rendered in the equation grammar")
        c = c.real
    if float(c).is_integer():
        return str(int(c))
    return repr(float(c))


def render_equation(eq: EulerEquation) -> str:
    if eq.shift is None:
        base = "x"
    else:
        a, b = eq.shift
        sign = "-" if b < 0 else "+"
        base = f"({_fmt_number(a)}*x{sign}{_fmt_number(abs(b))})"
    parts = []
    for k in range(eq.order, -1, -1):
        c = eq.coeffs[k]
        if c == 0:
            continue
        y = "y" + "'" * k if k <= 3 else f"y^({k})"
        factors = []
        mag = abs(c)
        if mag != 1:
            factors.append(_fmt_number(mag))
        if k == 1:
            factors.append(base)
        elif k > 1:
            factors.append(f"{base}^{k}")
        factors.append(y)
        body = "*".join(factors)
        negative = c < 0
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append(("- " if negative else "+ ") + body)
    return " ".join(parts) + " = 0"


# ------------------------------------------------------------- δ conversion


def falling_factorial_expand(k: int) -> list[int]:
    """Ascending coefficients of δ(δ−1)…(δ−k+1): signed Stirling numbers s(k, j)."""
    if not 0 <= k <= MAX_ORDER:
        raise RangeError(f"falling factorial degree must lie in [0, {MAX_ORDER}], got {k}")
    poly = [1]
    for j in range(k):
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] += c
            nxt[i] -= j * c
        poly = nxt
    return poly


def _effective_coeffs(eq: EulerEquation) -> list:
    # (αx+β)^k d^k/dx^k = α^k · u^k d^k/du^k
    if eq.shift is None:
        return list(eq.coeffs)
    alpha = eq.shift[0]
    return [c * alpha**k for k, c in enumerate(eq.coeffs)]


def to_delta(eq: EulerEquation) -> OperatorPoly:
    coeffs = _effective_coeffs(eq)
    out = [0] * (eq.order + 1)
    for k, a in enumerate(coeffs):
        if a == 0:
            continue
        for j, s in enumerate(falling_factorial_expand(k)):
            out[j] += a * s
    return OperatorPoly("delta", tuple(out))


# --------------------------------------------------------------- root finding


def _trim(p: list) -> list:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _deriv(p: list) -> list:
    return _trim([k * p[k] for k in range(1, len(p))] or [Fraction(0)])


def _divmod(num: list, den: list):
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    while len(num) >= len(den) and any(num):
        shift = len(num) - len(den)
        f = num[-1] / den[-1]
        q[shift] = f
        for i, d in enumerate(den):
            num[i + shift] -= f * d
        num.pop()
    return _trim(q), _trim(num or [Fraction(0)])


def _gcd(a: list, b: list) -> list:
    while any(b):
        _, r = _divmod(a, b)
        a, b = b, r
    return [c / a[-1] for c in a]


def _sub(p: list, q: list) -> list:
    n = max(len(p), len(q))
    return _trim([x - y for x, y in zip(_pad(p, n), _pad(q, n))])


def _pad(p: list, n: int) -> list:
    return list(p) + [Fraction(0)] * (n - len(p))


def _squarefree(p: list) -> list[tuple[list, int]]:
    """Yun's algorithm over the rationals: p = lc · ∏ f_i^i with f_i square-free and coprime."""
    out = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b, _ = _divmod(p, a)
    c, _ = _divmod(dp, a)
    d = _sub(c, _deriv(b))
    i = 1
    while len(b) > 1:
        a = _gcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b, _ = _divmod(b, a)
        c, _ = _divmod(d, a)
        d = _sub(c, _deriv(b))
        i += 1
    return out


def _numeric_roots(coeffs: Sequence) -> np.ndarray:
    c = np.array([complex(x) for x in coeffs], dtype=complex)
    if len(c) <= 1:
        return np.array([], dtype=complex)
    roots = np.roots(c[::-1])
    if not np.all(np.isfinite(roots)):
        raise ConvergenceFailure("companion eigenvalues are not finite")
    dc = np.polyder(c[::-1])
    for _ in range(3):
        # Newton polish; each factor here is square-free so convergence is quadratic
        val = np.polyval(c[::-1], roots)
        der = np.polyval(dc, roots)
        step = np.where(der != 0, val / np.where(der != 0, der, 1), 0)
        roots = roots - step
    if not np.all(np.isfinite(roots)):
        raise ConvergenceFailure("root polishing diverged")
    return roots


def _is_exact(coeffs) -> bool:
    return all(isinstance(c, (int, Fraction)) for c in coeffs)


def _is_real(coeffs) -> bool:
    return all(complex(c).imag == 0 for c in coeffs)


def char_roots(p: OperatorPoly, tol: float = CLUSTER_TOL, snap: float = SNAP_TOL) -> RootMultiset:
    """Roots of P(δ) with multiplicities, clustered within ``tol`` and snapped to integers within ``snap``.

    Exact (integer/rational) coefficients are first split into square-free
    factors, so multiplicities are exact; float input relies on clustering.
    """
    if p.degree < 1:
        raise ValueError("characteristic polynomial must have degree >= 1")
    candidates: list[tuple[complex, int]] = []
    if _is_exact(p.coeffs):
        for factor, mult in _squarefree([Fraction(c) for c in p.coeffs]):
            candidates += [(complex(r), mult) for r in _numeric_roots(factor)]
    else:
        candidates = [(complex(r), 1) for r in _numeric_roots(p.coeffs)]
    real_poly = _is_real(p.coeffs)
    clusters: list[list] = []
    for r, m in candidates:
        for cl in clusters:
            if abs(cl[0] - r) <= tol * max(1.0, abs(r)):
                cl[1] += m
                cl[2].append(r)
                cl[0] = sum(cl[2]) / len(cl[2])
                break
        else:
            clusters.append([r, m, [r]])
    entries = []
    for center, mult, raw in clusters:
        root = complex(center)
        if real_poly and abs(root.imag) <= tol * max(1.0, abs(root)):
            root = complex(root.real, 0.0)
        n = round(root.real)
        if abs(root - n) <= snap:
            root = complex(n, 0.0)
        entries.append(RootEntry(root, mult, tuple(raw)))
    entries.sort(key=lambda e: (-e.root.real, -e.root.imag))
    total = sum(e.multiplicity for e in entries)
    if total != p.degree:
        raise ConvergenceFailure(f"found {total} roots for a degree-{p.degree} polynomial")
    return RootMultiset(tuple(entries))


# ------------------------------------------------------------ solution basis


def _fmt_real(v: float) -> str:
    if float(v).is_integer():
        return str(int(v))
    return f"{v:.12g}"


def _fmt_exponent(r: complex) -> str:
    if r.imag == 0:
        return _fmt_real(r.real)
    sign = "+" if r.imag >= 0 else "-"
    return f"({_fmt_real(r.real)}{sign}{_fmt_real(abs(r.imag))}i)"


def render_term(term: BasisTerm, var: str = "x") -> str:
    factors = []
    a = term.exponent.real if term.kind != "power" else None
    power = complex(a, 0) if a is not None else term.exponent
    if power != 0:
        factors.append(var if power == 1 else f"{var}^{_fmt_exponent(power)}")
    if term.kind != "power":
        b = abs(term.exponent.imag)
        arg = f"ln({var})" if b == 1 else f"{_fmt_real(b)}*ln({var})"
        factors.append(f"{term.kind}({arg})")
    if term.log_power == 1:
        factors.append(f"ln({var})")
    elif term.log_power > 1:
        factors.append(f"ln({var})^{term.log_power}")
    return "*".join(factors) or "1"


def render_basis(terms: Sequence[BasisTerm], var: str = "x") -> str:
    pieces = []
    for i, t in enumerate(terms, start=1):
        body = render_term(t, var)
        pieces.append(f"c{i}" if body == "1" else f"c{i}*{body}")
    return " + ".join(pieces)


def solution_basis(roots: RootMultiset, real_form: bool = False, var: str = "x") -> SolutionBasis:
    """x^r (ln x)^j for each root r and j below its multiplicity."""
    terms = []
    if not real_form:
        for e in roots.entries:
            terms += [BasisTerm(e.root, j) for j in range(e.multiplicity)]
        return SolutionBasis(tuple(terms), False, render_basis(terms, var))
    used = set()
    for i, e in enumerate(roots.entries):
        if i in used:
            continue
        if e.root.imag == 0:
            terms += [BasisTerm(e.root, j) for j in range(e.multiplicity)]
            continue
        partner = next(
            (
                k
                for k, f in enumerate(roots.entries)
                if k != i and k not in used and f.multiplicity == e.multiplicity
                and abs(f.root - e.root.conjugate()) <= CLUSTER_TOL * max(1.0, abs(e.root))
            ),
            None,
        )
        if partner is None:
            raise RealFormUnavailable(f"root {e.root} has no conjugate partner")
        used.update((i, partner))
        upper = complex(e.root.real, abs(e.root.imag))
        for j in range(e.multiplicity):
            terms += [BasisTerm(upper, j, "cos"), BasisTerm(upper, j, "sin")]
    return SolutionBasis(tuple(terms), True, render_basis(terms, var))


def solve(eq: EulerEquation, real_form: bool = False) -> tuple[OperatorPoly, RootMultiset, SolutionBasis]:
    p = to_delta(eq)
    roots = char_roots(p)
    return p, roots, solution_basis(roots, real_form, variable_name(eq))


def variable_name(eq: EulerEquation) -> str:
    if eq.shift is None:
        return "x"
    a, b = eq.shift
    sign = "-" if b < 0 else "+"
    return f"({_fmt_number(a)}*x{sign}{_fmt_number(abs(b))})"


# -------------------------------------------------------------- verification


def _scaled_derivatives(term: BasisTerm, u: float, order: int) -> list[complex]:
    """u^k d^k/du^k [u^r (ln u)^j] for k = 0..order, in closed form.

    With D^k y = u^{r−k} Q_k(ln u): Q_0 = L^j and Q_{k+1} = (r−k) Q_k + Q_k'.
    """
    r = complex(term.exponent)
    q = [0j] * term.log_power + [1 + 0j]
    L = math.log(u)
    ur = cmath.exp(r * L)
    out = []
    for k in range(order + 1):
        out.append(ur * sum(c * L**i for i, c in enumerate(q)))
        dq = [i * q[i] for i in range(1, len(q))] + [0j]
        q = [(r - k) * q[i] + dq[i] for i in range(len(q))]
    if term.kind == "cos":
        return [complex(v.real) for v in out]
    if term.kind == "sin":
        return [complex(v.imag) for v in out]
    return out


def verify_basis(eq: EulerEquation, basis: SolutionBasis | Sequence[BasisTerm], points: Sequence[float]) -> float:
    """Largest normalized residual |Σ a_k x^k y^(k)| / (|a_n| · max_k |x^k y^(k)|)."""
    terms = basis.terms if isinstance(basis, SolutionBasis) else tuple(basis)
    coeffs = [complex(c) for c in _effective_coeffs(eq)]
    lead = abs(coeffs[-1])
    worst = 0.0
    for x in points:
        x = float(x)
        if not x >= 1e-3:
            raise DomainError(f"verification points must be >= 1e-3, got {x}")
        u = x if eq.shift is None else float(eq.shift[0]) * x + float(eq.shift[1])
        if not u >= 1e-3:
            raise DomainError(f"shifted variable {u} is not positive at x = {x}")
        for t in terms:
            vals = _scaled_derivatives(t, u, eq.order)
            scale = max(abs(v) for v in vals) or 1.0
            res = abs(sum(a * v for a, v in zip(coeffs, vals))) / (lead * scale)
            worst = max(worst, res)
    return worst


# ------------------------------------------------------ exp/ln correspondence


def exp_solution_residual(p: OperatorPoly, r: complex, j: int, zs: Sequence[float]) -> float:
    """Residual of h(z) = z^j e^{rz} in the constant-coefficient equation P(d/dz) h = 0.

    d^m h = e^{rz} Σ_i C(m,i) r^{m−i} j!/(j−i)! z^{j−i}, evaluated in closed form.
    """
    coeffs = [complex(c) for c in p.coeffs]
    worst = 0.0
    for z in zs:
        derivs = []
        for m in range(len(coeffs)):
            acc = 0j
            for i in range(min(m, j) + 1):
                acc += math.comb(m, i) * r ** (m - i) * math.perm(j, i) * z ** (j - i)
            derivs.append(cmath.exp(r * z) * acc)
        scale = max(abs(d) for d in derivs) or 1.0
        worst = max(worst, abs(sum(c * d for c, d in zip(coeffs, derivs))) / (abs(coeffs[-1]) * scale))
    return worst


def pullback(r: complex, j: int, x: float) -> complex:
    """h(ln x) for h(z) = z^j e^{rz}."""
    z = math.log(x)
    return z**j * cmath.exp(r * z)


def pullback_basis(roots: RootMultiset) -> SolutionBasis:
    """The terms z^j e^{rz} of the constant-coefficient solution space, carried to x by z = ln x."""
    return solution_basis(roots, real_form=False)

