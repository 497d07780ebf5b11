"""Principal part calculus for meromorphic functions.

The principal part of f at a is the order-0 Laurent coefficient c₀ of f about
a; at a regular point it is simply f(a).  Three independent routes are
provided:

* contour integrals on a circle about ``a`` (any pole order),
* the symmetric average (f(a−ε) + f(a+ε))/2 with Richardson extrapolation
  (regular points and simple poles only),
* the product rule for holomorphic × meromorphic factors on explicit Laurent
  windows.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .config import DEFAULT, EvalConfig
from .errors import (
    ContourError,
    DivergenceDetected,
    InsufficientCoefficients,
    NonFiniteValue,
    PoleProximity,
)

# ---------------------------------------------------------------- pole sets


class PoleSet:
    """Describes where a function has poles."""

    def near(self, center: complex, radius: float) -> list[complex]:
        raise NotImplementedError

    def order(self, pole: complex) -> int:
        return 1


class NoPoles(PoleSet):
    def near(self, center, radius):
        return []

    def __repr__(self):
        return "NoPoles()"


@dataclass(frozen=True)
class FinitePoles(PoleSet):
    points: tuple
    orders: Optional[tuple] = None

    def near(self, center, radius):
        return [complex(p) for p in self.points if abs(p - center) <= radius]

    def order(self, pole):
        if self.orders is None:
            return 1
        for p, m in zip(self.points, self.orders):
            if abs(p - pole) < 1e-12:
                return m
        return 0


@dataclass(frozen=True)
class IntegerPoles(PoleSet):
    """Poles at the integers n for which ``member(n)`` holds."""

    member: Callable[[int], bool]
    pole_order: int = 1
    description: str = ""

    def near(self, center, radius):
        center = complex(center)
        lo = math.floor(center.real - radius)
        hi = math.ceil(center.real + radius)
        return [complex(n) for n in range(lo, hi + 1) if self.member(n) and abs(n - center) <= radius]

    def order(self, pole):
        return self.pole_order

    def __repr__(self):
        return f"IntegerPoles({self.description or self.member!r})"


@dataclass(frozen=True)
class UnionPoles(PoleSet):
    parts: tuple

    def near(self, center, radius):
        found = []
        for part in self.parts:
            for p in part.near(center, radius):
                if all(abs(p - q) > 1e-12 for q in found):
                    found.append(p)
        return found

    def order(self, pole):
        return max(part.order(pole) if part.near(pole, 1e-12) else 0 for part in self.parts)


NO_POLES = NoPoles()


def nonpositive_integers(order: int = 1) -> IntegerPoles:
    return IntegerPoles(lambda n: n <= 0, order, "n <= 0")


# ----------------------------------------------------------- function handle


@dataclass(frozen=True)
class FunctionHandle:
    """A named meromorphic function with its pole set and optional closed forms.

    ``closed_pp`` / ``closed_res`` map a point to the tabulated principal part
    or residue there, returning None when no closed form is known.
    """

    name: str
    evaluator: Callable[[complex], complex]
    poles: PoleSet = NO_POLES
    closed_pp: Optional[Callable[[complex], Optional[complex]]] = None
    closed_res: Optional[Callable[[complex], Optional[complex]]] = None
    description: str = field(default="", compare=False)

    def __call__(self, z) -> complex:
        return complex(self.evaluator(complex(z)))

    def pole_at(self, a: complex, tol: float = 1e-9) -> Optional[complex]:
        hits = self.poles.near(complex(a), tol)
        return hits[0] if hits else None

    def distance_to_other_pole(self, a: complex, exclude: float = 1e-12) -> float:
        """Distance from a to the nearest pole not located at a itself."""
        a = complex(a)
        radius = 1.0
        while radius <= 1024.0:
            others = [abs(p - a) for p in self.poles.near(a, radius) if abs(p - a) > exclude]
            if others:
                return min(others)
            radius *= 2.0
        return math.inf

    def __add__(self, other: FunctionHandle) -> FunctionHandle:
        return FunctionHandle(
            f"({self.name}+{other.name})",
            lambda z, f=self, g=other: f(z) + g(z),
            UnionPoles((self.poles, other.poles)),
        )

    def __mul__(self, other: FunctionHandle) -> FunctionHandle:
        return FunctionHandle(
            f"({self.name}*{other.name})",
            lambda z, f=self, g=other: f(z) * g(z),
            UnionPoles((self.poles, other.poles)),
        )


def handle(name: str, fn: Callable, poles: PoleSet = NO_POLES) -> FunctionHandle:
    return FunctionHandle(name, fn, poles)


# -------------------------------------------------------------- Laurent data


@dataclass(frozen=True)
class LaurentData:
    """Coefficients c_k, k = min_order … min_order+len−1, about ``center``.

    ``complete`` marks an exact expansion (a polynomial, say): coefficients
    past the window are zero rather than unknown.
    """

    center: complex
    min_order: int
    coeffs: tuple
    complete: bool = False

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.coeffs:
            raise InsufficientCoefficients("empty Laurent window")
        if self.min_order < 0 and self.coeffs[0] == 0:
            raise ValueError("leading coefficient of a pole must be nonzero")

    @property
    def max_order(self) -> int:
        return self.min_order + len(self.coeffs) - 1

    @property
    def pole_order(self) -> int:
        return max(0, -self.min_order)

    def coeff(self, k: int) -> complex:
        if k < self.min_order:
            return 0j
        if k > self.max_order:
            if self.complete:
                return 0j
            raise InsufficientCoefficients(f"order {k} outside window [{self.min_order}, {self.max_order}]")
        return self.coeffs[k - self.min_order]

    @property
    def principal_part(self) -> complex:
        return self.coeff(0)

    @property
    def residue(self) -> complex:
        return self.coeff(-1)


@dataclass(frozen=True)
class ContourSpec:
    """Circle |z − a| = radius sampled at ``nodes`` equispaced points.

    ``radius=None`` means: half the distance to the nearest other singularity,
    capped at 0.5.
    """

    radius: Optional[float] = None
    nodes: int = 256

    def __post_init__(self):
        if self.nodes < 16 or self.nodes % 2:
            raise ValueError("nodes must be even and >= 16")
        if self.radius is not None and not self.radius > 0:
            raise ValueError("radius must be positive")


DEFAULT_CONTOUR = ContourSpec()


def contour_radius(f: FunctionHandle, a: complex, spec: ContourSpec = DEFAULT_CONTOUR) -> float:
    a = complex(a)
    d = f.distance_to_other_pole(a)
    if spec.radius is None:
        return min(0.5, d / 2.0)
    if spec.radius >= d:
        raise ContourError(
            f"radius {spec.radius:g} about {a} reaches another singularity of {f.name} at distance {d:g}"
        )
    return spec.radius


def _circle_samples(f: FunctionHandle, a: complex, spec: ContourSpec):
    r = contour_radius(f, a, spec)
    theta = 2.0 * np.pi * np.arange(spec.nodes) / spec.nodes
    w = r * np.exp(1j * theta)
    values = np.empty(spec.nodes, dtype=complex)
    for j, wj in enumerate(w):
        try:
            values[j] = f(a + wj)
        except PoleProximity as exc:
            raise ContourError(f"{f.name} has a pole on the contour near {a + wj}") from exc
        if not cmath.isfinite(values[j]):
            raise NonFiniteValue(f"{f.name} returned {values[j]} at {a + wj}")
    return w, values


def laurent_coeff(f: FunctionHandle, a, k: int, spec: ContourSpec = DEFAULT_CONTOUR) -> complex:
    """c_k = (1/2πi) ∮ f(z)/(z−a)^{k+1} dz by the trapezoidal rule on a circle."""
    a = complex(a)
    w, values = _circle_samples(f, a, spec)
    return complex(np.mean(values * w ** (-k)))


def pp_contour(f: FunctionHandle, a, spec: ContourSpec = DEFAULT_CONTOUR) -> complex:
    """Principal part at a: (1/2πi) ∮ f(z)/(z−a) dz."""
    return laurent_coeff(f, a, 0, spec)


def residue_contour(f: FunctionHandle, a, spec: ContourSpec = DEFAULT_CONTOUR) -> complex:
    return laurent_coeff(f, a, -1, spec)


def laurent_data(
    f: FunctionHandle, a, min_order: int, max_order: int, spec: ContourSpec = DEFAULT_CONTOUR, drop_tol: float = 1e-11
) -> LaurentData:
    """Window of Laurent coefficients from one set of contour samples.

    Leading negative-order coefficients below ``drop_tol`` (relative to the
    largest coefficient in the window) are treated as zero and trimmed, so
    ``min_order`` of the result reflects the detected pole order.
    """
    a = complex(a)
    w, values = _circle_samples(f, a, spec)
    coeffs = [complex(np.mean(values * w ** (-k))) for k in range(min_order, max_order + 1)]
    scale = max(abs(c) for c in coeffs) or 1.0
    lo = min_order
    while lo < 0 and abs(coeffs[0]) <= drop_tol * scale:
        coeffs.pop(0)
        lo += 1
    return LaurentData(a, lo, tuple(coeffs))


# ------------------------------------------------------------ symmetric limit

EPS_SCHEDULE = (1e-2, 5e-3, 2.5e-3, 1.25e-3)


def _extrapolate(samples: Sequence[complex], what: str) -> complex:
    diffs = [abs(samples[i + 1] - samples[i]) for i in range(len(samples) - 1)]
    floor = 1e-10 * (1.0 + abs(samples[-1]))
    if diffs[-1] > diffs[0] and diffs[-1] > floor:
        raise DivergenceDetected(f"{what} grows as epsilon shrinks; pole of higher order than allowed")
    # error model c*eps^2 + O(eps^4), halving eps
    return (4.0 * samples[-1] - samples[-2]) / 3.0


def pp_symmetric(f: FunctionHandle, a, cfg: EvalConfig = DEFAULT) -> complex:
    """lim (f(a−ε) + f(a+ε))/2, valid at regular points and simple poles."""
    a = complex(a)
    samples = [0.5 * (f(a - e) + f(a + e)) for e in EPS_SCHEDULE]
    return _extrapolate(samples, f"symmetric average of {f.name} at {a}")


def residue_symmetric(f: FunctionHandle, a, cfg: EvalConfig = DEFAULT) -> complex:
    """lim ε(f(a+ε) − f(a−ε))/2, valid for poles of order at most two."""
    a = complex(a)
    samples = [0.5 * e * (f(a + e) - f(a - e)) for e in EPS_SCHEDULE]
    return _extrapolate(samples, f"symmetric difference of {f.name} at {a}")


# ---------------------------------------------------------------- product rule


def pp_product(f1_taylor: LaurentData, f2: LaurentData) -> complex:
    """p.p.(f₁f₂) = Σ_{k=0}^{m} t_k c₋ₖ for holomorphic f₁ and f₂ with a pole of order m."""
    if f1_taylor.min_order < 0:
        raise ValueError("first factor must be holomorphic at the center")
    if abs(f1_taylor.center - f2.center) > 1e-14 * max(1.0, abs(f2.center)):
        raise ValueError("expansions have different centers")
    m = f2.pole_order
    if f1_taylor.max_order < m and not f1_taylor.complete:
        raise InsufficientCoefficients(f"holomorphic factor needs {m + 1} Taylor coefficients")
    if f2.max_order < 0 and not f2.complete:
        raise InsufficientCoefficients("meromorphic factor must reach order 0")
    return sum(f1_taylor.coeff(k) * f2.coeff(-k) for k in range(m + 1))


def taylor(center, coeffs: Sequence, complete: bool = False) -> LaurentData:
    return LaurentData(complex(center), 0, tuple(coeffs), complete)
