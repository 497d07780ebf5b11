"""Riemann zeta, Dirichlet eta and beta, the χ factor, functional-equation
residuals, spectral zeta models and the Casimir energy.

Two independent series are used:

* zeta: the globally convergent Hasse double series
  ζ(s) = (1 − 2^{1−s})^{-1} Σ_n 2^{−n−1} Σ_k (−1)^k C(n,k) (k+1)^{−s},
  truncated after ``HASSE_ROWS`` rows and collapsed into one weight per k;
* eta and beta: the Cohen–Rodriguez Villegas–Zagier accelerated alternating
  sum (Chebyshev weights).

Weights are exact rationals rounded once to numpy ``longdouble``; the sums are
accumulated in extended precision where the platform provides it.  Left of
``REFLECT_BELOW`` the functional equation takes over.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional

import numpy as np

from ._numeric import EULER_GAMMA, PI, cos_pi, quad_complex, sin_pi
from .config import DEFAULT, EvalConfig
from .errors import DivergenceDetected, PoleProximity, Unsupported
from .meromorphic import NO_POLES, FinitePoles, FunctionHandle, pp_contour, pp_symmetric
from .specfun import gamma, rgamma

HASSE_ROWS = 64
CVZ_TERMS = 48

_EXTENDED = np.finfo(np.longdouble).eps < 1e-18
# Where the direct series still meet a 1e-10 relative budget.
REFLECT_BELOW = -4.0 if _EXTENDED else -2.0

_LN2 = math.log(2.0)
_DEGENERATE_RADIUS = 1e-3
_SMOOTHING_RADIUS = 0.05
_SMOOTHING_NODES = 32


def _to_longdouble(q: Fraction) -> np.longdouble:
    # str() keeps every digit; numpy parses it at full longdouble precision
    return np.longdouble(str(q.numerator)) / np.longdouble(str(q.denominator))


def _hasse_weights(rows: int) -> np.ndarray:
    w = []
    for k in range(rows):
        q = sum((Fraction(comb(n, k), 2 ** (n + 1)) for n in range(k, rows)), Fraction(0))
        w.append(_to_longdouble(q if k % 2 == 0 else -q))
    return np.array(w, dtype=np.longdouble)


def _cvz_weights(n: int) -> np.ndarray:
    # d = T_n(3), an integer; b and c stay rational
    t_prev, t = 1, 3
    for _ in range(n - 1):
        t_prev, t = t, 6 * t - t_prev
    d = Fraction(t if n >= 1 else 1)
    b = Fraction(-1)
    c = -d
    out = []
    for k in range(n):
        c = b - c
        out.append(_to_longdouble(c / d))
        b = b * (k + n) * (k - n) / (Fraction(2 * k + 1, 2) * (k + 1))
    return np.array(out, dtype=np.longdouble)


_HASSE_W = _hasse_weights(HASSE_ROWS)
_CVZ_W = _cvz_weights(CVZ_TERMS)
_LOG_K1 = np.log(np.arange(1, HASSE_ROWS + 1, dtype=np.longdouble))
_LOG_ODD = np.log(np.arange(1, 2 * CVZ_TERMS, 2, dtype=np.longdouble))
_LOG_CVZ = np.log(np.arange(1, CVZ_TERMS + 1, dtype=np.longdouble))


def _weighted_sum(weights: np.ndarray, logs: np.ndarray, s: complex) -> complex:
    s_ld = np.clongdouble(s)
    return complex(np.sum(weights * np.exp(-s_ld * logs)))


def _one_minus_two_pow(s: complex) -> complex:
    return 1.0 - cmath.exp((1.0 - s) * _LN2)


def _zeta_hasse(s: complex) -> complex:
    return _weighted_sum(_HASSE_W, _LOG_K1, s) / _one_minus_two_pow(s)


def _near_degenerate(s: complex) -> Optional[complex]:
    """Zero of 1 − 2^{1−s} other than s = 1 within the smoothing trigger radius."""
    k = round(s.imag * _LN2 / (2 * PI))
    if k == 0:
        return None
    center = complex(1.0, 2 * PI * k / _LN2)
    return center if abs(s - center) < _DEGENERATE_RADIUS else None


def _cauchy_value(fn: Callable[[complex], complex], s: complex, center: complex, radius: float, nodes: int) -> complex:
    total = 0j
    for j in range(nodes):
        w = radius * cmath.exp(2j * PI * j / nodes)
        total += fn(center + w) * w / (center + w - s)
    return total / nodes


def zeta(s, cfg: EvalConfig = DEFAULT) -> complex:
    """Riemann zeta function for every s ≠ 1."""
    s = complex(s)
    if abs(s - 1.0) <= cfg.pole_guard_radius:
        raise PoleProximity(f"zeta has a pole at 1; {s} is too close", pole=1.0)
    if s.real < REFLECT_BELOW:
        return chi(s, cfg) * zeta(1.0 - s, cfg)
    center = _near_degenerate(s)
    if center is not None:
        # the factor 1/(1 − 2^{1−s}) is 0/0 here; average the same series over a circle
        return _cauchy_value(_zeta_hasse, s, center, _SMOOTHING_RADIUS, _SMOOTHING_NODES)
    return _zeta_hasse(s)


def eta(s, cfg: EvalConfig = DEFAULT) -> complex:
    """Dirichlet eta η(s) = Σ (−1)^{n+1} n^{−s}, entire."""
    s = complex(s)
    if s.real < REFLECT_BELOW:
        return _one_minus_two_pow(s) * zeta(s, cfg)
    return _weighted_sum(_CVZ_W, _LOG_CVZ, s)


def zeta_via_eta(s, cfg: EvalConfig = DEFAULT) -> complex:
    """ζ(s) = η(s)/(1 − 2^{1−s}) from the accelerated eta series."""
    s = complex(s)
    if abs(s - 1.0) <= cfg.pole_guard_radius:
        raise PoleProximity(f"zeta has a pole at 1; {s} is too close", pole=1.0)
    center = _near_degenerate(s)
    if center is not None:
        return _cauchy_value(lambda w: eta(w, cfg) / _one_minus_two_pow(w), s, center, _SMOOTHING_RADIUS, _SMOOTHING_NODES)
    return eta(s, cfg) / _one_minus_two_pow(s)


def eta_via_zeta(s, cfg: EvalConfig = DEFAULT) -> complex:
    """η(s) = (1 − 2^{1−s})ζ(s) through the Hasse series; η(1) = ln 2."""
    s = complex(s)
    if abs(s - 1.0) <= cfg.pole_guard_radius:
        return complex(_LN2)
    return _one_minus_two_pow(s) * zeta(s, cfg)


def beta_fn(s, cfg: EvalConfig = DEFAULT) -> complex:
    """Dirichlet beta β(s) = Σ (−1)ⁿ (2n+1)^{−s} = L(s, χ₋₄), entire."""
    s = complex(s)
    if s.real < REFLECT_BELOW:
        return _beta_factor(s) * beta_fn(1.0 - s, cfg)
    return _weighted_sum(_CVZ_W, _LOG_ODD, s)


def chi(s, cfg: EvalConfig = DEFAULT) -> complex:
    """χ(s) = (2π)^s / (2Γ(s)cos(πs/2)) so that ζ(s) = χ(s)ζ(1−s).

    Left of 1/2 the equivalent form 2^s π^{s−1} sin(πs/2) Γ(1−s) is used; the
    only poles are the odd positive integers.
    """
    s = complex(s)
    if s.real >= 0.5:
        m = 2 * round((s.real - 1.0) / 2.0) + 1
        if abs(s - m) <= cfg.pole_guard_radius:
            raise PoleProximity(f"chi has a pole at {m}", pole=m)
        return cmath.exp(s * math.log(2 * PI)) * rgamma(s) / (2.0 * cos_pi(s / 2.0))
    return cmath.exp(s * _LN2 + (s - 1.0) * math.log(PI)) * sin_pi(s / 2.0) * gamma(1.0 - s, cfg)


def _beta_factor(s: complex) -> complex:
    """2^s π^{s−1} 4^{1/2−s} Γ(1−s) cos(πs/2); poles at the even positive integers."""
    prefactor = cmath.exp(s * _LN2 + (s - 1.0) * math.log(PI) + (0.5 - s) * math.log(4.0))
    if s.real < 0.5:
        return prefactor * gamma(1.0 - s) * cos_pi(s / 2.0)
    # Γ(1−s)cos(πs/2) = π / (2 sin(πs/2) Γ(s))
    return prefactor * PI * rgamma(s) / (2.0 * sin_pi(s / 2.0))


# ------------------------------------------------------ functional equations


def _nearest_factor_pole(kind: str, s: complex) -> Optional[int]:
    if s.real < 0.5:
        return None
    if kind == "plus":
        m = 2 * round((s.real - 1.0) / 2.0) + 1
        return m if m >= 3 else None
    m = 2 * round(s.real / 2.0)
    return m if m >= 2 else None


def lfe_residual(kind: str, k: int, s, cfg: EvalConfig = DEFAULT) -> float:
    """Normalized residual |LHS − RHS| / (1 + |LHS|) of the L-function equation.

    (plus, 1):  ζ(s) = 2^s π^{s−1} Γ(1−s) sin(πs/2) ζ(1−s)
    (minus, 4): β(s) = 2^s π^{s−1} 4^{1/2−s} Γ(1−s) cos(πs/2) β(1−s)

    Where the gamma-trig factor has a pole cancelled by a trivial zero of the
    L-function on the right, the right-hand side is taken as its removable
    limit (Cauchy average over a small circle).
    """
    s = complex(s)
    if (kind, k) == ("plus", 1):
        lhs_fn = zeta

        def rhs_fn(w):
            return chi(w, cfg) * zeta(1.0 - w, cfg)

    elif (kind, k) == ("minus", 4):
        lhs_fn = beta_fn

        def rhs_fn(w):
            return _beta_factor(w) * beta_fn(1.0 - w, cfg)

    else:
        raise Unsupported(f"only (plus, 1) -> zeta and (minus, 4) -> beta are built in, got ({kind}, {k})")
    lhs = lhs_fn(s, cfg)
    p = _nearest_factor_pole(kind, s)
    if p is not None and abs(s - p) < _DEGENERATE_RADIUS:
        rhs = _cauchy_value(rhs_fn, s, complex(p), _SMOOTHING_RADIUS, _SMOOTHING_NODES)
    else:
        rhs = rhs_fn(s)
    return abs(lhs - rhs) / (1.0 + abs(lhs))


# ------------------------------------------------------------ spectral zeta


def _unit_weight(n: float) -> float:
    return 1.0


@dataclass(frozen=True)
class SpectralModel:
    """ζ_L(s) = Σ w(n) λ(n)^{−s}, evaluated through ``zeta_map``."""

    name: str
    zeta_map: Callable[[complex], complex]
    pole_set: tuple
    eigenvalue: Optional[Callable[[float], float]] = None
    weight: Callable[[float], float] = _unit_weight
    description: str = field(default="", compare=False)


MODELS = {
    "linear": SpectralModel("linear", lambda s: zeta(s), (1.0,), lambda n: n, description="λ_n = n, ζ_L(s) = ζ(s)"),
    "quadratic": SpectralModel(
        "quadratic", lambda s: zeta(2.0 * s), (0.5,), lambda n: n * n, description="λ_n = n², ζ_L(s) = ζ(2s)"
    ),
    "shifted": SpectralModel(
        "shifted",
        lambda s: zeta(2.0 * s + 2.0),
        (-0.5,),
        lambda n: n * n,
        lambda n: 1.0 / (n * n),
        description="λ_n = n² with weight n^{−2}, ζ_L(s) = ζ(2s+2)",
    ),
}


def get_model(name: str) -> SpectralModel:
    try:
        return MODELS[name]
    except KeyError:
        raise Unsupported(f"unknown spectral model {name!r}; choose from {sorted(MODELS)}") from None


def spectral_zeta(model: SpectralModel, s, cfg: EvalConfig = DEFAULT) -> complex:
    s = complex(s)
    for p in model.pole_set:
        if abs(s - p) <= cfg.pole_guard_radius:
            raise PoleProximity(f"spectral zeta {model.name!r} has a pole at {p}", pole=p)
    return complex(model.zeta_map(s))


def eigenvalue_sum(model: SpectralModel, s, n_terms: int = 2000) -> complex:
    """Direct Σ w(n) λ(n)^{−s} with a midpoint-rule integral tail; needs large Re s."""
    if model.eigenvalue is None:
        raise Unsupported(f"model {model.name!r} has no eigenvalue rule")
    s = complex(s)

    def term(x):
        return model.weight(x) * cmath.exp(-s * math.log(model.eigenvalue(x)))

    head = math.fsum(term(n).real for n in range(1, n_terms + 1)) + 1j * math.fsum(
        term(n).imag for n in range(1, n_terms + 1)
    )
    tail = quad_complex(term, n_terms + 0.5, math.inf, epsabs=1e-16, epsrel=1e-12, limit=200)
    return head + tail


def spectral_handle(model: SpectralModel, cfg: EvalConfig = DEFAULT) -> FunctionHandle:
    return FunctionHandle(
        f"zeta_{model.name}", lambda s: spectral_zeta(model, s, cfg), FinitePoles(tuple(complex(p) for p in model.pole_set))
    )


def casimir_with_method(model: SpectralModel, cfg: EvalConfig = DEFAULT) -> tuple[complex, str]:
    """(E₀, method); a regular point needs no limit, a simple pole uses the
    symmetric limit, anything worse falls back to the contour integral."""
    if all(abs(-0.5 - p) > cfg.pole_guard_radius for p in model.pole_set):
        return 0.5 * spectral_zeta(model, -0.5, cfg), "value"
    h = spectral_handle(model, cfg)
    try:
        return 0.5 * pp_symmetric(h, -0.5, cfg), "symmetric"
    except DivergenceDetected:
        return 0.5 * pp_contour(h, -0.5), "contour"


def casimir_energy(model: SpectralModel, cfg: EvalConfig = DEFAULT) -> complex:
    """E₀ = ½ · principal part of ζ_L at s = −1/2."""
    return casimir_with_method(model, cfg)[0]


# ---------------------------------------------------------------- handles


def _zeta_pp(a):
    return complex(EULER_GAMMA) if abs(complex(a) - 1.0) < 1e-12 else None


def _zeta_res(a):
    return 1 + 0j if abs(complex(a) - 1.0) < 1e-12 else 0j


def handles() -> list[FunctionHandle]:
    return [
        FunctionHandle("zeta", zeta, FinitePoles((1 + 0j,)), _zeta_pp, _zeta_res, "Riemann zeta"),
        FunctionHandle("eta", eta, NO_POLES, None, lambda a: 0j, "Dirichlet eta"),
        FunctionHandle("beta", beta_fn, NO_POLES, None, lambda a: 0j, "Dirichlet beta"),
    ]
