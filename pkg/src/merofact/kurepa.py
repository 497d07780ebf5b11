"""Kurepa's function K (left factorial), the alternating function A, their
series companions K1 and A1, and the closed-form residues/principal parts.

    K(z)  = L1 − (π/e)·cot(πz) + K1(z),       K1(z) = Σ_{n≥0} Γ(z−n)
    A(z)  = −L2·(−1)^z + πe/sin(πz) + A1(z),   A1(z) = Σ_{n≥0} (−1)ⁿ Γ(z+1−n)

with L1 = Ei(1)/e and L2 = 1 + e·Ei(−1).  The branch (−1)^z = exp(iπz) is
used throughout, so A is complex-valued on the real axis away from the
integers; its imaginary part −L2·sin(πz) is a branch artefact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._numeric import EULER_GAMMA, PI, cos_pi, cot_pi, dist_to_integer, quad_complex, sin_pi
from .config import DEFAULT, EvalConfig
from .errors import DomainError, NoClosedForm, PoleProximity
from .meromorphic import FunctionHandle, IntegerPoles
from .specfun import gamma

E = math.e

# Evaluation of K / A closer than this to a pole is refused.
NEAR_POLE = 1e-3
# Regular integers are approached through a Cauchy integral on this circle.
_CAUCHY_RADIUS = 0.25
_CAUCHY_NODES = 64
_SERIES_CUTOFF = 1e-17


@dataclass(frozen=True)
class KurepaConstants:
    L1: float
    L2: float
    gamma_euler: float = EULER_GAMMA


def const_L1(cfg: EvalConfig = DEFAULT) -> float:
    """L1 = (γ + Σ_{n≥1} 1/(n!·n)) / e."""
    total = EULER_GAMMA
    fact = 1.0
    for n in range(1, cfg.max_terms + 1):
        fact *= n
        term = 1.0 / (fact * n)
        total += term
        if term < 1e-16 * total:
            break
    return total / E


def const_L2(cfg: EvalConfig = DEFAULT) -> float:
    """L2 = 1 + e·γ − e·Σ_{n≥1} (−1)^{n−1}/(n!·n)."""
    total = 0.0
    fact = 1.0
    for n in range(1, cfg.max_terms + 1):
        fact *= n
        term = (-1.0) ** (n - 1) / (fact * n)
        total += term
        if abs(term) < 1e-16 * abs(total):
            break
    return 1.0 + E * EULER_GAMMA - E * total


@lru_cache(maxsize=None)
def constants(cfg: EvalConfig = DEFAULT) -> KurepaConstants:
    return KurepaConstants(const_L1(cfg), const_L2(cfg))


# ------------------------------------------------------------------ poles


def is_K_pole(n: int) -> bool:
    return n == -1 or n <= -3


def is_A_pole(n: int) -> bool:
    return n <= -2


def _sum_factorials(n: int) -> int:
    return sum(math.factorial(i) for i in range(n))


def _alt_sum_factorials(n: int) -> int:
    return sum((-1) ** (n - i) * math.factorial(i) for i in range(1, n + 1))


def _exp_i_pi(z: complex) -> complex:
    return cos_pi(z) + 1j * sin_pi(z)


# ---------------------------------------------------------------- series


def _gamma_tail_series(first: complex, z: complex, sign: float, cfg: EvalConfig) -> complex:
    """Σ_n sign^n · first / ∏_{j=1}^{n} (z−j) with the running product."""
    total = first
    term = first
    quiet = 0
    for n in range(1, cfg.max_terms + 1):
        term = sign * term / (z - n)
        total += term
        if abs(term) < _SERIES_CUTOFF * abs(total):
            quiet += 1
            if quiet == 3:
                break
        else:
            quiet = 0
    return total


def _check_off_integers(z: complex, cfg: EvalConfig, name: str) -> None:
    d, n = dist_to_integer(z)
    if d <= cfg.pole_guard_radius:
        raise PoleProximity(f"{name} has a pole at every integer; {z} is {d:.1e} from {n}", pole=n)


def k1_series(z, cfg: EvalConfig = DEFAULT) -> complex:
    z = complex(z)
    _check_off_integers(z, cfg, "K1")
    return _gamma_tail_series(gamma(z, cfg), z, 1.0, cfg)


def a1_series(z, cfg: EvalConfig = DEFAULT) -> complex:
    z = complex(z)
    _check_off_integers(z, cfg, "A1")
    # (−1)ⁿ Γ(z+1−n) = (−1)ⁿ Γ(z+1) / ∏_{j=1}^{n} (z+1−j); shift so the product reads (z' − j)
    return _gamma_tail_series(gamma(z + 1.0, cfg), z + 1.0, -1.0, cfg)


def _cauchy_near(fn, z: complex, m: int) -> complex:
    """Value of a function holomorphic near the integer m, from a circle about m."""
    total = 0j
    for j in range(_CAUCHY_NODES):
        w = _CAUCHY_RADIUS * complex(math.cos(2 * PI * j / _CAUCHY_NODES), math.sin(2 * PI * j / _CAUCHY_NODES))
        total += fn(m + w) * w / (m + w - z)
    return total / _CAUCHY_NODES


def _slavic_K(z: complex, cfg: EvalConfig) -> complex:
    return constants().L1 - (PI / E) * cot_pi(z) + k1_series(z, cfg)


def _slavic_A(z: complex, cfg: EvalConfig) -> complex:
    return -constants().L2 * _exp_i_pi(z) + PI * E / sin_pi(z) + a1_series(z, cfg)


def _exact_K(n: int) -> complex:
    if n >= 0:
        return complex(_sum_factorials(n))
    if n == -2:
        return 1 + 0j
    raise PoleProximity(f"K has a pole at {n}", pole=n)


def _exact_A(n: int) -> complex:
    if n >= 0:
        return complex(_alt_sum_factorials(n))
    if n == -1:
        return 1 + 0j  # A(0) + A(−1) = Γ(1)
    raise PoleProximity(f"A has a pole at {n}", pole=n)


def _evaluate(z: complex, cfg: EvalConfig, exact, is_pole, slavic, name: str) -> complex:
    d, n = dist_to_integer(z)
    if z.imag == 0.0 and z.real == n:
        return exact(n)
    if d < max(NEAR_POLE, cfg.pole_guard_radius):
        if is_pole(n):
            raise PoleProximity(f"{name}({z}) is {d:.1e} from the pole at {n}; use a pp_* operation", pole=n)
        return _cauchy_near(lambda w: slavic(w, cfg), z, n)
    return slavic(z, cfg)


def kurepa(z, variant: str = "K", cfg: EvalConfig = DEFAULT) -> complex:
    """Kurepa's function K (Slavić route) or its series companion K1."""
    z = complex(z)
    if variant == "K1":
        return k1_series(z, cfg)
    if variant != "K":
        raise ValueError(f"unknown Kurepa variant {variant!r}")
    return _evaluate(z, cfg, _exact_K, is_K_pole, _slavic_K, "K")


def altkurepa(z, variant: str = "A", cfg: EvalConfig = DEFAULT) -> complex:
    """Alternating Kurepa function A (Slavić-type route) or its companion A1."""
    z = complex(z)
    if variant == "A1":
        return a1_series(z, cfg)
    if variant != "A":
        raise ValueError(f"unknown alternating Kurepa variant {variant!r}")
    return _evaluate(z, cfg, _exact_A, is_A_pole, _slavic_A, "A")


# ------------------------------------------------------------ integral oracles


def _oracle(integrand, z: complex, cfg: EvalConfig) -> complex:
    split = max(10.0, 2.0 * abs(z) + 20.0)
    opts = dict(epsabs=1e-13, epsrel=1e-13, limit=cfg.max_terms)
    return (
        quad_complex(integrand, 0.0, 1.0, **opts)
        + quad_complex(integrand, 1.0, split, **opts)
        + quad_complex(integrand, split, math.inf, **opts)
    )


def kurepa_integral_oracle(z, cfg: EvalConfig = DEFAULT) -> complex:
    """K(z) = ∫₀^∞ e^{−t} (t^z − 1)/(t − 1) dt for Re z > 0."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("the Kurepa integral converges only for Re z > 0")
    c1, c2, c3 = z, z * (z - 1) / 2, z * (z - 1) * (z - 2) / 6
    c4 = c3 * (z - 3) / 4

    def integrand(t):
        u = t - 1.0
        if abs(u) < 1e-3:
            ratio = c1 + u * (c2 + u * (c3 + u * c4))
        else:
            ratio = (_powc(t, z) - 1.0) / u
        return math.exp(-t) * ratio

    return _oracle(integrand, z, cfg)


def altkurepa_integral_oracle(z, cfg: EvalConfig = DEFAULT) -> complex:
    """A(z) = ∫₀^∞ e^{−t} (t^{z+1} − (−1)^z t)/(t + 1) dt, (−1)^z = exp(iπz), Re z > 0."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("the alternating Kurepa integral converges only for Re z > 0")
    branch = _exp_i_pi(z)

    def integrand(t):
        return math.exp(-t) * (_powc(t, z + 1.0) - branch * t) / (t + 1.0)

    return _oracle(integrand, z, cfg)


def _powc(t: float, z: complex) -> complex:
    lt = math.log(t)
    mag = math.exp(z.real * lt)
    return complex(mag * math.cos(z.imag * lt), mag * math.sin(z.imag * lt))


# ----------------------------------------------------------- closed forms


def _harmonic(n: int) -> Fraction:
    return sum((Fraction(1, k) for k in range(1, n + 1)), Fraction(0))


def _psi_int(m: int) -> float:
    """ψ(m) for a positive integer m: −γ + H_{m−1}."""
    return -EULER_GAMMA + float(_harmonic(m - 1))


def _pp_gamma(n: int) -> float:
    # principal part of Γ at −n, n ≥ 0
    return (-1) ** n * _psi_int(n + 1) / math.factorial(n)


def _pp_K_at(m: int) -> float:
    """Principal part of K at the integer m."""
    if m >= 0:
        return float(_sum_factorials(m))
    n = -m
    return math.fsum((-1) ** (i + 1) * _psi_int(i + 1) / math.factorial(i) for i in range(n))


def _pp_A_at(m: int) -> float:
    if m >= 0:
        return float(_alt_sum_factorials(m))
    n = -m
    inner = math.fsum(_psi_int(i) / math.factorial(i - 1) for i in range(1, n))
    return (-1) ** (n + 1) * (1.0 - inner)


def pp_closed(family: str, n: int) -> complex:
    """Closed-form principal part.

    Gamma, K, A: at the point −n (Gamma also accepts n < 0, returning Γ(−n));
    K1, A1: at the point n.
    """
    n = int(n)
    if family == "Gamma":
        if n >= 0:
            return complex(_pp_gamma(n))
        return complex(math.factorial(-n - 1))
    if family == "K":
        if n < 1:
            raise NoClosedForm(f"p.p. K(−n) is tabulated for n ≥ 1, got {n}")
        return complex(_pp_K_at(-n))
    if family == "A":
        if n < 1:
            raise NoClosedForm(f"p.p. A(−n) is tabulated for n ≥ 1, got {n}")
        return complex(_pp_A_at(-n))
    if family == "K1":
        return complex(_pp_K_at(n) - constants().L1)
    if family == "A1":
        return complex((-1) ** n * constants().L2 + _pp_A_at(n))
    raise NoClosedForm(f"no principal-part table for {family!r}")


def res_closed(family: str, n: int) -> complex:
    """Closed-form residue at the pole −n."""
    n = int(n)
    if family == "Gamma":
        if n < 0:
            raise NoClosedForm(f"Γ has no pole at {-n}")
        return complex((-1) ** n / math.factorial(n))
    if family == "K":
        if n == 1:
            return -1 + 0j
        if n >= 3:
            return complex(float(sum((Fraction((-1) ** (k - 1), math.factorial(k)) for k in range(2, n)), Fraction(0))))
        raise NoClosedForm(f"K has no pole at {-n}" + (" (removable singularity)" if n == 2 else ""))
    if family == "A":
        if n >= 2:
            return complex((-1) ** n * float(sum((Fraction(1, math.factorial(k)) for k in range(n - 1)), Fraction(0))))
        raise NoClosedForm(f"A has no pole at {-n}")
    raise NoClosedForm(f"no residue table for {family!r}")


# ---------------------------------------------------------------- handles


def _integer_or_none(a: complex):
    a = complex(a)
    if a.imag == 0.0 and a.real.is_integer():
        return int(a.real)
    return None


def _closed_pp_table(family: str, sign: int):
    def lookup(a):
        m = _integer_or_none(a)
        if m is None:
            return None
        try:
            return pp_closed(family, sign * m)
        except NoClosedForm:
            return None

    return lookup


def _closed_res_table(family: str, is_pole):
    def lookup(a):
        m = _integer_or_none(a)
        if m is None or not is_pole(m):
            return 0j
        return res_closed(family, -m)

    return lookup


def _k_pp(a):
    m = _integer_or_none(a)
    return None if m is None else complex(_pp_K_at(m))


def _a_pp(a):
    m = _integer_or_none(a)
    return None if m is None else complex(_pp_A_at(m))


def _series_res(a):
    m = _integer_or_none(a)
    return None if m is not None else 0j


def handles() -> list[FunctionHandle]:
    every_integer = IntegerPoles(lambda n: True, 1, "every integer")
    return [
        FunctionHandle(
            "K",
            lambda z: kurepa(z, "K"),
            IntegerPoles(is_K_pole, 1, "n = -1 or n <= -3"),
            _k_pp,
            _closed_res_table("K", is_K_pole),
            "Kurepa's function",
        ),
        FunctionHandle("K1", lambda z: kurepa(z, "K1"), every_integer, _closed_pp_table("K1", 1), _series_res, "Σ Γ(z−n)"),
        FunctionHandle(
            "A",
            lambda z: altkurepa(z, "A"),
            IntegerPoles(is_A_pole, 1, "n <= -2"),
            _a_pp,
            _closed_res_table("A", is_A_pole),
            "alternating Kurepa function",
        ),
        FunctionHandle(
            "A1", lambda z: altkurepa(z, "A1"), every_integer, _closed_pp_table("A1", 1), _series_res, "Σ (−1)ⁿ Γ(z+1−n)"
        ),
    ]
