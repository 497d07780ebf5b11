"""Small numerical helpers: trig of pi*z with exact argument reduction, and
complex adaptive quadrature on top of scipy.integrate.quad."""
from __future__ import annotations

import cmath
import math

from scipy import integrate

from .errors import QuadratureFailure

EULER_GAMMA = 0.57721566490153286061
PI = math.pi


def as_complex(z) -> complex:
    return complex(z)


def _reduce(x: float):
    # x - n is exact in binary floating point for |x| < 2**52
    n = round(x)
    return x - n, (-1.0 if n % 2 else 1.0)


def sin_pi(z) -> complex:
    z = complex(z)
    f, sign = _reduce(z.real)
    return sign * cmath.sin(complex(PI * f, PI * z.imag))


def cos_pi(z) -> complex:
    z = complex(z)
    f, sign = _reduce(z.real)
    return sign * cmath.cos(complex(PI * f, PI * z.imag))


def cot_pi(z) -> complex:
    """cot(pi z), stable near integers and for large |Im z|."""
    z = complex(z)
    f, _ = _reduce(z.real)  # cot has period 1
    a, b = PI * f, PI * z.imag
    if abs(b) > 20.0:
        return complex(0.0, -math.copysign(1.0, b))
    den = 2.0 * (math.sin(a) ** 2 + math.sinh(b) ** 2)
    return complex(math.sin(2 * a), -math.sinh(2 * b)) / den


def dist_to_nonpositive_integer(z: complex) -> tuple[float, int]:
    """Distance from z to the nearest point of {0, -1, -2, ...} and that point."""
    n = min(0, round(z.real))
    return abs(z - n), n


def dist_to_integer(z: complex) -> tuple[float, int]:
    n = round(z.real)
    return abs(z - n), n


def quad_complex(f, a: float, b: float, *, epsabs: float, epsrel: float, limit: int) -> complex:
    """Integrate a complex-valued function of a real variable over [a, b].

    Real and imaginary parts are integrated separately with QUADPACK; any
    failure flag whose error estimate exceeds the requested tolerance raises
    QuadratureFailure.
    """
    total = 0j
    for part, unit in ((lambda t: f(t).real, 1.0), (lambda t: f(t).imag, 1j)):
        out = integrate.quad(part, a, b, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
        value, abserr = out[0], out[1]
        if len(out) > 3 and abserr > max(epsabs, epsrel * abs(value)) * 100:
            raise QuadratureFailure(f"quad on [{a}, {b}] failed: {out[3]} (err {abserr:.2e})")
        total += unit * value
    return total
