"""Name → FunctionHandle lookup shared by the CLI and the verification suite."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Optional

from . import dirichlet, kurepa, specfun
from ._numeric import EULER_GAMMA
from .errors import UnknownFunction
from .meromorphic import FunctionHandle, nonpositive_integers


def _integer_or_none(a: complex) -> Optional[int]:
    a = complex(a)
    if a.imag == 0.0 and a.real.is_integer():
        return int(a.real)
    return None


def _gamma_pp(a):
    m = _integer_or_none(a)
    return None if m is None else kurepa.pp_closed("Gamma", -m)


def _gamma_res(a):
    m = _integer_or_none(a)
    return None if m is None else (kurepa.res_closed("Gamma", -m) if m <= 0 else 0j)


def _harmonic_float(n: int) -> float:
    return math.fsum(1.0 / k for k in range(1, n + 1))


def _digamma_pp(a):
    # ψ(z) = −1/(z+n) + ψ(n+1) + O(z+n) near z = −n
    m = _integer_or_none(a)
    if m is None:
        return None
    n = -m if m <= 0 else m - 1
    value = -EULER_GAMMA + _harmonic_float(n)
    return complex(value)


def _digamma_res(a):
    m = _integer_or_none(a)
    if m is None:
        return None
    return -1 + 0j if m <= 0 else 0j


def _h1_res(a):
    return 0j if _integer_or_none(a) is not None else None


def _builtin_handles() -> list[FunctionHandle]:
    core = [
        FunctionHandle("gamma", specfun.gamma, nonpositive_integers(1), _gamma_pp, _gamma_res, "Γ(z)"),
        FunctionHandle("digamma", specfun.digamma, nonpositive_integers(1), _digamma_pp, _digamma_res, "ψ(z)"),
        FunctionHandle("H1", specfun.trigamma_h1, nonpositive_integers(2), None, _h1_res, "Σ 1/(n+z)²"),
    ]
    return core + kurepa.handles() + dirichlet.handles()


@lru_cache(maxsize=None)
def _table() -> dict[str, FunctionHandle]:
    return {h.name: h for h in _builtin_handles()}


def names() -> list[str]:
    return list(_table())


def get(name: str) -> FunctionHandle:
    try:
        return _table()[name]
    except KeyError:
        raise UnknownFunction(f"unknown function {name!r}; known: {', '.join(names())}") from None


# Independent evaluation routes used by `eval --method oracle`.
ORACLES: dict[str, Callable] = {
    "gamma": specfun.gamma_oracle,
    "K": kurepa.kurepa_integral_oracle,
    "A": kurepa.altkurepa_integral_oracle,
    "zeta": dirichlet.zeta_via_eta,
    "eta": dirichlet.eta_via_zeta,
}

# Production evaluators honouring an EvalConfig.
EVALUATORS: dict[str, Callable] = {
    "gamma": specfun.gamma,
    "digamma": specfun.digamma,
    "H1": specfun.trigamma_h1,
    "K": lambda z, cfg: kurepa.kurepa(z, "K", cfg),
    "K1": lambda z, cfg: kurepa.kurepa(z, "K1", cfg),
    "A": lambda z, cfg: kurepa.altkurepa(z, "A", cfg),
    "A1": lambda z, cfg: kurepa.altkurepa(z, "A1", cfg),
    "zeta": dirichlet.zeta,
    "eta": dirichlet.eta,
    "beta": dirichlet.beta_fn,
}
