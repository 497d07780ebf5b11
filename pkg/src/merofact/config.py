from __future__ import annotations

import os
from dataclasses import dataclass, replace

PREC_ENV_VAR = "MEROFACT_PREC"


@dataclass(frozen=True)
class EvalConfig:
    """Numerical knobs shared by all evaluators.

    rel_tol           relative truncation tolerance for series
    max_terms         hard cap on series terms / quadrature subintervals
    pole_guard_radius arguments closer than this to a pole raise PoleProximity
    """

    rel_tol: float = 1e-12
    max_terms: int = 10000
    pole_guard_radius: float = 1e-8

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")
        if not self.pole_guard_radius > 0:
            raise ValueError("pole_guard_radius must be positive")

    def with_(self, **changes) -> EvalConfig:
        return replace(self, **changes)


DEFAULT = EvalConfig()


def from_environment(prec: float | None = None) -> EvalConfig:
    """Build a config honouring flag > MEROFACT_PREC > defaults."""
    if prec is None:
        raw = os.environ.get(PREC_ENV_VAR)
        if raw:
            prec = float(raw)
    if prec is None:
        return DEFAULT
    return EvalConfig(rel_tol=prec)
