"""Named identity checks over seeded grids; each check yields one residual row."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import dirichlet, eulerops, kurepa, specfun
from ._numeric import EULER_GAMMA, PI
from .config import DEFAULT, EvalConfig
from .meromorphic import (
    ContourSpec,
    FinitePoles,
    FunctionHandle,
    LaurentData,
    handle,
    laurent_data,
    pp_contour,
    pp_product,
    pp_symmetric,
    residue_contour,
    taylor,
)
from .registry import get

DEFAULT_SEED = 2024
SUITES = ("all", "gamma", "kurepa", "dirichlet", "euler", "meromorphic")

# ζ(−1/2), frozen from a 30-digit reference evaluation
ZETA_MINUS_HALF = -0.20788622497735456602

FE_GRID = tuple(complex(a, b) for a in (-3.0, -1.5, 0.25, 2.0, 3.5) for b in (0.0, 1.0, 3.0))
ADE_POINTS = (1.3 + 0j, 2.0 + 0j, 3.7 + 0j, 0.6 + 0.9j)
EXAMPLE_EQUATION = "x^3*y''' + 3*x^2*y'' - 2*x*y' + 2*y = 0"
EULER_POINTS = (0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class CheckRow:
    check: str
    max_residual: float
    tolerance: float
    passed: bool
    value: Optional[complex] = None
    error: Optional[str] = None


def _row(name: str, residuals: Iterable[float], tol: float, value=None) -> CheckRow:
    worst = max((float(r) for r in residuals), default=0.0)
    ok = bool(worst <= tol)  # nan compares false
    return CheckRow(name, worst, tol, ok, None if value is None else complex(value))


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def _scaled(residual: complex, *terms: complex) -> float:
    return abs(residual) / max(1.0, *(abs(t) for t in terms))


# ------------------------------------------------------------------- grids


def grid_off_integers(rng: np.random.Generator, n: int, radius: float, min_dist: float) -> list[complex]:
    """n points with |z| ≤ radius and distance to every integer above ``min_dist``."""
    out = []
    while len(out) < n:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius and abs(z - round(z.real)) > min_dist:
            out.append(z)
    return out


def gamma_oracle_grid() -> list[complex]:
    """Fixed 50 points on Re z ∈ [−4, 6], |Im z| ≤ 4, off the poles."""
    pts = []
    for re in np.linspace(-3.75, 5.75, 10):
        for im in (-4.0, -1.7, 0.0, 1.3, 4.0):
            pts.append(complex(re, im))
    return pts


def random_euler_equation(rng: np.random.Generator, max_order: int = 5) -> eulerops.EulerEquation:
    order = int(rng.integers(1, max_order + 1))
    coeffs = [Fraction(int(c)) for c in rng.integers(-9, 10, size=order + 1)]
    while coeffs[-1] == 0:
        coeffs[-1] = Fraction(int(rng.integers(-9, 10)))
    return eulerops.EulerEquation(tuple(coeffs))


# -------------------------------------------------------------- gamma suite


def check_gamma(rng: np.random.Generator, cfg: EvalConfig) -> list[CheckRow]:
    pts = grid_off_integers(rng, 200, 10.0, 0.1)
    refl = [abs(specfun.gamma(z) * specfun.gamma(1 - z) * cmath.sin(PI * z) / PI - 1) for z in pts]
    rec = [_rel(specfun.gamma(z + 1), z * specfun.gamma(z)) for z in pts]
    grid = gamma_oracle_grid()
    oracle = [abs(specfun.gamma(z) - specfun.gamma_oracle(z, cfg)) / abs(specfun.gamma(z)) for z in grid]

    h = 1e-5
    probe = list(ADE_POINTS) + grid_off_integers(rng, 10, 5.0, 0.2)
    psi_ode = [
        abs((specfun.gamma(z + h) - specfun.gamma(z - h)) / (2 * h) - specfun.digamma(z) * specfun.gamma(z))
        / abs(specfun.digamma(z) * specfun.gamma(z))
        for z in probe
    ]
    psi_h1 = [
        abs((specfun.digamma(z + h) - specfun.digamma(z - h)) / (2 * h) - specfun.trigamma_h1(z))
        / abs(specfun.trigamma_h1(z))
        for z in probe
    ]
    ade = []
    h2 = 1e-4
    for z in ADE_POINTS:
        g = specfun.gamma(z)
        g1 = (specfun.gamma(z + h2) - specfun.gamma(z - h2)) / (2 * h2)
        g2 = (specfun.gamma(z + h2) - 2 * g + specfun.gamma(z - h2)) / h2**2
        ade.append(abs(g2 * g - g1**2 - specfun.trigamma_h1(z) * g**2) / abs(g) ** 2)
    h1_anchor = [
        _rel(specfun.trigamma_h1(1), PI**2 / 6),
        _rel(specfun.trigamma_h1(2), PI**2 / 6 - 1),
        _rel(specfun.trigamma_h1(0.5), PI**2 / 2),
    ]
    ei = [abs(specfun.expint_ei(1.0) - math.e * kurepa.const_L1()), abs(specfun.expint_ei(-1.0) - (kurepa.const_L2() - 1) / math.e)]
    return [
        _row("gamma_reflection", refl, 1e-10),
        _row("gamma_recurrence", rec, 1e-12),
        _row("gamma_oracle_agreement", oracle, 1e-9),
        _row("psi_ode", psi_ode, 1e-6),
        _row("digamma_trigamma_consistency", psi_h1, 1e-6),
        _row("h1_ade", ade, 1e-5),
        _row("h1_anchors", h1_anchor, 1e-10),
        _row("ei_constants", ei, 1e-10),
    ]


# ------------------------------------------------------------- kurepa suite


def _closed_vs_contour(cfg: EvalConfig) -> tuple[list[float], list[float]]:
    res_err, pp_err = [], []
    g, K, A = get("gamma"), get("K"), get("A")
    for n in range(0, 6):
        res_err.append(abs(kurepa.res_closed("Gamma", n) - residue_contour(g, -n)))
        pp_err.append(abs(kurepa.pp_closed("Gamma", n) - pp_contour(g, -n)))
    for n in (1, 3, 4, 5):
        res_err.append(abs(kurepa.res_closed("K", n) - residue_contour(K, -n)))
        pp_err.append(abs(kurepa.pp_closed("K", n) - pp_contour(K, -n)))
    for n in (2, 3, 4, 5):
        res_err.append(abs(kurepa.res_closed("A", n) - residue_contour(A, -n)))
        pp_err.append(abs(kurepa.pp_closed("A", n) - pp_contour(A, -n)))
    return res_err, pp_err


def check_kurepa(rng: np.random.Generator, cfg: EvalConfig) -> list[CheckRow]:
    c = kurepa.constants(cfg)
    rows = [
        _row("L1_value", [abs(c.L1 - 0.697174883)], 1e-8, c.L1),
        _row("L1_ei_route", [abs(c.L1 - specfun.expint_ei(1.0) / math.e)], 1e-10),
        _row("L2_ei_route", [abs(c.L2 - (1 + math.e * specfun.expint_ei(-1.0)))], 1e-10),
    ]
    pts = grid_off_integers(rng, 50, 5.0, 0.2)
    for name, fn, sign, shift in (
        ("K", lambda z: kurepa.kurepa(z, "K", cfg), -1, 0),
        ("K1", lambda z: kurepa.kurepa(z, "K1", cfg), -1, 0),
        ("A", lambda z: kurepa.altkurepa(z, "A", cfg), 1, 1),
        ("A1", lambda z: kurepa.altkurepa(z, "A1", cfg), 1, 1),
    ):
        res = []
        for z in pts:
            a, b, g = fn(z), fn(z - 1), specfun.gamma(z + shift)
            res.append(_scaled(a + sign * b - g, a, b, g))
        rows.append(_row(f"{name}_functional_eq", res, 1e-9))
    slav_k, slav_a = [], []
    for z in pts:
        k, k1 = kurepa.kurepa(z, "K", cfg), kurepa.kurepa(z, "K1", cfg)
        cot = cmath.cos(PI * z) / cmath.sin(PI * z)
        slav_k.append(_scaled(k - k1 - (c.L1 - PI / math.e * cot), k, k1))
        a, a1 = kurepa.altkurepa(z, "A", cfg), kurepa.altkurepa(z, "A1", cfg)
        slav_a.append(_scaled(a - a1 - (-c.L2 * cmath.exp(1j * PI * z) + PI * math.e / cmath.sin(PI * z)), a, a1))
    rows += [_row("K_slavic_consistency", slav_k, 1e-9), _row("A_slavic_consistency", slav_a, 1e-9)]

    oracle_pts = [complex(rng.uniform(0.05, 3.0), rng.uniform(-1.0, 1.0)) for _ in range(10)]
    rows.append(
        _row("K_integral_oracle", [abs(kurepa.kurepa(z, "K", cfg) - kurepa.kurepa_integral_oracle(z, cfg)) for z in oracle_pts], 1e-8)
    )
    rows.append(
        _row(
            "A_integral_oracle",
            [abs(kurepa.altkurepa(z, "A", cfg) - kurepa.altkurepa_integral_oracle(z, cfg)) for z in oracle_pts],
            1e-8,
        )
    )
    k_exact = [abs(kurepa.kurepa(n, "K") - v) for n, v in zip(range(1, 6), (1, 2, 4, 10, 34))]
    a_exact = [abs(kurepa.altkurepa(n, "A") - v) for n, v in zip(range(1, 6), (1, 1, 5, 19, 101))]
    rows += [_row("K_integer_anchors", k_exact, 0.0), _row("A_integer_anchors", a_exact, 0.0)]
    removable = pp_contour(get("K"), -2)
    rows.append(_row("K_removable_at_-2", [abs(removable - 1)], 1e-8, removable))
    res_err, pp_err = _closed_vs_contour(cfg)
    rows += [_row("residue_closed_vs_contour", res_err, 1e-8), _row("pp_closed_vs_contour", pp_err, 1e-8)]
    sym = pp_symmetric(get("K"), -3, cfg)
    rows.append(_row("K_pp_symmetric_at_-3", [abs(sym - kurepa.pp_closed("K", 3))], 1e-7, sym))
    return rows


# ----------------------------------------------------------- dirichlet suite


def check_dirichlet(rng: np.random.Generator, cfg: EvalConfig) -> list[CheckRow]:
    pts = []
    while len(pts) < 30:
        s = complex(rng.uniform(-4.0, 8.0), rng.uniform(-8.0, 8.0))
        if abs(s - 1) > 0.3:
            pts.append(s)
    eta_zeta = [
        abs(dirichlet.eta(s, cfg) - dirichlet.eta_via_zeta(s, cfg)) / max(1.0, abs(dirichlet.eta(s, cfg))) for s in pts
    ]
    zeta_fe = [dirichlet.lfe_residual("plus", 1, s, cfg) for s in FE_GRID]
    beta_fe = [dirichlet.lfe_residual("minus", 4, s, cfg) for s in FE_GRID]
    chi_sym = [abs(dirichlet.chi(s, cfg) * dirichlet.chi(1 - s, cfg) - 1) for s in FE_GRID]
    z = get("zeta")
    pp_sym = pp_symmetric(z, 1, cfg)
    pp_con = pp_contour(z, 1)
    anchor = abs(dirichlet.chi(2) * dirichlet.zeta(-1) - dirichlet.zeta(2))
    rows = [
        _row("eta_zeta_consistency", eta_zeta, 1e-9),
        _row("zeta_functional_eq", zeta_fe, 1e-8),
        _row("beta_functional_eq", beta_fe, 1e-8),
        _row("chi_symmetry", chi_sym, 1e-10),
        _row("zeta_pp_at_1", [abs(pp_sym - EULER_GAMMA), abs(pp_con - EULER_GAMMA)], 1e-8, pp_sym),
        _row("chi2_zeta_minus1", [anchor], 1e-10),
    ]
    expected = {"quadratic": (-1.0 / 24.0, 1e-9), "linear": (0.5 * ZETA_MINUS_HALF, 1e-8), "shifted": (EULER_GAMMA / 2, 1e-7)}
    for name, (target, tol) in expected.items():
        e0 = dirichlet.casimir_energy(dirichlet.MODELS[name], cfg)
        rows.append(_row(f"casimir_{name}", [abs(e0 - target)], tol, e0))
    validation = []
    for model in dirichlet.MODELS.values():
        for s in (3.0, 3.7 + 2j, 5.0 - 1j):
            validation.append(abs(dirichlet.eigenvalue_sum(model, s) - dirichlet.spectral_zeta(model, s, cfg)))
    rows.append(_row("spectral_model_validation", validation, 1e-8))
    return rows


# --------------------------------------------------------------- euler suite


def check_euler(rng: np.random.Generator, cfg: EvalConfig) -> list[CheckRow]:
    eq = eulerops.parse_equation(EXAMPLE_EQUATION)
    p, roots, basis = eulerops.solve(eq)
    poly_ok = list(p.coeffs) == [2, -3, 0, 1]
    roots_ok = roots.as_pairs() == [(1 + 0j, 2), (-2 + 0j, 1)]
    render_ok = basis.rendered == "c1*x + c2*x*ln(x) + c3*x^-2"
    rows = [
        _row("example_2_7_delta_poly", [0.0 if poly_ok else 1.0], 0.0),
        _row("example_2_7_roots", [0.0 if roots_ok else 1.0], 0.0),
        _row("example_2_7_rendered", [0.0 if render_ok else 1.0], 0.0),
        _row("example_2_7_roundtrip", [eulerops.verify_basis(eq, basis, (0.5, 1.0, 2.0))], 1e-10),
    ]
    pull = []
    for r, j in ((1, 0), (1, 1), (-2, 0)):
        pull.append(eulerops.exp_solution_residual(p, complex(r), j, (-1.0, 0.0, 0.7)))
        term = eulerops.BasisTerm(complex(r), j)
        pull.append(eulerops.verify_basis(eq, [term], (0.5, 1.0, 2.0)))
        for x in (0.5, 2.0):
            pull.append(abs(eulerops.pullback(r, j, x) - x**r * math.log(x) ** j))
    rows.append(_row("exp_pullback", pull, 1e-10))
    trip, parse_trip = [], []
    for _ in range(100):
        e = random_euler_equation(rng)
        _, rts, b = eulerops.solve(e)
        trip.append(eulerops.verify_basis(e, b, EULER_POINTS))
        again = eulerops.parse_equation(eulerops.render_equation(e))
        parse_trip.append(0.0 if again.coeffs == e.coeffs else 1.0)
    rows.append(_row("euler_random_roundtrip", trip, 1e-8))
    rows.append(_row("parser_roundtrip", parse_trip, 0.0))
    return rows


# --------------------------------------------------------- meromorphic suite


def product_pairs(rng: np.random.Generator, n_random: int = 20) -> list[tuple[str, LaurentData, LaurentData, FunctionHandle]]:
    """(label, Taylor window of f₁, Laurent window of f₂, handle of f₁·f₂) at a = 0."""
    g = get("gamma")
    gamma_window = laurent_data(g, 0, -1, 6)
    inv_sq = LaurentData(0, -2, (1, 0, 0))
    inv_sq_handle = handle("1/z^2", lambda z: 1 / z**2, FinitePoles((0j,), (2,)))
    pairs = [
        ("z*Gamma", taylor(0, (0, 1)), gamma_window, handle("z*Gamma", lambda z: z * g(z), g.poles)),
        ("z^2*Gamma", taylor(0, (0, 0, 1)), gamma_window, handle("z^2*Gamma", lambda z: z * z * g(z), g.poles)),
        (
            "exp*Gamma",
            taylor(0, tuple(1 / math.factorial(k) for k in range(4))),
            gamma_window,
            handle("exp*Gamma", lambda z: cmath.exp(z) * g(z), g.poles),
        ),
    ]
    for i in range(n_random):
        deg = int(rng.integers(0, 5))
        c = tuple(complex(rng.normal(), rng.normal()) for _ in range(deg + 1))

        def poly(z, c=c):
            return sum(ck * z**k for k, ck in enumerate(c))

        if i % 2 == 0:
            pairs.append((f"poly{i}*Gamma", taylor(0, c + (0,) * 2), gamma_window, handle("p*Gamma", lambda z, p=poly: p(z) * g(z), g.poles)))
        else:
            pairs.append(
                (f"poly{i}/z^2", taylor(0, c + (0,) * 3), inv_sq, handle("p/z^2", lambda z, p=poly: p(z) / z**2, inv_sq_handle.poles))
            )
    return pairs


def check_meromorphic(rng: np.random.Generator, cfg: EvalConfig) -> list[CheckRow]:
    g, K = get("gamma"), get("K")
    additive = []
    for a in (0.0, -1.0, -3.0, 0.5 + 0.5j):
        bare = handle("pole", lambda z, a=a: 1 / (z - a), FinitePoles((complex(a),)))
        total = g + K + bare
        spec = ContourSpec(radius=0.4)
        additive.append(abs(pp_contour(total, a, spec) - (pp_contour(g, a, spec) + pp_contour(K, a, spec) + pp_contour(bare, a, spec))))
    regular = []
    for f, a in ((g, 1.5 + 0.3j), (g, 2.5), (K, 1.5), (get("zeta"), 2.0), (get("beta"), -1.5)):
        regular += [abs(pp_contour(f, a) - f(a)), abs(pp_symmetric(f, a, cfg) - f(a))]
    nodes = []
    for f, a in ((g, 0), (g, -2), (K, -3), (get("A"), -2), (get("zeta"), 1)):
        nodes.append(abs(pp_contour(f, a, ContourSpec(nodes=128)) - pp_contour(f, a, ContourSpec(nodes=256))))
    methods = []
    for n in range(6):
        closed = kurepa.pp_closed("Gamma", n)
        methods += [abs(closed - pp_contour(g, -n)), abs(closed - pp_symmetric(g, -n, cfg))]
    prod = [abs(pp_product(t, w) - pp_contour(h, 0)) for _, t, w, h in product_pairs(rng)]
    return [
        _row("pp_additivity", additive, 1e-10),
        _row("regular_point_identity", regular, 1e-10),
        _row("contour_node_convergence", nodes, 1e-10),
        _row("gamma_pp_methods", methods, 1e-8),
        _row("pp_product_vs_contour", prod, 1e-8),
    ]


SUITE_FUNCS: dict[str, Callable] = {
    "gamma": check_gamma,
    "kurepa": check_kurepa,
    "dirichlet": check_dirichlet,
    "euler": check_euler,
    "meromorphic": check_meromorphic,
}


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED, cfg: EvalConfig = DEFAULT) -> list[CheckRow]:
    """Run one suite (or all) on the grid derived from ``seed``; failures become rows."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    names = list(SUITE_FUNCS) if suite == "all" else [suite]
    rows: list[CheckRow] = []
    for name in names:
        # same grid for a suite whether run alone or inside "all"
        rng = np.random.default_rng([seed, list(SUITE_FUNCS).index(name)])
        try:
            rows += SUITE_FUNCS[name](rng, cfg)
        except Exception as exc:  # a crash is reported as a failed row, not raised
            rows.append(CheckRow(f"{name}_suite", math.inf, 0.0, False, None, f"{type(exc).__name__}: {exc}"))
    return rows
