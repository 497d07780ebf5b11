"""Acceptance criteria, one test per clause, each printing a PASS/FAIL line."""
import cmath
import math

import numpy as np
import pytest

from merofact import dirichlet, eulerops, kurepa, specfun
from merofact.meromorphic import pp_contour, pp_product, pp_symmetric, residue_contour
from merofact.registry import get
from merofact.verify import ADE_POINTS, DEFAULT_SEED, FE_GRID, grid_off_integers, product_pairs, random_euler_equation

EULER_GAMMA = 0.57721566490153286061
ZETA_MINUS_HALF = -0.20788622497735456602
PRINTED_L1 = 0.697174883
PRINTED_L2 = 0.403652337


@pytest.fixture
def report(capsys):
    def emit(criterion, label, worst, tol, ok=None):
        ok = worst <= tol if ok is None else ok
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {criterion}: {label} (max {worst:.3e}, tol {tol:.0e})")
        return ok

    return emit


def rng(tag):
    return np.random.default_rng([DEFAULT_SEED, tag])


# 1 ---------------------------------------------------------------- constants


def test_c1_l1_printed_value(report):
    worst = abs(kurepa.const_L1() - PRINTED_L1)
    assert report(1, "L1 vs printed value", worst, 1e-8)


def test_c1_l1_ei_route(report):
    worst = abs(kurepa.const_L1() - specfun.expint_ei(1.0) / math.e)
    assert report(1, "L1 vs Ei route", worst, 1e-10)


def test_c1_l2_ei_route(report):
    L2 = kurepa.const_L2()
    worst = abs(L2 - (1 + math.e * specfun.expint_ei(-1.0)))
    assert report(1, "L2 vs Ei route", worst, 1e-10)


@pytest.mark.xfail(strict=True, reason="printed 0.403652337 differs from 1+e*Ei(-1) = 0.4036526377 by 3.0e-7")
def test_c1_l2_printed_value(report):
    worst = abs(kurepa.const_L2() - PRINTED_L2)
    assert report(1, "L2 vs printed value", worst, 1e-8)


# 2 ------------------------------------------------------ gamma principal parts


def test_c2_gamma_principal_parts(report):
    g = get("gamma")
    worst = 0.0
    for n in range(6):
        closed = kurepa.pp_closed("Gamma", n)
        worst = max(worst, abs(closed - pp_contour(g, -n)), abs(closed - pp_symmetric(g, -n)))
    worst = max(worst, abs(kurepa.pp_closed("Gamma", 0) + EULER_GAMMA))
    assert report(2, "pp_closed(Gamma, 0..5) vs contour and symmetric; n=0 is -gamma", worst, 1e-8)


# 3 ------------------------------------------------------------ residue tables


def test_c3_residue_tables(report):
    worst = 0.0
    for name, key, ns in (("gamma", "Gamma", range(0, 6)), ("K", "K", (1, 3, 4, 5)), ("A", "A", range(2, 6))):
        f = get(name)
        for n in ns:
            worst = max(worst, abs(kurepa.res_closed(key, n) - residue_contour(f, -n)))
    assert report(3, "res_closed vs residue_contour for Gamma, K, A", worst, 1e-8)


# 4 ------------------------------------------------------------- Kurepa anchors


def test_c4_kurepa_integers_exact(report):
    got = [kurepa.kurepa(n) for n in range(1, 6)]
    ok = got == [1, 2, 4, 10, 34]
    assert report(4, "K(1..5) = 1, 2, 4, 10, 34 exactly", 0.0 if ok else math.inf, 0.0, ok)


def test_c4_kurepa_removable_point(report):
    worst = abs(pp_contour(get("K"), -2) - 1)
    assert report(4, "K(-2) = 1 via contour principal part", worst, 1e-8)


def test_c4_kurepa_vs_quadrature_oracle(report):
    r = rng(4)
    pts = [complex(r.uniform(0.05, 3.0), r.uniform(-1.0, 1.0)) for _ in range(10)]
    worst = max(abs(kurepa.kurepa(z) - kurepa.kurepa_integral_oracle(z)) for z in pts)
    assert report(4, "K vs integral oracle at 10 points, Re z in (0, 3]", worst, 1e-8)


# 5 -------------------------------------------------------- alternating anchors


def test_c5_altkurepa_integers_exact(report):
    got = [kurepa.altkurepa(n) for n in range(1, 6)]
    ok = got == [1, 1, 5, 19, 101]
    assert report(5, "A(1..5) = 1, 1, 5, 19, 101 exactly", 0.0 if ok else math.inf, 0.0, ok)


def test_c5_altkurepa_vs_quadrature_oracle(report):
    r = rng(5)
    pts = [complex(r.uniform(0.05, 3.0), r.uniform(-1.0, 1.0)) for _ in range(10)]
    worst = max(abs(kurepa.altkurepa(z) - kurepa.altkurepa_integral_oracle(z)) for z in pts)
    assert report(5, "A vs integral oracle at 10 points", worst, 1e-8)


# 6 ------------------------------------------------------- functional equations


def _scaled(res, *terms):
    return abs(res) / max(1.0, *(abs(t) for t in terms))


def test_c6_recurrences(report):
    pts = grid_off_integers(rng(6), 50, 5.0, 0.2)
    worst = 0.0
    for variant, sign, shift, fn in (
        ("K", -1, 0, kurepa.kurepa),
        ("K1", -1, 0, kurepa.kurepa),
        ("A", 1, 1, kurepa.altkurepa),
        ("A1", 1, 1, kurepa.altkurepa),
    ):
        for z in pts:
            a, b, g = fn(z, variant), fn(z - 1, variant), specfun.gamma(z + shift)
            worst = max(worst, _scaled(a + sign * b - g, a, b, g))
    assert report(6, "K, K1, A, A1 recurrences on seeded grid", worst, 1e-9)


def test_c6_zeta_and_beta_functional_equations(report):
    worst = max(max(dirichlet.lfe_residual("plus", 1, s), dirichlet.lfe_residual("minus", 4, s)) for s in FE_GRID)
    assert report(6, "zeta and beta functional equations on grid", worst, 1e-8)


# 7 --------------------------------------------------------------- zeta anchors


def test_c7_zeta_pp_at_one(report):
    z = get("zeta")
    worst = max(abs(pp_symmetric(z, 1) - EULER_GAMMA), abs(pp_contour(z, 1) - EULER_GAMMA))
    assert report(7, "p.p. zeta(1) = gamma by symmetric and contour", worst, 1e-8)


def test_c7_chi_anchor(report):
    worst = abs(dirichlet.chi(2) * dirichlet.zeta(-1) - dirichlet.zeta(2))
    assert report(7, "chi(2) zeta(-1) = zeta(2)", worst, 1e-10)


# 8 ------------------------------------------------------------------- Casimir


@pytest.mark.parametrize(
    "name,target,tol",
    [("quadratic", -1 / 24, 1e-9), ("linear", ZETA_MINUS_HALF / 2, 1e-8), ("shifted", EULER_GAMMA / 2, 1e-7)],
)
def test_c8_casimir(report, name, target, tol):
    worst = abs(dirichlet.casimir_energy(dirichlet.MODELS[name]) - target)
    assert report(8, f"Casimir energy of {name} model", worst, tol)


# 9 ---------------------------------------------------- differential identities


def test_c9_psi_ode(report):
    h = 1e-5
    worst = 0.0
    for z in ADE_POINTS:
        fd = (specfun.gamma(z + h) - specfun.gamma(z - h)) / (2 * h)
        want = specfun.digamma(z) * specfun.gamma(z)
        worst = max(worst, abs(fd - want) / abs(want))
    assert report(9, "Gamma' = psi Gamma by finite differences", worst, 1e-6)


def test_c9_h1_ade(report):
    h = 1e-4
    worst = 0.0
    for z in ADE_POINTS:
        g = specfun.gamma(z)
        g1 = (specfun.gamma(z + h) - specfun.gamma(z - h)) / (2 * h)
        g2 = (specfun.gamma(z + h) - 2 * g + specfun.gamma(z - h)) / h**2
        worst = max(worst, abs(g2 * g - g1**2 - specfun.trigamma_h1(z) * g**2) / abs(g) ** 2)
    assert report(9, "Gamma'' Gamma - Gamma'^2 = H1 Gamma^2", worst, 1e-5)


# 10 ------------------------------------------------------------- Euler solver


def test_c10_worked_example(report):
    eq = eulerops.parse_equation("x^3*y''' + 3*x^2*y'' - 2*x*y' + 2*y = 0")
    p, roots, basis = eulerops.solve(eq)
    exact = (
        list(p.coeffs) == [2, -3, 0, 1]
        and roots.as_pairs() == [(1, 2), (-2, 1)]
        and basis.rendered == "c1*x + c2*x*ln(x) + c3*x^-2"
    )
    worst = eulerops.verify_basis(eq, basis, [0.5, 1.0, 2.0])
    assert report(10, "worked equation: delta poly, roots, basis, residual", worst, 1e-10, exact and worst <= 1e-10)


def test_c10_random_round_trip(report):
    r = rng(10)
    worst = 0.0
    for _ in range(100):
        eq = random_euler_equation(r)
        _, _, basis = eulerops.solve(eq)
        worst = max(worst, eulerops.verify_basis(eq, basis, [0.5, 1.0, 2.0, 4.0]))
    assert report(10, "100 random equations of order <= 5 round trip", worst, 1e-8)


# 11 ------------------------------------------------------------- product rule


def test_c11_product_rule(report):
    pairs = product_pairs(rng(11), n_random=20)
    assert len(pairs) == 23
    worst = max(abs(pp_product(t, w) - pp_contour(h, 0)) for _, t, w, h in pairs)
    assert report(11, "pp_product vs contour for 3 listed + 20 random pairs", worst, 1e-8)


def test_c11_product_covers_both_second_factors():
    labels = [label for label, *_ in product_pairs(rng(11))]
    assert any(label.endswith("*Gamma") for label in labels[3:])
    assert any(label.endswith("/z^2") for label in labels[3:])


def test_shifted_model_pole_is_simple():
    # the shifted model has its pole exactly at -1/2, so the Casimir value is a genuine principal part
    model = dirichlet.MODELS["shifted"]
    assert any(abs(p + 0.5) < 1e-15 for p in model.pole_set)
    assert cmath.isfinite(dirichlet.casimir_energy(model))
