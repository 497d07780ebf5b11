import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merofact import dirichlet
from merofact.dirichlet import (
    MODELS,
    beta_fn,
    casimir_energy,
    chi,
    eigenvalue_sum,
    eta,
    eta_via_zeta,
    lfe_residual,
    spectral_zeta,
    zeta,
    zeta_via_eta,
)
from merofact.errors import PoleProximity, Unsupported
from merofact.meromorphic import pp_contour, pp_symmetric
from merofact.registry import get

EULER_GAMMA = 0.5772156649015329
CATALAN = 0.915965594177219015
ZETA_6 = 1.01734306198444913971
ZETA_4 = 1.08232323371113819152
ZETA_MINUS_HALF = -0.20788622497735456602

# 30-digit reference values (mpmath)
REF = {
    -0.5: (ZETA_MINUS_HALF, 0.38010481260968401678, 0.27517974122882025012),
    0.5 + 14.134725j: (
        1.76742984138490391e-8 - 1.11020289309231167e-7j,
        -1.62122573872252118e-8 - 2.66350493266462328e-7j,
        1.87545970119183293067 + 1.20371297116345846435j,
    ),
    -3.5 + 2j: (
        -0.00356097996491907234 + 0.04262253731477640727j,
        -0.93684802589461404492 - 0.21351855235139821489j,
        -10.0947466210177937813 - 4.28023608419048785003j,
    ),
    7.2: (1.00722766648071711381, 0.99352700066161978835, 0.99964151296968250670),
    0.25 + 3j: (
        0.48529811855785336912 - 0.05898575581592715827j,
        0.96941216402128701306 + 0.60555131954702992491j,
        1.58996926151650474546 + 0.28442355502462675699j,
    ),
}


@pytest.mark.parametrize("s,values", REF.items())
def test_reference_values(s, values):
    z, e, b = values
    for got, want in ((zeta(s), z), (eta(s), e), (beta_fn(s), b)):
        assert abs(got - want) <= 1e-10 * max(abs(want), 1.0)


def test_zeta_anchors():
    assert abs(zeta(2) - math.pi**2 / 6) < 1e-12
    assert abs(zeta(-1) + 1 / 12) < 1e-12
    assert abs(zeta(0) + 0.5) < 1e-12


def test_zeta_pole():
    with pytest.raises(PoleProximity):
        zeta(1)


def test_zeta_pp_at_one_both_methods():
    z = get("zeta")
    assert abs(pp_symmetric(z, 1) - EULER_GAMMA) < 1e-8
    assert abs(pp_contour(z, 1) - EULER_GAMMA) < 1e-8


def test_zeta_far_left_and_large_modulus():
    # trivial zero and the reflected branch
    assert abs(zeta(-10)) < 1e-12
    assert abs(zeta(-11) - 691 / 32760) < 1e-10 * 691 / 32760


def test_zeta_near_spurious_zero_of_prefactor():
    s0 = 1 + 2j * math.pi / math.log(2)
    near = s0 + 1e-4
    # ζ is smooth there; compare against a point just outside the smoothing disc
    assert abs(zeta(near) - zeta_via_eta(near)) < 1e-10
    assert abs(zeta(s0) - zeta(s0 + 2e-3)) < 1e-2


def test_eta_anchors():
    assert abs(eta(1) - math.log(2)) < 1e-12
    assert abs(eta(2) - math.pi**2 / 12) < 1e-12
    assert abs(eta(0) - 0.5) < 1e-12
    assert abs((1 - 2) * zeta(0) - eta(0)) < 1e-12


def test_beta_anchors():
    assert abs(beta_fn(1) - math.pi / 4) < 1e-12
    assert abs(beta_fn(2) - CATALAN) < 1e-12
    assert abs(beta_fn(0) - 0.5) < 1e-12
    assert abs(beta_fn(-4) - 2.5) < 1e-10


def test_chi_values():
    assert abs(chi(2) + 2 * math.pi**2) < 1e-12
    assert abs(chi(0.5) - 1) < 1e-12
    assert abs(chi(2) * zeta(-1) - zeta(2)) < 1e-10
    with pytest.raises(PoleProximity):
        chi(3)


def test_lfe_examples():
    assert lfe_residual("plus", 1, 2) < 1e-9
    assert lfe_residual("minus", 4, 2) < 1e-9
    assert lfe_residual("plus", 1, 0.5 + 3j) < 1e-8
    with pytest.raises(Unsupported):
        lfe_residual("plus", 3, 2)


FE_GRID = [complex(a, b) for a in (-3.0, -1.5, 0.25, 2.0, 3.5) for b in (0.0, 1.0, 3.0)]


@pytest.mark.parametrize("s", FE_GRID)
def test_functional_equations_on_grid(s):
    assert lfe_residual("plus", 1, s) < 1e-8
    assert lfe_residual("minus", 4, s) < 1e-8
    assert abs(chi(s) * chi(1 - s) - 1) < 1e-10


@settings(max_examples=30, deadline=None)
@given(
    st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False).filter(
        lambda s: abs(s - 1) > 0.3 and -4 <= s.real <= 8
    )
)
def test_eta_zeta_consistency(s):
    e = eta(s)
    assert abs(e - eta_via_zeta(s)) <= 1e-9 * max(1.0, abs(e))


def test_spectral_models():
    assert abs(spectral_zeta(MODELS["quadratic"], 3) - ZETA_6) < 1e-12
    assert abs(spectral_zeta(MODELS["linear"], 4) - ZETA_4) < 1e-12
    assert abs(spectral_zeta(MODELS["shifted"], 0) - math.pi**2 / 6) < 1e-12
    with pytest.raises(PoleProximity):
        spectral_zeta(MODELS["shifted"], -0.5)


@pytest.mark.parametrize("name", sorted(MODELS))
@pytest.mark.parametrize("s", [3.0, 4.2 + 1.5j, 5.0 - 2j])
def test_models_match_eigenvalue_sums(name, s):
    model = MODELS[name]
    assert abs(eigenvalue_sum(model, s) - spectral_zeta(model, s)) < 1e-8


def test_casimir_energies():
    assert abs(casimir_energy(MODELS["quadratic"]) + 1 / 24) < 1e-9
    assert abs(casimir_energy(MODELS["linear"]) - ZETA_MINUS_HALF / 2) < 1e-8
    assert abs(casimir_energy(MODELS["shifted"]) - EULER_GAMMA / 2) < 1e-7


def test_casimir_at_regular_point_is_half_value():
    model = MODELS["linear"]
    assert casimir_energy(model) == 0.5 * spectral_zeta(model, -0.5)


def test_casimir_simple_pole_uses_symmetric_limit():
    value, method = dirichlet.casimir_with_method(MODELS["shifted"])
    assert method == "symmetric"
    assert abs(value - EULER_GAMMA / 2) < 1e-7


def test_casimir_falls_back_to_contour():
    # a double pole at −1/2 defeats the symmetric limit
    model = dirichlet.SpectralModel("double", lambda s: 1 / (s + 0.5) ** 2 + cmath.exp(s), (-0.5,))
    value, method = dirichlet.casimir_with_method(model)
    assert method == "contour"
    assert abs(value - 0.5 * cmath.exp(-0.5)) < 1e-10


def test_unknown_model():
    with pytest.raises(Unsupported):
        dirichlet.get_model("cubic")
