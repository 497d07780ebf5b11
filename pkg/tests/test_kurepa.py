import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from merofact.config import EvalConfig
from merofact.errors import DomainError, NoClosedForm, PoleProximity
from merofact.kurepa import (
    altkurepa,
    altkurepa_integral_oracle,
    const_L1,
    const_L2,
    constants,
    kurepa,
    kurepa_integral_oracle,
    pp_closed,
    res_closed,
)
from merofact.meromorphic import pp_contour, pp_symmetric, residue_contour
from merofact.registry import get
from merofact.specfun import expint_ei, gamma

EULER_GAMMA = 0.5772156649015329

# 30-digit quadrature of the defining integrals (mpmath), continued left by the
# functional equations; the alternating function uses the exp(iπz) branch.
K_REF = {
    0.5: 0.56218654589882686381,
    1.3 + 0.4j: 1.2414483862301746297 + 0.35344007749911925089j,
    2.7: 3.1957253155610511658,
    -0.5: -1.2102673050066891635,
    -2.5 + 0.5j: 0.4339828205871944004 + 0.90996025401497419558j,
}
A_REF = {
    0.5: 0.45706649619397715679 - 0.40365263767680592566j,
    1.3 + 0.4j: 0.74872590397992477044 + 0.31458335919958222722j,
    2.7: 3.363928040745531022 - 0.32656184370480905782j,
    -0.5: 0.42916042925878085686 + 0.40365263767680592566j,
    -2.5 + 0.5j: -2.0262026727422080019 + 0.7325591237133435136j,
}
# principal parts from 64-node contour means at 30 digits
PP_K_REF = {1: 0.57721566490153286061, 3: 0.5386078324507664303, 4: 0.74796077718939984242, 5: 0.68520587433807482273}
PP_A_REF = {2: -1.5772156649015328606, 3: 1.1544313298030657212, 4: -0.69303916225383215152, 5: 0.4836862175151987394}
PP_GAMMA_REF = [
    -0.57721566490153286061,
    -0.42278433509846713939,
    0.4613921675492335697,
    -0.20935294473863341212,
    0.062754902851325019697,
    -0.014217647236931670606,
]


def off_integers(radius=5.0, gap=0.2):
    return (
        st.complex_numbers(max_magnitude=radius, allow_nan=False, allow_infinity=False)
        .filter(lambda z: abs(z - round(z.real)) > gap)
    )


def test_constants_match_printed_and_ei_routes():
    L1, L2 = const_L1(), const_L2()
    assert abs(L1 - 0.697174883) < 1e-8
    assert abs(L1 - expint_ei(1.0) / math.e) < 1e-10
    assert abs(L2 - (1 + math.e * expint_ei(-1.0))) < 1e-10
    assert abs(L2 - 0.40365263767680593) < 1e-12


def test_l1_truncated_series_is_close():
    assert abs(const_L1(EvalConfig(max_terms=5)) - const_L1()) < 1e-3


def test_l2_partial_sums_bracket_limit():
    c = constants()
    lo = const_L2(EvalConfig(max_terms=6))
    hi = const_L2(EvalConfig(max_terms=7))
    assert min(lo, hi) <= c.L2 <= max(lo, hi)


def test_kurepa_integer_values():
    assert [kurepa(n).real for n in range(1, 6)] == [1, 2, 4, 10, 34]
    assert kurepa(0) == 0
    assert kurepa(-2) == 1


def test_alternating_integer_values():
    assert [altkurepa(n).real for n in range(1, 6)] == [1, 1, 5, 19, 101]
    assert altkurepa(0) == 0


@pytest.mark.parametrize("z,expected", K_REF.items())
def test_kurepa_reference(z, expected):
    assert abs(kurepa(z) - expected) < 1e-10


@pytest.mark.parametrize("z,expected", A_REF.items())
def test_altkurepa_reference(z, expected):
    assert abs(altkurepa(z) - expected) < 1e-10


@pytest.mark.parametrize("z", [0.5, 1.3 + 0.4j, 2.7, 0.1, 3.0])
def test_integral_oracles(z):
    assert abs(kurepa(z) - kurepa_integral_oracle(z)) < 1e-8
    assert abs(altkurepa(z) - altkurepa_integral_oracle(z)) < 1e-8


def test_oracle_anchors():
    assert abs(kurepa_integral_oracle(1) - 1) < 1e-9
    assert abs(kurepa_integral_oracle(3) - 4) < 1e-9
    assert abs(altkurepa_integral_oracle(2) - 1) < 1e-9
    assert abs(altkurepa_integral_oracle(3) - 5) < 1e-9
    assert abs(altkurepa_integral_oracle(1.5) + altkurepa_integral_oracle(0.5) - gamma(2.5)) < 1e-8


def test_oracles_need_right_half_plane():
    with pytest.raises(DomainError):
        kurepa_integral_oracle(-0.5)
    with pytest.raises(DomainError):
        altkurepa_integral_oracle(0)


def test_poles_refused():
    for z in (-1, -3, -4 + 1e-4):
        with pytest.raises(PoleProximity):
            kurepa(z)
    for z in (-2, -5):
        with pytest.raises(PoleProximity):
            altkurepa(z)
    with pytest.raises(PoleProximity):
        kurepa(2, "K1")
    with pytest.raises(PoleProximity):
        altkurepa(-1, "A1")


def test_near_regular_integer_is_continuous():
    assert abs(kurepa(-2 + 1e-6) - 1) < 1e-5
    assert abs(kurepa(4 + 1e-7) - kurepa(4)) < 1e-5


def test_pp_closed_examples():
    # Laurent expansion of Γ at −n carries (−1)ⁿ: p.p. Γ(−3) = −(−γ + 11/6)/6
    assert abs(pp_closed("Gamma", 3) - (-(-EULER_GAMMA + 11 / 6) / 6)) < 1e-12
    assert abs(pp_closed("K", 1) - EULER_GAMMA) < 1e-12
    assert abs(pp_closed("A", 2) + (1 + EULER_GAMMA)) < 1e-12
    assert pp_closed("Gamma", -4) == 6


@pytest.mark.parametrize("n", range(6))
def test_pp_gamma_reference(n):
    assert abs(pp_closed("Gamma", n) - PP_GAMMA_REF[n]) < 1e-12


@pytest.mark.parametrize("n,expected", PP_K_REF.items())
def test_pp_kurepa_reference(n, expected):
    assert abs(pp_closed("K", n) - expected) < 1e-12


@pytest.mark.parametrize("n,expected", PP_A_REF.items())
def test_pp_altkurepa_reference(n, expected):
    assert abs(pp_closed("A", n) - expected) < 1e-12


def test_pp_closed_series_variants():
    c = constants()
    assert abs(pp_closed("K1", -3) - (pp_closed("K", 3) - c.L1)) < 1e-14
    assert abs(pp_closed("A1", -3) - (-c.L2 + pp_closed("A", 3))) < 1e-14
    assert abs(pp_contour(get("K1"), -3) - pp_closed("K1", -3)) < 1e-8
    assert abs(pp_contour(get("A1"), 2) - pp_closed("A1", 2)) < 1e-8


def test_pp_closed_index_errors():
    with pytest.raises(IndexError):
        pp_closed("K", 0)
    with pytest.raises(NoClosedForm):
        pp_closed("Beta", 1)


def test_res_closed_examples():
    assert res_closed("K", 1) == -1
    assert abs(res_closed("A", 4) - 2.5) < 1e-15
    assert abs(res_closed("Gamma", 3) + 1 / 6) < 1e-15
    with pytest.raises(IndexError):
        res_closed("K", 2)
    with pytest.raises(IndexError):
        res_closed("A", 1)


def test_closed_forms_vs_contour():
    G, K, A = get("gamma"), get("K"), get("A")
    for n in (0, 1, 2, 3):
        assert abs(res_closed("Gamma", n) - residue_contour(G, -n)) < 1e-8
        assert abs(pp_closed("Gamma", n) - pp_contour(G, -n)) < 1e-8
    for n in (1, 3, 4):
        assert abs(res_closed("K", n) - residue_contour(K, -n)) < 1e-8
        assert abs(pp_closed("K", n) - pp_contour(K, -n)) < 1e-8
    for n in (2, 3, 4):
        assert abs(res_closed("A", n) - residue_contour(A, -n)) < 1e-8
        assert abs(pp_closed("A", n) - pp_contour(A, -n)) < 1e-8


def test_symmetric_pp_at_minus_three():
    assert abs(pp_symmetric(get("K"), -3) - pp_closed("K", 3)) < 1e-7


def test_removable_point_by_contour():
    assert abs(pp_contour(get("K"), -2) - 1) < 1e-8


def _scale(*vals):
    return max(1.0, *(abs(v) for v in vals))


@settings(max_examples=50, deadline=None)
@given(off_integers())
def test_kurepa_functional_equation(z):
    for variant in ("K", "K1"):
        a, b, g = kurepa(z, variant), kurepa(z - 1, variant), gamma(z)
        assert abs(a - b - g) <= 1e-9 * _scale(a, b, g)


@settings(max_examples=50, deadline=None)
@given(off_integers())
def test_altkurepa_functional_equation(z):
    for variant in ("A", "A1"):
        a, b, g = altkurepa(z, variant), altkurepa(z - 1, variant), gamma(z + 1)
        assert abs(a + b - g) <= 1e-9 * _scale(a, b, g)


@settings(max_examples=50, deadline=None)
@given(off_integers())
def test_slavic_identities(z):
    c = constants()
    k, k1 = kurepa(z), kurepa(z, "K1")
    cot = cmath.cos(math.pi * z) / cmath.sin(math.pi * z)
    assert abs(k - k1 - (c.L1 - math.pi / math.e * cot)) <= 1e-9 * _scale(k, k1)
    a, a1 = altkurepa(z), altkurepa(z, "A1")
    expected = -c.L2 * cmath.exp(1j * math.pi * z) + math.pi * math.e / cmath.sin(math.pi * z)
    assert abs(a - a1 - expected) <= 1e-9 * _scale(a, a1)
