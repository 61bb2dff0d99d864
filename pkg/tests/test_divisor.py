import pytest
from hypothesis import given, strategies as st

from torivan.lattice import Fan, FanError, make_projective_fan, make_blowup_fan, permute_rays
from torivan.divisor import (
    ToricDivisor, BlowupParams, DivisorError, RefinementError,
    div_of_character, cartier_data, cone_character, picard_normal_form, linearly_equivalent,
    pullback_refinement, pullback_closed_form, divisor_from_params, picard_coordinates,
    blowup_points,
)

P3 = make_projective_fan(3)
ONEPT = make_blowup_fan(3, 1)
TWOPT = make_blowup_fan(3, 2)

small = st.integers(-6, 6)
characters = st.tuples(small, small, small)


def divisors(fan):
    return st.lists(small, min_size=len(fan.rays), max_size=len(fan.rays)).map(
        lambda coeffs: ToricDivisor(fan, coeffs))


def test_construction(onept):
    D = ToricDivisor(onept, {0: 2, 2: -1})
    assert D.coeffs == (2, 0, -1, 0, 0)
    assert D['u0'] == 2 and D[2] == -1
    assert ToricDivisor.zero(onept).coeffs == (0,) * 5
    assert ToricDivisor.prime(onept, 'e1') == ToricDivisor(onept, {2: 1})
    with pytest.raises(DivisorError):
        ToricDivisor(onept, {9: 1})
    with pytest.raises(DivisorError):
        ToricDivisor(onept, [1, 2])


def test_arithmetic(onept):
    u0 = ToricDivisor.prime(onept, 'u0')
    e1 = ToricDivisor.prime(onept, 'e1')
    D = 2 * u0 - e1
    assert D == u0 * 2 + (-e1)
    assert str(D) == '2*D[u0] - D[e1]'
    assert str(-u0) == '-D[u0]'
    assert str(ToricDivisor.zero(onept)) == '0'
    assert not ToricDivisor.zero(onept)
    assert hash(D) == hash(ToricDivisor(onept, [2, 0, -1, 0, 0]))
    with pytest.raises(DivisorError):
        u0 + ToricDivisor.prime(P3, 'e1')


def test_json(twopt):
    D = ToricDivisor(twopt, {0: -1, 2: 3})
    assert ToricDivisor.from_json(D.to_json()) == D
    with pytest.raises(DivisorError):
        ToricDivisor.from_json({'coeffs': {}})


def test_div_of_character(p3, onept):
    assert div_of_character(p3, (1, 0, 0)) == ToricDivisor(p3, [-1, 1, 0, 0])
    assert not div_of_character(onept, (0, 0, 0))
    K = ToricDivisor(onept, [-1] * 5)
    expected = -2 * ToricDivisor.prime(onept, 'u0') - 4 * ToricDivisor.prime(onept, 'e1')
    assert div_of_character(onept, (-3, 1, 1)) + K == expected
    with pytest.raises(DivisorError):
        div_of_character(onept, (1, 2))


def test_cartier_data_on_blowup(onept):
    # a=1, b=2:  D = (b - a) D_u0 + b D_e1
    D = ToricDivisor(onept, {0: 1, 2: 2})
    data = cartier_data(onept, D)
    assert len(data) == 6
    assert data[0] == (0, 0, 0)            # sigma_1
    assert data[3] == (-1, 0, 0)           # tau_1
    assert data[4] == (-2, 1, 0)           # tau_2


def test_cartier_data_on_projective_space(p3):
    data = cartier_data(p3, ToricDivisor.prime(p3, 'e1'))
    assert list(data) == [(-1, 0, 0), (0, 0, 0), (-1, 1, 0), (-1, 0, 1)]
    assert all(m == (0, 0, 0) for m in cartier_data(p3, ToricDivisor.zero(p3)))


def test_cartier_data_reproduces_coefficients(twopt):
    D = ToricDivisor(twopt, [3, -1, 2, 0, 5, -4])
    data = cartier_data(twopt, D)
    for c, cone in enumerate(twopt.max_cones):
        for ray in cone:
            assert sum(x * y for x, y in zip(data[c], twopt.rays[ray])) == -D.coeffs[ray]


def test_not_cartier():
    fan = Fan(2, [(1, 0), (1, 2)], [(0, 1)])
    with pytest.raises(DivisorError, match="not Cartier"):
        cone_character(fan, 0, ToricDivisor(fan, [0, 1]))


def test_picard_normal_form(onept):
    D = ToricDivisor.prime(onept, 'e0')
    expected = ToricDivisor.prime(onept, 'u0') + ToricDivisor.prime(onept, 'e1')
    assert picard_normal_form(onept, None, D) == expected
    assert picard_normal_form(onept, (1, 3, 4), D) == expected
    assert picard_normal_form(onept, 0, ToricDivisor.zero(onept)) == ToricDivisor.zero(onept)
    assert linearly_equivalent(onept, D, expected)
    assert not linearly_equivalent(onept, D, ToricDivisor.prime(onept, 'u0'))


def test_normal_form_needs_the_divisors_fan(onept):
    other = permute_rays(onept, [1, 0, 2, 3, 4])
    assert len(other.rays) == len(onept.rays)
    with pytest.raises(DivisorError, match="different fan"):
        picard_normal_form(other, None, ToricDivisor.prime(onept, 'e0'))


def test_canonical_normal_form(onept):
    K = ToricDivisor(onept, [-1] * 5)
    u0 = ToricDivisor.prime(onept, 'u0')
    e1 = ToricDivisor.prime(onept, 'e1')
    assert picard_normal_form(onept, None, K) == 2 * u0 - 4 * (u0 + e1)


@given(divisors(TWOPT), characters)
def test_normal_form_is_invariant(D, m):
    shifted = D + div_of_character(TWOPT, m)
    assert picard_normal_form(TWOPT, None, shifted) == picard_normal_form(TWOPT, None, D)


@given(characters, st.integers(0, 7))
def test_principal_divisors_normalize_to_zero(m, base):
    assert not picard_normal_form(TWOPT, base, div_of_character(TWOPT, m))


def test_pullback_one_point(p3, onept):
    lambdas = [2, -1, 3, 5]
    D = ToricDivisor(p3, lambdas)
    pulled = pullback_refinement(onept, p3, D)
    assert pulled['u0'] == -1 + 3 + 5
    assert [pulled[f"e{i}"] for i in range(4)] == lambdas
    assert pulled == pullback_closed_form(onept, lambdas)
    assert not pullback_refinement(onept, p3, ToricDivisor.zero(p3))


@given(st.lists(small, min_size=4, max_size=4), st.integers(1, 4))
def test_pullback_matches_closed_form(lambdas, points):
    fine = make_blowup_fan(3, points)
    D = ToricDivisor(P3, lambdas)
    assert pullback_refinement(fine, P3, D) == pullback_closed_form(fine, lambdas)


@given(characters)
def test_pullback_of_principal_is_principal(m):
    assert pullback_refinement(TWOPT, P3, div_of_character(P3, m)) == div_of_character(TWOPT, m)


def test_pullback_errors(p3, onept):
    with pytest.raises(RefinementError):
        pullback_refinement(p3, onept, ToricDivisor.prime(onept, 'u0'))
    with pytest.raises(DivisorError):
        pullback_refinement(onept, p3, ToricDivisor.prime(onept, 'u0'))
    with pytest.raises(DivisorError):
        pullback_closed_form(onept, [1, 2, 3])


def test_blowup_points(p3, onept, twopt):
    assert blowup_points(onept) == 1
    assert blowup_points(twopt) == 2
    with pytest.raises(FanError):
        blowup_points(p3)


def test_params_validation():
    assert BlowupParams(3, 2, [1, 0], 4).q == 1
    with pytest.raises(ValueError):
        BlowupParams(2, 1, [0], 0)
    with pytest.raises(ValueError):
        BlowupParams(3, 5, [0] * 5, 0)
    with pytest.raises(ValueError):
        BlowupParams(3, 2, [0], 0)
    p = BlowupParams(3, 2, [1, -1], 2)
    assert BlowupParams.from_json(p.to_json()) == p


def test_divisor_from_params(onept, twopt):
    assert divisor_from_params(onept, BlowupParams(3, 1, [2], 0)) == -2 * ToricDivisor.prime(onept, 'u0')
    D = divisor_from_params(twopt, BlowupParams(3, 2, [1, 1], 1))
    assert D == ToricDivisor.prime(twopt, 'e0') - ToricDivisor.prime(twopt, 'u0')
    assert D['u1'] == 0
    assert not divisor_from_params(twopt, BlowupParams(3, 2, [0, 0], 0))
    with pytest.raises(DivisorError):
        divisor_from_params(onept, BlowupParams(3, 2, [1, 1], 1))


@given(st.integers(1, 3).flatmap(
    lambda points: st.tuples(st.just(points), st.lists(small, min_size=points, max_size=points), small)))
def test_picard_coordinates_recover_params(case):
    points, a, b = case
    fan = make_blowup_fan(3, points)
    params = BlowupParams(3, points, a, b)
    assert picard_coordinates(fan, divisor_from_params(fan, params)) == params
