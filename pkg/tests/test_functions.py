from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_mra.functions import (
    LCFunction,
    allclose,
    coarsen,
    dilate,
    dilate_normalized,
    evaluate,
    fourier,
    fourier_naive,
    indicator,
    inner_product,
    inverse_fourier,
    linear_combination,
    max_deviation,
    modulate,
    norm,
    omega,
    random_lcfunction,
    refine,
    translate,
    trimmed,
    zeros,
)
from padic_mra.padic import PAdicScalar, character, same_ball

TOL = 1e-9
EX2_PHI = LCFunction(3, 1, 0, [-1 / 3, 2 / 3, 2 / 3])


def random_f(rng, p, max_depth=4):
    l = int(rng.integers(-2, 2))
    return random_lcfunction(rng, p, l + int(rng.integers(0, max_depth + 1)), l)


def test_evaluate_examples():
    assert evaluate(omega(3), Fraction(1, 2)) == 1
    assert evaluate(omega(3), Fraction(1, 3)) == 0
    assert abs(evaluate(EX2_PHI, Fraction(1, 3) + 3) - 2 / 3) < TOL
    assert abs(EX2_PHI(PAdicScalar(Fraction(2, 3), 3)) - 2 / 3) < TOL
    with pytest.raises(ValueError):
        EX2_PHI(PAdicScalar(1, 5))


@pytest.mark.parametrize("p,N,l", [(2, 2, -1), (3, 1, -2), (5, 0, -1)])
def test_evaluate_is_constant_on_cells(rng, p, N, l):
    f = random_lcfunction(rng, p, N, l)
    for m in range(f.size):
        x = f.representative(m)
        # a second point of the same cell
        y = x + Fraction(p) ** (-l) * int(rng.integers(1, 50))
        assert same_ball(x, y, l, p)
        assert evaluate(f, x) == evaluate(f, y) == f.values[m]


def test_refine_example():
    g = refine(omega(2), 1, -1)
    assert g.size == 4
    np.testing.assert_array_equal(g.values, [1, 0, 1, 0])
    # index m holds the ball around m / 2
    for m in range(4):
        x = g.representative(m)
        assert x == Fraction(m, 2)
        assert g.values[m] == evaluate(omega(2), x)


def test_refine_zero_and_round_trip(rng):
    z = refine(zeros(3, 0, 0), 2, -1)
    assert z.size == 27 and not np.any(z.values)
    f = random_lcfunction(rng, 3, 1, -1)
    back = coarsen(refine(f, 3, -2), 1, -1)
    np.testing.assert_array_equal(back.values, f.values)
    with pytest.raises(ValueError):
        coarsen(f, 1, 0)
    with pytest.raises(ValueError):
        refine(f, 0, -1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_refine_preserves_evaluation(rng, p):
    f = random_lcfunction(rng, p, 1, -1)
    g = refine(f, 3, -2)
    for m in range(g.size):
        x = g.representative(m)
        assert evaluate(f, x) == evaluate(g, x)


def test_trimmed_recovers_minimal_grid():
    f = refine(indicator(3, -1, Fraction(1, 3)), 3, -3)
    t = trimmed(f)
    assert (t.support_exp, t.constancy_exp) == (1, -1)
    assert allclose(t, f)


def test_translate_examples():
    assert allclose(translate(omega(3), 1), omega(3))
    shifted = translate(omega(3), Fraction(1, 3))
    assert evaluate(shifted, Fraction(1, 3)) == 1 and evaluate(shifted, 0) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_translate_matches_pointwise_definition(rng, p):
    f = random_lcfunction(rng, p, 1, -1)
    b = Fraction(int(rng.integers(1, p ** 3)), p ** 2)
    g = translate(f, b)
    h = refine(g, g.support_exp + 1, -1)
    for m in range(h.size):
        x = h.representative(m)
        assert evaluate(g, x) == evaluate(f, x - b)


@pytest.mark.parametrize("j", [-2, -1, 0, 1, 3])
def test_dilate_matches_pointwise_definition(rng, j):
    p = 3
    f = random_lcfunction(rng, p, 1, -1)
    g = dilate(f, j)
    assert (g.support_exp, g.constancy_exp) == (1 - j, -1 - j)
    for m in range(g.size):
        x = g.representative(m)
        assert evaluate(g, x) == evaluate(f, x * Fraction(p) ** (-j))


@pytest.mark.parametrize("j", range(-3, 4))
def test_dilate_normalized_is_isometry(rng, j):
    f = random_f(rng, 2)
    assert abs(norm(dilate_normalized(f, j)) - norm(f)) < TOL


def test_modulate_gives_kozyrev_wavelet():
    g = modulate(omega(3), Fraction(1, 3))
    assert (g.support_exp, g.constancy_exp) == (0, -1)
    np.testing.assert_allclose(g.values, [1, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)], atol=1e-12)


@pytest.mark.parametrize("a", [Fraction(1, 9), Fraction(2, 3), Fraction(5, 1), Fraction(-4, 27)])
def test_modulate_matches_character(rng, a):
    p = 3
    f = random_lcfunction(rng, p, 1, 0)
    g = modulate(f, a)
    for m in range(g.size):
        x = g.representative(m)
        assert abs(evaluate(g, x) - character(a * x, p) * evaluate(f, x)) < 1e-12


def test_inner_product_examples():
    assert inner_product(omega(5), omega(5)) == 1
    assert abs(inner_product(EX2_PHI, translate(EX2_PHI, Fraction(1, 3)))) < TOL
    assert abs(norm(EX2_PHI) - 1) < TOL
    assert inner_product(zeros(3, 1, -1), zeros(3, 1, -1)) == 0


def test_inner_product_linear_and_hermitian(rng):
    f, g, h = (random_lcfunction(rng, 2, 1, -1) for _ in range(3))
    a, b = 0.3 - 1j, 2.0 + 0.5j
    lhs = inner_product(linear_combination([a, b], [f, g]), h)
    assert abs(lhs - (a * inner_product(f, h) + b * inner_product(g, h))) < TOL
    assert abs(inner_product(f, g) - np.conj(inner_product(g, f))) < TOL


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_fourier_of_omega_is_omega(p):
    assert allclose(fourier(omega(p)), omega(p))


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("k", range(-2, 3))
def test_fourier_of_ball_indicators(p, k):
    assert allclose(fourier(indicator(p, k)), indicator(p, -k) * float(Fraction(p) ** k))


def test_fourier_of_example2_phi():
    F = trimmed(fourier(EX2_PHI))
    assert (F.support_exp, F.constancy_exp) == (0, -1)
    np.testing.assert_allclose(F.values, [1, -1, -1], atol=TOL)


def test_fourier_pointwise_definition(rng):
    # F[f](xi) = sum over cells of f_m * measure * chi(xi x_m), valid when xi is constant on cells
    p = 3
    f = random_lcfunction(rng, p, 1, -1)
    F = fourier(f)
    for m in range(F.size):
        xi = F.representative(m)
        direct = sum(
            f.values[k] * f.cell_measure * character(xi * f.representative(k), p) for k in range(f.size)
        )
        assert abs(evaluate(F, xi) - direct) < TOL


@pytest.mark.parametrize("p", [2, 3, 5])
def test_round_trip_and_plancherel(rng, p):
    for _ in range(20):
        f, g = random_f(rng, p), random_f(rng, p)
        assert max_deviation(inverse_fourier(fourier(f)), f) < TOL
        assert abs(inner_product(f, g) - inner_product(fourier(f), fourier(g))) < TOL
        assert max_deviation(fourier(f), fourier_naive(f)) < 1e-10


def test_fourier_is_linear(rng):
    f, g = random_lcfunction(rng, 5, 1, 0), random_lcfunction(rng, 5, 0, -1)
    lhs = fourier(linear_combination([2, -1j], [f, g]))
    assert allclose(lhs, linear_combination([2, -1j], [fourier(f), fourier(g)]))


@pytest.mark.parametrize("k", range(-2, 3))
def test_dilation_shift_rule_pointwise(rng, k):
    p = 2
    f = random_lcfunction(rng, p, 1, -2)
    b = Fraction(3, 4)
    a = Fraction(p) ** k
    lhs = fourier(translate(dilate(f, -k), -b / a))
    F = fourier(f)
    grid = refine(lhs, lhs.support_exp + 1, lhs.constancy_exp - 1)
    for m in range(grid.size):
        xi = grid.representative(m)
        rhs = float(Fraction(p) ** k) * character(-b / a * xi, p) * evaluate(F, xi / a)
        assert abs(evaluate(lhs, xi) - rhs) < TOL


@settings(max_examples=50, deadline=None)
@given(
    p=st.sampled_from([2, 3, 5]),
    l=st.integers(-2, 1),
    depth=st.integers(0, 3),
    seed=st.integers(0, 2**32 - 1),
    c=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False),
)
def test_arithmetic_agrees_with_pointwise(p, l, depth, seed, c):
    rng = np.random.default_rng(seed)
    f = random_lcfunction(rng, p, l + depth, l)
    g = random_lcfunction(rng, p, l + depth + 1, l - 1)
    s = f + c * g
    for m in range(0, s.size, max(1, s.size // 10)):
        x = s.representative(m)
        assert abs(evaluate(s, x) - (evaluate(f, x) + c * evaluate(g, x))) < 1e-9
    assert max_deviation(f - f, zeros(p, l, l)) == 0
    assert allclose(-(-f), f)


def test_values_are_read_only():
    with pytest.raises(ValueError):
        omega(3).values[0] = 2


def test_invalid_construction():
    with pytest.raises(ValueError):
        LCFunction(3, 0, 1, [1])
    with pytest.raises(ValueError):
        LCFunction(3, 1, 0, [1, 2])

