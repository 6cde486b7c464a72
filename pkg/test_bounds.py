import itertools
import math
from fractions import Fraction

import numpy as np
import pydantic
import pytest

from bounds import (BoundsInput, BoundValue, dependence_probability_exact, fer_bound, fer_bound_value, fer_curve,
                    fer_error_bound, fer_independent, p_dependent_bound, p_error_approx, p_error_bound, p_error_bound_relaxed,
                    p_failure_bound, p_valid_fraction)
from gf import field_new
from gf_linalg import rank
from rs_code import Variant, make_spec

FLAGSHIP = BoundsInput(q=256, l=16, f_max=15, N=204, t_half=8)


def test_dependent_bound():
    assert p_dependent_bound(2, 3, 8) == pytest.approx(9 / 512, rel=1e-14)
    assert p_dependent_bound(2, 3, 8) >= 7 / 511
    values = [p_dependent_bound(3, l, 16) for l in range(3, 12)]
    assert all(a > b for a, b in zip(values, values[1:]))
    with pytest.raises(ValueError):
        p_dependent_bound(1, 3, 8)


def _enumerate_dependence(q, l, f):
    gf = field_new(int(math.log2(q)), {4: 0x7, 8: 0xB}[q])
    rows = [np.array(v) for v in itertools.product(range(q), repeat=l) if any(v)]
    dependent = sum(rank(gf, np.vstack(t)) < f for t in itertools.product(rows, repeat=f))
    return Fraction(dependent, len(rows) ** f)


@pytest.mark.parametrize("q, l, f", [(4, 2, 2), (4, 2, 3), (4, 3, 2), (8, 2, 2)])
def test_dependence_enumeration(q, l, f):
    exact = _enumerate_dependence(q, l, f)
    assert dependence_probability_exact(q, l, f) == exact
    assert p_dependent_bound(f, l, q) >= float(exact)


def test_dependence_exact_gf8():
    assert dependence_probability_exact(8, 3, 2) == Fraction(7, 511)
    assert dependence_probability_exact(8, 2, 3) == 1


def test_failure_bound():
    assert p_failure_bound(0, 16, 256, 15) == 0.0
    assert p_failure_bound(1, 16, 256, 15) == 0.0
    assert p_failure_bound(15, 16, 256, 15) == pytest.approx(256.0 ** -2)
    assert p_failure_bound(16, 16, 256, 15) == 1.0


def test_valid_fraction():
    assert p_valid_fraction(0, 8) == 1.0
    assert p_valid_fraction(1, 256) == pytest.approx(1.0)
    assert p_valid_fraction(2, 8) == pytest.approx(0.4375)
    assert p_valid_fraction(9, 8) == 0.0
    for q in (8, 256):
        for t in range(21):
            assert p_valid_fraction(t, q) <= 1 / math.factorial(t) + 1e-15
    with pytest.raises(ValueError):
        p_valid_fraction(-1, 8)


def test_valid_fraction_counts_split_polynomials():
    # monic degree-t polynomials with t distinct roots in GF(q) are the products over t-subsets
    q = 8
    for t in range(4):
        assert p_valid_fraction(t, q) == pytest.approx(math.comb(q, t) / q ** t)


def test_error_bound():
    assert p_error_bound(2, 5, 8) == 0.0
    assert p_error_bound(3, 3, 8) == pytest.approx(0.4375 / 8)
    assert p_error_approx(3, 3, 8) == pytest.approx(1 / 16)
    assert p_error_approx(2, 3, 8) == 0.0


def test_error_bound_below_failure_bound():
    for f in range(2, 16):
        assert p_error_bound(f, 16, 256, 15) <= p_failure_bound(f, 16, 256, 15)
        assert p_error_bound(f, 16, 256, 15) <= p_error_bound_relaxed(f, 16, 256, 15)


def test_error_bound_dominated_by_last_summand():
    ratio = p_error_bound_relaxed(15, 16, 256) / p_error_approx(15, 16, 256)
    assert 1.0 - 1e-12 <= ratio <= 1.01
    assert p_error_approx(15, 16, 256) == pytest.approx(256.0 ** -2 / math.factorial(14))


def test_bounds_input_validation():
    with pytest.raises(pydantic.ValidationError):
        BoundsInput(q=256, l=16, f_max=15, N=0)
    with pytest.raises(pydantic.ValidationError):
        BoundsInput(q=256, l=16, f_max=15, N=204, p_i=1.5)
    with pytest.raises(ValueError):
        BoundsInput.for_code(10, 10, 4, 16)


def test_bounds_input_for_spec():
    spec = make_spec(field_new(8, 0x11D), 188, Variant.SHORTENED, 51)
    assert BoundsInput.for_spec(spec, 16) == FLAGSHIP
    assert BoundsInput.for_code(204, 188, 16, 256) == FLAGSHIP
    assert FLAGSHIP.at(0.5).p_i == 0.5
    assert FLAGSHIP.p_i == 0.0


def test_fer_endpoints():
    assert fer_bound(FLAGSHIP) == 0.0
    assert fer_error_bound(FLAGSHIP) == 0.0
    assert fer_bound(FLAGSHIP.at(1.0)) == pytest.approx(1.0)


def _exact_fer(inp: BoundsInput, p: Fraction) -> Fraction:
    total = Fraction(0)
    for t in range(2, inp.N + 1):
        pf = Fraction(1) if t > inp.f_max else Fraction(1, inp.q ** (inp.l + 1 - t))
        total += math.comb(inp.N, t) * pf * p ** t * (1 - p) ** (inp.N - t)
    return total


@pytest.mark.parametrize("N, q, l, f_max", [(8, 8, 4, 4), (16, 16, 6, 6), (32, 16, 8, 7)])
@pytest.mark.parametrize("p", [Fraction(1, 100), Fraction(1, 8), Fraction(1, 2)])
def test_fer_matches_exact_rational(N, q, l, f_max, p):
    inp = BoundsInput(q=q, l=l, f_max=f_max, N=N, p_i=float(p))
    assert fer_bound(inp) == pytest.approx(float(_exact_fer(inp, p)), rel=1e-10)


def test_fer_monotone_in_p_and_n():
    grid = np.logspace(-4, 0, 30)
    fer = [row[1] for row in fer_curve(FLAGSHIP, grid)]
    assert all(a <= b * (1 + 1e-12) for a, b in zip(fer, fer[1:]))

    by_n = [fer_bound(BoundsInput(q=256, l=16, f_max=15, N=n, p_i=0.05)) for n in (32, 64, 128, 204)]
    assert all(a <= b for a, b in zip(by_n, by_n[1:]))


def test_fer_error_below_fer():
    for p, fer, fer_e, _ in fer_curve(FLAGSHIP, np.logspace(-3, -1, 13)):
        assert fer_e <= fer


def test_flagship_gap():
    inp = FLAGSHIP.at(1e-2)
    assert fer_error_bound(inp) > 0.0
    assert fer_bound(inp) / fer_error_bound(inp) >= 1e10


def test_underflow_is_flagged():
    value = fer_bound_value(FLAGSHIP.at(1e-200))
    assert value == BoundValue(0.0, True)
    assert BoundValue.from_log(-np.inf) == BoundValue(0.0, False)
    assert BoundValue.from_log(0.5).value == 1.0


@pytest.mark.parametrize("N, t_half", [(8, 2), (16, 4), (204, 8)])
@pytest.mark.parametrize("p", [Fraction(1, 100), Fraction(1, 4), Fraction(3, 4)])
def test_fer_independent_matches_binomial_tail(N, t_half, p):
    tail = sum(math.comb(N, t) * p ** t * (1 - p) ** (N - t) for t in range(t_half + 1, N + 1))
    assert fer_independent(N, t_half, float(p)) == pytest.approx(float(tail), rel=1e-10)


def test_fer_independent_endpoints():
    assert fer_independent(204, 8, 0.0) == 0.0
    assert fer_independent(204, 8, 1.0) == pytest.approx(1.0)
    assert fer_independent(8, 8, 0.9) == 0.0
    with pytest.raises(ValueError):
        fer_independent(0, 1, 0.1)
    with pytest.raises(ValueError):
        fer_independent(8, -1, 0.1)


def test_collaborative_fer_below_column_wise():
    for row in fer_curve(FLAGSHIP, np.logspace(-3, -1, 13)):
        assert row.fer <= row.fer_indep
        assert row.fer_indep == pytest.approx(fer_independent(204, 8, row.p_i), rel=1e-12)
    assert FLAGSHIP.t_half == 8
