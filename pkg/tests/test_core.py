from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chronoalg.core import (
    LinComb,
    MalformedInput,
    Tensor,
    TruncatedSeries,
    as_fraction,
    bernoulli,
    from_json,
    series_exp,
    series_log,
    to_json,
    to_latex,
    to_text,
)
from chronoalg.permutations import Permutation, parse_permutation, parse_tensor

fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
keys = st.sampled_from(["a", "b", "c", "d"])
lincombs = st.dictionaries(keys, fractions, max_size=4).map(LinComb)


def test_zero_coefficients_are_dropped():
    x = LinComb({"a": 1, "b": 0})
    assert list(x.keys()) == ["a"]
    assert (x - x).is_zero()
    assert x - x == 0


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)


@given(lincombs, lincombs, lincombs)
def test_vector_space_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert x - x == LinComb()
    assert Fraction(3) * (x + y) == 3 * x + 3 * y


@given(lincombs)
def test_text_output_is_sorted_and_stable(x):
    assert to_text(x) == to_text(LinComb(dict(reversed(list(x.items())))))


def test_text_and_latex_coefficients():
    x = LinComb({Permutation((1, 2)): Fraction(1, 2), Permutation((2, 1)): -2})
    assert to_text(x) == "1/2*(1,2) - 2*(2,1)"
    assert to_latex(x) == r"\frac{1}{2}(1,2) - 2\,(2,1)"
    assert to_text(LinComb()) == "0"


@given(st.lists(st.tuples(st.permutations([1, 2, 3]), fractions), max_size=4))
def test_json_round_trip(pairs):
    x = LinComb((Permutation(p), c) for p, c in pairs)
    assert from_json(to_json(x), parse_permutation) == x


def test_json_round_trip_tensors():
    t = Tensor((Permutation((2, 1)), Permutation((1,))))
    x = LinComb({t: Fraction(-3, 4)})
    assert from_json(to_json(x), parse_tensor) == x


def test_from_json_rejects_bad_records():
    with pytest.raises(MalformedInput):
        from_json('[{"basis": "(1)"}]', parse_permutation)


def test_series_exp_log_inverse_on_scalars():
    s = TruncatedSeries(6, {1: Fraction(1), 3: Fraction(2)}, zero=Fraction(0))
    mul = lambda a, b: a * b
    assert series_log(series_exp(s, mul, Fraction(1)), mul, Fraction(1)) == s


def test_series_log_needs_unit():
    s = TruncatedSeries(3, {0: Fraction(2)}, zero=Fraction(0))
    with pytest.raises(MalformedInput):
        series_log(s, lambda a, b: a * b, Fraction(1))


def _bernoulli_by_series_division(n):
    # x/(e^x − 1) = 1/(Σ x^k/(k+1)!), inverted as a power series
    from math import factorial

    denom = [Fraction(1, factorial(k + 1)) for k in range(n + 1)]
    inv = [Fraction(1)]
    for m in range(1, n + 1):
        inv.append(-sum(denom[k] * inv[m - k] for k in range(1, m + 1)))
    return [inv[m] * factorial(m) for m in range(n + 1)]


def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(4) == Fraction(-1, 30)


def test_bernoulli_matches_series_division():
    assert [bernoulli(n) for n in range(13)] == _bernoulli_by_series_division(12)
