import random
from fractions import Fraction

import pytest

from covstat.asympt import (LaurentSeriesQ as L, compare_numeric, eval_at, invert,
                            pochhammer_series, rational_fn_series, sqrt_series)
from covstat import symrep


def test_ring_examples():
    assert (L({0: 1, 1: 1}) * L({0: 1, 1: -1})) == L({0: 1, 2: -1})
    assert L({-1: 1}) * L({1: 1}) == L.const(1)


def test_ring_axioms_on_random_series():
    rng = random.Random(4)
    for _ in range(50):
        a, b, c = (L({k: Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for k in range(-1, 4)}, 6)
                   for _ in range(3))
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * (b + c)).agrees_with(a * b + a * c)
        assert (a + b).agrees_with(b + a)


def test_invert():
    s = invert(L({0: 1, 1: -1}), 5)
    assert [s.coeff(k) for k in range(5)] == [1] * 5
    s = invert(L({2: Fraction(1, 2), 3: Fraction(-1, 2)}), 3)
    assert s.coeff(-2) == 2 and s.coeff(-1) == 2 and s.coeff(0) == 2
    t = L({0: 3, 1: 1, 2: 5}, 7)
    assert invert(invert(t)).agrees_with(t)
    with pytest.raises(ZeroDivisionError):
        invert(L({}))


def test_sqrt():
    s = sqrt_series(L({0: 1, 2: -1}), 6)
    assert [s.coeff(k) for k in range(6)] == [1, 0, Fraction(-1, 2), 0, Fraction(-1, 8), 0]
    assert sqrt_series(L.const(1), 4).agrees_with(L.const(1, 4))
    t = L({0: 1, 1: 3, 3: -2}, 6)
    r = sqrt_series(t)
    assert (r * r).agrees_with(t)
    with pytest.raises(ValueError):
        sqrt_series(L({0: 2}))


def test_pochhammer_and_rational():
    assert pochhammer_series(2) == L({-2: 1, -1: -1})
    assert pochhammer_series(0) == L.const(1)
    r = pochhammer_series(1) * pochhammer_series(0) * invert(pochhammer_series(1), 4)
    assert r.agrees_with(L.const(1))
    s = rational_fn_series([0, 1], [1, 1], 4)   # n / (n + 1)
    assert [s.coeff(k) for k in range(4)] == [1, -1, 1, -1]


def test_truncation_is_tracked():
    a = L({0: 1}, 3)
    b = L({-2: 1})
    assert (a * b).order == 1
    with pytest.raises(ValueError):
        (a * b).coeff(1)


def test_eval_and_compare():
    assert eval_at(L({0: 1, 2: 1}), 10) == Fraction(101, 100)
    assert eval_at(L({-1: 1}), 1) == 1
    P = L(dict(enumerate(symrep.zeta_poly(2, 5))), 5)
    devs = [compare_numeric(P, lambda n: symrep.zeta_exact(n, 2) / 2, [n]) * n ** 5
            for n in range(8, 13)]
    assert devs[-1] < devs[0]


def test_render_and_json():
    s = L({-1: 2, 0: 1, 2: Fraction(1, 3)}, 4)
    assert s.render() == "2*n + 1 + 1/3/n^2 + O(n^-4)"
    assert s.to_json()["order"] == 4
