import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from covstat import symrep as S


def test_dims():
    assert S.dim((3, 2)) == 5
    assert S.dim((2, 2, 1)) == 5
    assert S.skew_dim((3, 2), (1,)) == 5
    for n in range(1, 8):
        assert sum(S.dim(l) ** 2 for l in S.partitions(n)) == math.factorial(n)


def test_b_counts():
    assert S.b_count((3, 1)) == 1
    assert S.bcheck_count((3, 1)) == 2
    assert S.b_count((2, 2), (1,)) == 2
    assert S.b_count((3, 1), (2,)) == 1


def test_zeta_values():
    assert S.zeta_exact(3, 2) == Fraction(9, 4)
    assert S.zeta_poly(2, 5) == [1, 0, 1, 2, 11]


def test_zeta_inverse_poly_is_reciprocal():
    c = S.zeta_poly(2, 6)
    ci = S.zeta_inv_poly(2, 6)
    prod = [sum(c[i] * ci[k - i] for i in range(k + 1)) for k in range(6)]
    assert prod == [1, 0, 0, 0, 0, 0]


def test_truncation_tail():
    n = 7
    assert S.truncation_tail(n, 0, 2) == S.zeta_exact(n, 2)
    assert S.truncation_tail(n, n + 1, 2) == 0


def test_dim_polynomial():
    # d of (n - 2, 1, 1) is (n-1)(n-2)/2
    for n in range(4, 10):
        assert S.poly_eval(S.family_dim_polynomial((1, 1)), n) == S.dim((n - 2, 1, 1))


def _check_rep(outer, inner, mode):
    k = sum(outer) - sum(inner)
    mod = S.SkewModule(outer, inner)
    rng = random.Random(0)
    for _ in range(6):
        a = list(range(k)); rng.shuffle(a)
        b = list(range(k)); rng.shuffle(b)
        ab = tuple(a[b[i]] for i in range(k))
        Ma = mod.perm_action(tuple(a), mode)
        Mb = mod.perm_action(tuple(b), mode)
        Mab = mod.perm_action(ab, mode)
        if mode == "float":
            assert np.allclose(Ma @ Mb, Mab)
        else:
            d = mod.dim
            prod = [[sum(Ma[i][t] * Mb[t][j] for t in range(d)) for j in range(d)] for i in range(d)]
            assert prod == [list(r) for r in Mab]


@pytest.mark.parametrize("outer,inner", [((3, 2), ()), ((3, 2, 1), (1,)), ((4, 2), (2,))])
def test_homomorphism(outer, inner):
    _check_rep(outer, inner, "float")
    _check_rep(outer, inner, "rational")


def test_orthogonal_form_is_orthogonal():
    mod = S.SkewModule((3, 2, 1))
    for i in range(5):
        Y = mod.yor_matrix(i)
        assert np.allclose(Y @ Y.T, np.eye(mod.dim))


def test_character_orthogonality():
    n = 4
    parts = S.partitions(n)
    perms = list(itertools.permutations(range(n)))
    chars = {l: [np.trace(S.perm_action(p, l)) for p in perms] for l in parts}
    for l1 in parts:
        for l2 in parts:
            ip = sum(a * b for a, b in zip(chars[l1], chars[l2])) / len(perms)
            assert abs(ip - (l1 == l2)) < 1e-9


def test_top_left_dset():
    T = ((0, 0), (0, 1), (1, 0))
    assert isinstance(S.top(T), frozenset)
    assert S.dset(frozenset({1, 2}), frozenset({2, 3})) == 1
