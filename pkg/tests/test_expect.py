import random
from fractions import Fraction

import pytest

from covstat import core, expect as E, oracle, tiled
from covstat.asympt import eval_at
from conftest import load_fixture


SURFACES = {
    "point": tiled.point,
    "edge": lambda: tiled.single_edge(1),
    "Core(a)": lambda: core.core_cyclic("a")[0],
    "Core(a^2)": lambda: core.core_cyclic("a^2")[0],
    "Core(ab)": lambda: core.core_cyclic("ab")[0],
}


@pytest.mark.parametrize("name", list(SURFACES))
@pytest.mark.parametrize("seed", [None, 7])
def test_frame_properties(name, seed):
    Y = SURFACES[name]()
    fr = E.build_frame(Y, seed)
    assert len(fr.junctions) == 8
    assert all(sorted(p) == list(range(Y.nv - Y.nf)) for p in fr.junctions)


@pytest.mark.parametrize("name,n", [(k, n) for k in SURFACES for n in (3, 4)])
def test_emb_rational_equals_oracle(name, n):
    Y = SURFACES[name]()
    assert E.e_emb_exact(Y, n, mode="rational") == oracle.brute_e_emb(Y, n)


def test_emb_float_and_rational_agree():
    Y = load_fixture("core_ab")
    fr = E.build_frame(Y, 3)
    for n in (6, 7):
        a = E.e_emb_exact(Y, n, fr)
        b = E.e_emb_exact(Y, n, fr, mode="rational")
        assert isinstance(b, Fraction)
        assert abs(a - float(b)) < 1e-12


def test_emb_below_vertex_count_is_zero():
    assert E.e_emb_exact(tiled.octagon_disc(), 5) == 0


def test_xi_of_point_is_zeta():
    from covstat.symrep import zeta_exact
    P = tiled.point()
    assert E.xi_exact(P, E.build_frame(P), 6, mode="rational") == zeta_exact(6, 2)


def test_fix_rational_values():
    assert E.e_fix_exact("a", 3, mode="rational") == Fraction(10, 9)
    assert E.e_fix_exact("a^2", 4, mode="rational") == Fraction(195, 89)
    assert E.e_fix_exact("[a,b]", 4, mode="rational") == Fraction(177, 89)


def test_series_of_core_a():
    s = E.e_emb_series(core.core_cyclic("a")[0], 5)
    assert [s.coeff(k) for k in range(5)] == [1, 0, 1, 2, 10]


def test_series_of_point_and_edge():
    assert E.e_emb_series(tiled.point(), 4).coeff(-1) == 1
    s = E.e_emb_series(tiled.single_edge(1), 4)
    assert [s.coeff(k) for k in range(-1, 4)] == [1, -1, 0, -1, -2]


def test_series_dual_route_agrees():
    # the column-growing contribution is computed separately and must match the row one
    Y = core.core_cyclic("ab")[0]
    E.xi_series(Y, E.build_frame(Y), 4, check_dual=True)


def test_series_converges_to_exact():
    Y = core.core_cyclic("a^2")[0]
    s = E.e_emb_series(Y, 5)
    errs = [abs(float(eval_at(s, n)) - E.e_emb_exact(Y, n)) for n in (8, 12, 16)]
    assert errs[0] > errs[1] > errs[2]


def test_fix_series_report():
    s, rep = E.e_fix_series("a^2", 2)
    assert rep["a_-1"] == 0 and rep["a_0"] == 2 and rep["q"] == 2
    s, rep = E.e_fix_series("[a,b]", 2)
    assert s.coeff(0) == 1 and s.coeff(1) == 2


def test_subgroup_expectations():
    Y = load_fixture("core_ab")
    for n in (3, 4):
        assert abs(E.e_fix_subgroup(Y, n=n) - float(oracle.brute_e_hom(Y, n))) < 1e-9
    s, rep = E.e_fix_subgroup(Y, M=3)
    assert rep["chi_max"] == -1 and rep["leading_coefficient"] == 1
    assert s.coeff(1) == 1 and s.coeff(2) == 1


def test_subgroup_rejects_non_core():
    with pytest.raises(ValueError):
        E.e_fix_subgroup(tiled.bare_relator_cycle(), n=3)


def test_upsilon_dual_sign():
    Y = core.core_cyclic("ab")[0]
    fr = E.build_frame(Y, 5)
    rng = random.Random(1)
    for _ in range(20):
        nu, mus, lam, _ = E.random_index(fr, Y.nv + 3, rng)
        a = E.upsilon(fr, nu, mus, lam)
        b = E.upsilon(fr, nu, mus, lam, dual=True)
        assert abs(a - b) < 1e-9


def test_defect_check_reports_pieces():
    Y = load_fixture("core_ab")
    fr = E.build_frame(Y, 2)
    rng = random.Random(3)
    for _ in range(50):
        nu, mus, lam, tabs = E.random_index(fr, Y.nv + 2, rng)
        rep = E.defect_bound_check(Y, fr, nu, mus, lam, tabs)
        assert rep["ok"], rep["violations"]
        assert E.pieces_count(fr, tabs) == rep["D_top"]


def test_matrix_coefficient_bound_hypothesis():
    assert E.matrix_coefficient_bound((3, 1), (2,), (1, 0), ((0, 2),), ((1, 0),), 0.5) is None
