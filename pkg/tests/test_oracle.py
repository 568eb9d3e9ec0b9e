from fractions import Fraction

import pytest

from covstat import oracle, tiled


@pytest.mark.parametrize("n,count", [(1, 1), (2, 16), (3, 486)])
def test_hom_counts(n, count):
    assert oracle.count_homs(n) == count
    assert oracle.hurwitz_count(n) == count


def test_enum_matches_count():
    homs = list(oracle.enum_homs(3))
    assert len(homs) == 486
    assert all(oracle.relation_holds(g) for g in homs)
    assert len(set(homs)) == len(homs)


def test_cap_at_five():
    with pytest.raises(oracle.CapExceeded):
        oracle.count_homs(5)


def test_brute_fix_values():
    assert oracle.brute_e_fix("a", 3) == Fraction(10, 9)
    assert oracle.brute_e_fix("[a,b][c,d]", 3) == 3


def test_point_embeddings_count_vertices():
    assert oracle.brute_e_emb(tiled.point(), 3) == 3
    assert oracle.brute_e_hom(tiled.point(), 3) == 3


def test_cover_rejects_non_relation():
    g = ((1, 0, 2), (0, 1, 2), (0, 2, 1), (0, 1, 2))
    if not oracle.relation_holds(g):
        with pytest.raises(ValueError):
            oracle.cover_of(g)


def test_cycle_type_and_centralizer():
    assert oracle.cycle_type((1, 2, 0, 3)) == (3, 1)
    assert oracle.centralizer_order((3, 1)) == 3
    assert oracle.centralizer_order((1, 1, 1)) == 6


def test_sampler_is_unbiased_on_small_n():
    est, err = oracle.sample_estimate("a", 4, 20000, seed=3)
    assert abs(est - 97 / 89) <= 4 * err


def test_sampler_is_deterministic():
    assert oracle.sample_estimate("ab", 6, 500, seed=1) == oracle.sample_estimate("ab", 6, 500, seed=1)
