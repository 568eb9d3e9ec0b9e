import json

import pytest

from covstat import tiled as T
from covstat.core import core_cyclic
from conftest import load_fixture


def test_octagon_disc_counts():
    Y = T.octagon_disc()
    assert (Y.nv, Y.ne, Y.nf, Y.chi) == (8, 8, 1, 1)
    assert Y.is_valid() and Y.is_connected()
    assert Y.is_strongly_boundary_reduced()
    assert Y.max_defect() == -7


def test_bare_relator_cycle_is_one_full_block():
    Y = T.bare_relator_cycle()
    cls = Y.classify_boundary()
    assert any(c.get("full_cycle") for c in cls)
    assert not Y.is_boundary_reduced()
    assert Y.max_defect() == 8


def test_point_and_edge():
    P = T.point()
    assert P.chi == 1 and P.d == 0 and P.boundary_cycles()[0].vertex == 0
    E = T.single_edge(2)
    assert (E.nv, E.ne, E.d) == (2, 1, 2)
    assert E.is_boundary_reduced()


def test_invalid_surfaces_are_reported():
    Y = T.TiledSurface(2, {"a": [(0, 1), (0, 0)]})
    assert not Y.is_valid()
    with pytest.raises(T.InvalidSurface):
        Y.validate()
    # octagon whose relator path is incomplete
    Z = T.TiledSurface(1, {"a": [(0, 0)]}, octagons=[0])
    assert Z.violations()


def test_json_round_trip(tmp_path):
    Y, _ = core_cyclic("aba^-2b^-1c")
    data = Y.to_json()
    assert data["genus"] == 2
    Z = T.TiledSurface.from_json(json.loads(json.dumps(data)))
    assert T.is_isomorphic(Y, Z)
    assert "digraph" in Y.to_dot()


@pytest.mark.parametrize("name", ["octagon_disc", "core_ab", "core_a", "core_commutator",
                                  "bare_relator_cycle"])
def test_fixtures_load(name):
    Y = load_fixture(name)
    assert Y.is_valid()


def test_fixture_matches_builder():
    assert T.is_isomorphic(load_fixture("octagon_disc"), T.octagon_disc())
    assert T.is_isomorphic(load_fixture("core_ab"), T.core_ab())
    assert T.is_isomorphic(load_fixture("core_a"), core_cyclic("a")[0])
    assert T.is_isomorphic(load_fixture("core_commutator"), core_cyclic("[a,b]")[0])


def test_isomorphism_is_label_invariant():
    Y = T.octagon_disc()
    perm = [3, 7, 0, 5, 1, 6, 2, 4]
    Z = T.relabel(Y, perm)
    assert T.is_isomorphic(Y, Z)
    assert not T.is_isomorphic(Y, T.bare_relator_cycle())


def test_morphisms_and_embeddings():
    Y = T.single_edge(1)
    X = T.TiledSurface(1, {"a": [(0, 0)]})
    assert len(T.morphisms(Y, X)) == 1
    assert T.embeddings(Y, X) == []
    assert len(T.embeddings(T.point(), T.octagon_disc())) == 8


def test_quotients_of_an_edge():
    qs = T.quotients(T.single_edge(1))
    assert sorted(Q.nv for Q, _ in qs) == [1, 2]


def test_boundary_letters_of_cycle():
    Y = T.cycle_of_word((1, 2))
    words = sorted(c["letters"] for c in Y.classify_boundary())
    assert len(words) == 2
    assert all(len(w) == 2 for w in words)
