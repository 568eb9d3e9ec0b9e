import pytest

from covstat import core, oracle, resolve, tiled
from conftest import load_fixture


@pytest.fixture(scope="module")
def covers3():
    return [oracle.cover_of(g) for g in oracle.enum_homs(3)]


def test_image_resolution_sizes():
    assert len(resolve.image_resolution(load_fixture("core_ab"))) == 7
    # the fold of Core(a^2) onto Core(a) is a valid image
    assert len(resolve.image_resolution(core.core_cyclic("a^2")[0])) == 2


def test_image_resolution_core_ab_euler(covers3):
    R = resolve.image_resolution(load_fixture("core_ab"))
    assert sorted(W.chi for W, _ in R.elements) == [-3, -2, -2, -2, -2, -2, -1]
    ok, witness = resolve.verify_resolution(R, covers3)
    assert ok, witness


def test_growing_resolution_of_power(covers3):
    Y, _ = core.core_cyclic("a^6")
    R = resolve.growing_resolution(Y, 0)
    assert len(R) == 4
    assert all(W.chi >= 0 for W, _ in R.elements)
    assert resolve.verify_resolution(R, covers3)[0]


def test_verification_detects_missing_element(covers3):
    Y, _ = core.core_cyclic("a^2")
    R = resolve.growing_resolution(Y, 0)
    broken = resolve.Resolution(R.base, R.elements[:1], R.kind, R.chi0)
    ok, witness = resolve.verify_resolution(broken, covers3)
    assert not ok and witness["factorizations"] == 0


def test_manifest_fields():
    R = resolve.image_resolution(tiled.single_edge(1))
    m = R.manifest()
    assert len(m) == 2
    assert {"vertices", "chi", "BR", "SBR", "map"} <= set(m[0])


def test_octagon_budget_nonnegative():
    Y, _ = core.core_cyclic("ab")
    assert resolve.octagon_budget(Y, 0) >= 0
