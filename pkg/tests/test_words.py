import random

import pytest

from covstat import words as W
from covstat.oracle import _random_perm, word_perm, cycle_type


def p(s):
    return W.parse_word(s)


def test_parse_grammar():
    assert p("aba^-2b^-1c") == (1, 2, -1, -1, -2, 3)
    assert p("[a,b][c,d]") == W.RELATOR
    assert p("aA") == ()
    assert p(" a B ") == (1, -2)
    assert p("a^3") == (1, 1, 1)


@pytest.mark.parametrize("bad,pos", [("ax", 1), ("a^", 1), ("[a,b", 4)])
def test_parse_errors_carry_position(bad, pos):
    with pytest.raises(W.WordSyntaxError) as exc:
        p(bad)
    assert exc.value.pos == pos


def test_dehn_reduce_examples():
    assert W.dehn_reduce(W.RELATOR).letters == ()
    assert str(W.dehn_reduce("abABcdC")) == "d"
    assert len(W.dehn_reduce("abAABc")) == 6


def test_dehn_reduce_idempotent_and_shortening():
    rng = random.Random(5)
    for _ in range(200):
        w = tuple(rng.choice([1, -1, 2, -2, 3, -3, 4, -4]) for _ in range(rng.randint(1, 14)))
        r = W.dehn_reduce(w)
        assert len(r) <= len(W.cyclic_reduce(W.free_reduce(w)))
        assert W.dehn_reduce(r.letters) == r
        for x in (r.letters, W.inverse(r.letters)):
            if x:
                blocks = W.cyclic_blocks(x)
                assert blocks is not None and all(L < 5 for _, L in blocks)


def test_shortest_representatives():
    reps = {str(c) for c in W.shortest_representatives("abAABc")}
    assert reps == {str(W.CyclicWord.of(p("abAABc"))), str(W.CyclicWord.of(p("cDCAdc")))}
    assert {str(c) for c in W.shortest_representatives("a")} == {"a"}
    # [a,b] equals [c,d]^-1 = dcDC in the group, so both words are shortest
    reps = {str(c) for c in W.shortest_representatives("abAB")}
    assert reps == {str(W.CyclicWord.of(p("abAB"))), str(W.CyclicWord.of(p("dcDC")))}
    assert len({len(c) for c in W.shortest_representatives("abAABc")}) == 1


def test_conjugacy():
    assert W.are_conjugate(p("aba^-2b^-1c"), p("cd^-1c^-1a^-1dc"))
    assert not W.are_conjugate(p("a"), p("b"))
    assert W.are_conjugate(p("abc"), p("bca"))
    assert W.are_conjugate(p("ab"), p("Aaba"))


def test_conjugacy_agrees_with_random_actions():
    # conjugate words have equal cycle types under every homomorphism to S_n
    rng = random.Random(2)
    pairs = [("abAABc", "cDCAdc"), ("abAB", "dcDC"), ("ab", "ba")]
    for w1, w2 in pairs:
        assert W.are_conjugate(p(w1), p(w2))
        for _ in range(20):
            g = [_random_perm(6, rng) for _ in range(3)]
            # d is unconstrained here, so only test words avoiding d
            if "d" in (w1 + w2).lower():
                continue
            g.append(tuple(range(6)))
            assert cycle_type(word_perm(g, p(w1))) == cycle_type(word_perm(g, p(w2)))


def test_is_trivial():
    assert W.is_trivial("[a,b][c,d]")
    assert not W.is_trivial("a")
    x = p("ab")
    assert W.is_trivial(x + W.RELATOR + W.inverse(x))


def test_max_root():
    r = W.max_root("a^6")
    assert (str(r.root), r.exponent, r.divisor_count) == ("a", 6, 4)
    assert W.max_root("ab").exponent == 1
    r = W.max_root("abab")
    assert (str(r.root), r.exponent) == ("ab", 2)
    for base in ("a", "ab", "abc"):
        for k in range(1, 5):
            assert W.max_root(W.power(p(base), k)).exponent == k
    with pytest.raises(ValueError):
        W.max_root("[a,b][c,d]")


def test_chain_parity_holds_on_random_words():
    rng = random.Random(9)
    for _ in range(300):
        w = W.cyclic_reduce(tuple(rng.choice([1, -1, 2, -2, 3, -3, 4, -4]) for _ in range(12)))
        if not w:
            continue
        blocks = W.cyclic_blocks(w)
        if blocks is not None:
            W.check_parity(blocks, W.cyclic_gaps(w), len(w))


def test_divisor_count():
    assert [W.divisor_count(q) for q in (1, 2, 3, 4, 6, 12)] == [1, 2, 2, 3, 4, 6]
