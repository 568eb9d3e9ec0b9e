"""Words in the genus-2 surface group <a,b,c,d | [a,b][c,d]>.

Letters are nonzero ints: a=1, b=2, c=3, d=4 and negatives for inverses.
Block and chain arithmetic is done with "gaps": the number of hanging
slots crossed between consecutive letters at the 8-slot vertex of the
base surface.  A gap of 0 means the second letter follows the first in
the cyclic relator.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache

GENUS = 2
NAMES = "abcd"
RELATOR = (1, 2, -1, -2, 3, 4, -3, -4)
REL_POS = {x: i for i, x in enumerate(RELATOR)}

# slot order around a vertex: a-out, b-in, a-in, b-out, c-out, d-in, c-in, d-out
_OUT = {1: 0, 2: 3, 3: 4, 4: 7}
_IN = {1: 2, 2: 1, 3: 6, 4: 5}


def arr_slot(x: int) -> int:
    """Slot at which a path reading x arrives."""
    return _IN[x] if x > 0 else _OUT[-x]


def dep_slot(x: int) -> int:
    """Slot from which a path reading x departs."""
    return _OUT[x] if x > 0 else _IN[-x]


def gap(x: int, y: int) -> int:
    return (dep_slot(y) - arr_slot(x) - 1) % 8


class WordSyntaxError(ValueError):
    def __init__(self, msg, pos):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# ------------------------------------------------------------------ basics

def letter_str(x: int) -> str:
    s = NAMES[abs(x) - 1]
    return s if x > 0 else s.upper()


def to_str(w) -> str:
    return "".join(letter_str(x) for x in w)


def inverse(w) -> tuple:
    return tuple(-x for x in reversed(w))


def free_reduce(w) -> tuple:
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w) -> tuple:
    w = list(free_reduce(w))
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return tuple(w[i:j + 1])


def _letter_key(x):
    return (abs(x), x < 0)


def canonical_rotation(w) -> tuple:
    """Lexicographically least rotation under a < A < b < B < ..."""
    w = tuple(w)
    if not w:
        return w
    keyed = [_letter_key(x) for x in w]
    best = min(range(len(w)), key=lambda i: keyed[i:] + keyed[:i])
    return w[best:] + w[:best]


def power(w, q: int) -> tuple:
    return free_reduce(tuple(w) * q) if q >= 0 else free_reduce(inverse(w) * (-q))


@dataclass(frozen=True)
class Word:
    letters: tuple

    def __str__(self):
        return to_str(self.letters)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class CyclicWord:
    letters: tuple  # canonical rotation of a cyclically reduced word

    @classmethod
    def of(cls, w) -> "CyclicWord":
        return cls(canonical_rotation(cyclic_reduce(w)))

    def __str__(self):
        return to_str(self.letters)

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class RootDecomposition:
    root: CyclicWord
    exponent: int
    divisor_count: int


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s+|[abcdABCD](\^-?\d+)?|[\[\],]")


def parse_word(text: str) -> tuple:
    """Parse 'aba^-2b^-1c', '[a,b][c,d]', 'AB' ... into a freely reduced tuple."""
    pos = 0
    stack = [[]]
    commas = [[]]
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos] == "^":
                raise WordSyntaxError("malformed power", pos)
            raise WordSyntaxError(f"unexpected character {text[pos]!r}", pos)
        tok = m.group(0)
        if tok.isspace():
            pass
        elif tok == "[":
            stack.append([])
            commas.append([])
        elif tok == ",":
            if len(stack) == 1:
                raise WordSyntaxError("comma outside brackets", pos)
            commas[-1].append(len(stack[-1]))
        elif tok == "]":
            if len(stack) == 1:
                raise WordSyntaxError("unmatched ']'", pos)
            body, cs = stack.pop(), commas.pop()
            if len(cs) != 1:
                raise WordSyntaxError("commutator needs exactly one comma", pos)
            x, y = tuple(body[:cs[0]]), tuple(body[cs[0]:])
            stack[-1].extend(x + y + inverse(x) + inverse(y))
        else:
            ch = tok[0]
            x = NAMES.index(ch.lower()) + 1
            if ch.isupper():
                x = -x
            e = int(tok[2:]) if len(tok) > 1 else 1
            if ch.isupper() and len(tok) > 1:
                raise WordSyntaxError("power on an uppercase letter", pos)
            stack[-1].extend([x] * e if e >= 0 else [-x] * (-e))
        pos = m.end()
    if len(stack) != 1:
        raise WordSyntaxError("unclosed '['", len(text))
    return free_reduce(stack[0])


def as_letters(w) -> tuple:
    if isinstance(w, str):
        return parse_word(w)
    if isinstance(w, (Word, CyclicWord)):
        return w.letters
    return tuple(w)


# ------------------------------------------------------- blocks and chains

def cyclic_gaps(w) -> list:
    """gaps[i] = gap between w[i] and w[i+1] (cyclically)."""
    n = len(w)
    return [gap(w[i], w[(i + 1) % n]) for i in range(n)]


def cyclic_blocks(w, gaps=None) -> list:
    """Maximal gap-0 runs as (start, length) in cyclic order; None if every gap is 0."""
    n = len(w)
    if gaps is None:
        gaps = cyclic_gaps(w)
    if n == 0:
        return []
    if all(g == 0 for g in gaps):
        return None
    # start just after a nonzero gap
    first = next(i for i in range(n) if gaps[i - 1] != 0)
    blocks = []
    i = first
    covered = 0
    while covered < n:
        L = 1
        while gaps[(i + L - 1) % n] == 0:
            L += 1
        blocks.append((i % n, L))
        covered += L
        i += L
    return blocks


def _junction(blocks, gaps, n, j):
    s, L = blocks[j]
    return gaps[(s + L - 1) % n]


def is_cyclic_chain(blocks, gaps, n) -> bool:
    return bool(blocks) and all(_junction(blocks, gaps, n, j) == 1 for j in range(len(blocks)))


def check_parity(blocks, gaps, n):
    """A cyclic chain has an even number of even-length blocks."""
    if blocks and is_cyclic_chain(blocks, gaps, n):
        even = sum(1 for _, L in blocks if L % 2 == 0)
        assert even % 2 == 0, "cyclic chain with an odd number of even-length blocks"


def long_chains(blocks, gaps, n) -> list:
    """Runs of consecutive blocks with lengths 4,3,...,3,4 joined by gap-1 junctions.

    Returned as lists of block indices (cyclic order)."""
    m = len(blocks)
    out = []
    for i in range(m):
        if blocks[i][1] != 4:
            continue
        run = [i]
        j = i
        for _ in range(m - 1):
            if _junction(blocks, gaps, n, j) != 1:
                break
            j = (j + 1) % m
            L = blocks[j][1]
            run.append(j)
            if L == 4:
                out.append(list(run))
                break
            if L != 3:
                break
    return out


def is_half_chain(blocks, gaps, n) -> bool:
    return bool(blocks) and is_cyclic_chain(blocks, gaps, n) and all(L == 3 for _, L in blocks)


def block_complement(p: int, L: int) -> tuple:
    """Complement of the relator run starting at relator position p of length L."""
    return inverse(tuple(RELATOR[(p + j) % 8] for j in range(L, 8)))


def chain_complement(ps, Ls) -> tuple:
    """Complement of a long chain with blocks starting at relator positions ps."""
    out = []
    k = len(ps)
    for i, (p, L) in enumerate(zip(ps, Ls)):
        start = 0 if i == 0 else -1
        end = L + 1 if i < k - 1 else L
        out.extend(inverse(tuple(RELATOR[(p + j) % 8] for j in range(end, start + 8))))
    return tuple(out)


def half_chain_complement(ps) -> tuple:
    out = []
    for p in ps:
        out.extend(inverse(tuple(RELATOR[(p + j) % 8] for j in range(4, 7))))
    return tuple(out)


def _rotate(w, s):
    return w[s:] + w[:s]


# ---------------------------------------------------------------- reduction

def _reduce_step(w):
    """One shortening move on the forward side of cyclic w, or None."""
    n = len(w)
    gaps = cyclic_gaps(w)
    blocks = cyclic_blocks(w, gaps)
    if blocks is None:
        # the whole cycle reads powers of the relator
        return ()
    check_parity(blocks, gaps, n)
    for s, L in blocks:
        if L >= 8:
            r = _rotate(w, s)
            return r[8:]
    for s, L in blocks:
        if L >= 5:
            r = _rotate(w, s)
            return block_complement(REL_POS[r[0]], L) + r[L:]
    for run in long_chains(blocks, gaps, n):
        s0 = blocks[run[0]][0]
        r = _rotate(w, s0)
        Ls = [blocks[j][1] for j in run]
        ps = [REL_POS[w[blocks[j][0]]] for j in run]
        total = sum(Ls)
        return chain_complement(ps, Ls) + r[total:]
    return None


@lru_cache(maxsize=4096)
def _dehn(w: tuple) -> tuple:
    w = cyclic_reduce(w)
    while w:
        new = _reduce_step(w)
        if new is None:
            inv = _reduce_step(inverse(w))
            if inv is not None:
                new = inverse(inv)
        if new is None:
            break
        new = cyclic_reduce(new)
        assert len(new) < len(w), "Dehn move failed to shorten"
        w = new
    return canonical_rotation(w)


def dehn_reduce(w) -> CyclicWord:
    """Cyclically shortest representative of the conjugacy class of w."""
    return CyclicWord(_dehn(as_letters(w)))


def is_trivial(w) -> bool:
    """Word problem: w = 1 in the surface group.

    Trivial elements are exactly those whose conjugacy class is trivial, so
    the cyclic reduction answers the question."""
    return len(_dehn(as_letters(w))) == 0


def _switches(w):
    """Cyclic words obtained from w by one half-block or half-chain switch on either side."""
    out = []
    for side in (0, 1):
        u = w if side == 0 else inverse(w)
        n = len(u)
        gaps = cyclic_gaps(u)
        blocks = cyclic_blocks(u, gaps)
        if not blocks:
            continue
        check_parity(blocks, gaps, n)
        for s, L in blocks:
            if L == 4:
                r = _rotate(u, s)
                v = block_complement(REL_POS[r[0]], 4) + r[4:]
                out.append(v if side == 0 else inverse(v))
        if is_half_chain(blocks, gaps, n):
            r = _rotate(u, blocks[0][0])
            v = half_chain_complement([REL_POS[u[s]] for s, _ in blocks])
            out.append(v if side == 0 else inverse(v))
    return [canonical_rotation(cyclic_reduce(v)) for v in out]


@lru_cache(maxsize=4096)
def _shortest_set(w: tuple) -> frozenset:
    start = _dehn(w)
    seen = {start}
    todo = [start]
    while todo:
        u = todo.pop()
        for v in _switches(u):
            if len(v) != len(start):
                raise AssertionError("switch changed the length of a shortest word")
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return frozenset(seen)


def shortest_representatives(w) -> set:
    return {CyclicWord(v) for v in _shortest_set(as_letters(w))}


def are_conjugate(w1, w2) -> bool:
    a, b = _dehn(as_letters(w1)), _dehn(as_letters(w2))
    if len(a) != len(b):
        return False
    return b in _shortest_set(a)


def divisor_count(q: int) -> int:
    return sum(1 for d in range(1, q + 1) if q % d == 0)


def _all_reduced(length):
    letters = (1, -1, 2, -2, 3, -3, 4, -4)
    words = [()]
    for _ in range(length):
        words = [w + (x,) for w in words for x in letters if not w or w[-1] != -x]
    return words


def max_root(w) -> RootDecomposition:
    """Largest q with w conjugate to a q-th power, and such a root."""
    w = as_letters(w)
    if is_trivial(w):
        raise ValueError("the trivial element has no maximal root")
    reps = sorted(_shortest_set(w), key=lambda u: [_letter_key(x) for x in u])
    ell = len(reps[0])
    for q in range(ell, 1, -1):
        # literal powers among the shortest representatives
        if ell % q == 0:
            m = ell // q
            for u in reps:
                if u[:m] * q == u:
                    return RootDecomposition(CyclicWord.of(u[:m]), q, divisor_count(q))
        lo, hi = max(1, ell // q - 2), -(-ell // q) + 2
        cands = set()
        for u in reps:
            uu = u + u
            for m in range(lo, hi + 1):
                for s in range(len(u)):
                    cands.add(cyclic_reduce(uu[s:s + m]))
        for m in range(lo, min(hi, 3) + 1):
            cands.update(cyclic_reduce(x) for x in _all_reduced(m))
        for delta in sorted(cands, key=lambda u: (len(u), [_letter_key(x) for x in u])):
            if delta and are_conjugate(power(delta, q), w):
                return RootDecomposition(dehn_reduce(delta), q, divisor_count(q))
    return RootDecomposition(CyclicWord(reps[0]), 1, 1)
