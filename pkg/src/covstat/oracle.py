"""Brute-force ground truth over Hom(Γ, S_n).

Permutations are tuples p with p[i] the image of i.  In the cover X_φ the
f-edges run i -> g_f[i]; reading a word x1 x2 ... from i applies g_{x1}
first.  Closure of every relator path is the relation
[g_d^-1, g_c^-1][g_b^-1, g_a^-1] = 1 with right-to-left composition.
"""
from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .symrep import zeta_exact
from .words import as_letters

MAX_N = 4
GATED_N = 5


class CapExceeded(ValueError):
    pass


def _check_cap(n, allow_five):
    cap = GATED_N if allow_five else MAX_N
    if n > cap:
        raise CapExceeded(f"exhaustive enumeration is capped at n={cap} (n={n} requested)")


def compose(p, q):
    """p after q."""
    return tuple(p[i] for i in q)


def invert(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycle_type(p) -> tuple:
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            lens.append(L)
    return tuple(sorted(lens, reverse=True))


def centralizer_order(ct) -> int:
    out = 1
    for L in set(ct):
        m = ct.count(L)
        out *= math.factorial(m) * L ** m
    return out


def _cycles(p):
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            out.append(cyc)
    return out


@lru_cache(maxsize=None)
def _centralizer(p) -> tuple:
    """All permutations commuting with p."""
    n = len(p)
    return tuple(h for h in itertools.permutations(range(n))
                 if compose(h, p) == compose(p, h))


def conjugator(y, t):
    """Some h with h^-1 y h = t, or None."""
    if cycle_type(y) != cycle_type(t):
        return None
    cy = sorted(_cycles(y), key=len)
    ct = sorted(_cycles(t), key=len)
    h = [0] * len(y)
    # h(t^k i) = y^k j
    for a, b in zip(ct, cy):
        for k in range(len(a)):
            h[a[k]] = b[k]
    return tuple(h)


def relation_holds(g) -> bool:
    ga, gb, gc, gd = g
    ia, ib, ic, id_ = map(invert, g)
    x = compose(ib, compose(ia, compose(gb, ga)))
    z = compose(id_, compose(ic, compose(gd, gc)))
    return compose(z, x) == tuple(range(len(ga)))


def enum_homs(n: int, allow_five: bool = False):
    """Stream all (g_a, g_b, g_c, g_d) in Hom(Γ, S_n)."""
    _check_cap(n, allow_five)
    perms = list(itertools.permutations(range(n)))
    inv = {p: invert(p) for p in perms}
    for ga in perms:
        for gb in perms:
            x = compose(inv[gb], compose(inv[ga], compose(gb, ga)))
            xi = inv[x]
            for gc in perms:
                y = inv[gc]
                t = compose(xi, y)
                h0 = conjugator(y, t)
                if h0 is None:
                    continue
                for z in _centralizer(y):
                    yield ga, gb, gc, compose(z, h0)


def count_homs(n: int, allow_five: bool = False) -> int:
    """|Hom(Γ, S_n)| by summing centralizer sizes (no quadruples materialised)."""
    _check_cap(n, allow_five)
    perms = list(itertools.permutations(range(n)))
    inv = {p: invert(p) for p in perms}
    ct = {p: cycle_type(p) for p in perms}
    total = 0
    for ga in perms:
        for gb in perms:
            xi = inv[compose(inv[gb], compose(inv[ga], compose(gb, ga)))]
            for gc in perms:
                y = inv[gc]
                t = compose(xi, y)
                if ct[y] == ct[t]:
                    total += centralizer_order(ct[y])
    return total


def hurwitz_count(n: int) -> Fraction:
    return math.factorial(n) ** 3 * zeta_exact(n, 2)


def word_perm(g, w):
    """Permutation sending i to the endpoint of the path reading w from i."""
    n = len(g[0])
    cur = tuple(range(n))
    invs = {}
    for x in w:
        if x > 0:
            p = g[x - 1]
        else:
            p = invs.setdefault(x, invert(g[-x - 1]))
        cur = compose(p, cur)
    return cur


def fix_count(g, w) -> int:
    p = word_perm(g, w)
    return sum(1 for i, x in enumerate(p) if i == x)


def cover_of(g):
    """The boundaryless tiled surface X_φ."""
    from .tiled import TiledSurface
    n = len(g[0])
    if not relation_holds(g):
        raise ValueError("permutations violate the surface relation")
    edges = {f: {i: g[f - 1][i] for i in range(n)} for f in (1, 2, 3, 4)}
    return TiledSurface(n, edges, tuple(range(n)))


def brute_e_fix(w, n: int, allow_five: bool = False) -> Fraction:
    w = as_letters(w)
    total = count = 0
    for g in enum_homs(n, allow_five):
        total += fix_count(g, w)
        count += 1
    return Fraction(total, count)


class _Embedder:
    """Counts morphisms/embeddings of a fixed compact Y into covers X_φ.

    Y is walked along a spanning forest; for each root image the images of
    all vertices follow, and closing edges and octagon bases are checked.
    """

    def __init__(self, Y):
        self.Y = Y
        self.plan = []  # per component: root, [(vertex, parent, letter)], closing edges
        seen = set()
        for root in range(Y.nv):
            if root in seen:
                continue
            seen.add(root)
            order = [(root, None, 0)]
            stack = [root]
            closing = []
            while stack:
                u = stack.pop()
                for f in (1, 2, 3, 4):
                    for x, v in ((f, Y.next[f].get(u)), (-f, Y.prev[f].get(u))):
                        if v is None:
                            continue
                        if v not in seen:
                            seen.add(v)
                            order.append((v, u, x))
                            stack.append(v)
                        elif x > 0:
                            closing.append((u, f, v))
            self.plan.append((root, order, closing))

    def images(self, g):
        """Per component: array [root image, vertex] of vertex images, masked by consistency."""
        n = len(g[0])
        perms = {f: np.array(g[f - 1]) for f in (1, 2, 3, 4)}
        invs = {f: np.argsort(perms[f]) for f in (1, 2, 3, 4)}
        out = []
        for root, order, closing in self.plan:
            img = {root: np.arange(n)}
            for v, u, x in order[1:]:
                img[v] = perms[x][img[u]] if x > 0 else invs[-x][img[u]]
            ok = np.ones(n, dtype=bool)
            for u, f, v in closing:
                ok &= perms[f][img[u]] == img[v]
            out.append((img, ok))
        return out

    def count(self, g, injective: bool) -> int:
        comps = self.images(g)
        if not injective:
            return math.prod(int(ok.sum()) for _, ok in comps)
        # enumerate root choices across components, checking global injectivity
        choices = []
        for img, ok in comps:
            roots = np.nonzero(ok)[0]
            verts = sorted(img)
            M = np.stack([img[v][roots] for v in verts], axis=1) if len(roots) else np.zeros((0, len(verts)), int)
            good = [tuple(row) for row in M if len(set(row)) == len(row)]
            choices.append(good)
        total = 0

        def rec(i, used):
            nonlocal total
            if i == len(choices):
                total += 1
                return
            for row in choices[i]:
                if used.isdisjoint(row):
                    rec(i + 1, used | set(row))

        rec(0, frozenset())
        return total


def brute_e_emb(Y, n: int, allow_five: bool = False) -> Fraction:
    emb = _Embedder(Y)
    total = count = 0
    for g in enum_homs(n, allow_five):
        total += emb.count(g, injective=True)
        count += 1
    return Fraction(total, count)


def brute_e_hom(Y, n: int, allow_five: bool = False) -> Fraction:
    emb = _Embedder(Y)
    total = count = 0
    for g in enum_homs(n, allow_five):
        total += emb.count(g, injective=False)
        count += 1
    return Fraction(total, count)


# ------------------------------------------------------------------ sampling

def _random_perm(n, rng):
    p = list(range(n))
    rng.shuffle(p)
    return tuple(p)


def _random_conjugator(y, t, rng):
    """Uniform h with h^-1 y h = t (assumes equal cycle types)."""
    by_len_y, by_len_t = {}, {}
    for c in _cycles(y):
        by_len_y.setdefault(len(c), []).append(c)
    for c in _cycles(t):
        by_len_t.setdefault(len(c), []).append(c)
    h = [0] * len(y)
    for L, cts in by_len_t.items():
        cys = list(by_len_y[L])
        rng.shuffle(cys)
        for a, b in zip(cts, cys):
            r = rng.randrange(L)
            for k in range(L):
                h[a[k]] = b[(k + r) % L]
    return tuple(h)


def sample_homs(n: int, samples: int, seed: int = 0):
    """Yield (weight, hom) with weight |solution set| (0 when the triple admits no g_d)."""
    rng = random.Random(seed)
    for _ in range(samples):
        ga, gb, gc = (_random_perm(n, rng) for _ in range(3))
        x = compose(invert(gb), compose(invert(ga), compose(gb, ga)))
        y = invert(gc)
        t = compose(invert(x), y)
        cy = cycle_type(y)
        if cy != cycle_type(t):
            yield 0, None
            continue
        yield centralizer_order(cy), (ga, gb, gc, _random_conjugator(y, t, rng))


def sample_estimate(w, n: int, samples: int, seed: int = 0):
    """Unbiased estimate of E_n[fix_w] and its standard error."""
    w = as_letters(w)
    vals = np.zeros(samples)
    for i, (wt, g) in enumerate(sample_homs(n, samples, seed)):
        if wt:
            vals[i] = wt * fix_count(g, w)
    z = float(zeta_exact(n, 2))
    est = vals.mean() / z
    err = vals.std(ddof=1) / math.sqrt(samples) / z
    return est, err
