"""Core surfaces of cyclic subgroups, plus loading and checking supplied cores."""
from __future__ import annotations

import json

from . import words as W
from .tiled import LETTERS, TiledSurface, cycle_of_word, normalize_labels
from .words import REL_POS, RELATOR


class CoreError(ValueError):
    pass


def fold(nv: int, edges, octagons):
    """Stallings-fold a multigraph given as (f, u, v) triples.

    Returns (surface, labels) with labels[v] the image of old vertex v.
    """
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        for f in LETTERS:
            out, inc = {}, {}
            for g, u, v in edges:
                if g != f:
                    continue
                ru, rv = find(u), find(v)
                for table, key, val in ((out, ru, rv), (inc, rv, ru)):
                    if key in table and find(table[key]) != val:
                        parent[find(table[key])] = val
                        changed = True
                    table[key] = find(val)
    labels = normalize_labels([find(v) for v in range(nv)])
    new_edges = {f: {} for f in LETTERS}
    for f, u, v in edges:
        new_edges[f][labels[u]] = labels[v]
    octs = {labels[o] for o in octagons}
    return TiledSurface(max(labels) + 1 if labels else 0, new_edges, octs), labels


def _edge_triples(Y):
    return [(f, u, v) for f in LETTERS for u, v in Y.next[f].items()]


def _side_ends(Y, side):
    """(start, end) vertices of a boundary side in traversal direction."""
    f, u, s = side
    v = Y.next[f][u]
    return (u, v) if s == "L" else (v, u)


def annex(Y: TiledSurface, targets):
    """Glue a fresh octagon along each target block and fold.

    ``targets`` lists (cycle, start, length) where cycle is a BoundaryCycle
    of Y and the block is cycle positions start..start+length-1.  Returns
    (new surface, labels) where labels maps the old vertices.
    """
    nv = Y.nv
    edges = _edge_triples(Y)
    octs = list(Y.octagons)
    for cyc, s, L in targets:
        n = len(cyc)
        sides = [cyc.sides[(s + j) % n] for j in range(min(L, n))]
        letters = [f if sd == "L" else -f for f, _, sd in sides]
        p = REL_POS[letters[0]]
        path = [_side_ends(Y, sides[0])[0]]
        for sd in sides:
            path.append(_side_ends(Y, sd)[1])
        if L >= 8:
            # the cycle closes up around a missing octagon
            path = path[:8]
        else:
            cur = path[-1]
            comp = [RELATOR[(p + j) % 8] for j in range(L, 8)]
            for i, x in enumerate(comp):
                if i == len(comp) - 1:
                    nxt = path[0]
                else:
                    nxt = nv
                    nv += 1
                edges.append((x, cur, nxt) if x > 0 else (-x, nxt, cur))
                if i < len(comp) - 1:
                    path.append(nxt)
                cur = nxt
        octs.append(path[(-p) % 8])
    return fold(nv, edges, octs)


def _flagged_targets(Y, one_at_a_time=False, growing=False):
    """Blocks to annex along: half-blocks, half-chains, and (when growing) long structures."""
    targets = []
    for cyc in Y.boundary_cycles():
        info = cyc.classify()
        if not cyc.sides:
            continue
        n = len(cyc)
        if info.get("full_cycle"):
            targets.append([(cyc, 0, 8)])
            continue
        blocks = info["blocks"]
        for s, L in blocks:
            if L >= 4 and (growing or L == 4):
                targets.append([(cyc, s, L)])
        if growing:
            for run in info["chains"]:
                targets.append([(cyc,) + blocks[j] for j in run])
        if info["has_half_chain"]:
            targets.append([(cyc, s, L) for s, L in blocks])
    if one_at_a_time:
        return targets[:1]
    flat = {}
    for group in targets:
        for cyc, s, L in group:
            flat[(id(cyc), s)] = (cyc, s, L)
    return [list(flat.values())] if flat else []


def _shortest_rep(w) -> tuple:
    reps = sorted(W.shortest_representatives(w), key=lambda c: [W._letter_key(x) for x in c.letters])
    return reps[0].letters


def core_cyclic(w):
    """Core surface of <w> with basepoint vertex 0 on the initial cycle."""
    letters = W.as_letters(w)
    if W.is_trivial(letters):
        raise CoreError("the trivial element has no core surface")
    rep = _shortest_rep(letters)
    ell = len(rep)
    Y = cycle_of_word(rep)
    base = 0
    guard = 6 * Y.d + len(rep) + 1
    for _ in range(guard):
        fl = Y.boundary_flags()
        assert not fl["has_long_block"] and not fl["has_long_chain"], \
            "a shortest cycle produced a long block or long chain"
        if Y.is_strongly_boundary_reduced():
            break
        groups = _flagged_targets(Y, one_at_a_time=True)
        Y, labels = annex(Y, groups[0])
        base = labels[base]
        lens = sorted(len(c) for c in Y.boundary_cycles())
        assert lens == [ell, ell], f"annexation changed boundary lengths to {lens}"
        Y.validate()
    else:
        raise AssertionError("strong boundary reduction did not terminate within its guard")
    return Y, base


def load_core(path) -> TiledSurface:
    with open(path) as fh:
        return TiledSurface.from_json(json.load(fh))


def verify_core(Y: TiledSurface) -> list:
    """Names of failed checks (empty list means ok)."""
    failed = []
    if not Y.is_valid():
        failed.append("valid: " + Y.violations()[0][0])
        return failed
    if not Y.is_connected():
        failed.append("connected")
    if Y.nv == 0:
        failed.append("nonempty")
    elif not Y.is_strongly_boundary_reduced():
        failed.append("strongly boundary reduced")
    return failed


def euler_char(Y: TiledSurface) -> int:
    return Y.chi
