"""Resolutions of compact tiled surfaces.

An element of a resolution is a pair (W, ymap) with ymap[y] the image in W
of vertex y of the base surface Y.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field

from .core import _flagged_targets, annex
from .tiled import TiledSurface, canonical_form, embeddings, morphisms, quotients


@dataclass
class Resolution:
    base: TiledSurface
    elements: list  # (W, ymap)
    kind: str
    chi0: int | None = None

    def __len__(self):
        return len(self.elements)

    def manifest(self) -> list:
        out = []
        for W, ymap in self.elements:
            st = W.stats()
            st.update(BR=W.is_boundary_reduced(), SBR=W.is_strongly_boundary_reduced(),
                      map=list(ymap))
            out.append(st)
        return out


def image_resolution(Y: TiledSurface) -> Resolution:
    return Resolution(Y, [(Q, tuple(lab)) for Q, lab in quotients(Y)], "image")


def octagon_budget(Y: TiledSurface, chi0: int) -> int:
    """Bound on octagons added along any branch of the growing process."""
    d = Y.d
    pi0 = len(Y.components())
    steps = d / 2 + (d + 1) * ((2 * pi0 - chi0) + (2 * pi0 - chi0 + 1) * d / 2)
    return math.floor(d / 3 * steps)


def _key(W, ymap):
    marks = [[] for _ in range(W.nv)]
    for y, v in enumerate(ymap):
        marks[v].append(y)
    code, labeling = canonical_form(W, [tuple(m) for m in marks])
    return code


def growing_resolution(Y: TiledSurface, chi0: int = 0, max_states: int = 20000) -> Resolution:
    """Branching growing process started from every quotient of Y."""
    budget = octagon_budget(Y, chi0)
    found = {}
    seen = set()
    queue = deque()
    for W0, lab in quotients(Y):
        queue.append((W0, tuple(lab), W0.nf))
    while queue:
        W, ymap, nf0 = queue.popleft()
        key = _key(W, ymap)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > max_states:
            raise RuntimeError("growing process explored too many states")
        if W.nf - nf0 > budget:
            raise AssertionError("octagon budget exceeded in the growing process")
        if W.is_strongly_boundary_reduced() or (W.is_boundary_reduced() and W.chi < chi0):
            found[key] = (W, ymap)
            continue
        groups = _flagged_targets(W, growing=True)
        A, lab = annex(W, groups[0])
        keep = sorted({lab[v] for v in range(W.nv)})
        if len(keep) != W.nv:
            continue  # forced folding merged vertices of W: no ambient surface realises it
        for Q, qlab in quotients(A, distinct=keep):
            new_map = tuple(qlab[lab[v]] for v in ymap)
            queue.append((Q, new_map, nf0))
    elements = [found[k] for k in sorted(found)]
    return Resolution(Y, elements, "growing", chi0)


def verify_resolution(R: Resolution, covers) -> tuple:
    """(True, None) if every map Y -> X factors exactly once; else (False, witness)."""
    Y = R.base
    for X in covers:
        counts = Counter()
        for W, ymap in R.elements:
            for e in embeddings(W, X):
                counts[tuple(e[v] for v in ymap)] += 1
        homs = morphisms(Y, X)
        for h in homs:
            if counts[h] != 1:
                return False, {"cover": X, "morphism": h, "factorizations": counts[h]}
        extra = set(counts) - set(homs)
        if extra:
            return False, {"cover": X, "morphism": next(iter(extra)), "factorizations": "not a morphism"}
    return True, None
