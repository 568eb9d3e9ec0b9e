"""Tiled surfaces: finite labeled graphs with octagons reading [a,b][c,d].

A surface has vertices 0..nv-1, for each letter f in 1..4 a partial
injection ``next[f]`` (the f-edges u -> next[f][u]) and a set of octagons.
An octagon is stored by its base vertex: the vertex where the closed path
reading a b A B c d C D starts.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

from . import words as W
from .words import RELATOR, arr_slot, dep_slot

LETTERS = (1, 2, 3, 4)
_OUT_SLOT = {f: dep_slot(f) for f in LETTERS}
_IN_SLOT = {f: arr_slot(f) for f in LETTERS}
_SLOT_INFO = {s: (f, True) for f, s in _OUT_SLOT.items()}
_SLOT_INFO.update({s: (f, False) for f, s in _IN_SLOT.items()})


class InvalidSurface(ValueError):
    pass


class TiledSurface:
    def __init__(self, nv: int, edges=None, octagons=()):
        self.nv = int(nv)
        self.edge_list = {f: [] for f in LETTERS}
        self.next = {f: {} for f in LETTERS}
        self.prev = {f: {} for f in LETTERS}
        self.problems = []
        for f, es in (edges or {}).items():
            f = _letter_index(f)
            pairs = es.items() if isinstance(es, dict) else es
            for u, v in pairs:
                u, v = int(u), int(v)
                self.edge_list[f].append((u, v))
                if u in self.next[f]:
                    self.problems.append(("duplicate outgoing " + W.NAMES[f - 1], (u,)))
                if v in self.prev[f]:
                    self.problems.append(("duplicate incoming " + W.NAMES[f - 1], (v,)))
                self.next[f][u] = v
                self.prev[f][v] = u
        self.octagons = tuple(sorted(set(int(o) for o in octagons)))

    # ------------------------------------------------------------ counts
    @property
    def ne_f(self) -> dict:
        return {f: len(self.next[f]) for f in LETTERS}

    @property
    def ne(self) -> int:
        return sum(self.ne_f.values())

    @property
    def nf(self) -> int:
        return len(self.octagons)

    @property
    def d(self) -> int:
        return 2 * self.ne - 8 * self.nf

    @property
    def chi(self) -> int:
        return self.nv - self.ne + self.nf

    def stats(self) -> dict:
        return {"vertices": self.nv, "edges": self.ne,
                "edges_by_letter": {W.NAMES[f - 1]: c for f, c in self.ne_f.items()},
                "octagons": self.nf, "d": self.d, "chi": self.chi,
                "components": len(self.components())}

    def step(self, v, x):
        """Endpoint of the edge read as letter x from v, or None."""
        return self.next[x].get(v) if x > 0 else self.prev[-x].get(v)

    def walk(self, v, word):
        path = [v]
        for x in word:
            v = self.step(v, x)
            if v is None:
                return None
            path.append(v)
        return path

    def octagon_path(self, base):
        """Vertices along the relator path from base (9 entries), or None."""
        return self.walk(base, RELATOR)

    def components(self) -> list:
        seen = [False] * self.nv
        comps = []
        for s in range(self.nv):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for f in LETTERS:
                    for v in (self.next[f].get(u), self.prev[f].get(u)):
                        if v is not None and not seen[v]:
                            seen[v] = True
                            comp.append(v)
                            stack.append(v)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # ---------------------------------------------------------- validity
    def violations(self) -> list:
        """All violated axioms as (message, witness cells)."""
        out = list(self.problems)
        for f in LETTERS:
            for u, v in self.edge_list[f]:
                if not (0 <= u < self.nv and 0 <= v < self.nv):
                    out.append(("edge endpoint out of range", (u, v)))
        if out:
            return out
        for o in self.octagons:
            if not 0 <= o < self.nv:
                out.append(("octagon base out of range", (o,)))
                continue
            p = self.octagon_path(o)
            if p is None:
                out.append(("octagon path missing edges", (o,)))
            elif p[-1] != o:
                out.append(("octagon path not closed", (o,)))
        for v in range(self.nv):
            for k in range(8):
                rot = RELATOR[k:] + RELATOR[:k]
                p = self.walk(v, rot)
                if p is not None and p[-1] != v:
                    out.append(("relator path not closed", tuple(p)))
                    return out
        return out

    def validate(self):
        """Raise InvalidSurface naming the first violated axiom."""
        v = self.violations()
        if v:
            msg, cells = v[0]
            raise InvalidSurface(f"{msg}: {cells}")
        return True

    def is_valid(self) -> bool:
        return not self.violations()

    # ---------------------------------------------------------- boundary
    def covered_sides(self) -> set:
        """Edge sides bordering an octagon, as (f, tail, 'L'|'R')."""
        cov = set()
        for o in self.octagons:
            p = self.octagon_path(o)
            for i, x in enumerate(RELATOR):
                if x > 0:
                    cov.add((x, p[i], "L"))
                else:
                    cov.add((-x, p[i + 1], "R"))
        return cov

    def _arrival(self, side):
        f, u, s = side
        if s == "L":
            return self.next[f][u], _IN_SLOT[f]
        return u, _OUT_SLOT[f]

    def _depart(self, v, slot):
        """Scan slots after `slot` at v; return (gap, next side)."""
        for g in range(8):
            t = (slot + 1 + g) % 8
            f, out = _SLOT_INFO[t]
            if out and v in self.next[f]:
                return g, (f, v, "L")
            if not out and v in self.prev[f]:
                return g, (f, self.prev[f][v], "R")
        raise AssertionError("vertex without edges on a boundary walk")

    def boundary_cycles(self) -> list:
        """Boundary cycles of the thickened surface; isolated vertices give empty cycles."""
        cov = self.covered_sides()
        exposed = []
        for f in LETTERS:
            for u in sorted(self.next[f]):
                for s in ("L", "R"):
                    if (f, u, s) not in cov:
                        exposed.append((f, u, s))
        succ, gaps = {}, {}
        for side in exposed:
            v, slot = self._arrival(side)
            g, nxt = self._depart(v, slot)
            assert nxt not in cov, "boundary walk entered an octagon"
            succ[side], gaps[side] = nxt, g
        seen = set()
        cycles = []
        for side in exposed:
            if side in seen:
                continue
            cyc = []
            s = side
            while s not in seen:
                seen.add(s)
                cyc.append(s)
                s = succ[s]
            cycles.append(BoundaryCycle(tuple(cyc), tuple(gaps[x] for x in cyc)))
        for v in range(self.nv):
            if all(v not in self.next[f] and v not in self.prev[f] for f in LETTERS):
                cycles.append(BoundaryCycle((), (), vertex=v))
        return cycles

    def classify_boundary(self) -> list:
        return [c.classify() for c in self.boundary_cycles()]

    def boundary_flags(self) -> dict:
        flags = {"has_long_block": False, "has_long_chain": False,
                 "has_half_block": False, "has_half_chain": False}
        for c in self.classify_boundary():
            for k in flags:
                flags[k] |= c[k]
        return flags

    def is_boundary_reduced(self) -> bool:
        fl = self.boundary_flags()
        return not (fl["has_long_block"] or fl["has_long_chain"])

    def is_strongly_boundary_reduced(self) -> bool:
        fl = self.boundary_flags()
        return not any(fl.values())

    def hanging_count(self) -> int:
        return sum(8 - sum(1 for f in LETTERS for m in (self.next[f], self.prev[f]) if v in m)
                   for v in range(self.nv))

    def max_defect(self) -> int:
        """max over nonempty disjoint piece collections of sum(Defect - 8 chi)."""
        cycles = self.boundary_cycles()
        if not cycles:
            raise ValueError("max_defect needs a nonempty boundary")
        bests = [_circle_best(c.circle()) for c in cycles]
        nonneg = [b for b in bests if b >= 0]
        return sum(nonneg) if nonneg else max(bests)

    # -------------------------------------------------------------- I/O
    def to_json(self) -> dict:
        octs = []
        for o in self.octagons:
            p = self.octagon_path(o)
            octs.append([[p[i], W.NAMES[abs(x) - 1], 1 if x > 0 else -1] for i, x in enumerate(RELATOR)])
        return {"genus": 2, "vertices": self.nv,
                "edges": {W.NAMES[f - 1]: sorted([u, v] for u, v in self.next[f].items()) for f in LETTERS},
                "octagons": octs}

    @classmethod
    def from_json(cls, data) -> "TiledSurface":
        if isinstance(data, str):
            data = json.loads(data)
        if data.get("genus", 2) != 2:
            raise InvalidSurface("only genus 2 is supported")
        bases = []
        for oc in data.get("octagons", []):
            if len(oc) != 8:
                raise InvalidSurface("an octagon lists 8 entries")
            letters = tuple(_letter_index(e[1]) * (1 if int(e[2]) > 0 else -1) for e in oc)
            k = next((i for i in range(8) if letters[i:] + letters[:i] == RELATOR), None)
            if k is None:
                raise InvalidSurface(f"octagon does not read the relator: {oc}")
            bases.append(int(oc[k][0]))
        Y = cls(data["vertices"], data.get("edges", {}), bases)
        # listed octagon vertices must match the walk
        for oc in data.get("octagons", []):
            letters = [_letter_index(e[1]) * (1 if int(e[2]) > 0 else -1) for e in oc]
            verts = [int(e[0]) for e in oc]
            for i in range(8):
                nxt = Y.step(verts[i], letters[i])
                if nxt is not None and nxt != verts[(i + 1) % 8]:
                    raise InvalidSurface(f"octagon entries disagree with the edges at {verts[i]}")
        return Y

    def to_dot(self) -> str:
        colors = {1: "red", 2: "blue", 3: "darkgreen", 4: "orange"}
        lines = ["digraph tiled {"]
        for v in range(self.nv):
            lines.append(f"  {v};")
        for f in LETTERS:
            for u, v in sorted(self.next[f].items()):
                lines.append(f'  {u} -> {v} [label="{W.NAMES[f - 1]}", color={colors[f]}];')
        for o in self.octagons:
            lines.append(f"  // octagon {' '.join(map(str, self.octagon_path(o)))}")
        lines.append("}")
        return "\n".join(lines)

    def __repr__(self):
        return (f"TiledSurface(v={self.nv}, e={self.ne}, f={self.nf}, "
                f"edges={ {W.NAMES[f-1]: dict(self.next[f]) for f in LETTERS if self.next[f]} }, "
                f"octagons={self.octagons})")


def _letter_index(f) -> int:
    if isinstance(f, str):
        return W.NAMES.index(f.lower()) + 1
    return int(f)


@dataclass
class BoundaryCycle:
    sides: tuple
    gaps: tuple
    vertex: int | None = None  # set for an isolated vertex

    @property
    def letters(self) -> tuple:
        return tuple(f if s == "L" else -f for f, _, s in self.sides)

    def __len__(self):
        return len(self.sides)

    def circle(self) -> list:
        """Alternating exposed sides (+1) and hanging half-edges (-3)."""
        if not self.sides:
            return [-3] * 8
        out = []
        for g in self.gaps:
            out.append(1)
            out.extend([-3] * g)
        return out

    def classify(self) -> dict:
        info = {"length": len(self), "letters": W.to_str(self.letters), "gaps": list(self.gaps),
                "blocks": [], "chains": [], "has_long_block": False, "has_long_chain": False,
                "has_half_block": False, "has_half_chain": False}
        if not self.sides:
            return info
        n = len(self)
        letters = self.letters
        assert list(self.gaps) == W.cyclic_gaps(letters)
        blocks = W.cyclic_blocks(letters, list(self.gaps))
        if blocks is None:
            # the cycle runs once around a missing octagon
            info["blocks"] = [(0, n)]
            info["has_long_block"] = True
            info["full_cycle"] = True
            return info
        W.check_parity(blocks, list(self.gaps), n)
        info["blocks"] = blocks
        info["has_long_block"] = any(L >= 5 for _, L in blocks)
        info["has_half_block"] = any(L == 4 for _, L in blocks)
        lc = W.long_chains(blocks, list(self.gaps), n)
        info["chains"] = lc
        info["has_long_chain"] = bool(lc)
        info["has_half_chain"] = W.is_half_chain(blocks, list(self.gaps), n)
        return info


def _line_best(seq) -> float:
    """Best sum of (segment sum - 8) over nonempty collections of disjoint segments."""
    NEG = float("-inf")
    closed = NEG  # best collection inside the prefix read so far
    open_ = NEG   # best collection whose last segment ends at the current element
    for x in seq:
        open_ = max(open_ + x, max(closed, 0) - 8 + x)
        closed = max(closed, open_)
    return closed


def _circle_best(circ) -> int:
    total = sum(circ)
    best = total  # the whole circle, with chi = 0
    L = len(circ)
    for i in range(L):
        line = circ[i + 1:] + circ[:i]
        if line:
            best = max(best, _line_best(line))
    return int(best)


# ------------------------------------------------------------- morphisms

def morphisms(Y: TiledSurface, Z: TiledSurface, injective: bool = False) -> list:
    """All label-preserving maps Y -> Z as vertex tuples."""
    comps = Y.components()
    zoct = set(Z.octagons)
    yoct = set(Y.octagons)
    per_comp = []
    for comp in comps:
        maps = []
        root = comp[0]
        for z in range(Z.nv):
            img = {root: z}
            stack = [root]
            ok = True
            while stack and ok:
                u = stack.pop()
                for f in LETTERS:
                    for x in (f, -f):
                        v = Y.step(u, x)
                        if v is None:
                            continue
                        w = Z.step(img[u], x)
                        if w is None or img.get(v, w) != w:
                            ok = False
                            break
                        if v not in img:
                            img[v] = w
                            stack.append(v)
                    if not ok:
                        break
            if ok and all(img[o] in zoct for o in comp if o in yoct):
                if not injective or len(set(img.values())) == len(img):
                    maps.append(img)
        per_comp.append(maps)
    out = []

    def rec(i, cur, used):
        if i == len(per_comp):
            out.append(tuple(cur[v] for v in range(Y.nv)))
            return
        for img in per_comp[i]:
            if injective and not used.isdisjoint(img.values()):
                continue
            nxt = dict(cur)
            nxt.update(img)
            rec(i + 1, nxt, used | set(img.values()) if injective else used)

    rec(0, {}, frozenset())
    return out


def embeddings(Y: TiledSurface, Z: TiledSurface) -> list:
    return morphisms(Y, Z, injective=True)


# ------------------------------------------------------------- quotients

def fold_closure(Y: TiledSurface, labels) -> tuple | None:
    """Smallest fold-closed coarsening of a vertex partition, normalised."""
    parent = list(range(Y.nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    first = {}
    for v, lab in enumerate(labels):
        if lab in first:
            parent[find(v)] = find(first[lab])
        else:
            first[lab] = v
    changed = True
    while changed:
        changed = False
        for f in LETTERS:
            for m in (Y.next[f], Y.prev[f]):
                seen = {}
                for u, v in m.items():
                    r = find(u)
                    if r in seen:
                        a, b = find(seen[r]), find(v)
                        if a != b:
                            parent[a] = b
                            changed = True
                    else:
                        seen[r] = v
    return normalize_labels([find(v) for v in range(Y.nv)])


def normalize_labels(labels) -> tuple:
    ids = {}
    return tuple(ids.setdefault(x, len(ids)) for x in labels)


def quotient(Y: TiledSurface, labels) -> TiledSurface:
    """Image of Y under the vertex identification `labels` (assumed fold-closed)."""
    labels = normalize_labels(labels)
    nv = max(labels) + 1 if labels else 0
    edges = {f: {labels[u]: labels[v] for u, v in Y.next[f].items()} for f in LETTERS}
    octs = {labels[o] for o in Y.octagons}
    return TiledSurface(nv, edges, octs)


def quotients(Y: TiledSurface, distinct=(), limit: int | None = None) -> list:
    """All valid quotients of Y as (quotient surface, vertex map).

    ``distinct`` lists vertices that must keep distinct images.  The search
    walks fold-closed partitions by merging pairs of classes; partitions
    failing validity are traversed but not reported.
    """
    distinct = sorted(set(distinct))
    start = fold_closure(Y, range(Y.nv))

    def allowed(lab):
        return len({lab[v] for v in distinct}) == len(distinct)

    if not allowed(start):
        return []
    seen = {start}
    queue = deque([start])
    out = []
    while queue:
        lab = queue.popleft()
        Q = quotient(Y, lab)
        if Q.is_valid():
            out.append((Q, lab))
            if limit is not None and len(out) > limit:
                raise RuntimeError("quotient enumeration exceeded its limit")
        k = max(lab) + 1 if lab else 0
        for i in range(k):
            for j in range(i + 1, k):
                merged = [i if x == j else x for x in lab]
                new = fold_closure(Y, merged)
                if new not in seen and allowed(new):
                    seen.add(new)
                    queue.append(new)
    return out


# ------------------------------------------------------- canonical forms

def _component_code(Y, start, marks):
    order = {start: 0}
    queue = deque([start])
    code = []
    while queue:
        u = queue.popleft()
        row = []
        for f in LETTERS:
            for x in (f, -f):
                v = Y.step(u, x)
                if v is None:
                    row.append(-1)
                    continue
                if v not in order:
                    order[v] = len(order)
                    queue.append(v)
                row.append(order[v])
        row.append(1 if u in Y._octset else 0)
        row.append(marks[u] if marks is not None else 0)
        code.append(tuple(row))
    return tuple(code), order


def canonical_form(Y: TiledSurface, marks=None):
    """(encoding, labeling) with labeling[v] = canonical index of v."""
    Y._octset = set(Y.octagons)
    comps = []
    for comp in Y.components():
        best = None
        for s in comp:
            code, order = _component_code(Y, s, marks)
            if best is None or code < best[0]:
                best = (code, order)
        comps.append(best)
    comps.sort(key=lambda c: c[0])
    labeling = [0] * Y.nv
    offset = 0
    for code, order in comps:
        for v, i in order.items():
            labeling[v] = offset + i
        offset += len(order)
    return tuple(c for c, _ in comps), tuple(labeling)


def is_isomorphic(Y1: TiledSurface, Y2: TiledSurface) -> bool:
    return canonical_form(Y1)[0] == canonical_form(Y2)[0]


def relabel(Y: TiledSurface, perm) -> TiledSurface:
    """Copy of Y with vertex v renamed perm[v]."""
    edges = {f: {perm[u]: perm[v] for u, v in Y.next[f].items()} for f in LETTERS}
    return TiledSurface(Y.nv, edges, [perm[o] for o in Y.octagons])


def disjoint_union(*Ys) -> TiledSurface:
    edges = {f: {} for f in LETTERS}
    octs = []
    off = 0
    for Y in Ys:
        for f in LETTERS:
            for u, v in Y.next[f].items():
                edges[f][u + off] = v + off
        octs.extend(o + off for o in Y.octagons)
        off += Y.nv
    return TiledSurface(off, edges, octs)


# ------------------------------------------------------------- fixtures

def point() -> TiledSurface:
    return TiledSurface(1)


def single_edge(f=1) -> TiledSurface:
    return TiledSurface(2, {f: [(0, 1)]})


def cycle_of_word(w) -> TiledSurface:
    """Bare cycle reading the cyclically reduced word w from vertex 0."""
    w = W.as_letters(w)
    n = len(w)
    edges = {f: [] for f in LETTERS}
    for i, x in enumerate(w):
        u, v = i, (i + 1) % n
        if x > 0:
            edges[x].append((u, v))
        else:
            edges[-x].append((v, u))
    return TiledSurface(n, edges)


def octagon_disc() -> TiledSurface:
    Y = cycle_of_word(RELATOR)
    return TiledSurface(8, {f: dict(Y.next[f]) for f in LETTERS}, (0,))


def bare_relator_cycle() -> TiledSurface:
    return cycle_of_word(RELATOR)


def full_surface() -> TiledSurface:
    """One vertex, four loops and the octagon: the degree-1 cover."""
    return TiledSurface(1, {f: [(0, 0)] for f in LETTERS}, (0,))


def core_ab() -> TiledSurface:
    """A one-holed torus with 4 vertices, 6 edges and 1 octagon.

    a and b are loops at vertex 0; the octagon path is
    0 a 0 b 0 A 0 B 0 c 1 d 2 C 3 D 0.
    """
    edges = {1: [(0, 0)], 2: [(0, 0)], 3: [(0, 1), (3, 2)], 4: [(1, 2), (0, 3)]}
    return TiledSurface(4, edges, (0,))
