"""Expected embedding and fixed-point counts through representation sums.

The expected number of embeddings of a compact tiled surface Y into a
random n-sheeted cover is

    E_emb(Y, n) = (n)_v (n)_f / prod_f (n)_{e_f} * Xi_n(Y) / zeta_n(2),

with Xi_n a sum over partitions nu of n - v and lam of n - f of dimension
ratios times Upsilon, a contraction of eight skew-module matrix
coefficients.  The permutations entering those coefficients come from an
auxiliary frame: a numbering of octagons, exposed edge sides and hanging
half-edges by the window [0, v).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import symrep as S
from .asympt import LaurentSeriesQ, invert, poly_in_n
from .core import core_cyclic, verify_core
from .resolve import image_resolution
from .tiled import LETTERS, TiledSurface, _SLOT_INFO
from . import words as W

# Junction permutations left * right^-1.  A key (kind, f, sign) names
# sigma ("s") or tau ("t") for letter f on the out ("-") or in ("+") side.
JUNCTIONS = (
    (("s", 2, "-"), ("s", 1, "+")),
    (("t", 1, "+"), ("s", 2, "+")),
    (("t", 2, "+"), ("t", 1, "-")),
    (("s", 3, "-"), ("t", 2, "-")),
    (("s", 4, "-"), ("s", 3, "+")),
    (("t", 3, "+"), ("s", 4, "+")),
    (("t", 4, "+"), ("t", 3, "-")),
    (("s", 1, "-"), ("t", 4, "-")),
)


class FrameError(AssertionError):
    pass


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


@dataclass
class Frame:
    surface: TiledSurface
    J: tuple          # J[v] = window index of vertex v
    perms: dict       # (kind, f, sign) -> permutation of [0, v)
    g0: dict          # f -> permutation of [0, v) on window indices
    octagon_number: dict
    junctions: tuple  # eight permutations of [0, k)
    labels: dict      # ("side", f, tail, L|R) / ("out", f, v) / ("in", f, v) -> number

    @property
    def nv(self):
        return self.surface.nv

    @property
    def k(self):
        return self.surface.nv - self.surface.nf

    def split(self, f) -> int:
        """Entries below this index are hanging half-edges, the rest exposed sides."""
        return self.surface.nv - self.surface.ne_f[f]

    def shifted(self, n: int) -> dict:
        """The sigma/tau permutations as maps on [0, n) with the window on top."""
        off = n - self.nv
        out = {}
        for key, p in self.perms.items():
            out[key] = tuple(range(off)) + tuple(x + off for x in p)
        return out


def build_frame(Y: TiledSurface, seed=None) -> Frame:
    """Numberings of octagons, exposed sides and hanging half-edges.

    seed=None gives the identity vertex ordering and sorted numberings;
    any other seed shuffles every choice deterministically.
    """
    Y.validate()
    rng = random.Random(seed)
    shuffle = (lambda xs: rng.shuffle(xs)) if seed is not None else (lambda xs: None)
    nv, nf = Y.nv, Y.nf
    order = list(range(nv))
    shuffle(order)
    J = [0] * nv
    for i, v in enumerate(order):
        J[v] = i

    octs = sorted(Y.octagons)
    shuffle(octs)
    onum = {o: nv - nf + i for i, o in enumerate(octs)}
    side_num = {}
    for o in octs:
        p = Y.octagon_path(o)
        for i, x in enumerate(Y_REL):
            if x > 0:
                side_num[(x, p[i], "L")] = onum[o]
            else:
                side_num[(-x, p[i + 1], "R")] = onum[o]

    perms, g0, labels = {}, {}, {}
    for f in LETTERS:
        ef = Y.ne_f[f]
        nxt = Y.next[f]
        prv = Y.prev[f]
        for sd in ("L", "R"):
            exposed = [u for u in sorted(nxt) if (f, u, sd) not in side_num]
            shuffle(exposed)
            for i, u in enumerate(exposed):
                side_num[(f, u, sd)] = nv - ef + i
        lack_out = sorted((v for v in range(nv) if v not in nxt), key=lambda v: J[v])
        lack_in = sorted((v for v in range(nv) if v not in prv), key=lambda v: J[v])
        hang = list(range(nv - ef))
        shuffle(hang)
        hang_out = {u: hang[i] for i, u in enumerate(lack_out)}
        hang_in = {lack_in[i]: hang[i] for i in range(len(lack_out))}
        for v, x in hang_out.items():
            labels[("out", f, v)] = x
        for v, x in hang_in.items():
            labels[("in", f, v)] = x
        gmap = [None] * nv
        for u, v in nxt.items():
            gmap[J[u]] = J[v]
        for i, u in enumerate(lack_out):
            gmap[J[u]] = J[lack_in[i]]
        g0[f] = tuple(gmap)
        for kind, sd in (("s", "L"), ("t", "R")):
            out_p, in_p = [None] * nv, [None] * nv
            for v in range(nv):
                out_p[J[v]] = side_num[(f, v, sd)] if v in nxt else hang_out[v]
                in_p[J[v]] = side_num[(f, prv[v], sd)] if v in prv else hang_in[v]
            perms[(kind, f, "-")] = tuple(out_p)
            perms[(kind, f, "+")] = tuple(in_p)

    _check_frame(Y, J, perms, g0, nv, nf)
    k = nv - nf
    juncs = []
    for left, right in JUNCTIONS:
        pi = _compose(perms[left], _inverse(perms[right]))
        juncs.append(pi[:k])
    for (f, u, sd), x in side_num.items():
        labels[("side", f, u, sd)] = x
    return Frame(Y, tuple(J), perms, g0, onum, tuple(juncs), labels)


Y_REL = W.RELATOR


def _check_frame(Y, J, perms, g0, nv, nf):
    for f in LETTERS:
        ef = Y.ne_f[f]
        topwin = set(range(nv - ef, nv))
        Vout = {J[u] for u in Y.next[f]}
        Vin = {J[v] for v in Y.prev[f]}
        for kind in "st":
            for sign, V in (("-", Vout), ("+", Vin)):
                p = perms[(kind, f, sign)]
                if sorted(p) != list(range(nv)):
                    raise FrameError(f"P1: {kind}{sign} for letter {f} is not a permutation")
                if {p[x] for x in V} != topwin:
                    raise FrameError(f"P1: {kind}{sign} for letter {f} misses the top window")
            if _compose(_inverse(perms[(kind, f, "+")]), perms[(kind, f, "-")]) != g0[f]:
                raise FrameError(f"P2: {kind}+^-1 {kind}- differs from g0 for letter {f}")
        for sign, V in (("-", Vout), ("+", Vin)):
            s, t = perms[("s", f, sign)], perms[("t", f, sign)]
            if any(s[x] != t[x] for x in range(nv) if x not in V):
                raise FrameError(f"P3: sigma and tau differ off the edge set for letter {f}")
    for j, (left, right) in enumerate(JUNCTIONS, 1):
        pi = _compose(perms[left], _inverse(perms[right]))
        if any(pi[x] != x for x in range(nv - nf, nv)):
            raise FrameError(f"P4: junction {j} moves an octagon index")


# ------------------------------------------------------------------ upsilon

_LETTERS_IDX = "abcdefghijklmnop"


def _var(f, role):
    """einsum letter for the tableau variable role in {p, q, s, t} of letter f."""
    return _LETTERS_IDX[(f - 1) * 4 + "pqst".index(role)]


def _tab_var(key):
    kind, f, sign = key
    return _var(f, "p" if sign == "+" else "q"), _var(f, kind)


class _Splits:
    """Each tableau of lam/nu cut after the hanging entries of every letter."""

    def __init__(self, tabs, frame):
        self.r_index, self.s_index = {}, {}
        self.r_list, self.s_list = {}, {}
        for f in LETTERS:
            h = frame.split(f)
            rs = sorted({T[:h] for T in tabs})
            ss = sorted({T[h:] for T in tabs})
            rmap = {r: i for i, r in enumerate(rs)}
            smap = {s: i for i, s in enumerate(ss)}
            self.r_list[f], self.s_list[f] = rs, ss
            self.r_index[f] = np.array([rmap[T[:h]] for T in tabs], dtype=int)
            self.s_index[f] = np.array([smap[T[h:]] for T in tabs], dtype=int)


def _shape_of(boxes, inner):
    rows = list(inner)
    for r, c in boxes:
        while len(rows) <= r:
            rows.append(0)
        rows[r] += 1
    return tuple(x for x in rows if x)


def _to_tensor(M, sp, fy, fx, zero):
    ry, sy = sp.r_index[fy], sp.s_index[fy]
    rx, sx = sp.r_index[fx], sp.s_index[fx]
    shape = (len(sp.r_list[fy]), len(sp.s_list[fy]), len(sp.r_list[fx]), len(sp.s_list[fx]))
    if M.dtype == object:
        T4 = np.empty(shape, dtype=object)
        T4[...] = zero
    else:
        T4 = np.zeros(shape)
    T4[ry[:, None], sy[:, None], rx[None, :], sx[None, :]] = M
    return T4


def _contract(tensors, weights):
    """Full contraction of the eight junction tensors with per-letter weights on r+."""
    subs, ops = [], []
    for (left, right), T4 in zip(JUNCTIONS, tensors):
        ry, sy = _tab_var(left)
        rx, sx = _tab_var(right)
        subs.append(ry + sy + rx + sx)
        ops.append(T4)
    for f in LETTERS:
        subs.append(_var(f, "p"))
        ops.append(weights[f])
    expr = ",".join(subs) + "->"
    if ops[0].dtype == object:
        return _contract_objects(subs, ops)
    return float(np.einsum(expr, *ops, optimize="greedy"))


def _contract_objects(subs, ops):
    """Pairwise contraction for object arrays, smallest intermediate first."""
    items = [(s, o) for s, o in zip(subs, ops)]
    while len(items) > 1:
        best = None
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                si, sj = items[i][0], items[j][0]
                others = "".join(s for t, (s, _) in enumerate(items) if t not in (i, j))
                keep = "".join(c for c in dict.fromkeys(si + sj) if c in others)
                shared = set(si) & set(sj)
                if not shared and len(items) > 2:
                    continue
                size = 1
                for c in keep:
                    size *= _dim_of(c, items)
                if best is None or size < best[0]:
                    best = (size, i, j, keep)
        if best is None:
            i, j = 0, 1
            others = "".join(s for t, (s, _) in enumerate(items) if t not in (i, j))
            keep = "".join(c for c in dict.fromkeys(items[0][0] + items[1][0]) if c in others)
        else:
            _, i, j, keep = best
        (si, A), (sj, B) = items[i], items[j]
        C = _pair(si, A, sj, B, keep)
        items = [it for t, it in enumerate(items) if t not in (i, j)] + [(keep, C)]
    s, A = items[0]
    return A.sum() if s else A[()]


def _dim_of(c, items):
    for s, A in items:
        if c in s:
            return A.shape[s.index(c)]
    return 1


def _pair(si, A, sj, B, keep):
    """Contract A and B over their shared letters not in keep (diagonals handled by transposes)."""
    # bring both operands to (batch, free, summed) order, then matmul per batch
    letters_i, letters_j = list(si), list(sj)
    # reduce repeated letters inside one operand first
    A, letters_i = _diag(A, letters_i)
    B, letters_j = _diag(B, letters_j)
    # letters appearing only in one operand and not kept are summed out right away
    A, letters_i = _sum_out(A, letters_i, set(letters_j) | set(keep))
    B, letters_j = _sum_out(B, letters_j, set(letters_i) | set(keep))
    batch = [c for c in letters_i if c in letters_j and c in keep]
    summed = [c for c in letters_i if c in letters_j and c not in keep]
    free_i = [c for c in letters_i if c not in letters_j]
    free_j = [c for c in letters_j if c not in letters_i]
    dims = {c: A.shape[letters_i.index(c)] for c in letters_i}
    dims.update({c: B.shape[letters_j.index(c)] for c in letters_j})
    At = A.transpose([letters_i.index(c) for c in batch + free_i + summed])
    Bt = B.transpose([letters_j.index(c) for c in batch + summed + free_j])
    nb = _prod(dims[c] for c in batch)
    nfi = _prod(dims[c] for c in free_i)
    nfj = _prod(dims[c] for c in free_j)
    ns = _prod(dims[c] for c in summed)
    A2 = At.reshape(nb, nfi, ns)
    B2 = Bt.reshape(nb, ns, nfj)
    C = np.empty((nb, nfi, nfj), dtype=object)
    for t in range(nb):
        C[t] = _objdot(A2[t], B2[t])
    C = C.reshape([dims[c] for c in batch + free_i + free_j])
    order = batch + free_i + free_j
    return C.transpose([order.index(c) for c in keep]) if keep else C.reshape(())


def _objdot(A, B):
    """Matrix product of object arrays skipping exact zeros."""
    n, m = A.shape
    p = B.shape[1]
    out = np.empty((n, p), dtype=object)
    zero = _zero_like(A, B)
    out[...] = zero
    nzB = [[(j, B[s, j]) for j in range(p) if not _is_zero(B[s, j])] for s in range(m)]
    for i in range(n):
        row = out[i]
        for s in range(m):
            a = A[i, s]
            if _is_zero(a):
                continue
            for j, b in nzB[s]:
                row[j] = row[j] + a * b
    return out


def _is_zero(x):
    if isinstance(x, LaurentSeriesQ):
        return not x.coeffs
    return x == 0


def _zero_like(A, B):
    for arr in (A, B):
        for x in arr.flat:
            if isinstance(x, LaurentSeriesQ):
                return LaurentSeriesQ({}, x.order)
    return Fraction(0)


def _diag(A, letters):
    while True:
        dup = next((c for c in letters if letters.count(c) > 1), None)
        if dup is None:
            return A, letters
        i = letters.index(dup)
        j = letters.index(dup, i + 1)
        A = np.diagonal(A, axis1=i, axis2=j).copy()
        letters = [c for t, c in enumerate(letters) if t not in (i, j)] + [dup]


def _sum_out(A, letters, needed):
    for c in [c for c in letters if c not in needed]:
        ax = letters.index(c)
        A = A.sum(axis=ax)
        if not isinstance(A, np.ndarray):
            A = np.array(A, dtype=object)
        letters = letters[:ax] + letters[ax + 1:]
    return A, letters


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _module_terms(frame, lam, nu, mode, n, order, growth=0, offset=0):
    """(splits, the eight junction tensors) for the module lam/nu."""
    mod = S.SkewModule(lam, nu, growth=growth, offset=offset)
    sp = _Splits(mod.tabs, frame)
    zero = LaurentSeriesQ({}, order) if mode == "series" else Fraction(0)
    tensors = []
    cache = {}
    for (left, right), pi in zip(JUNCTIONS, frame.junctions):
        if pi not in cache:
            cache[pi] = mod.perm_action(pi, mode, n, order)
        tensors.append(_to_tensor(cache[pi], sp, left[1], right[1], zero))
    return mod, sp, tensors


def upsilon(frame: Frame, nu, mus, lam, mode="float", n=None, order=None, growth=0, offset=0,
            dual=False):
    """Upsilon for one index (nu, {mu_f}, lam).

    ``mus`` maps each letter to mu_f.  Shapes are actual partitions (of
    n - v, n - e_f, n - f).  ``dual`` evaluates the transposed sum: every
    shape is conjugated and each factor picks up the sign of its junction,
    which must reproduce the same value.
    """
    if dual:
        lam, nu = S.conjugate(lam), S.conjugate(nu)
        mus = {f: S.conjugate(m) for f, m in mus.items()}
        growth = -growth
    for f in LETTERS:
        if not (S.contains(mus[f], nu) and S.contains(lam, mus[f])):
            raise ValueError(f"invalid containment for letter {f}")
        if sum(mus[f]) - sum(nu) != frame.split(f):
            raise ValueError(f"mu_{f} has the wrong size")
    mod, sp, tensors = _module_terms(frame, lam, nu, mode, n, order, growth, offset)
    weights = {}
    for f in LETTERS:
        w = [1 if _shape_of(r, nu) == S.normalize(mus[f]) else 0 for r in sp.r_list[f]]
        weights[f] = _weight_array(w, mode, order)
    val = _contract(tensors, weights)
    if dual:
        sgn = 1
        for pi in frame.junctions:
            sgn *= _sign(pi)
        val = val * sgn
    return val


def _weight_array(w, mode, order):
    if mode == "float":
        return np.array([float(x) for x in w])
    arr = np.empty(len(w), dtype=object)
    for i, x in enumerate(w):
        if mode == "series":
            arr[i] = x if isinstance(x, LaurentSeriesQ) else LaurentSeriesQ.const(x, order)
        else:
            arr[i] = Fraction(x)
    return arr


def _sign(p):
    s = 1
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, L = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            L += 1
        if L % 2 == 0:
            s = -s
    return s


# ---------------------------------------------------------------------- xi

def _pair_term(frame, nu, lam, mode, n):
    """d_lam d_nu * sum over mu_f of Upsilon / prod d_mu_f, at size n."""
    mod, sp, tensors = _module_terms(frame, lam, nu, mode, n, None)
    weights = {}
    for f in LETTERS:
        w = [Fraction(1, S.dim(_shape_of(r, nu))) for r in sp.r_list[f]]
        weights[f] = (np.array([float(x) for x in w]) if mode == "float"
                      else np.array(w, dtype=object))
    val = _contract(tensors, weights)
    return S.dim(lam) * S.dim(nu) * val


def _xi_pairs(frame, n):
    nv, nf = frame.surface.nv, frame.surface.nf
    k = nv - nf
    for nu in S.partitions(n - nv):
        for lam in S.add_boxes(nu, k):
            yield nu, lam


def xi_exact(Y, frame, n, mode="float"):
    """Xi_n(Y); mode "float" (orthogonal form) or "rational" (exact)."""
    if n < Y.nv:
        raise ValueError(f"n = {n} is below the vertex count {Y.nv}")
    if Y.nv == 0:
        z = S.zeta_exact(n, 2)
        return float(z) if mode == "float" else z
    total = 0.0 if mode == "float" else Fraction(0)
    for nu, lam in _xi_pairs(frame, n):
        total += _pair_term(frame, nu, lam, mode, n)
    return total


def _in_box(nu, m, b):
    """nu of m lies in the box with at least b boxes outside its first row and column."""
    return bool(nu) and nu[0] <= m - b and len(nu) <= m - b


def xi_truncated(Y, frame, n, b, mode="float"):
    """Xi_n restricted to nu with fewer than b boxes outside the first row or column."""
    total = 0.0 if mode == "float" else Fraction(0)
    m = n - Y.nv
    for nu, lam in _xi_pairs(frame, n):
        if _in_box(nu, m, b):
            continue
        total += _pair_term(frame, nu, lam, mode, n)
    return total


def _family_tails(frame, M):
    """(nu_tail, lam_tail, b) for the row families that can reach u^M."""
    Y = frame.surface
    k = Y.nv - Y.nf
    b = max(0, -(-(k + M) // 2))
    out = []
    for size in range(b):
        for nt in S.partitions(size):
            for extra in range(k + 1):
                for lt in S.add_boxes(nt, extra):
                    lb = sum(max(size, sum(lt) - (Y.ne_f[f] - Y.nf)) for f in LETTERS)
                    if lb - sum(lt) - size >= M:
                        continue
                    out.append((nt, lt))
    return out, b


def _family_term(frame, nt, lt, M, column=False):
    """Series of d_lam d_nu sum_mu Upsilon / prod d_mu for one family pair."""
    Y = frame.surface
    nv, nf = Y.nv, Y.nf
    k = nv - nf
    vtot = sum(lt) + sum(nt)
    order = M + vtot
    # base size large enough that first rows do not interact with the tails
    n0 = nv + sum(nt) + (lt[0] if lt else 0) + k + 2
    nu0 = (n0 - nv - sum(nt),) + tuple(nt)
    lam0 = (n0 - nf - sum(lt),) + tuple(lt)
    growth = 1
    if column:
        nu0, lam0, growth = S.conjugate(nu0), S.conjugate(lam0), -1
    mod, sp, tensors = _module_terms(frame, lam0, nu0, "series", None, order, growth, nf)
    weights = {}
    for f in LETTERS:
        w = []
        for r in sp.r_list[f]:
            mu = _shape_of(r, nu0)
            if column:
                mu = S.conjugate(mu)
            G = S.poly_shift(S.family_dim_polynomial(mu[1:]), Y.ne_f[f])
            w.append(invert(poly_in_n(G), order))
        weights[f] = _weight_array(w, "series", order)
    val = _contract(tensors, weights)
    dl = poly_in_n(S.poly_shift(S.family_dim_polynomial(tuple(lt)), nf))
    dn = poly_in_n(S.poly_shift(S.family_dim_polynomial(tuple(nt)), nv))
    return (dl * dn * val).truncate(M)


def xi_series(Y, frame, M, check_dual=False):
    """Xi_n(Y) as a series in u = 1/n up to O(u^M).

    Row families and column families are evaluated separately; with
    ``check_dual`` each column value is compared with its row partner.
    """
    if M <= 0:
        return LaurentSeriesQ({}, M)
    if Y.nv == 0:
        return LaurentSeriesQ(dict(enumerate(S.zeta_poly(2, M))), M) * 2
    pairs, b = _family_tails(frame, M)
    total = LaurentSeriesQ({}, M)
    for nt, lt in pairs:
        row = _family_term(frame, nt, lt, M)
        if check_dual:
            col = _family_term(frame, nt, lt, M, column=True)
            if col != row:
                raise AssertionError(f"row and column families disagree at {nt}, {lt}")
        else:
            col = row
        total = total + row + col
    return total


# ----------------------------------------------------------- expectations

def _falling(n, k):
    out = 1
    for j in range(k):
        out *= n - j
    return out


def emb_prefactor(Y, n) -> Fraction:
    """(n)_v (n)_f / prod (n)_{e_f} / zeta_n(2)."""
    num = _falling(n, Y.nv) * _falling(n, Y.nf)
    den = 1
    for f in LETTERS:
        den *= _falling(n, Y.ne_f[f])
    return Fraction(num, den) / S.zeta_exact(n, 2)


def e_emb_exact(Y, n, frame=None, mode="float"):
    """Expected number of embeddings of Y into a random n-sheeted cover.

    Returns 0 when n is below the vertex count (no injective map exists).
    """
    if n < Y.nv:
        return 0.0 if mode == "float" else Fraction(0)
    if frame is None:
        frame = build_frame(Y)
    xi = xi_exact(Y, frame, n, mode)
    pre = emb_prefactor(Y, n)
    return float(pre) * xi if mode == "float" else pre * xi


def e_emb_series(Y, M, frame=None, check_dual=False):
    """E_emb(Y, n) as a series in u = 1/n up to O(u^M)."""
    chi = Y.chi
    Mp = M + chi
    if Mp <= 0:
        return LaurentSeriesQ({}, M)
    if frame is None:
        frame = build_frame(Y)
    xi = xi_series(Y, frame, Mp, check_dual)
    ratio = LaurentSeriesQ.const(1)
    for L in (Y.nv, Y.nf):
        for j in range(L):
            ratio = ratio * LaurentSeriesQ({0: 1, 1: -j})
    for f in LETTERS:
        for j in range(Y.ne_f[f]):
            ratio = ratio * invert(LaurentSeriesQ({0: 1, 1: -j}), Mp)
    zinv = LaurentSeriesQ(dict(enumerate(S.zeta_inv_poly(2, Mp))), Mp)
    inner = (zinv * ratio * xi * Fraction(1, 2)).truncate(Mp)
    return inner.shift(-chi)


def _core_resolution(gamma):
    Y, _ = core_cyclic(gamma)
    return Y, image_resolution(Y)


def e_fix_exact(gamma, n, mode="float"):
    """Expected number of fixed points of gamma in a random n-sheeted cover."""
    letters = W.as_letters(gamma)
    if W.is_trivial(letters):
        raise ValueError("gamma is trivial")
    _, R = _core_resolution(letters)
    total = 0.0 if mode == "float" else Fraction(0)
    for Wsurf, _ in R.elements:
        total += e_emb_exact(Wsurf, n, mode=mode)
    return total


def e_fix_series(gamma, M):
    """Series of E[fix_gamma] up to O(u^M) with a report on its leading terms."""
    letters = W.as_letters(gamma)
    if W.is_trivial(letters):
        raise ValueError("gamma is trivial")
    Y, R = _core_resolution(letters)
    total = LaurentSeriesQ({}, M)
    for Wsurf, _ in R.elements:
        total = total + e_emb_series(Wsurf, M)
    root = W.max_root(letters)
    report = {
        "a_-1": total.coeff(-1),
        "a_0": total.coeff(0) if M > 0 else None,
        "q": root.exponent,
        "d(q)": root.divisor_count,
        "resolution_size": len(R.elements),
    }
    if report["a_-1"] != 0:
        raise AssertionError(f"nonzero n^1 coefficient {report['a_-1']}")
    return total, report


def e_fix_subgroup(Y, n=None, M=None):
    """E[fix] of the subgroup whose core surface is Y, exactly at n or as a series."""
    bad = verify_core(Y)
    if bad:
        raise ValueError("core verification failed: " + ", ".join(bad))
    R = image_resolution(Y)
    if M is not None:
        total = LaurentSeriesQ({}, M)
        for Wsurf, _ in R.elements:
            total = total + e_emb_series(Wsurf, M)
        chis = [Wsurf.chi for Wsurf, _ in R.elements]
        lead = max(chis)
        return total, {"chi_max": lead,
                       "leading_coefficient": total.coeff(-lead) if -lead < M else None,
                       "resolution_size": len(R.elements)}
    total = 0.0
    for Wsurf, _ in R.elements:
        total += e_emb_exact(Wsurf, n)
    return total


# --------------------------------------------------------------- bounds

def _tops(T):
    return S.top(T)


def _lefts(T):
    return S.left(T)


def d_top(frame, tabs, which="top"):
    """Sum over junctions of d(pi top(X), top(Y)) and the switch count.

    ``tabs`` maps (kind, f, sign) to the combined tableau (tuple of boxes).
    """
    getter = _tops if which == "top" else _lefts
    D, switches = 0, 0
    for (left, right), pi in zip(JUNCTIONS, frame.junctions):
        A = getter(tabs[right])
        B = getter(tabs[left])
        img = {pi[x] for x in A}
        D += len(img - B)
        back = {pi[x] for x in range(len(pi)) if x not in A}
        switches += len(img - B) + len(back & B)
    return D, switches


def _hanging_items(Y, v, slots):
    out = []
    for t in slots:
        f, is_out = _SLOT_INFO[t % 8]
        out.append(("out" if is_out else "in", f, v))
    return out


def boundary_items(frame):
    """Label keys along each boundary cycle of Y with its hanging half-edges."""
    Y = frame.surface
    cycles = []
    for cyc in Y.boundary_cycles():
        if not cyc.sides:
            cycles.append(_hanging_items(Y, cyc.vertex, range(8)))
            continue
        items = []
        for side, g in zip(cyc.sides, cyc.gaps):
            items.append(("side",) + side)
            v, slot = Y._arrival(side)
            items.extend(_hanging_items(Y, v, range(slot + 1, slot + 1 + g)))
        cycles.append(items)
    return cycles


def _item_is_top(key, number, tabs, which):
    """Whether the number of a boundary item sits in the first row (column) of its tableau."""
    if key[0] == "side":
        _, f, _, sd = key
        T = tabs[("s" if sd == "L" else "t", f, "-")]
    else:
        T = tabs[("s", key[1], "-" if key[0] == "out" else "+")]
    r, c = T[number]
    return (r if which == "top" else c) == 0


def pieces_count(frame, tabs, which="top"):
    """Number of path pieces of non-top (non-left) labels along the boundary with hanging half-edges."""
    paths = 0
    for items in boundary_items(frame):
        flags = [_item_is_top(key, frame.labels[key], tabs, which) for key in items]
        if all(flags) or not any(flags):
            continue
        # count maximal cyclic runs of non-top items
        paths += sum(1 for i in range(len(flags)) if not flags[i] and flags[i - 1])
    return paths


def random_index(frame, n, rng):
    """A random (nu, mus, lam, tabs) with nu of n - v and lam of n - f."""
    Y = frame.surface
    nu = rng.choice(S.partitions(n - Y.nv))
    lam = rng.choice(S.add_boxes(nu, Y.nv - Y.nf))
    tabs_all = S.skew_tableaux(lam, nu)
    T0 = rng.choice(tabs_all)
    mus, tabs = {}, {}
    for f in LETTERS:
        h = frame.split(f)
        mu = _shape_of(T0[:h], nu)
        mus[f] = mu
        rs = sorted({T[:h] for T in tabs_all if _shape_of(T[:h], nu) == mu})
        ss = sorted({T[h:] for T in tabs_all if _shape_of(T[:h], nu) == mu})
        for sign in "+-":
            tabs[("r", f, sign)] = rng.choice(rs)
        tabs[("s", f)] = rng.choice(ss)
        tabs[("t", f)] = rng.choice(ss)
    combined = {}
    for f in LETTERS:
        for kind in "st":
            for sign in "+-":
                combined[(kind, f, sign)] = tabs[("r", f, sign)] + tabs[(kind, f)]
    return nu, mus, lam, combined


def defect_bound_check(Y, frame, nu, mus, lam, tabs, max_defect=None):
    """Check the b/D inequalities for one index and tableau choice.

    Returns a report dict; ``ok`` is False when an inequality fails.
    """
    if max_defect is None:
        max_defect = Y.max_defect()
    sbr = Y.is_strongly_boundary_reduced()
    br = Y.is_boundary_reduced()
    rep = {"ok": True, "violations": []}
    for which, bfun in (("top", S.b_count), ("left", S.bcheck_count)):
        D, sw = d_top(frame, tabs, which)
        if sw != 2 * D:
            rep["violations"].append(f"{which}: switch count {sw} is not twice D = {D}")
        P1 = pieces_count(frame, tabs, which)
        if P1 != D:
            rep["violations"].append(f"{which}: D = {D} but {P1} boundary path pieces")
        bl = bfun(lam, nu)
        diff = bl - sum(bfun(mus[f], nu) for f in LETTERS)
        rep[f"D_{which}"] = D
        rep[f"b_{which}"] = bl
        rep[f"diff_{which}"] = diff
        if bl > 0 and Fraction(diff - D) > Fraction(max_defect, 8):
            rep["violations"].append(f"{which}: {diff} - {D} exceeds maxDefect/8 = {max_defect}/8")
        if br and D < diff:
            rep["violations"].append(f"{which}: D = {D} below {diff} on a BR surface")
        if sbr and bl > 0 and D < diff + 1:
            rep["violations"].append(f"{which}: D = {D} below {diff} + 1 on an SBR surface")
        if bl == 0 and (D != 0 or diff != 0):
            rep["violations"].append(f"{which}: b = 0 but D = {D}, diff = {diff}")
    rep["ok"] = not rep["violations"]
    return rep


def matrix_coefficient_bound(lam, nu, sigma, T, Tp, value):
    """Whether |value| respects the top-row decay bound (None if its hypothesis fails)."""
    n, m = sum(lam), sum(nu)
    k = n - m
    gap = lam[0] + (nu[0] if nu else 0) - n
    if gap <= k * k:
        return None
    dd = len({sigma[x] for x in S.top(T)} - set(S.top(Tp)))
    return abs(value) <= (k * k / gap) ** dd + 1e-12
