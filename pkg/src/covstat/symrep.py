"""Partitions, skew tableaux, Young's orthogonal form and zeta functions of S_n."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .asympt import LaurentSeriesQ, invert, sqrt_series, DEFAULT_ORDER

Partition = tuple  # weakly decreasing positive ints


# ---------------------------------------------------------------- partitions

@lru_cache(maxsize=None)
def partitions(n: int, maxpart: int | None = None) -> tuple:
    """All partitions of n, largest first part first."""
    if maxpart is None:
        maxpart = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def conjugate(lam) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for r in lam if r > j) for j in range(lam[0]))


def hook_product(lam) -> int:
    conj = conjugate(lam)
    h = 1
    for i, row in enumerate(lam):
        for j in range(row):
            h *= (row - j - 1) + (conj[j] - i - 1) + 1
    return h


@lru_cache(maxsize=None)
def dim(lam) -> int:
    """Dimension of the irreducible representation indexed by lam (hook formula)."""
    lam = tuple(lam)
    return math.factorial(sum(lam)) // hook_product(lam)


def contains(outer, inner) -> bool:
    if len(inner) > len(outer):
        return False
    return all(inner[i] <= outer[i] for i in range(len(inner)))


def normalize(lam) -> Partition:
    return tuple(x for x in lam if x > 0)


def b_count(outer, inner=()) -> int:
    """Boxes of outer/inner outside the first row."""
    return sum(outer[1:]) - sum(inner[1:])


def bcheck_count(outer, inner=()) -> int:
    """Boxes of outer/inner outside the first column."""
    return b_count(conjugate(outer), conjugate(inner))


def add_boxes(lam, k: int):
    """All partitions obtained from lam by adding k boxes."""
    layer = {tuple(lam)}
    for _ in range(k):
        nxt = set()
        for mu in layer:
            mu = list(mu)
            for i in range(len(mu) + 1):
                row = mu[i] if i < len(mu) else 0
                if i == 0 or mu[i - 1] > row:
                    new = mu[:i] + [row + 1] + mu[i + 1:]
                    nxt.add(tuple(new))
        layer = nxt
    return sorted(layer, reverse=True)


def remove_boxes(lam, k: int):
    layer = {tuple(lam)}
    for _ in range(k):
        nxt = set()
        for mu in layer:
            for i in range(len(mu)):
                nb = mu[i + 1] if i + 1 < len(mu) else 0
                if mu[i] > nb:
                    nxt.add(normalize(mu[:i] + (mu[i] - 1,) + mu[i + 1:]))
        layer = nxt
    return sorted(layer, reverse=True)


def intermediate(inner, outer, k: int):
    """Partitions mu with inner ⊂ mu ⊂ outer and |mu/inner| = k."""
    return [mu for mu in add_boxes(inner, k) if contains(outer, mu)]


# ----------------------------------------------------------------- tableaux

@lru_cache(maxsize=None)
def skew_tableaux(outer, inner=()) -> tuple:
    """Standard tableaux of outer/inner.

    A tableau is a tuple of boxes (row, col); entry j of the tableau sits in
    box number j, entries being 0..k-1.
    """
    outer = tuple(outer)
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    k = sum(outer) - sum(inner)
    out = []

    def rec(cur, boxes):
        if len(boxes) == k:
            out.append(tuple(boxes))
            return
        for r in range(len(outer)):
            if cur[r] < outer[r] and (r == 0 or cur[r - 1] > cur[r]):
                c = cur[r]
                cur[r] += 1
                boxes.append((r, c))
                rec(cur, boxes)
                boxes.pop()
                cur[r] -= 1

    rec(list(inner), [])
    return tuple(out)


def skew_dim(outer, inner=()) -> int:
    return len(skew_tableaux(tuple(outer), tuple(inner)))


def top(T) -> frozenset:
    """Entries in the first row of a tableau."""
    return frozenset(j for j, (r, c) in enumerate(T) if r == 0)


def left(T, inner=()) -> frozenset:
    """Entries in the first column of a tableau."""
    return frozenset(j for j, (r, c) in enumerate(T) if c == 0)


def dset(A, B) -> int:
    return len(set(A) - set(B))


# ----------------------------------------------------------- skew modules

class SkewModule:
    """The skew representation V^{outer/inner} with its Gelfand-Tsetlin basis.

    ``growth`` selects family behaviour: +1 lets the first row grow with n,
    -1 lets the first column grow, 0 means a plain shape.  ``offset`` is c
    with |outer(n)| = n - c, so growing contents are affine in n.

    Modes: "float" is Young's orthogonal form in doubles; "rational" and
    "series" use Young's seminormal form, whose entries are rational.  The
    two bases differ by a positive diagonal rescaling.
    """

    def __init__(self, outer, inner=(), growth: int = 0, offset: int = 0):
        self.outer = tuple(outer)
        self.inner = tuple(inner)
        self.growth = growth
        self.offset = offset
        self.size = sum(self.outer)
        self.tabs = skew_tableaux(self.outer, self.inner)
        self.index = {T: i for i, T in enumerate(self.tabs)}
        self.k = sum(self.outer) - sum(self.inner)
        if growth == 1:
            inn = self.inner + (0, 0)
            if len(self.outer) > 1 and inn[0] < self.outer[1]:
                raise ValueError("first row of the family borders the second row")
        if growth == -1:
            co, ci = conjugate(self.outer), conjugate(self.inner) + (0, 0)
            if len(co) > 1 and ci[0] < co[1]:
                raise ValueError("first column of the family borders the second column")
        self._cache = {}

    @property
    def dim(self) -> int:
        return len(self.tabs)

    def ax(self, T, i):
        """Axial distance c(i+1) - c(i) as (constant, slope): value = constant + slope*n."""
        (r1, c1), (r2, c2) = T[i], T[i + 1]
        a = (c2 - r2) - (c1 - r1)
        slope = 0
        if self.growth == 1:
            slope = (r2 == 0) - (r1 == 0)
        elif self.growth == -1:
            slope = (c1 == 0) - (c2 == 0)
        # a growing box moves by (n - offset - size) relative to this shape
        return a - slope * (self.offset + self.size), slope

    def _swaps(self, i):
        if not 0 <= i < self.k - 1:
            raise IndexError(f"adjacent transposition index {i} out of range for k={self.k}")
        out = []
        for t, T in enumerate(self.tabs):
            sw = list(T)
            sw[i], sw[i + 1] = sw[i + 1], sw[i]
            out.append(self.index.get(tuple(sw)))
        return out

    def yor_data(self, i: int, mode: str = "float", n=None, order: int = DEFAULT_ORDER):
        """s_i as diag[t], partner[t], off[t]: s_i e_t = diag[t] e_t + off[t] e_partner[t]."""
        key = (i, mode, n, order)
        if key in self._cache:
            return self._cache[key]
        swaps = self._swaps(i)
        d = self.dim
        partner = np.array([t if j is None else j for t, j in enumerate(swaps)], dtype=int)
        if mode == "float":
            diag, off = np.zeros(d), np.zeros(d)
        else:
            diag = np.empty(d, dtype=object)
            off = np.empty(d, dtype=object)
        for t, T in enumerate(self.tabs):
            a, slope = self.ax(T, i)
            if slope and n is None and mode != "series":
                raise ValueError("a growing family needs n outside series mode")
            if mode == "float":
                x = a + slope * n if slope else a
                diag[t] = 1.0 / x
                off[t] = 0.0 if swaps[t] is None else math.sqrt(1.0 - 1.0 / (x * x))
                if swaps[t] is None and abs(x) != 1:
                    raise AssertionError("non-standard swap with |ax| != 1")
            elif mode == "rational":
                x = Fraction(a + slope * n if slope else a)
                diag[t] = 1 / x
                off[t] = Fraction(0) if swaps[t] is None else (
                    Fraction(1) if x > 0 else 1 - 1 / (x * x))
            elif mode == "series":
                if slope == 0:
                    inv = LaurentSeriesQ.const(Fraction(1, a), order)
                    positive = a > 0
                else:
                    # 1/(slope*n + a) = slope*u / (1 + slope*a*u)
                    inv = (LaurentSeriesQ({1: slope}) *
                           invert(LaurentSeriesQ({0: 1, 1: slope * a}), order)).truncate(order)
                    positive = slope > 0
                diag[t] = inv
                if swaps[t] is None:
                    off[t] = LaurentSeriesQ({}, order)
                elif positive:
                    off[t] = LaurentSeriesQ.const(1, order)
                else:
                    off[t] = (1 - inv * inv).truncate(order)
            else:
                raise ValueError(f"unknown mode {mode!r}")
        res = (diag, partner, off)
        self._cache[key] = res
        return res

    def yor_matrix(self, i: int, mode: str = "float", n=None, order: int = DEFAULT_ORDER):
        """Matrix of s_i; column t holds s_i w_T.

        mode "float" gives the orthogonal form; "series-orthogonal" expands
        the orthogonal entries of a family in u = 1/n (only possible when the
        constant entries are rational).
        """
        d = self.dim
        if mode == "series-orthogonal":
            swaps = self._swaps(i)
            M = np.empty((d, d), dtype=object)
            M[:, :] = LaurentSeriesQ({}, order)
            for t, T in enumerate(self.tabs):
                a, slope = self.ax(T, i)
                if slope == 0:
                    M[t, t] = LaurentSeriesQ.const(Fraction(1, a), order)
                    if swaps[t] is not None:
                        M[swaps[t], t] = LaurentSeriesQ.const(
                            _sqrt_rational(1 - Fraction(1, a * a)), order)
                else:
                    inv = (LaurentSeriesQ({1: slope}) *
                           invert(LaurentSeriesQ({0: 1, 1: slope * a}), order)).truncate(order)
                    M[t, t] = inv
                    if swaps[t] is not None:
                        M[swaps[t], t] = sqrt_series((1 - inv * inv).truncate(order), order)
            return M
        diag, partner, off = self.yor_data(i, mode, n, order)
        M = _identity(d, mode, order) * 0 if mode == "float" else _zeros(d, mode, order)
        for t in range(d):
            M[t, t] = diag[t]
            if partner[t] != t:
                M[partner[t], t] = off[t]
        return M

    def perm_action(self, sigma, mode: str = "float", n=None, order: int = DEFAULT_ORDER):
        """Matrix of sigma (tuple, sigma[x] = image of entry x); column t is sigma e_T."""
        M = _identity(self.dim, mode, order)
        for i in adjacent_word(sigma):
            diag, partner, off = self.yor_data(i, mode, n, order)
            # s_i e_t = diag[t] e_t + off[t] e_partner[t]; rows of the product
            # pick up the coefficient from the partner row
            M = diag[:, None] * M + off[partner][:, None] * M[partner]
        return M

    def normalizers(self):
        """c_T with v_T = c_T w_T relating seminormal and orthogonal bases.

        Built by walking swap edges; raises if the assignment is inconsistent.
        """
        c = [None] * self.dim
        if not self.dim:
            return c
        c[0] = 1.0
        stack = [0]
        while stack:
            t = stack.pop()
            T = self.tabs[t]
            for i in range(self.k - 1):
                j = self._swaps(i)[t]
                if j is None:
                    continue
                a, slope = self.ax(T, i)
                if slope:
                    raise ValueError("normalizers need a plain shape")
                # seminormal off-diagonal 1 on the side with positive ax
                ratio = math.sqrt(1 - 1 / (a * a))
                cj = c[t] * ratio if a > 0 else c[t] / ratio
                if c[j] is None:
                    c[j] = cj
                    stack.append(j)
                elif abs(c[j] - cj) > 1e-9 * max(1.0, cj):
                    raise AssertionError("inconsistent seminormal scaling")
        return c


def _identity(d, mode, order):
    if mode == "float":
        return np.eye(d)
    one = Fraction(1) if mode == "rational" else LaurentSeriesQ.const(1, order)
    M = _zeros(d, mode, order)
    for t in range(d):
        M[t, t] = one
    return M


def _zeros(d, mode, order):
    if mode == "float":
        return np.zeros((d, d))
    M = np.empty((d, d), dtype=object)
    M[:, :] = Fraction(0) if mode == "rational" else LaurentSeriesQ({}, order)
    return M


def _sqrt_rational(q: Fraction):
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    raise ValueError(f"sqrt({q}) is irrational and has no rational series")


def adjacent_word(sigma) -> list:
    """Indices i_0, i_1, ... with sigma = s_{i_last} ... s_{i_1} s_{i_0}."""
    s = list(sigma)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(s) - 1):
            if s[i] > s[i + 1]:
                s[i], s[i + 1] = s[i + 1], s[i]
                word.append(i)
                changed = True
    return word


def yor_matrix(outer, inner, i: int, mode: str = "float", n=None, order: int = DEFAULT_ORDER):
    return SkewModule(outer, inner).yor_matrix(i, mode, n, order)


def perm_action(sigma, outer, inner=(), mode: str = "float", n=None, order: int = DEFAULT_ORDER):
    return SkewModule(outer, inner).perm_action(sigma, mode, n, order)


# --------------------------------------------------------------------- zeta

def zeta_exact(n: int, s: int) -> Fraction:
    return sum((Fraction(1, dim(lam) ** s) for lam in partitions(n)), Fraction(0))


def truncation_tail(n: int, b: int, s: int) -> Fraction:
    """Sum of d^-s over partitions with at least b boxes outside the first row and column."""
    total = Fraction(0)
    for lam in partitions(n):
        if lam[0] <= n - b and len(lam) <= n - b:
            total += Fraction(1, dim(lam) ** s)
    return total


def _interpolate(xs, ys):
    """Ascending coefficients of the Lagrange interpolant through (xs, ys)."""
    m = len(xs)
    coeffs = [Fraction(0)] * m
    for i in range(m):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(m):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(m):
            coeffs[t] += ys[i] * basis[t] / denom
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@lru_cache(maxsize=None)
def dim_polynomial(lam) -> tuple:
    """Ascending coefficients of G with d_{lam(n)} = G(n) for the first-row family of lam."""
    lam = tuple(lam)
    tail = lam[1:]
    b = sum(tail)
    second = tail[0] if tail else 0
    start = b + second
    xs = [Fraction(start + j) for j in range(b + 1)]
    ys = [Fraction(dim((int(x) - b,) + tail)) for x in xs]
    return tuple(_interpolate(xs, ys))


def family_dim_polynomial(tail) -> tuple:
    """G for the family (m - |tail|, tail) as a polynomial in m."""
    tail = tuple(tail)
    b = sum(tail)
    second = tail[0] if tail else 0
    return dim_polynomial((b + second,) + tail) if tail else (Fraction(1),)


def poly_eval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def poly_shift(coeffs, c) -> list:
    """Coefficients of G(n - c) given those of G(m)."""
    out = [Fraction(0)] * len(coeffs)
    # (n - c)^k expanded binomially
    for k, a in enumerate(coeffs):
        for j in range(k + 1):
            out[j] += a * math.comb(k, j) * Fraction(-c) ** (k - j)
    return out


def zeta_poly(s: int, M: int) -> list:
    """Coefficients (in u = 1/n, degrees 0..M-1) of P with zeta^{S_n}(s) = 2 P(1/n) + O(n^-M)."""
    b = -(-M // s)
    total = LaurentSeriesQ({}, M)
    for size in range(b):
        for tail in partitions(size):
            G = family_dim_polynomial(tail)
            g = LaurentSeriesQ({-i: c for i, c in enumerate(G)})
            total = total + invert(g, M) ** s if s > 0 else total
    total = total.truncate(M)
    return [total.coeff(k) for k in range(M)]


def zeta_inv_poly(s: int, M: int) -> list:
    """Coefficients of Q with 1/P = Q + O(u^M); so 1/zeta = Q(1/n)/2 + O(n^-M)."""
    P = LaurentSeriesQ(dict(enumerate(zeta_poly(s, M))), M)
    Q = invert(P, M)
    return [Q.coeff(k) for k in range(M)]
