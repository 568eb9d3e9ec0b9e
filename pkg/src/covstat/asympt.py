"""Truncated Laurent series in u = 1/n with rational coefficients.

A series stores finitely many coefficients and an optional truncation
order ``order``: the value is sum(c_k u^k for k < order) + O(u^order).
``order=None`` means the series is exact (a Laurent polynomial).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

DEFAULT_ORDER = 6


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentSeriesQ:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs=None, order: int | None = None):
        cs: dict[int, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for k, c in items:
                c = _frac(c)
                if c and (order is None or k < order):
                    cs[int(k)] = cs.get(int(k), Fraction(0)) + c
        self.coeffs = {k: c for k, c in cs.items() if c}
        self.order = order

    # constructors
    @classmethod
    def const(cls, c, order=None):
        return cls({0: c}, order)

    @classmethod
    def monomial(cls, k: int, c=1, order=None):
        return cls({k: c}, order)

    @classmethod
    def from_list(cls, cs: Iterable, start: int = 0, order=None):
        return cls({start + i: c for i, c in enumerate(cs)}, order)

    # basic queries
    def valuation(self) -> int | None:
        """Lowest exponent with a nonzero known coefficient."""
        return min(self.coeffs) if self.coeffs else None

    def lead_exponent(self) -> int:
        v = self.valuation()
        if v is None:
            return self.order if self.order is not None else 0
        return v

    def coeff(self, k: int) -> Fraction:
        if self.order is not None and k >= self.order:
            raise ValueError(f"coefficient u^{k} lies beyond truncation order {self.order}")
        return self.coeffs.get(k, Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, order: int | None) -> "LaurentSeriesQ":
        if order is None:
            return self
        if self.order is not None:
            order = min(order, self.order)
        return LaurentSeriesQ({k: c for k, c in self.coeffs.items() if k < order}, order)

    # arithmetic
    @staticmethod
    def _coerce(x) -> "LaurentSeriesQ":
        if isinstance(x, LaurentSeriesQ):
            return x
        return LaurentSeriesQ.const(x)

    def __add__(self, other):
        other = self._coerce(other)
        order = _min_order(self.order, other.order)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + c
        return LaurentSeriesQ(out, order)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeriesQ({k: -c for k, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentSeriesQ):
            c = _frac(other)
            return LaurentSeriesQ({k: v * c for k, v in self.coeffs.items()}, self.order)
        # error terms: O(u^p) * (series with valuation v) = O(u^(p+v))
        order = None
        if self.order is not None:
            order = self.order + other.lead_exponent()
        if other.order is not None:
            o2 = other.order + self.lead_exponent()
            order = o2 if order is None else min(order, o2)
        out: dict[int, Fraction] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if order is not None and k >= order:
                    continue
                out[k] = out.get(k, Fraction(0)) + a * b
        return LaurentSeriesQ(out, order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentSeriesQ):
            return self * invert(other, _default_order(self, other))
        return self * (Fraction(1) / _frac(other))

    def __pow__(self, e: int):
        if e < 0:
            return invert(self) ** (-e)
        out = LaurentSeriesQ.const(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def shift(self, k: int) -> "LaurentSeriesQ":
        """Multiply by u^k."""
        return LaurentSeriesQ({i + k: c for i, c in self.coeffs.items()},
                              None if self.order is None else self.order + k)

    def __eq__(self, other):
        other = self._coerce(other)
        return self.coeffs == other.coeffs and self.order == other.order

    def agrees_with(self, other, upto: int | None = None) -> bool:
        """Coefficientwise agreement below the common truncation order."""
        other = self._coerce(other)
        order = _min_order(self.order, other.order)
        if upto is not None:
            order = upto if order is None else min(order, upto)
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeffs.get(k, 0) == other.coeffs.get(k, 0)
                   for k in keys if order is None or k < order)

    def __hash__(self):
        return hash((tuple(sorted(self.coeffs.items())), self.order))

    def __repr__(self):
        return f"LaurentSeriesQ({self.render()})"

    # output
    def render(self) -> str:
        """Render in powers of n, e.g. ``a_{-1}*n + a_0 + a_1/n + O(n^-3)``."""
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append(str(c))
            elif k < 0:
                parts.append(f"{c}*n" if k == -1 else f"{c}*n^{-k}")
            else:
                parts.append(f"{c}/n" if k == 1 else f"{c}/n^{k}")
        if self.order is not None:
            parts.append(f"O(n^{-self.order})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"coefficients": {str(k): str(c) for k, c in sorted(self.coeffs.items())},
                "order": self.order}


def _min_order(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _default_order(*ss) -> int:
    orders = [s.order for s in ss if s.order is not None]
    return min(orders) if orders else DEFAULT_ORDER


def invert(s: LaurentSeriesQ, order: int | None = None) -> LaurentSeriesQ:
    """Multiplicative inverse.

    For an exact input ``order`` bounds the result (default DEFAULT_ORDER);
    for a truncated input the relative precision is kept.
    """
    v = s.valuation()
    if v is None:
        raise ZeroDivisionError("cannot invert a zero series")
    if s.order is not None:
        rel = s.order - v
        target = -v + rel
        if order is not None:
            target = min(target, order)
    else:
        target = order if order is not None else DEFAULT_ORDER
    nterms = target + v  # number of coefficients of the normalized inverse
    c0 = s.coeffs[v]
    # s = c0 u^v (1 + t); solve for b with (1 + t) b = 1
    a = {k - v: c / c0 for k, c in s.coeffs.items()}
    b: list[Fraction] = []
    for k in range(max(nterms, 0)):
        acc = Fraction(1) if k == 0 else Fraction(0)
        for j in range(1, k + 1):
            aj = a.get(j)
            if aj:
                acc -= aj * b[k - j]
        b.append(acc)
    return LaurentSeriesQ({i - v: bi / c0 for i, bi in enumerate(b)}, target)


def sqrt_series(s: LaurentSeriesQ, order: int | None = None) -> LaurentSeriesQ:
    """Square root of a series with constant term 1 and no negative powers."""
    if any(k < 0 for k in s.coeffs) or s.coeffs.get(0) != 1:
        raise ValueError("sqrt_series needs constant term 1 and no negative powers")
    target = s.order if s.order is not None else (order if order is not None else DEFAULT_ORDER)
    if order is not None:
        target = min(target, order)
    # coefficient recursion for r^2 = s with r_0 = 1
    r: list[Fraction] = []
    for k in range(target):
        if k == 0:
            r.append(Fraction(1))
            continue
        acc = s.coeffs.get(k, Fraction(0))
        for j in range(1, k):
            acc -= r[j] * r[k - j]
        r.append(acc / 2)
    return LaurentSeriesQ(dict(enumerate(r)), target)


def pochhammer_series(ell: int) -> LaurentSeriesQ:
    """(n)_ell = n(n-1)...(n-ell+1) = u^-ell * prod(1 - j u), exact."""
    out = LaurentSeriesQ.const(1)
    for j in range(ell):
        out = out * LaurentSeriesQ({0: 1, 1: -j})
    return out.shift(-ell)


def poly_in_n(coeffs: Iterable) -> LaurentSeriesQ:
    """Exact series of a polynomial in n given by ascending coefficients."""
    return LaurentSeriesQ({-i: c for i, c in enumerate(coeffs)})


def rational_fn_series(p: Iterable, q: Iterable, order: int = DEFAULT_ORDER) -> LaurentSeriesQ:
    """P(n)/Q(n) as a Laurent series in u, accurate up to O(u^order)."""
    P = poly_in_n(p)
    Q = poly_in_n(q)
    if Q.is_zero():
        raise ZeroDivisionError("denominator polynomial is zero")
    if P.is_zero():
        return LaurentSeriesQ({}, order)
    # the inverse needs enough relative precision for the product to reach `order`
    inv = invert(Q, order - P.lead_exponent())
    return (P * inv).truncate(order)


def eval_at(s: LaurentSeriesQ, n) -> Fraction:
    """Substitute u = 1/n exactly into the known coefficients."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("n must be nonzero")
    return sum((c * n ** (-k) for k, c in s.coeffs.items()), Fraction(0))


def compare_numeric(s: LaurentSeriesQ, f: Callable[[int], float], ns: Iterable[int]) -> float:
    """Largest |s(1/n) - f(n)| over the given n."""
    return max(abs(float(eval_at(s, n)) - float(f(n))) for n in ns)
