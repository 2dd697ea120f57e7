"""Truncated Laurent series in q with exact rational coefficients.

A series lives on the exponent lattice (1/denom)*Z.  Internally every exponent
is stored as an integer index ``k`` meaning ``q**(k/denom)``.  ``prec`` is the
largest index whose coefficient is known exactly; ``None`` marks an exact
(finitely supported) series such as a polynomial or a monomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .errors import LatticeError, OrderExceeded, ZeroLeadingCoefficient

__all__ = ["Series", "q", "first_mismatch", "equal_to_order", "as_fraction"]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"expected a rational number, got {x!r}")


def _scaled(e, denom: int) -> int:
    """Exponent e as a lattice index; off-lattice exponents are an error."""
    e = as_fraction(e)
    k = e * denom
    if k.denominator != 1:
        raise LatticeError(f"exponent {e} is not on the lattice (1/{denom})Z")
    return k.numerator


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _clean(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Series:
    """Immutable truncated Laurent series.

    Binary operations refine to the common lattice and carry the tightest
    truncation order that the inputs justify.
    """

    __slots__ = ("_c", "_start", "_prec", "_denom")

    def __init__(self, coeffs: Sequence, start: int = 0, prec: int | None = None, denom: int = 1):
        if denom < 1:
            raise ValueError("lattice denominator must be positive")
        c = list(coeffs)
        if prec is not None:
            keep = prec - start + 1
            if keep <= 0:
                c = []
            elif len(c) > keep:
                c = c[:keep]
            elif len(c) < keep:
                c.extend([0] * (keep - len(c)))
        lead = 0
        while lead < len(c) and c[lead] == 0:
            lead += 1
        if lead:
            c = c[lead:]
            start += lead
        if prec is None:
            while c and c[-1] == 0:
                c.pop()
            if not c:
                start = 0
        elif not c:
            # zero through the window: the valuation is known to exceed prec
            start = prec + 1
        self._c = tuple(_clean(x) for x in c)
        self._start = start
        self._prec = prec
        self._denom = denom

    # -- constructors -------------------------------------------------
    @classmethod
    def from_list(cls, coeffs: Iterable, order=None, min_exp=0, denom: int = 1) -> "Series":
        """Coefficients of q**(min_exp + i/denom); ``order=None`` means exact."""
        start = _scaled(min_exp, denom)
        prec = None if order is None else math.floor(as_fraction(order) * denom)
        return cls(list(coeffs), start, prec, denom)

    @classmethod
    def monomial(cls, exp=0, coef=1) -> "Series":
        e = as_fraction(exp)
        d = e.denominator
        return cls([coef], _scaled(e, d), None, d)

    @classmethod
    def polynomial(cls, terms: dict) -> "Series":
        if not terms:
            return cls([], 0, None, 1)
        exps = [as_fraction(e) for e in terms]
        d = 1
        for e in exps:
            d = _lcm(d, e.denominator)
        idx = {_scaled(e, d): terms[k] for e, k in zip(exps, terms)}
        lo, hi = min(idx), max(idx)
        c = [0] * (hi - lo + 1)
        for k, v in idx.items():
            c[k - lo] += v
        return cls(c, lo, None, d)

    @classmethod
    def constant(cls, c=1) -> "Series":
        return cls([c], 0, None, 1)

    @classmethod
    def zero(cls, order=None) -> "Series":
        prec = None if order is None else math.floor(as_fraction(order))
        return cls([], 0, prec, 1)

    # -- basic data ------------------------------------------------------
    @property
    def denom(self) -> int:
        return self._denom

    @property
    def order(self) -> Fraction | None:
        """Truncation bound: coefficients are exact for exponents <= order."""
        return None if self._prec is None else Fraction(self._prec, self._denom)

    @property
    def is_exact(self) -> bool:
        return self._prec is None

    @property
    def min_exp(self) -> Fraction:
        return Fraction(self._start, self._denom)

    def is_zero(self) -> bool:
        return not self._c

    def valuation(self) -> Fraction | None:
        """Exponent of the lowest nonzero coefficient, None if none is known."""
        return None if not self._c else Fraction(self._start, self._denom)

    def terms(self) -> list[tuple[Fraction, Fraction | int]]:
        d = self._denom
        return [(Fraction(self._start + i, d), c) for i, c in enumerate(self._c) if c != 0]

    def coeff(self, e) -> Fraction | int:
        e = as_fraction(e)
        if self._prec is not None and e * self._denom > self._prec:
            raise OrderExceeded(f"coefficient of q^{e} requested, series known only to order {self.order}")
        k = e * self._denom
        if k.denominator != 1:
            return 0
        i = k.numerator - self._start
        if 0 <= i < len(self._c):
            return self._c[i]
        return 0

    def coefficients(self, lo, hi) -> list:
        """Coefficients at lattice points lo, lo+1/denom, ..., hi."""
        a = _scaled(lo, self._denom)
        b = _scaled(hi, self._denom)
        if self._prec is not None and b > self._prec:
            raise OrderExceeded(f"series known only to order {self.order}, asked for {hi}")
        out = []
        for k in range(a, b + 1):
            i = k - self._start
            out.append(self._c[i] if 0 <= i < len(self._c) else 0)
        return out

    # -- lattice handling ----------------------------------------------
    def refine(self, denom: int) -> "Series":
        if denom == self._denom:
            return self
        if denom % self._denom:
            raise LatticeError(f"cannot refine lattice 1/{self._denom} to 1/{denom}")
        k = denom // self._denom
        c = [0] * ((len(self._c) - 1) * k + 1 if self._c else 0)
        c[::k] = self._c
        start = self._start * k
        prec = None if self._prec is None else self._prec * k
        return Series(c, start, prec, denom)

    def _common(self, other: "Series") -> tuple["Series", "Series"]:
        d = _lcm(self._denom, other._denom)
        return self.refine(d), other.refine(d)

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Series":
        if isinstance(x, Series):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return Series.constant(x)
        return NotImplemented

    def __neg__(self) -> "Series":
        return Series([-c for c in self._c], self._start, self._prec, self._denom)

    def __pos__(self) -> "Series":
        return self

    def __add__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        prec = _min_prec(a._prec, b._prec)
        if not a._c and not b._c:
            return Series([], 0, prec, a._denom)
        starts = [s._start for s in (a, b) if s._c]
        lo = min(starts)
        hi = max(s._start + len(s._c) - 1 for s in (a, b) if s._c)
        if prec is not None:
            hi = min(hi, prec)
        if hi < lo:
            return Series([], 0, prec, a._denom)
        c = [0] * (hi - lo + 1)
        for s in (a, b):
            off = s._start - lo
            for i, v in enumerate(s._c):
                j = i + off
                if j > hi - lo:
                    break
                if j >= 0:
                    c[j] += v
        return Series(c, lo, prec, a._denom)

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return Series([], 0, self._prec, self._denom) if self._prec is not None else Series([])
            return Series([c * other for c in self._c], self._start, self._prec, self._denom)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._common(other)
        # a zero window still bounds the valuation from below by _start
        if a._prec is None and b._prec is None:
            prec = None
        elif a._prec is None:
            prec = None if not a._c else b._prec + a._start
        elif b._prec is None:
            prec = None if not b._c else a._prec + b._start
        else:
            prec = min(a._prec + b._start, b._prec + a._start)
        if prec is None and (not a._c or not b._c):
            return Series([], 0, None, a._denom)
        start = a._start + b._start
        if not a._c or not b._c:
            return Series([], start, prec, a._denom)
        full = len(a._c) + len(b._c) - 1
        n = full if prec is None else min(full, prec - start + 1)
        if n <= 0:
            return Series([], start, prec, a._denom)
        return Series(_convolve(a._c, b._c, n), start, prec, a._denom)

    __rmul__ = __mul__

    def invert(self, order=None) -> "Series":
        """Multiplicative inverse; exact non-monomials need an explicit order."""
        if not self._c:
            raise ZeroLeadingCoefficient("series vanishes throughout its window")
        if self._prec is None and len(self._c) == 1:
            c0 = self._c[0]
            inv = Fraction(1, 1) / c0 if c0 not in (1, -1) else c0
            return Series([inv], -self._start, None, self._denom)
        if self._prec is None:
            if order is None:
                raise ValueError("inverting an exact polynomial needs an explicit order")
            prec = math.floor(as_fraction(order) * self._denom)
        else:
            prec = self._prec - 2 * self._start
            if order is not None:
                prec = min(prec, math.floor(as_fraction(order) * self._denom))
        n = prec + self._start + 1  # number of coefficients of the unit part
        if n <= 0:
            return Series([], -self._start, prec, self._denom)
        a = self._c
        c0 = a[0]
        unit = c0 in (1, -1)
        inv0 = c0 if unit else Fraction(1) / c0
        b = [0] * n
        b[0] = inv0
        la = len(a)
        for k in range(1, n):
            s = 0
            for i in range(1, min(k, la - 1) + 1):
                ai = a[i]
                if ai:
                    s += ai * b[k - i]
            b[k] = -s * inv0 if s else 0
        return Series(b, -self._start, prec, self._denom)

    def __truediv__(self, other) -> "Series":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (Fraction(1) / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other._prec is None and len(other._c) > 1:
            if self._prec is None:
                raise ValueError("dividing exact series by a polynomial needs a truncation order")
            # enough terms of 1/other to cover the numerator's window
            rel = self.order - self.min_exp
            return self * other.invert(order=rel - other.min_exp)
        return self * other.invert()

    def __rtruediv__(self, other) -> "Series":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> "Series":
        if not isinstance(k, int):
            return NotImplemented
        base = self
        if k < 0:
            base = self.invert()
            k = -k
        result = Series.constant(1)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, e) -> "Series":
        """Multiply by q**e."""
        e = as_fraction(e)
        d = _lcm(self._denom, e.denominator)
        s = self.refine(d)
        k = _scaled(e, d)
        return Series(s._c, s._start + k, None if s._prec is None else s._prec + k, d)

    def truncate(self, order) -> "Series":
        p = math.floor(as_fraction(order) * self._denom)
        prec = p if self._prec is None else min(p, self._prec)
        return Series(self._c, self._start, prec, self._denom)

    def map_coeffs(self, f) -> "Series":
        return Series([f(c) for c in self._c], self._start, self._prec, self._denom)

    def evaluate(self, x):
        """Sum of the stored terms at q = x (x may be any float-like)."""
        total = 0
        d = self._denom
        for i, c in enumerate(self._c):
            if c:
                e = Fraction(self._start + i, d)
                p = x ** int(e) if e.denominator == 1 else x ** (e.numerator / e.denominator)
                total += c * p
        return total

    # -- comparison / io -----------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        a, b = self._common(other)
        return (a._prec, a._start, a._c) == (b._prec, b._start, b._c) or (
            not a._c and not b._c and a._prec == b._prec
        )

    def __hash__(self):
        return hash((self._c, self._start, self._prec, self._denom))

    def to_record(self) -> dict:
        terms = []
        for e, c in self.terms():
            c = Fraction(c)
            terms.append([e.numerator, e.denominator, c.numerator, c.denominator])
        order = self.order
        return {
            "denom": self._denom,
            "order": None if order is None else f"{order.numerator}/{order.denominator}",
            "terms": terms,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "Series":
        d = rec.get("denom", 1)
        for en, ed, _, _ in rec["terms"]:
            d = _lcm(d, ed)
        order = rec["order"]
        terms = {Fraction(en, ed): Fraction(cn, cd) for en, ed, cn, cd in rec["terms"]}
        if not terms:
            s = cls([], 0, None, d)
        else:
            s = cls.polynomial(terms).refine(d) if d > 1 else cls.polynomial(terms)
        if order is not None:
            o = Fraction(order)
            s = Series(s._c, s._start, math.floor(o * d), d) if s._c else Series([], 0, math.floor(o * d), d)
        return s

    def __repr__(self) -> str:
        parts = []
        for e, c in self.terms():
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "q"
            else:
                mono = f"q^{e}" if e.denominator == 1 and e > 0 else f"q^({e})"
            if mono == "":
                body = str(c)
            elif c == 1:
                body = mono
            elif c == -1:
                body = "-" + mono
            else:
                body = f"{c}*{mono}"
            parts.append(body)
        s = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self._prec is not None:
            nxt = Fraction(self._prec + 1, self._denom)
            s += f" + O(q^{nxt})"
        return s


def _convolve(a: Sequence, b: Sequence, n: int) -> list:
    """First n coefficients of the product; loops over the sparser factor."""
    nz_a = [(i, x) for i, x in enumerate(a[:n]) if x]
    nz_b = [(i, x) for i, x in enumerate(b[:n]) if x]
    if len(nz_a) > len(nz_b):
        nz_a, nz_b, a, b = nz_b, nz_a, b, a
    out = [0] * n
    lb = min(len(b), n)
    for i, x in nz_a:
        m = min(lb, n - i)
        if m <= 0:
            continue
        for j in range(m):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


q = Series.monomial(1)


def first_mismatch(a: Series, b: Series, order) -> Fraction | None:
    """Smallest exponent <= order where a and b differ, or None."""
    order = as_fraction(order)
    for s in (a, b):
        if s.order is not None and order > s.order:
            raise OrderExceeded(f"comparison to order {order} but a side is known only to {s.order}")
    x, y = a._common(b)
    d = x._denom
    top = math.floor(order * d)
    lo = min(x._start if x._c else top + 1, y._start if y._c else top + 1)
    for k in range(lo, top + 1):
        i, j = k - x._start, k - y._start
        cx = x._c[i] if 0 <= i < len(x._c) else 0
        cy = y._c[j] if 0 <= j < len(y._c) else 0
        if cx != cy:
            return Fraction(k, d)
    return None


def equal_to_order(a: Series, b: Series, order) -> bool:
    return first_mismatch(a, b, order) is None
