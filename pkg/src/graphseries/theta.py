"""Holomorphic cone sums of binary quadratic forms and one-variable theta sums.

A cone is the set {(n0 + dn*i, m0 + dm*j) : i, j >= 0} with dn, dm = +-1,
carrying an overall sign.  Substituting the parametrisation turns every cone
into a sum over N0 x N0; truncation is then justified by checking that the
folded quadratic has positive diagonal and either a nonnegative cross term or
a positive definite form.  Points are visited row by row in j, and within a
row outward from the real minimiser in i, so the stopping rule is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DivergentRange, NonMonotoneCone
from .series import Series, as_fraction

__all__ = ["Cone", "POS", "NEG", "ConeThetaSpec", "cone_sum", "box_sum", "WeightedTheta1D", "theta_1d"]


@dataclass(frozen=True)
class Cone:
    n_start: int = 0
    n_dir: int = 1
    m_start: int = 0
    m_dir: int = 1
    sign: int = 1

    def __post_init__(self):
        if self.n_dir not in (1, -1) or self.m_dir not in (1, -1):
            raise ValueError("cone directions must be +1 or -1")


POS = Cone()
# n, m < 0 enters with a minus sign, as in sum_{n,m>=0} - sum_{n,m<0}
NEG = Cone(-1, -1, -1, -1, -1)


def _poly_value(weight: dict, n: int, m: int):
    return sum(c * n**p * m**r for (p, r), c in weight.items())


@dataclass(frozen=True)
class ConeThetaSpec:
    """sum over cones of sign * w(n, m) * q^(a n^2 + h n m + c m^2 + d n + e m + const).

    ``weight`` maps (p, r) to the integer coefficient of n^p m^r;
    ``parity`` = (alpha, beta) multiplies by (-1)^(alpha n + beta m).
    """

    quad: tuple
    lin: tuple = (0, 0)
    const_exp: Fraction = Fraction(0)
    weight: dict = field(default_factory=lambda: {(0, 0): 1})
    parity: tuple = (0, 0)
    cones: tuple = (POS,)

    def __post_init__(self):
        object.__setattr__(self, "quad", tuple(as_fraction(x) for x in self.quad))
        object.__setattr__(self, "lin", tuple(as_fraction(x) for x in self.lin))
        object.__setattr__(self, "const_exp", as_fraction(self.const_exp))

    def exponent(self, n: int, m: int) -> Fraction:
        a, h, c = self.quad
        d, e = self.lin
        return a * n * n + h * n * m + c * m * m + d * n + e * m + self.const_exp

    def term_coefficient(self, n: int, m: int) -> int:
        alpha, beta = self.parity
        s = -1 if (alpha * n + beta * m) % 2 else 1
        return s * _poly_value(self.weight, n, m)

    def folded(self, cone: Cone):
        """Coefficients (A, H, C, B1, B2, K) of the exponent in cone coordinates (i, j)."""
        a, h, c = self.quad
        d, e = self.lin
        n0, dn, m0, dm = cone.n_start, cone.n_dir, cone.m_start, cone.m_dir
        A = a
        C = c
        H = h * dn * dm
        B1 = (2 * a * n0 + h * m0 + d) * dn
        B2 = (2 * c * m0 + h * n0 + e) * dm
        K = self.exponent(n0, m0)
        return A, H, C, B1, B2, K


def _check_monotone(A, H, C):
    if A <= 0 or C <= 0 or not (H >= 0 or H * H < 4 * A * C):
        raise NonMonotoneCone(
            f"folded form {A} i^2 + {H} ij + {C} j^2 is not bounded below by a growing function on the cone"
        )


def _row_floor(A, H, C, B1, B2, K, j: int) -> Fraction:
    """Lower bound for min over integer i >= 0 of the exponent in row j; convex in j."""
    lin = H * j + B1 if H < 0 else B1
    base = C * j * j + B2 * j + K
    istar = -lin / (2 * A)
    if istar <= 0:
        return base
    return base + A * istar * istar + lin * istar


def cone_sum(spec: ConeThetaSpec, N) -> Series:
    """Exact truncation to order N of the cone sum described by ``spec``."""
    N = as_fraction(N)
    terms: dict[Fraction, int] = {}
    for cone in spec.cones:
        A, H, C, B1, B2, K = spec.folded(cone)
        _check_monotone(A, H, C)
        prev = None
        j = 0
        while True:
            floor_j = _row_floor(A, H, C, B1, B2, K, j)
            if floor_j > N and prev is not None and floor_j >= prev:
                break
            prev = floor_j
            lin = H * j + B1
            row = C * j * j + B2 * j + K
            istar = -lin / (2 * A)
            centre = max(0, math.floor(istar))
            m = cone.m_start + cone.m_dir * j
            # the row exponent A i^2 + lin i + row is convex in i
            for step in (1, -1):
                i = centre if step == 1 else centre - 1
                while i >= 0:
                    ex = A * i * i + lin * i + row
                    if ex > N:
                        if step == 1 and i <= istar:
                            i += 1
                            continue
                        break
                    n = cone.n_start + cone.n_dir * i
                    coef = cone.sign * spec.term_coefficient(n, m)
                    if coef:
                        terms[ex] = terms.get(ex, 0) + coef
                    i += step
            j += 1
    return Series.polynomial({e: v for e, v in terms.items() if v}).truncate(N)


def box_sum(spec: ConeThetaSpec, N, radius: int) -> Series:
    """Direct summation over |n|, |m| <= radius with cone membership tested pointwise."""
    N = as_fraction(N)
    terms: dict[Fraction, int] = {}
    for n in range(-radius, radius + 1):
        for m in range(-radius, radius + 1):
            ex = spec.exponent(n, m)
            if ex > N:
                continue
            mult = 0
            for cone in spec.cones:
                i = (n - cone.n_start) * cone.n_dir
                j = (m - cone.m_start) * cone.m_dir
                if i >= 0 and j >= 0:
                    mult += cone.sign
            if mult:
                terms[ex] = terms.get(ex, 0) + mult * spec.term_coefficient(n, m)
    return Series.polynomial({e: v for e, v in terms.items() if v}).truncate(N)


@dataclass(frozen=True)
class WeightedTheta1D:
    """sum of w(n) * (-1)^(alpha n) * q^(a n^2 + b n + c) over a range of n.

    ``rng`` is ("ge", n0), ("le", n0) or ("all", None); ``weight`` lists the
    polynomial coefficients from the constant term up.
    """

    quad: tuple
    weight: tuple = (1,)
    alpha: int = 0
    rng: tuple = ("all", None)

    def __post_init__(self):
        object.__setattr__(self, "quad", tuple(as_fraction(x) for x in self.quad))

    def exponent(self, n: int) -> Fraction:
        a, b, c = self.quad
        return a * n * n + b * n + c

    def coefficient(self, n: int) -> int:
        w = sum(k * n**p for p, k in enumerate(self.weight))
        return -w if (self.alpha * n) % 2 else w


def theta_1d(spec: WeightedTheta1D, N) -> Series:
    N = as_fraction(N)
    a, b, c = spec.quad
    if a <= 0:
        raise DivergentRange(f"leading coefficient {a} does not make the sum converge")
    kind, n0 = spec.rng
    nstar = -b / (2 * a)
    centre = math.floor(nstar)
    lo = n0 if kind == "ge" else None
    hi = n0 if kind == "le" else None
    if kind not in ("ge", "le", "all"):
        raise ValueError(f"unknown range {kind!r}")
    if lo is not None:
        centre = max(centre, lo)
    if hi is not None:
        centre = min(centre, hi)
    terms: dict[Fraction, int] = {}
    for step in (1, -1):
        n = centre if step == 1 else centre - 1
        while (lo is None or n >= lo) and (hi is None or n <= hi):
            ex = spec.exponent(n)
            if ex > N:
                if step == 1 and n <= nstar:
                    n += 1
                    continue
                break
            v = spec.coefficient(n)
            if v:
                terms[ex] = terms.get(ex, 0) + v
            n += step
    return Series.polynomial({e: v for e, v in terms.items() if v}).truncate(N)
