"""Behaviour of the path-graph series at q = exp(-t) as t -> 0+.

Each case evaluates (q)_inf^e * H_{A_k}(q) through its closed form in D(q),
G(q) and (q)_inf with mpmath, never through the truncated multi-sum.  The
check subtracts the claimed leading term and asks the residual to shrink
roughly linearly under halving of t.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath

from .catalog import lambert_sum, qinf, sum_of_tails
from .errors import PrecisionLoss
from .series import Series

__all__ = [
    "AsymptoticCase",
    "CASES",
    "eval_case",
    "check_case",
    "CaseVerdict",
    "series_model",
    "fit_conjecture",
    "DEFAULT_GRID",
]

DEFAULT_GRID = (0.2, 0.1, 0.05, 0.025)
DPS = 40
TERM_CAP = 200_000
RATIO_WINDOW = (0.3, 0.8)
SMALL = 1e-3


@dataclass(frozen=True)
class AsymptoticCase:
    id: str
    item: int
    power: int  # e in (q)_inf^e
    scale_t: bool  # residual uses t * quantity
    log_mult: int  # model m (gamma - log t); 0 means the constant 1
    description: str

    def model(self, t):
        t = mpmath.mpf(t)
        if self.log_mult:
            return self.log_mult * (mpmath.euler - mpmath.log(t))
        return mpmath.mpf(1)


CASES = {
    c.id: c
    for c in (
        AsymptoticCase("A2", 1, 1, True, 0, "(q) H_A2 = 1/t + O(1)"),
        AsymptoticCase("A3", 2, 2, False, 0, "(q)^2 H_A3 = 1 + O(t)"),
        AsymptoticCase("A4", 3, 2, True, 1, "(q)^2 H_A4 = (gamma - log t)/t + O(1)"),
        AsymptoticCase("A5", 4, 3, False, 0, "(q)^3 H_A5 = 1 + O(t)"),
        AsymptoticCase("A6", 5, 3, True, 2, "(q)^3 H_A6 = 2(gamma - log t)/t + O(1)"),
        AsymptoticCase("A7", 6, 4, False, 0, "(q)^4 H_A7 = 1 + O(t)"),
        AsymptoticCase("A8", 7, 4, True, 3, "(q)^4 H_A8 = 3(gamma - log t)/t + O(1)"),
    )
}


# ---------------------------------------------------------------------------
# numeric building blocks at q = exp(-t)


def _cap(t) -> int:
    # q^n < 10^-(DPS) once n > DPS * log(10) / t
    n = int(DPS * 2.31 / t) + 10
    if n > TERM_CAP:
        raise PrecisionLoss(f"t = {t} needs about {n} terms, above the cap of {TERM_CAP}")
    return n


def _blocks(t):
    """(q, (q)_inf, D(q), G(q)) at q = exp(-t)."""
    with mpmath.workdps(DPS):
        t = mpmath.mpf(t)
        q = mpmath.exp(-t)
        n_max = _cap(float(t))
        eps = mpmath.mpf(10) ** (-DPS + 5)
        D = mpmath.mpf(0)
        qn = mpmath.mpf(1)
        for n in range(1, n_max + 1):
            qn *= q
            term = qn / (1 - qn)
            D += term
            if term < eps * D:
                break
        else:
            raise PrecisionLoss("divisor sum did not reach the cutoff")
        # partial products (q)_n decrease to (q)_inf; collect them once
        parts = [mpmath.mpf(1)]
        qn = mpmath.mpf(1)
        for n in range(1, n_max + 1):
            qn *= q
            parts.append(parts[-1] * (1 - qn))
            if qn < eps:
                break
        else:
            raise PrecisionLoss("product did not reach the cutoff")
        pinf = parts[-1]
        # (q)_n - (q)_inf is below eps once q^(n+1) is; ascending order of magnitude
        G = mpmath.fsum(reversed([p - pinf for p in parts]))
        return q, pinf, D, G


def eval_case(case: str | AsymptoticCase, t) -> mpmath.mpf:
    """(q)_inf^e * H_{A_k}(q) at q = exp(-t)."""
    c = CASES[case] if isinstance(case, str) else case
    with mpmath.workdps(DPS):
        q, P, D, G = _blocks(t)
        k = int(c.id[1:])
        if k == 2:
            return 1 / (1 - q)
        if k == 3:
            return (1 - P) / q
        if k == 4:
            return D / q
        if k == 5:
            return G / q
        if k == 6:
            return (2 * D - 1 + P) / q
        if k == 7:
            return (-1 + P * D + G + P) / (q * (1 - q))
        return (-1 + P + 3 * D - 2 * G) / (q * q)


def series_model(case: str, N: int) -> Series:
    """The same closed form as an exact truncated series (used for cross-checks)."""
    k = int(case[1:])
    P = qinf(N + 2)
    D = lambert_sum(0, 1, N + 2)
    G = sum_of_tails(N + 2)
    geo = (1 - Series.monomial(1)).invert(order=N + 2)
    body = {
        2: geo.shift(1),
        3: 1 - P,
        4: D,
        5: G,
        6: 2 * D - 1 + P,
        7: geo * (-1 + P * D + G + P),
        8: (-1 + P + 3 * D - 2 * G).shift(-1),
    }[k]
    return body.shift(-1).truncate(N)


@dataclass
class CaseVerdict:
    case: str
    grid: list
    residuals: list
    ratios: list
    verdict: str
    values: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def as_dict(self) -> dict:
        fmt = lambda x: mpmath.nstr(x, 15)
        return {
            "case": self.case,
            "t": [fmt(mpmath.mpf(t)) for t in self.grid],
            "values": [fmt(v) for v in self.values],
            "residuals": [fmt(r) for r in self.residuals],
            "ratios": [fmt(r) for r in self.ratios],
            "verdict": self.verdict,
        }


def residual(case: str | AsymptoticCase, t):
    c = CASES[case] if isinstance(case, str) else case
    with mpmath.workdps(DPS):
        v = eval_case(c, t)
        scaled = v * mpmath.mpf(t) if c.scale_t else v
        return v, scaled - c.model(t)


def check_case(case: str, grid=DEFAULT_GRID) -> CaseVerdict:
    c = CASES[case]
    grid = [float(t) for t in grid]
    if len(grid) < 2:
        values, res = [], []
        for t in grid:
            v, r = residual(c, t)
            values.append(v)
            res.append(r)
        return CaseVerdict(case, grid, res, [], "insufficient-grid", values)
    if any(b >= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly descending")
    values, res = [], []
    for t in grid:
        v, r = residual(c, t)
        values.append(v)
        res.append(r)
    ratios = [abs(b) / abs(a) if a else mpmath.inf for a, b in zip(res, res[1:])]
    lo, hi = RATIO_WINDOW
    small = all(abs(r) < SMALL for r in res)
    decays = all(lo <= x <= hi for x in ratios)
    return CaseVerdict(case, grid, res, ratios, "pass" if (decays or small) else "fail", values)


def fit_conjecture(case: str, grid=DEFAULT_GRID) -> dict:
    """Least-squares constants for the conjectured shape (no pass/fail meaning).

    Odd paths: quantity ~ b + b1 t.  Even paths: t * quantity ~ a + c log t + a1 t.
    """
    c = CASES[case]
    with mpmath.workdps(DPS):
        ts = [mpmath.mpf(t) for t in grid]
        ys = [eval_case(c, t) * (t if c.scale_t else 1) for t in ts]
        if c.scale_t:
            A = mpmath.matrix([[1, mpmath.log(t), t] for t in ts])
            names = ("a", "c", "a1")
        else:
            A = mpmath.matrix([[1, t] for t in ts])
            names = ("b", "b1")
        sol = mpmath.qr_solve(A, mpmath.matrix(ys))[0]
        return {n: mpmath.nstr(sol[i], 15) for i, n in enumerate(names)}
