"""Graded dimensions of arc algebras of quadratic monomial rings.

Write y[j, k] for the jet variable x_{j,(-k)}; it has degree k and the
derivation acts by T y[j, k] = -k y[j, k + 1].  The differential ideal of a
relation y[i,1] y[j,1] is spanned in degree d by the products
(monomial of degree d - 2 - s) * T^s(y[i,1] y[j,1]).  Every such product keeps
the number of variables carrying each letter j, so the degree-d piece splits
into independent blocks indexed by that letter-count vector.  Each block is
reduced by sparse Gaussian elimination.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product

import sympy

from .errors import BudgetExceeded, SpecViolation
from .graphs import Graph, GraphSeriesSpec, evaluate

__all__ = [
    "JetPresentation",
    "GradedDimensionTable",
    "jet_generators",
    "hilbert_series",
    "compare_with_graph_series",
    "JetComparison",
    "MAX_DEGREE",
    "EXACT_MAX_DEGREE",
]

MAX_DEGREE = 14
EXACT_MAX_DEGREE = 8


@dataclass(frozen=True)
class JetPresentation:
    """ell variables (numbered from 1) with relations x_i x_j = 0."""

    ell: int
    relations: tuple = ()
    max_degree: int = 10

    def __post_init__(self):
        rels = []
        for i, j in self.relations:
            if not (1 <= i <= self.ell and 1 <= j <= self.ell):
                raise SpecViolation(f"relation {(i, j)} outside 1..{self.ell}")
            pair = (min(i, j), max(i, j))
            if pair in rels:
                raise SpecViolation(f"duplicate relation {pair}")
            rels.append(pair)
        object.__setattr__(self, "relations", tuple(rels))

    @classmethod
    def from_graph(cls, graph: Graph, max_degree: int = 10) -> "JetPresentation":
        rels = []
        for i, j, mult in graph.edges():
            if mult != 1:
                raise SpecViolation("multiple edges have no quadratic monomial presentation")
            rels.append((i + 1, j + 1))
        for i in range(graph.r):
            if graph.C[i][i]:
                rels.append((i + 1, i + 1))
        return cls(graph.r, tuple(rels), max_degree)

    @classmethod
    def fat_point(cls, max_degree: int = 12) -> "JetPresentation":
        return cls(1, ((1, 1),), max_degree)

    @classmethod
    def free(cls, ell: int, max_degree: int = 8) -> "JetPresentation":
        return cls(ell, (), max_degree)

    def without(self, relation) -> "JetPresentation":
        rel = (min(relation), max(relation))
        return JetPresentation(self.ell, tuple(r for r in self.relations if r != rel), self.max_degree)


@dataclass
class GradedDimensionTable:
    dims: list
    primes: list = field(default_factory=list)
    certification: str = "single-prime"

    def as_dict(self) -> dict:
        return {"dims": list(self.dims), "primes": list(self.primes), "certification": self.certification}


# ---------------------------------------------------------------------------
# monomials


@lru_cache(maxsize=None)
def _partitions(total: int, parts: int, largest: int) -> tuple:
    """Nonincreasing tuples of ``parts`` positive integers summing to ``total``, each <= largest."""
    if parts == 0:
        return ((),) if total == 0 else ()
    if total < parts:
        return ()
    out = []
    for first in range(min(largest, total - parts + 1), 0, -1):
        for rest in _partitions(total - first, parts - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def _monomials(counts: tuple, d: int) -> list:
    """Monomials of weighted degree d with counts[j] variables of letter j.

    A monomial is a sorted tuple of (letter, k) pairs (letters 0-indexed).
    """
    ell = len(counts)
    out = []

    def rec(j: int, left: int, acc: tuple):
        if j == ell:
            if left == 0:
                out.append(tuple(sorted(acc)))
            return
        c = counts[j]
        rest_min = sum(counts[j + 1 :])
        for dj in range(c, left - rest_min + 1):
            for part in _partitions(dj, c, dj):
                rec(j + 1, left - dj, acc + tuple((j, k) for k in part))

    rec(0, d, ())
    return out


def _count_vectors(ell: int, d: int):
    """All letter-count vectors with total variable count <= d."""
    for counts in product(range(d + 1), repeat=ell):
        if 0 < sum(counts) <= d:
            yield counts


def _merge(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b))


def _block_rows(pres: JetPresentation, counts: tuple, d: int, unit: bool):
    """Generator rows of degree d inside one letter-count block."""
    for i1, j1 in pres.relations:
        i, j = i1 - 1, j1 - 1
        rest = list(counts)
        rest[i] -= 1
        rest[j] -= 1
        if min(rest) < 0:
            continue
        rest = tuple(rest)
        for s in range(0, d - 1):
            scale = 1 if unit else (-1) ** s * math.factorial(s)
            core: dict = {}
            for a in range(s + 1):
                mono = tuple(sorted(((i, a + 1), (j, s - a + 1))))
                core[mono] = core.get(mono, 0) + scale
            for mult in _monomials(rest, d - 2 - s):
                yield {_merge(mult, m): c for m, c in core.items()}


def jet_generators(pres: JetPresentation, d: int, unit_coefficients: bool = False) -> list:
    """All products (monomial) * T^s(relation) of weighted degree d, as sparse rows."""
    if d < 2:
        return []
    rows = []
    for counts in _count_vectors(pres.ell, d):
        rows.extend(_block_rows(pres, counts, d, unit_coefficients))
    return rows


# ---------------------------------------------------------------------------
# elimination


def _rank_mod_p(rows, p: int) -> int:
    pivots: dict = {}
    for row in rows:
        r = {k: v % p for k, v in row.items() if v % p}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(r[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in r.items()}
                break
            f = r[lead]
            for k, v in piv.items():
                nv = (r.get(k, 0) - f * v) % p
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def _rank_exact(rows) -> int:
    pivots: dict = {}
    for row in rows:
        r = {k: Fraction(v) for k, v in row.items() if v}
        while r:
            lead = min(r)
            piv = pivots.get(lead)
            if piv is None:
                inv = 1 / r[lead]
                pivots[lead] = {k: v * inv for k, v in r.items()}
                break
            f = r[lead]
            for k, v in piv.items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return len(pivots)


def _degree_dimension(args) -> tuple:
    pres, d, primes, exact, unit = args
    if d == 0:
        return 1, [1] * len(primes), 1
    total = 0
    ranks = [0] * len(primes)
    exact_rank = 0
    for counts in _count_vectors(pres.ell, d):
        cols = len(_monomials(counts, d))
        if not cols:
            continue
        total += cols
        rows = list(_block_rows(pres, counts, d, unit))
        if not rows:
            continue
        for t, p in enumerate(primes):
            ranks[t] += _rank_mod_p(rows, p)
        if exact:
            exact_rank += _rank_exact(rows)
    dims = [total - r for r in ranks]
    return total, dims, (total - exact_rank) if exact else None


def random_primes(count: int, seed: int = 0, bits: int = 62) -> list:
    rng = random.Random(seed)
    out: list = []
    while len(out) < count:
        p = int(sympy.nextprime(rng.getrandbits(bits) | (1 << (bits - 1))))
        if p not in out:
            out.append(p)
    return out


def hilbert_series(
    pres: JetPresentation,
    mode: str = "dual-prime",
    seed: int = 0,
    jobs: int = 1,
    unit_coefficients: bool = False,
) -> GradedDimensionTable:
    """dim J_inf(R)_(d) for d = 0..pres.max_degree."""
    D = pres.max_degree
    if D > MAX_DEGREE:
        raise BudgetExceeded(f"max degree {D} exceeds the budget of {MAX_DEGREE}")
    if mode == "exact" and D > EXACT_MAX_DEGREE:
        raise BudgetExceeded(f"exact mode is limited to degree {EXACT_MAX_DEGREE}")
    if mode == "single-prime":
        primes = random_primes(1, seed)
    elif mode in ("dual-prime", "exact"):
        primes = random_primes(2, seed)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    exact = mode == "exact"
    tasks = [(pres, d, primes, exact, unit_coefficients) for d in range(D + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_degree_dimension, tasks))
    else:
        results = [_degree_dimension(t) for t in tasks]
    dims = []
    agree = True
    for _, modular, exact_dim in results:
        if exact:
            dims.append(exact_dim)
            agree = agree and all(m == exact_dim for m in modular)
        else:
            # a modular rank can only drop, so the smallest dimension is the safest
            dims.append(min(modular))
            agree = agree and len(set(modular)) == 1
    if mode == "single-prime":
        cert = "single-prime"
    elif exact:
        cert = "exact-rational" if agree else "exact-rational (modular ranks disagreed)"
    else:
        cert = "dual-prime" if agree else "dual-prime disagreement"
    return GradedDimensionTable(dims, primes, cert)


@dataclass
class JetComparison:
    matches: bool
    degrees: int
    jet_dims: list
    graph_coeffs: list
    mismatch_degree: int | None = None
    certification: str = ""

    def as_dict(self) -> dict:
        return {
            "matches": self.matches,
            "max_degree": self.degrees,
            "jet_dims": list(self.jet_dims),
            "graph_series": [str(c) for c in self.graph_coeffs],
            "mismatch_degree": self.mismatch_degree,
            "certification": self.certification,
        }


def compare_with_graph_series(
    pres: JetPresentation, spec: GraphSeriesSpec, mode: str = "dual-prime", seed: int = 0
) -> JetComparison:
    table = hilbert_series(pres, mode=mode, seed=seed)
    D = pres.max_degree
    s = evaluate(spec, D)
    coeffs = [s.coeff(k) for k in range(D + 1)]
    bad = next((d for d in range(D + 1) if coeffs[d] != table.dims[d]), None)
    return JetComparison(bad is None, D, table.dims, coeffs, bad, table.certification)
