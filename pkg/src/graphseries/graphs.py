"""Graph series sum_n q^(n C n^T / 2 + b.n) / prod (q)_(n_i), two ways.

``evaluate_enumerate`` walks the lattice depth first and prunes on the partial
exponent.  ``evaluate_tree_dp`` passes one-variable message tables along a
spanning tree (conditioning on one cycle node for unicyclic graphs).  Both work
on integer lattice indices (exponent * denom) with numpy arrays; int64 is used
whenever the coefficient bound from 1/(q)_inf^r fits, object arrays otherwise.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import SpecViolation, UnknownGraph, UnsupportedTopology
from .series import Series, as_fraction

__all__ = [
    "Graph",
    "GraphSeriesSpec",
    "evaluate_enumerate",
    "evaluate_tree_dp",
    "evaluate",
    "builtin",
    "BUILTINS",
    "load_graph",
]


@dataclass(frozen=True)
class Graph:
    r: int
    C: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        C = self.C
        if len(C) != self.r or any(len(row) != self.r for row in C):
            raise SpecViolation("adjacency matrix must be r x r")
        for i in range(self.r):
            if C[i][i] % 2:
                raise SpecViolation(f"diagonal entry C[{i}][{i}] must be even")
            for j in range(self.r):
                if C[i][j] < 0:
                    raise SpecViolation("edge multiplicities must be nonnegative")
                if C[i][j] != C[j][i]:
                    raise SpecViolation("adjacency matrix must be symmetric")

    @classmethod
    def from_edges(cls, r: int, edges, one_indexed: bool = True) -> "Graph":
        M = [[0] * r for _ in range(r)]
        for e in edges:
            i, j = e[0], e[1]
            mult = e[2] if len(e) > 2 else 1
            if one_indexed:
                i, j = i - 1, j - 1
            if not (0 <= i < r and 0 <= j < r):
                raise SpecViolation(f"edge {e} out of range for {r} nodes")
            if i == j:
                M[i][i] += 2 * mult
            else:
                M[i][j] += mult
                M[j][i] += mult
        return cls(r, tuple(tuple(row) for row in M))

    def edges(self) -> list[tuple[int, int, int]]:
        """0-indexed (i, j, multiplicity) with i < j."""
        return [(i, j, self.C[i][j]) for i in range(self.r) for j in range(i + 1, self.r) if self.C[i][j]]

    def permuted(self, perm) -> "Graph":
        """Relabel: new node k is old node perm[k]."""
        return Graph(self.r, tuple(tuple(self.C[perm[i]][perm[j]] for j in range(self.r)) for i in range(self.r)))

    def disjoint_union(self, other: "Graph") -> "Graph":
        r = self.r + other.r
        M = [[0] * r for _ in range(r)]
        for i in range(self.r):
            for j in range(self.r):
                M[i][j] = self.C[i][j]
        for i in range(other.r):
            for j in range(other.r):
                M[self.r + i][self.r + j] = other.C[i][j]
        return Graph(r, tuple(tuple(row) for row in M))

    def components(self) -> list[list[int]]:
        seen = [False] * self.r
        comps = []
        for s in range(self.r):
            if seen[s]:
                continue
            stack, comp = [s], []
            seen[s] = True
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in range(self.r):
                    if w != v and self.C[v][w] and not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def cycle_rank(self) -> int:
        """Independent cycles of the underlying simple graph (loops ignored)."""
        return len(self.edges()) - self.r + len(self.components())


@dataclass(frozen=True)
class GraphSeriesSpec:
    """Data of one multi-sum.

    ``offsets`` replaces (q)_(n_i) by (q)_(n_i + offsets[i]) in the
    denominators; plain graph series have all offsets 0.
    """

    graph: Graph
    b: tuple[Fraction, ...] = ()
    prefactor_exp: Fraction = Fraction(0)
    offsets: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        r = self.graph.r
        b = tuple(as_fraction(x) for x in self.b) if self.b else tuple(Fraction(1) for _ in range(r))
        if len(b) != r:
            raise SpecViolation(f"b has {len(b)} entries for {r} nodes")
        for x in b:
            if x < 1:
                raise SpecViolation(f"linear shift {x} < 1 breaks the truncation bound")
        off = tuple(self.offsets) if self.offsets else (0,) * r
        if len(off) != r or any(o < 0 for o in off):
            raise SpecViolation("offsets must be r nonnegative integers")
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "offsets", off)
        object.__setattr__(self, "prefactor_exp", as_fraction(self.prefactor_exp))

    @property
    def denom(self) -> int:
        d = self.prefactor_exp.denominator
        for x in self.b:
            d = math.lcm(d, x.denominator)
        return d

    def exponent(self, n) -> Fraction:
        C = self.graph.C
        r = self.graph.r
        e = Fraction(0)
        for i in range(r):
            e += self.b[i] * n[i] + Fraction(C[i][i], 2) * n[i] * n[i]
            for j in range(i + 1, r):
                e += C[i][j] * n[i] * n[j]
        return e

    def permuted(self, perm) -> "GraphSeriesSpec":
        return GraphSeriesSpec(
            self.graph.permuted(perm),
            tuple(self.b[p] for p in perm),
            self.prefactor_exp,
            tuple(self.offsets[p] for p in perm),
            self.name,
        )

    def with_b(self, b) -> "GraphSeriesSpec":
        return GraphSeriesSpec(self.graph, tuple(b), self.prefactor_exp, self.offsets, self.name)


# ---------------------------------------------------------------------------
# shared numeric helpers


def _coefficient_bound(r: int, N: int) -> int:
    """Coefficient of q^N in 1/(q)_inf^r; dominates every plain graph series."""
    c = [0] * (N + 1)
    c[0] = 1
    for _ in range(r):
        for k in range(1, N + 1):
            for i in range(k, N + 1):
                c[i] += c[i - k]
    return c[N] if N >= 0 else 1


def _dtype(spec: GraphSeriesSpec, N: int):
    if any(spec.offsets):
        return object
    return np.int64 if _coefficient_bound(spec.graph.r, max(N, 0)) < 2**62 else object


def _inverse_poch_table(nmax: int, L: int, D: int, offsets, dtype) -> dict:
    """{(n, off): 1/(q)_(n+off)} on the lattice, length L (index = exponent * D)."""
    tables = {}
    for off in sorted(set(offsets)):
        a = np.zeros(L, dtype=dtype)
        if L:
            a[0] = 1
        for k in range(1, off + 1):
            _divide_factor(a, k * D)
        tables[(0, off)] = a.copy()
        for n in range(1, nmax + 1):
            _divide_factor(a, (n + off) * D)
            tables[(n, off)] = a.copy()
    return tables


def _divide_factor(a: np.ndarray, k: int):
    """In place a <- a / (1 - q^k) on the lattice."""
    if k <= 0:
        raise ValueError("factor exponent must be positive")
    for r in range(min(k, len(a))):
        a[r::k] = np.cumsum(a[r::k])


def _conv(x: np.ndarray, y: np.ndarray, L: int) -> np.ndarray:
    if L <= 0:
        return x[:0]
    return np.convolve(x[:L], y[:L])[:L]


def _to_series(arr: np.ndarray, D: int, NN: int, prefactor: Fraction) -> Series:
    s = Series([int(v) for v in arr[: NN + 1]], 0, NN, D)
    return s.shift(prefactor) if prefactor else s


def _scaled_order(spec: GraphSeriesSpec, N) -> tuple[int, int]:
    D = spec.denom
    inner = as_fraction(N) - spec.prefactor_exp
    return D, math.floor(inner * D)


# ---------------------------------------------------------------------------
# enumeration


def _search_order(graph: Graph) -> list[int]:
    """Greedy order: next node has most edges into the already placed set."""
    r = graph.r
    order: list[int] = []
    rest = set(range(r))
    while rest:
        best = max(sorted(rest), key=lambda v: (sum(graph.C[v][u] for u in order), sum(graph.C[v])))
        order.append(best)
        rest.remove(best)
    return order


def _enumerate_core(spec: GraphSeriesSpec, NN: int, first_values=None) -> np.ndarray:
    D = spec.denom
    r = spec.graph.r
    C = spec.graph.C
    dtype = _dtype(spec, NN // D + 1)
    L = NN + 1
    acc = np.zeros(max(L, 0), dtype=dtype)
    if L <= 0:
        return acc
    b = [int(x * D) for x in spec.b]
    diag = [C[i][i] * D // 2 for i in range(r)]
    quad = [[C[i][j] * D for j in range(r)] for i in range(r)]
    nmax = NN // min(b)
    inv = _inverse_poch_table(nmax, L, D, spec.offsets, dtype)
    off = spec.offsets
    ns = [0] * r
    one = np.zeros(L, dtype=dtype)
    one[0] = 1
    leaves: dict[int, np.ndarray] = {}

    def add_of(k, n):
        lin = b[k] + sum(quad[k][j] * ns[j] for j in range(k))
        return lin * n + diag[k] * n * n

    def rec(k: int, E: int, P: np.ndarray):
        rem = NN - E + 1
        if k == r - 1:
            # last coordinate is summed before the product; the sum depends on
            # the earlier coordinates only through the linear coefficient
            lin = b[k] + sum(quad[k][j] * ns[j] for j in range(k))
            leaf = leaves.get(lin)
            if leaf is None:
                leaf = np.zeros(L, dtype=dtype)
                n = 0
                while lin * n + diag[k] * n * n < L:
                    e = lin * n + diag[k] * n * n
                    leaf[e:] += inv[(n, off[k])][: L - e]
                    n += 1
                leaves[lin] = leaf
            acc[E:] += _conv(P, leaf, rem)
            return
        # C >= 0 and b >= 1 make the exponent strictly increasing in n_k
        values = first_values if (k == 0 and first_values is not None) else range(nmax + 1)
        for n in values:
            e = add_of(k, n)
            if e >= rem:
                break
            ns[k] = n
            rec(k + 1, E + e, _conv(P, inv[(n, off[k])], rem - e))
        ns[k] = 0

    rec(0, 0, one)
    return acc


def _enumerate_chunk(args):
    spec, NN, values = args
    return _enumerate_core(spec, NN, values)


def evaluate_enumerate(spec: GraphSeriesSpec, N, jobs: int = 1) -> Series:
    """Branch-and-bound sum over every lattice point with exponent <= N."""
    order = _search_order(spec.graph)
    s = spec.permuted(order)
    D, NN = _scaled_order(s, N)
    if NN < 0:
        return Series.zero(N)
    if jobs > 1 and s.graph.r > 1:
        nmax = NN // min(int(x * D) for x in s.b)
        chunks = [list(range(i, nmax + 1, jobs)) for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_enumerate_chunk, [(s, NN, c) for c in chunks if c]))
        acc = parts[0]
        for p in parts[1:]:
            acc = acc + p
    else:
        acc = _enumerate_core(s, NN)
    return _to_series(acc, D, NN, s.prefactor_exp)


# ---------------------------------------------------------------------------
# transfer / message passing


def _tree_core(spec: GraphSeriesSpec, NN: int, dtype, D: int) -> np.ndarray:
    """Forest evaluation on lattice indices 0..NN (index = exponent * D)."""
    g = spec.graph
    r = g.r
    L = NN + 1
    if L <= 0:
        return np.zeros(0, dtype=dtype)
    b = [int(x * D) for x in spec.b]
    nmax = NN // min(b) if r else 0
    inv = _inverse_poch_table(nmax, L, D, spec.offsets, dtype)
    result = np.zeros(L, dtype=dtype)
    result[0] = 1
    for comp in g.components():
        root = comp[0]
        parent = {root: None}
        order = [root]
        for v in order:
            for w in comp:
                if w != v and g.C[v][w] and w not in parent:
                    parent[w] = v
                    order.append(w)
        messages: dict[int, list[np.ndarray]] = {}
        root_total = None
        for v in reversed(order):
            children = [w for w in comp if parent.get(w) == v]
            W = []
            for n in range(nmax + 1):
                e = b[v] * n + g.C[v][v] * D // 2 * n * n
                if e > NN:
                    break
                w = np.zeros(L, dtype=dtype)
                w[e:] = inv[(n, spec.offsets[v])][: L - e]
                for ch in children:
                    w = _conv(w, messages[ch][n], L)
                W.append(w)
            p = parent[v]
            if p is None:
                root_total = np.sum(W, axis=0) if W else np.zeros(L, dtype=dtype)
                break
            c = g.C[v][p] * D
            # parent value m only matters while its own exponent m*b_p <= NN
            mmax = NN // b[p]
            msg = []
            for m in range(mmax + 1):
                M = np.zeros(L, dtype=dtype)
                for n, w in enumerate(W):
                    s = c * n * m
                    if s > NN:
                        break
                    M[s:] += w[: L - s]
                msg.append(M)
            messages[v] = msg
            for ch in children:
                del messages[ch]
        result = _conv(result, root_total, L)
    return result


def _find_cycle_node(g: Graph) -> int:
    """A node lying on the unique cycle of a unicyclic component."""
    deg = [sum(1 for w in range(g.r) if w != v and g.C[v][w]) for v in range(g.r)]
    alive = set(range(g.r))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if deg[v] <= 1:
                alive.remove(v)
                for w in range(g.r):
                    if w != v and g.C[v][w] and w in alive:
                        deg[w] -= 1
                changed = True
    if not alive:
        raise UnsupportedTopology("no cycle found")
    return min(alive)


def _drop_node(spec: GraphSeriesSpec, v: int, value: int) -> GraphSeriesSpec:
    keep = [i for i in range(spec.graph.r) if i != v]
    C = spec.graph.C
    g = Graph(len(keep), tuple(tuple(C[i][j] for j in keep) for i in keep))
    b = tuple(spec.b[i] + C[v][i] * value for i in keep)
    return GraphSeriesSpec(g, b, Fraction(0), tuple(spec.offsets[i] for i in keep))


def evaluate_tree_dp(spec: GraphSeriesSpec, N) -> Series:
    """Message passing on forests; one conditioned node for unicyclic graphs."""
    g = spec.graph
    rank = g.cycle_rank()
    D, NN = _scaled_order(spec, N)
    if NN < 0:
        return Series.zero(N)
    dtype = _dtype(spec, NN // D + 1)
    if rank == 0:
        acc = _tree_core(spec, NN, dtype, D)
    elif rank == 1:
        v = _find_cycle_node(g)
        bv = int(spec.b[v] * D)
        L = NN + 1
        acc = np.zeros(L, dtype=dtype)
        inv = _inverse_poch_table(NN // bv, L, D, [spec.offsets[v]], dtype)
        t = 0
        while True:
            e = bv * t + g.C[v][v] * D // 2 * t * t
            if e > NN:
                break
            rest = _drop_node(spec, v, t)
            sub = _tree_core(rest, NN - e, dtype, D) if rest.graph.r else None
            head = inv[(t, spec.offsets[v])][: NN - e + 1]
            if rest.graph.r == 0:
                sub = np.zeros(NN - e + 1, dtype=dtype)
                sub[0] = 1
            acc[e:] += _conv(head, sub, NN - e + 1)
            t += 1
    else:
        raise UnsupportedTopology(f"graph has {rank} independent cycles; use the enumerator")
    return _to_series(acc, D, NN, spec.prefactor_exp)


def evaluate(spec: GraphSeriesSpec, N, method: str = "auto", jobs: int = 1) -> Series:
    if method == "enumerate":
        return evaluate_enumerate(spec, N, jobs=jobs)
    if method == "tree-dp":
        return evaluate_tree_dp(spec, N)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if spec.graph.cycle_rank() <= 1:
        return evaluate_tree_dp(spec, N)
    return evaluate_enumerate(spec, N, jobs=jobs)


@lru_cache(maxsize=256)
def cached_enumerate(spec: GraphSeriesSpec, N: int) -> Series:
    return evaluate_enumerate(spec, N)


# ---------------------------------------------------------------------------
# builtins


def _path(k):
    return [(i, i + 1) for i in range(1, k)]


def _cycle(k):
    return _path(k) + [(k, 1)]


def _star(ell):
    return [(1, i) for i in range(2, ell + 2)]


_GRAPHS = {
    **{f"A{k}": (k, _path(k)) for k in range(1, 9)},
    "D4": (4, [(1, 2), (1, 3), (1, 4)]),
    "D5": (5, [(1, 2), (1, 3), (1, 4), (4, 5)]),
    "E6": (6, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 6)]),
    "C3": (3, _cycle(3)),
    "C4": (4, _cycle(4)),
    "C5": (5, [(1, 2), (1, 5), (2, 3), (3, 4), (4, 5)]),
    "Gamma8": (8, [(1, 2), (1, 5), (1, 6), (2, 3), (2, 7), (3, 4), (3, 6), (4, 5), (6, 8), (7, 8)]),
    "B2": (2, [(1, 2, 2)]),
    "B3": (3, [(1, 2, 2), (2, 3)]),
    **{f"X{ell}": (ell + 1, _star(ell)) for ell in range(2, 7)},
    "HGRAPH": (6, [(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)]),
    # exponent exactly as recorded for T2: six edges among nodes 1-6, node 7 isolated
    "T2": (7, [(1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5)]),
    # affine E6: centre 1 with three arms of length two
    "T2TREE": (7, [(1, 2), (2, 3), (1, 4), (4, 5), (1, 6), (6, 7)]),
}

# coset / shifted variants: (base graph, b)
_VARIANTS = {
    "F1": ("B2", (1, 1)),
    "F2": ("B2", (1, 2)),
    "F3": ("B2", (2, 2)),
    "B3H1": ("B3", (1, 2, 1)),
    "B3H2": ("B3", (1, 1, 1)),
    "C3COSET": ("C3", (2, 1, 1)),
    "C5P2": ("C5", (2, 1, 1, 1, 1)),
    "C5P3": ("C5", (1, 2, 1, 1, 2)),
}

BUILTINS = sorted(list(_GRAPHS) + list(_VARIANTS))


def builtin(name: str) -> GraphSeriesSpec:
    if name in _GRAPHS:
        r, edges = _GRAPHS[name]
        return GraphSeriesSpec(Graph.from_edges(r, edges), name=name)
    if name in _VARIANTS:
        base, b = _VARIANTS[name]
        r, edges = _GRAPHS[base]
        return GraphSeriesSpec(Graph.from_edges(r, edges), tuple(Fraction(x) for x in b), name=name)
    raise UnknownGraph(f"no builtin graph {name!r}; known: {', '.join(BUILTINS)}")


def load_graph(ref: str) -> GraphSeriesSpec:
    """``builtin:NAME`` or a path to a JSON graph file."""
    if ref.startswith("builtin:"):
        return builtin(ref.split(":", 1)[1])
    data = json.loads(Path(ref).read_text())
    return spec_from_json(data)


def spec_from_json(data: dict) -> GraphSeriesSpec:
    r = int(data["r"])
    edges = [tuple(e) for e in data.get("edges", [])]
    b = tuple(as_fraction(x) for x in data["b"]) if data.get("b") else ()
    pre = as_fraction(data.get("prefactor_exp", 0))
    return GraphSeriesSpec(Graph.from_edges(r, edges), b, pre)


def spec_to_json(spec: GraphSeriesSpec) -> dict:
    out = {
        "r": spec.graph.r,
        "edges": [[i + 1, j + 1, m] for i, j, m in spec.graph.edges()]
        + [[i + 1, i + 1, spec.graph.C[i][i] // 2] for i in range(spec.graph.r) if spec.graph.C[i][i]],
        "b": [str(x) for x in spec.b],
    }
    if spec.prefactor_exp:
        out["prefactor_exp"] = str(spec.prefactor_exp)
    return out
