"""Brute-force traces straight from the rooted-edge expansion.

A d-tuple of rooted edges ``e(v)`` with non-decreasing roots defines a
multi-digraph R(F) in which each root points at the other m-1 vertices of
its edge.  The trace is

    Tr_d(H) = d (m-1)^n  sum_{F : R(F) Eulerian}  tau(F) / prod_v d_v^+(F),

with tau(F) the number of spanning arborescences of R(F).  Tuples that only
differ in the order of equally-rooted edges share R(F), so the oracle walks
multisets of rooted edges and multiplies by the number of such orderings.
None of this depends on the closed forms in :mod:`hypertrace.traces`.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import InputError, ResourceLimitError
from .hypergraph import Hypergraph

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "HYPERTRACE_BUDGET"


def default_budget() -> int:
    """The candidate-multiset cap: ``$HYPERTRACE_BUDGET`` if set, else 10^7."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise InputError(f"{BUDGET_ENV} must be positive")
    return value


@dataclass(frozen=True)
class RootedEdgeMultiset:
    """Multiplicities of rooted edges ``(edge index, root)`` over a host hypergraph."""

    host: Hypergraph
    counts: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        for (i, v), c in self.counts:
            if v not in self.host.edges[i]:
                raise InputError(f"root {v} is not a vertex of edge {i}")
            if c < 1:
                raise InputError("multiplicities must be positive")

    @classmethod
    def from_mapping(cls, host: Hypergraph, counts: dict[tuple[int, int], int]) -> RootedEdgeMultiset:
        return cls(host, tuple(sorted((k, c) for k, c in counts.items() if c)))

    @property
    def d(self) -> int:
        return sum(c for _, c in self.counts)

    def root_counts(self) -> dict[int, int]:
        r: Counter[int] = Counter()
        for (_, v), c in self.counts:
            r[v] += c
        return dict(r)

    def edge_multiplicities(self) -> dict[int, int]:
        mult: Counter[int] = Counter()
        for (i, _), c in self.counts:
            mult[i] += c
        return dict(mult)

    def ordering_count(self) -> int:
        """Number of d-tuples with non-decreasing roots that collapse to this multiset."""
        total = 1
        for r in self.root_counts().values():
            total *= factorial(r)
        for _, c in self.counts:
            total //= factorial(c)
        return total


@dataclass
class MultiDigraph:
    vertices: tuple[int, ...]
    arcs: dict[tuple[int, int], int] = field(default_factory=dict)

    def out_degree(self, v: int) -> int:
        return sum(c for (a, _), c in self.arcs.items() if a == v)

    def in_degree(self, v: int) -> int:
        return sum(c for (_, b), c in self.arcs.items() if b == v)


def build_R(f: RootedEdgeMultiset) -> MultiDigraph:
    """Union of the rooted stars: ``c`` copies of ``v -> u`` for every other u in the edge."""
    arcs: Counter[tuple[int, int]] = Counter()
    verts = set()
    for (i, v), c in f.counts:
        e = f.host.edges[i]
        verts.update(e)
        for u in e:
            if u != v:
                arcs[(v, u)] += c
    return MultiDigraph(tuple(sorted(verts)), dict(arcs))


def is_eulerian(g: MultiDigraph) -> bool:
    """Balanced at every vertex and all arcs in one weakly connected component."""
    if not g.arcs:
        return False
    bal = Counter()
    nb: dict[int, set[int]] = {v: set() for v in g.vertices}
    for (a, b), c in g.arcs.items():
        bal[a] += c
        bal[b] -= c
        nb[a].add(b)
        nb[b].add(a)
    if any(bal.values()):
        return False
    touched = [v for v in g.vertices if nb[v]]
    seen = {touched[0]}
    stack = [touched[0]]
    while stack:
        x = stack.pop()
        for y in nb[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(touched)


def integer_determinant(rows: list[list[int]]) -> int:
    """Bareiss fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def arborescence_count(g: MultiDigraph, root: int) -> int:
    """Spanning arborescences with every vertex having a directed path to ``root``.

    Computed as the principal minor of L = D_out - A obtained by deleting
    ``root``'s row and column.
    """
    if root not in g.vertices:
        raise InputError(f"root {root} is not a vertex of the digraph")
    others = [v for v in g.vertices if v != root]
    pos = {v: i for i, v in enumerate(others)}
    lap = [[0] * len(others) for _ in others]
    for (a, b), c in g.arcs.items():
        if a == root:
            continue
        lap[pos[a]][pos[a]] += c
        if b != root:
            lap[pos[a]][pos[b]] -= c
    return integer_determinant(lap)


def _term(f: RootedEdgeMultiset) -> Fraction:
    """ordering_count * tau(F) / prod_v d_v^+(F) for an Eulerian multiset, else 0."""
    g = build_R(f)
    if not is_eulerian(g):
        return Fraction(0)
    m = f.host.m
    denom = 1
    for r in f.root_counts().values():
        denom *= (m - 1) * r
    return Fraction(f.ordering_count() * arborescence_count(g, g.vertices[0]), denom)


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceLimitError(
                f"oracle enumeration exceeded its budget of {self.limit} candidate multisets",
                self.limit,
            )


def _rootings(host: Hypergraph, mult: dict[int, int], budget: _Budget) -> Iterator[RootedEdgeMultiset]:
    """All ways of rooting ``mult[i]`` copies of each edge i that balance R(F).

    Balance at v needs (m-1) r_v = (sum of multiplicities at v) - r_v, i.e.
    r_v = deg(v) / m; assignments that overshoot are cut early.  Weak
    connectivity is left to :func:`is_eulerian`.
    """
    m = host.m
    deg: Counter[int] = Counter()
    for i, c in mult.items():
        for v in host.edges[i]:
            deg[v] += c
    if any(x % m for x in deg.values()):
        return
    target = {v: x // m for v, x in deg.items()}
    order = sorted(mult)
    used: Counter[int] = Counter()
    counts: dict[tuple[int, int], int] = {}

    def per_edge(k: int):
        if k == len(order):
            if all(used[v] == target[v] for v in target):
                budget.tick()
                yield RootedEdgeMultiset.from_mapping(host, counts)
            return
        i = order[k]
        yield from per_vertex(k, host.edges[i], 0, mult[i])

    def per_vertex(k: int, edge: tuple[int, ...], j: int, left: int):
        v = edge[j]
        room = target[v] - used[v]
        if j == len(edge) - 1:
            if left <= room:
                _put(k, v, left)
                yield from per_edge(k + 1)
                _put(k, v, -left)
            return
        for c in range(min(left, room) + 1):
            _put(k, v, c)
            yield from per_vertex(k, edge, j + 1, left - c)
            _put(k, v, -c)

    def _put(k: int, v: int, c: int):
        if c:
            key = (order[k], v)
            used[v] += c
            counts[key] = counts.get(key, 0) + c
            if not counts[key]:
                del counts[key]

    yield from per_edge(0)


def _edge_multiplicity_vectors(k: int, d: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        yield (d,)
        return
    for c in range(d + 1):
        for rest in _edge_multiplicity_vectors(k - 1, d - c):
            yield (c,) + rest


def _partial_sum(host: Hypergraph, d: int, first: int, budget_limit: int) -> tuple[Fraction, int]:
    budget = _Budget(budget_limit)
    total = Fraction(0)
    k = host.num_edges
    rest = (_edge_multiplicity_vectors(k - 1, d - first) if k > 1 else ([()] if first == d else []))
    for tail in rest:
        vec = (first,) + tuple(tail)
        budget.tick()
        mult = {i: c for i, c in enumerate(vec) if c}
        for f in _rootings(host, mult, budget):
            total += _term(f)
    return total, budget.used


def multiset_count(h: Hypergraph, d: int) -> int:
    """Number of size-d multisets of rooted edges; the size of the raw search space."""
    kinds = h.num_edges * h.m
    return comb(d + kinds - 1, d) if kinds else 0


def trace_bruteforce(h: Hypergraph, d: int, budget: int | None = None, jobs: int = 1) -> Fraction:
    """Tr_d(h) by exhaustive enumeration of rooted-edge multisets; any hypergraph.

    ``budget`` caps the number of candidate multisets examined;
    :class:`ResourceLimitError` reports the bound when it is hit.  ``jobs > 1``
    splits the search by the multiplicity of the first edge across processes.
    """
    if d < 0:
        raise InputError("d must be nonnegative")
    limit = default_budget() if budget is None else budget
    if limit < 1:
        raise InputError("budget must be positive")
    if d == 0:
        return Fraction(h.n * (h.m - 1) ** (h.n - 1))
    if not h.num_edges:
        return Fraction(0)
    parts = []
    spent = 0
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_partial_sum, [h] * (d + 1), [d] * (d + 1), range(d + 1), [limit] * (d + 1)))
        for value, used in results:
            parts.append(value)
            spent += used
        if spent > limit:
            raise ResourceLimitError(
                f"oracle enumeration exceeded its budget of {limit} candidate multisets", limit
            )
    else:
        for first in range(d + 1):
            value, used = _partial_sum(h, d, first, limit - spent)
            parts.append(value)
            spent += used
    total = sum(parts, Fraction(0))
    return d * (h.m - 1) ** h.n * total


def euler_rootings_multi(host: Hypergraph, multiplicities: dict[int, int]) -> Iterator[RootedEdgeMultiset]:
    """Euler rootings (as root-count assignments) of an arbitrary multi-hypergraph."""
    budget = _Budget(DEFAULT_BUDGET)
    mult = {i: c for i, c in multiplicities.items() if c}
    for f in _rootings(host, mult, budget):
        if is_eulerian(build_R(f)):
            yield f


def euler_rootings(ws) -> Iterator[RootedEdgeMultiset]:
    """Root-count assignments with Eulerian R(F) for a weighted sub-hypergraph.

    Edge ``e`` appears ``m * omega(e)`` times.  Each assignment stands for
    :meth:`RootedEdgeMultiset.ordering_count` rootings.
    """
    m = ws.shape.parent.m
    mult = {i: m * w for i, w in zip(ws.shape.edge_subset, ws.omega)}
    return euler_rootings_multi(ws.shape.parent, mult)


def c_H_oracle(ws) -> Fraction:
    """C_H summed directly over the Euler rootings of the weighted sub-hypergraph."""
    return sum((_term(f) for f in euler_rootings(ws)), Fraction(0))


def adjacency_matrix(h: Hypergraph) -> list[list[int]]:
    if h.m != 2:
        raise InputError("adjacency matrices are only defined here for graphs (m = 2)")
    a = [[0] * h.n for _ in range(h.n)]
    for u, v in h.edges:
        a[u][v] = a[v][u] = 1
    return a


def matrix_power_trace(h: Hypergraph, d: int) -> int:
    """trace(A^d) for the 0/1 adjacency matrix, in exact integers."""
    a = adjacency_matrix(h)
    n = h.n
    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = a
    k = d
    while k:
        if k & 1:
            result = _matmul(result, base)
        base = _matmul(base, base)
        k >>= 1
    return sum(result[i][i] for i in range(n))


def _matmul(x: Sequence[Sequence[int]], y: Sequence[Sequence[int]]) -> list[list[int]]:
    cols = list(zip(*y))
    return [[sum(p * q for p, q in zip(row, col)) for col in cols] for row in x]
