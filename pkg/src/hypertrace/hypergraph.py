"""Uniform hypergraphs: the data model, named families and structural predicates.

Vertices are the integers ``0..n-1``.  Edges are sorted tuples and the edge
list itself is kept sorted, so two :class:`Hypergraph` values compare equal
exactly when they are the same labelled hypergraph.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ConstructionError, InputError

INFINITY = float("inf")


@dataclass(frozen=True)
class Hypergraph:
    """An m-uniform simple hypergraph on vertices ``0..n-1``."""

    m: int
    n: int
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.m < 2:
            raise InputError(f"uniformity must be at least 2, got {self.m}")
        if self.n < 1:
            raise InputError(f"a hypergraph needs at least one vertex, got n={self.n}")
        normalized = []
        for edge in self.edges:
            e = tuple(sorted(int(v) for v in edge))
            if len(e) != self.m or len(set(e)) != self.m:
                raise InputError(f"edge {tuple(edge)} does not have {self.m} distinct vertices")
            if e[0] < 0 or e[-1] >= self.n:
                raise InputError(f"edge {e} has a vertex outside [0, {self.n})")
            normalized.append(e)
        normalized.sort()
        for a, b in zip(normalized, normalized[1:]):
            if a == b:
                raise ConstructionError(f"duplicate edge {a}: hypergraphs must be simple")
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the indices of the edges containing ``v``."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    def degree(self, v: int) -> int:
        return degree(self, v)

    def vertices_of(self, edge_indices: Iterable[int]) -> tuple[int, ...]:
        """Sorted vertex set covered by the given edges."""
        return tuple(sorted({v for i in edge_indices for v in self.edges[i]}))

    def relabel(self, perm: Sequence[int]) -> Hypergraph:
        """Image under the vertex bijection ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InputError("relabelling must be a permutation of the vertices")
        return Hypergraph(self.m, self.n, tuple(tuple(perm[v] for v in e) for e in self.edges))

    def to_dict(self) -> dict:
        return {"m": self.m, "n": self.n, "edges": [list(e) for e in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> Hypergraph:
        try:
            return cls(int(data["m"]), int(data["n"]), tuple(tuple(e) for e in data["edges"]))
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed hypergraph object: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> Hypergraph:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class RootedSite:
    """A hypergraph with a distinguished vertex, written H(v) in coalescences."""

    host: Hypergraph
    vertex: int = 0

    def __post_init__(self):
        if not 0 <= self.vertex < self.host.n:
            raise InputError(f"vertex {self.vertex} is not in a hypergraph with {self.host.n} vertices")


# --------------------------------------------------------------------------
# predicates
# --------------------------------------------------------------------------

def degree(h: Hypergraph, v: int) -> int:
    if not 0 <= v < h.n:
        raise InputError(f"vertex {v} out of range for n={h.n}")
    return len(h.incidence[v])


def max_degree(h: Hypergraph) -> int:
    return max((len(x) for x in h.incidence), default=0)


def is_connected(h: Hypergraph) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for i in h.incidence[v]:
            for u in h.edges[i]:
                if u not in seen:
                    seen.add(u)
                    queue.append(u)
    return len(seen) == h.n


def edges_connected(h: Hypergraph, edge_indices: Iterable[int]) -> bool:
    """Whether the sub-hypergraph spanned by ``edge_indices`` is connected."""
    idx = list(edge_indices)
    if not idx:
        return False
    members = set(idx)
    seen = {idx[0]}
    stack = [idx[0]]
    while stack:
        i = stack.pop()
        for v in h.edges[i]:
            for j in h.incidence[v]:
                if j in members and j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(members)


def is_linear(h: Hypergraph) -> bool:
    return all(len(set(a) & set(b)) <= 1 for a, b in combinations(h.edges, 2))


def is_hypertree(h: Hypergraph) -> bool:
    # the vertex-edge incidence graph is a tree iff m|E| = n + |E| - 1
    return is_connected(h) and (h.m - 1) * h.num_edges == h.n - 1


def is_linear_unicyclic(h: Hypergraph) -> bool:
    return is_connected(h) and is_linear(h) and (h.m - 1) * h.num_edges == h.n


def topology(h: Hypergraph) -> str | None:
    """``"hypertree"``, ``"linear_unicyclic"`` or ``None`` for anything else."""
    if is_hypertree(h):
        return "hypertree"
    if is_linear_unicyclic(h):
        return "linear_unicyclic"
    return None


def girth(h: Hypergraph) -> float:
    """Length of a shortest cycle, or ``INFINITY`` for acyclic hypergraphs.

    Cycles of the hypergraph are exactly the cycles of its bipartite
    vertex-edge incidence graph, at half the length, so a BFS girth search on
    that graph suffices.  Two edges sharing two vertices give girth 2.
    """
    n = h.n
    adj: list[list[int]] = [list(n + i for i in h.incidence[v]) for v in range(n)]
    adj += [list(e) for e in h.edges]
    best = INFINITY
    for src in range(len(adj)):
        dist = {src: 0}
        parent = {src: -1}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return INFINITY if best == INFINITY else best // 2


def has_perfect_matching(h: Hypergraph) -> list[int] | None:
    """Edge indices of a perfect matching found by exact backtracking, else ``None``."""
    if h.n % h.m:
        return None
    covered = [False] * h.n
    chosen: list[int] = []

    def search() -> bool:
        try:
            v = covered.index(False)
        except ValueError:
            return True
        for i in h.incidence[v]:
            e = h.edges[i]
            if any(covered[u] for u in e):
                continue
            for u in e:
                covered[u] = True
            chosen.append(i)
            if search():
                return True
            chosen.pop()
            for u in e:
                covered[u] = False
        return False

    return sorted(chosen) if search() else None


def count_perfect_matchings(h: Hypergraph) -> int:
    if h.n % h.m:
        return 0
    covered = [False] * h.n

    def count() -> int:
        try:
            v = covered.index(False)
        except ValueError:
            return 1
        total = 0
        for i in h.incidence[v]:
            e = h.edges[i]
            if any(covered[u] for u in e):
                continue
            for u in e:
                covered[u] = True
            total += count()
            for u in e:
                covered[u] = False
        return total

    return count()


# --------------------------------------------------------------------------
# constructions
# --------------------------------------------------------------------------

def trivial(m: int) -> Hypergraph:
    """The one-vertex hypergraph with no edges."""
    return Hypergraph(m, 1, ())


def single_edge(m: int) -> Hypergraph:
    return Hypergraph(m, m, (tuple(range(m)),))


def coalesce(a: RootedSite, b: RootedSite) -> Hypergraph:
    """Identify ``a.vertex`` with ``b.vertex``.

    The result keeps the numbering of ``a``; the remaining vertices of ``b``
    follow in their original order, so the merged vertex keeps the label
    ``a.vertex``.
    """
    ha, hb = a.host, b.host
    if ha.num_edges and hb.num_edges and ha.m != hb.m:
        raise InputError(f"cannot coalesce a {ha.m}-uniform and a {hb.m}-uniform hypergraph")
    if not is_connected(ha) or not is_connected(hb):
        raise InputError("coalescence needs connected operands")
    m = ha.m if ha.num_edges or not hb.num_edges else hb.m
    mapping = {}
    nxt = ha.n
    for v in range(hb.n):
        if v == b.vertex:
            mapping[v] = a.vertex
        else:
            mapping[v] = nxt
            nxt += 1
    edges = list(ha.edges) + [tuple(mapping[v] for v in e) for e in hb.edges]
    return Hypergraph(m, ha.n + hb.n - 1, tuple(edges))


def attach(base: Hypergraph, parts: Iterable[tuple[int, RootedSite]]) -> Hypergraph:
    """Attach several rooted hypergraphs to vertices of ``base`` in turn.

    Vertex labels of ``base`` are preserved because every step keeps the
    numbering of its first operand.
    """
    h = base
    for v, site in parts:
        h = coalesce(RootedSite(h, v), site)
    return h


def power_of_graph(graph_edges: Sequence[tuple[int, int]], m: int, n: int | None = None) -> Hypergraph:
    """The m-th power of a simple graph.

    Original vertices keep their labels; the ``m - 2`` vertices inserted into
    edge ``i`` are ``n + i*(m-2) .. n + (i+1)*(m-2) - 1``.  ``m = 2`` returns
    the graph itself.
    """
    if m < 2:
        raise InputError("uniformity must be at least 2")
    if n is None:
        n = 1 + max((max(e) for e in graph_edges), default=0)
    seen = set()
    for u, v in graph_edges:
        if u == v or frozenset((u, v)) in seen:
            raise InputError(f"graph is not simple at edge {(u, v)}")
        seen.add(frozenset((u, v)))
    k = m - 2
    edges = [(u, v) + tuple(range(n + i * k, n + (i + 1) * k)) for i, (u, v) in enumerate(graph_edges)]
    return Hypergraph(m, n + k * len(graph_edges), tuple(edges))


def hyperpath(k: int, m: int) -> Hypergraph:
    """P_k^m: the power of the path 0-1-...-k (k edges)."""
    if k < 1:
        raise InputError("a hyperpath needs at least one edge")
    return power_of_graph([(i, i + 1) for i in range(k)], m)


def hyperstar(k: int, m: int) -> Hypergraph:
    """S_k^m with centre 0 (k edges)."""
    if k < 1:
        raise InputError("a hyperstar needs at least one edge")
    return power_of_graph([(0, i) for i in range(1, k + 1)], m)


def loose_cycle(n: int, m: int) -> Hypergraph:
    """C_n^m: edge ``i`` contains the original vertices ``i`` and ``i+1 mod n``."""
    if n < 3:
        raise InputError("a cycle needs at least three edges")
    return power_of_graph([(i, (i + 1) % n) for i in range(n)], m)


def comb(m: int) -> Hypergraph:
    """The m-comb with endpoint 0.

    Edge ``{0, 1, .., m-1}`` carries a pendant edge at each of ``1..m-1``;
    the result has m edges and ``m + (m-1)**2`` vertices.
    """
    e = single_edge(m)
    return attach(e, [(i, RootedSite(e, 0)) for i in range(1, m)])


def t_mt(m: int, t: int) -> Hypergraph:
    """T_{m,t}: t combs glued by their endpoints to vertex 0 of one edge."""
    if t < 1:
        raise InputError("T_{m,t} needs t >= 1")
    c = comb(m)
    return attach(single_edge(m), [(0, RootedSite(c, 0))] * t)


def s_m_n_t(m: int, n: int, t: int) -> Hypergraph:
    """S^m_{n,t}: C_n^m with the centre of S_t^m glued to the degree-2 vertex 0."""
    if n < 3:
        raise InputError("S_{n,t} needs n >= 3")
    if t < 0:
        raise InputError("S_{n,t} needs t >= 0")
    cyc = loose_cycle(n, m)
    if t == 0:
        return cyc
    return coalesce(RootedSite(cyc, 0), RootedSite(hyperstar(t, m), 0))


FAMILIES = {
    "edge": lambda m: single_edge(m),
    "trivial": lambda m: trivial(m),
    "hyperpath": lambda m, k: hyperpath(k, m),
    "hyperstar": lambda m, k: hyperstar(k, m),
    "loose_cycle": lambda m, n: loose_cycle(n, m),
    "comb": lambda m: comb(m),
    "T_mt": lambda m, t: t_mt(m, t),
    "S_m_n_t": lambda m, n, t: s_m_n_t(m, n, t),
}


def build_family_primitive(kind: str, m: int, **params: int) -> Hypergraph:
    """Build a named family member, e.g. ``build_family_primitive("hyperstar", 3, k=4)``."""
    try:
        builder = FAMILIES[kind]
    except KeyError:
        raise InputError(f"unknown family {kind!r}; choose from {sorted(FAMILIES)}") from None
    try:
        return builder(m, **params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {kind}: {exc}") from exc
