"""Connected sub-hypergraphs, weight compositions and small hypergraph families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .canonical import canonical_form
from .errors import InputError
from .hypergraph import (
    Hypergraph,
    RootedSite,
    coalesce,
    edges_connected,
    has_perfect_matching,
    is_connected,
    loose_cycle,
    single_edge,
)

TREE = "tree"
CONTAINS_CYCLE = "contains_cycle"


@dataclass(frozen=True)
class SubhypergraphClass:
    """A connected edge subset of ``parent``, tagged by whether it is acyclic."""

    parent: Hypergraph
    edge_subset: tuple[int, ...]
    kind: str

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return self.parent.vertices_of(self.edge_subset)

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.parent.edges[i] for i in self.edge_subset)

    @property
    def num_edges(self) -> int:
        return len(self.edge_subset)

    def as_hypergraph(self) -> Hypergraph:
        """The sub-hypergraph relabelled onto ``0..|V|-1`` (vertex order preserved)."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return Hypergraph(self.parent.m, len(index), tuple(tuple(index[v] for v in e) for e in self.edges))


@dataclass(frozen=True)
class WeightComposition:
    weights: tuple[int, ...]

    def __post_init__(self):
        if any(w < 1 for w in self.weights):
            raise InputError(f"weights must be positive: {self.weights}")

    @property
    def total(self) -> int:
        return sum(self.weights)


def subset_kind(h: Hypergraph, edge_subset: Sequence[int]) -> str:
    nv = len(h.vertices_of(edge_subset))
    return TREE if (h.m - 1) * len(edge_subset) == nv - 1 else CONTAINS_CYCLE


def whole(h: Hypergraph) -> SubhypergraphClass:
    """The full edge set of a connected hypergraph as a single shape."""
    if not h.num_edges or not is_connected(h):
        raise InputError("the whole-hypergraph shape needs a connected hypergraph with edges")
    idx = tuple(range(h.num_edges))
    return SubhypergraphClass(h, idx, subset_kind(h, idx))


def _edge_neighbours(h: Hypergraph) -> list[set[int]]:
    nb = [set() for _ in h.edges]
    for inc in h.incidence:
        for i in inc:
            nb[i].update(inc)
    for i, s in enumerate(nb):
        s.discard(i)
    return nb


def _connected_subsets(h: Hypergraph, max_edges: int) -> list[tuple[int, ...]]:
    # ESU-style growth: each connected subset is produced once, from its least edge
    nb = _edge_neighbours(h)
    found: list[tuple[int, ...]] = []

    def extend(sub: list[int], ext: set[int], start: int, closed: set[int]):
        found.append(tuple(sorted(sub)))
        if len(sub) == max_edges:
            return
        ext = set(ext)
        while ext:
            w = min(ext)
            ext.discard(w)
            fresh = {u for u in nb[w] if u > start and u not in closed}
            extend(sub + [w], ext | fresh, start, closed | fresh)

    for s in range(h.num_edges):
        first = {u for u in nb[s] if u > s}
        extend([s], first, s, first | {s})
    found.sort()
    return found


def connected_subhypergraphs(h: Hypergraph, max_edges: int) -> Iterator[SubhypergraphClass]:
    """Every connected edge subset with 1..max_edges edges, in lexicographic order."""
    if max_edges < 1:
        return
    for subset in _connected_subsets(h, max_edges):
        yield SubhypergraphClass(h, subset, subset_kind(h, subset))


def filtered_subhypergraphs(
    h: Hypergraph,
    require: Iterable[Iterable[int]] = (),
    forbid: Iterable[Iterable[int]] = (),
    max_edges: int | None = None,
) -> Iterator[SubhypergraphClass]:
    """Connected sub-hypergraphs containing every required edge and no forbidden edge.

    ``require`` and ``forbid`` are lists of edge-index sets (the edges of the
    sub-hypergraphs named in the notation C(H; H1, .., Hs, H_{s+1}^x, ..)).
    """
    need = {i for group in require for i in group}
    ban = {i for group in forbid for i in group}
    for i in need | ban:
        if not 0 <= i < h.num_edges:
            raise InputError(f"edge index {i} out of range")
    if max_edges is None:
        max_edges = h.num_edges
    for shape in connected_subhypergraphs(h, max_edges):
        s = set(shape.edge_subset)
        if need <= s and not (s & ban):
            yield shape


def weight_compositions(k: int, total: int) -> Iterator[WeightComposition]:
    """Compositions of ``total`` into ``k`` positive parts, lexicographically."""
    if k < 1 or total < 1:
        raise InputError("k and total must be positive")

    def rec(prefix: list[int], left: int, slots: int):
        if slots == 1:
            yield WeightComposition(tuple(prefix + [left]))
            return
        for w in range(1, left - slots + 2):
            yield from rec(prefix + [w], left - w, slots - 1)

    if total >= k:
        yield from rec([], total, k)


# --------------------------------------------------------------------------
# families up to isomorphism
# --------------------------------------------------------------------------

def _grow(seeds: list[Hypergraph], steps: int) -> list[Hypergraph]:
    """Attach ``steps`` pendant edges one at a time, deduplicating each layer."""
    layer = {canonical_form(s): s for s in seeds}
    for _ in range(steps):
        nxt: dict[bytes, Hypergraph] = {}
        for key in sorted(layer):
            h = layer[key]
            edge = single_edge(h.m)
            for v in range(h.n):
                g = coalesce(RootedSite(h, v), RootedSite(edge, 0))
                nxt.setdefault(canonical_form(g), g)
        layer = nxt
    return [layer[k] for k in sorted(layer)]


def enumerate_hypertrees(m: int, k_edges: int) -> list[Hypergraph]:
    """All m-uniform hypertrees with ``k_edges`` edges, one per isomorphism class."""
    if k_edges < 1:
        raise InputError("a hypertree family needs at least one edge")
    return _grow([single_edge(m)], k_edges - 1)


def pm_edge_count(m: int, k_matching: int) -> int | None:
    """Edge count of a hypertree on m*k vertices, or None when (m-1) does not divide (k-1)."""
    if k_matching < 1 or (k_matching - 1) % (m - 1):
        return None
    return k_matching + (k_matching - 1) // (m - 1)


def enumerate_pm_hypertrees(m: int, k_matching: int) -> list[Hypergraph]:
    """Hypertrees on ``m * k_matching`` vertices that have a perfect matching."""
    edges = pm_edge_count(m, k_matching)
    if edges is None:
        return []
    return [t for t in enumerate_hypertrees(m, edges) if has_perfect_matching(t) is not None]


def enumerate_unicyclic(m: int, z_edges: int, g_girth: int) -> list[Hypergraph]:
    """All m-uniform linear unicyclic hypergraphs with z edges and girth g."""
    if not 3 <= g_girth <= z_edges:
        raise InputError("need 3 <= girth <= number of edges")
    return _grow([loose_cycle(g_girth, m)], z_edges - g_girth)
