"""Closed-form traces of hypertrees and linear unicyclic hypergraphs.

The d-th trace decomposes over connected sub-hypergraphs G as

    Tr_d(H) = d (m-1)^n  sum_G tr_d(G),     tr_d(G) = sum_w C_{G(w)},

where w runs over positive edge weights with total d/m and ``C_{G(w)}`` is
given in closed form for acyclic G (:func:`c_tree`) and for G containing the
unique cycle of a linear unicyclic parent (:func:`c_unicyclic`).  Everything
is computed with :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .enumerate import (
    CONTAINS_CYCLE,
    TREE,
    SubhypergraphClass,
    WeightComposition,
    connected_subhypergraphs,
    weight_compositions,
    whole,
)
from .errors import InputError, UnsupportedTopologyError
from .hypergraph import Hypergraph, girth, is_connected, topology


@lru_cache(maxsize=None)
def fact(k: int) -> int:
    return factorial(k)


@dataclass(frozen=True)
class WeightedSubhypergraph:
    """A shape with a positive weight per edge.

    It stands for the Veblen multi-hypergraph in which edge ``e`` of the
    shape is repeated ``m * omega[e]`` times.  ``omega`` is aligned with
    ``shape.edge_subset``.
    """

    shape: SubhypergraphClass
    omega: tuple[int, ...]

    def __post_init__(self):
        if len(self.omega) != self.shape.num_edges:
            raise InputError("one weight per edge is required")
        if any(w < 1 for w in self.omega):
            raise InputError(f"weights must be positive: {self.omega}")

    @property
    def m(self) -> int:
        return self.shape.parent.m

    @property
    def weight_of(self) -> dict[int, int]:
        return dict(zip(self.shape.edge_subset, self.omega))

    @property
    def total(self) -> int:
        return sum(self.omega)


def weighted(h: Hypergraph, omega: Sequence[int]) -> WeightedSubhypergraph:
    """Weight the whole of a connected hypergraph; ``omega`` follows ``h.edges``."""
    return WeightedSubhypergraph(whole(h), tuple(omega))


def weighted_degree(ws: WeightedSubhypergraph, v: int) -> int:
    if v not in ws.shape.vertices:
        raise InputError(f"vertex {v} is not in the sub-hypergraph")
    edges = ws.shape.parent.edges
    return sum(w for i, w in zip(ws.shape.edge_subset, ws.omega) if v in edges[i])


def _weighted_degrees(ws: WeightedSubhypergraph) -> dict[int, int]:
    deg = dict.fromkeys(ws.shape.vertices, 0)
    edges = ws.shape.parent.edges
    for i, w in zip(ws.shape.edge_subset, ws.omega):
        for v in edges[i]:
            deg[v] += w
    return deg


def _common_factor(ws: WeightedSubhypergraph, excluded: Iterable[int]) -> Fraction:
    """(m-1)^-|V| m^((m-2)|E|) prod_v (d_v-1)! prod_e w^(m-1)/(w!)^m, skipping ``excluded``."""
    m = ws.m
    skip = set(excluded)
    missing = skip - set(ws.shape.vertices)
    if missing:
        raise InputError(f"excluded vertices {sorted(missing)} are not in the sub-hypergraph")
    num = m ** ((m - 2) * ws.shape.num_edges)
    den = (m - 1) ** len(ws.shape.vertices)
    for v, dv in _weighted_degrees(ws).items():
        if v not in skip:
            num *= fact(dv - 1)
    for w in ws.omega:
        num *= w ** (m - 1)
        den *= fact(w) ** m
    return Fraction(num, den)


def _require_kind(ws: WeightedSubhypergraph, kind: str):
    if ws.shape.kind != kind:
        raise InputError(f"expected a {kind} shape, got {ws.shape.kind}")


def c_tree(ws: WeightedSubhypergraph) -> Fraction:
    """C of a weighted hypertree: the common factor with every (d_v - 1)! included."""
    _require_kind(ws, TREE)
    return _common_factor(ws, ())


def partial_tree_factor(ws: WeightedSubhypergraph, excluded: Iterable[int] = ()) -> Fraction:
    """c_tree with the (d_v - 1)! factors of up to two excluded vertices left out."""
    _require_kind(ws, TREE)
    excluded = set(excluded)
    if len(excluded) > 2:
        raise InputError("at most two vertices can be excluded")
    return _common_factor(ws, excluded)


def omega_cycle(omega0: Sequence[int]) -> Fraction:
    """The cycle rooting sum for C_n^m with edge weights ``omega0`` in cyclic order.

    Index ``i - 1`` at ``i = 1`` wraps to ``n``; empty products are 1.
    """
    n = len(omega0)
    if n < 3:
        raise InputError("a cycle has at least three edges")
    if any(w < 1 for w in omega0):
        raise InputError("cycle weights must be positive")
    w = [omega0[-1]] + list(omega0)  # w[i] for i = 0..n with w[0] = w[n]
    wmin = min(omega0)
    total = Fraction(0)
    for x in range(2 * wmin + 1):
        num, den = 1, 1
        for i in range(1, n + 1):
            num *= fact(w[i]) ** 2
            den *= fact(w[i - 1] + wmin - x) * fact(w[i] - wmin + x)
        total += Fraction(num, den) * _cycle_path_sum(w, wmin, x)
    return total


def _cycle_path_sum(w: Sequence[int], wmin: int, x: int) -> int:
    """sum_{l=0}^{n-1} prod_{i<=l} (w_i + wmin - x) prod_{i>=l+2} (w_i - wmin + x), 1-based w."""
    n = len(w) - 1
    s = 0
    for l in range(n):
        p = 1
        for i in range(1, l + 1):
            p *= w[i] + wmin - x
        for i in range(l + 2, n + 1):
            p *= w[i] - wmin + x
        s += p
    return s


def cycle_tau(m: int, omega0: Sequence[int], x: int) -> int:
    """Arborescence count of a cycle rooting in family ``x``."""
    n = len(omega0)
    w = [omega0[-1]] + list(omega0)
    prod = 1
    for v in omega0:
        prod *= v
    return 2 * m ** (n * (m - 2) - 1) * prod ** (m - 2) * _cycle_path_sum(w, min(omega0), x)


def cycle_rooting_count(m: int, omega0: Sequence[int], x: int) -> int:
    """Number of Euler rootings of the weighted bare cycle C_n^m in family ``x``.

    Each vertex contributes a multinomial over the edges it roots: internal
    vertices of edge i root it ``w_i`` times, and the joint vertex between
    edges i-1 and i roots them ``w_{i-1} + wmin - x`` and ``w_i - wmin + x``
    times respectively.
    """
    wmin = min(omega0)
    n = len(omega0)
    count = 1
    for i in range(n):
        a, b = omega0[i - 1] + wmin - x, omega0[i] - wmin + x
        count *= fact(a + b) // (fact(a) * fact(b))
    return count


def cycle_order(h: Hypergraph, edge_subset: Sequence[int]) -> list[int]:
    """Edges of the unique cycle inside ``edge_subset``, in traversal order.

    Pendant parts are stripped first.  The walk starts at the smallest vertex
    shared by two cycle edges and leaves it along the cycle edge with the
    smaller index.
    """
    alive = set(edge_subset)
    while True:
        deg = {}
        for i in alive:
            for v in h.edges[i]:
                deg[v] = deg.get(v, 0) + 1
        drop = {i for i in alive if sum(1 for v in h.edges[i] if deg[v] > 1) <= 1}
        if not drop:
            break
        alive -= drop
    if len(alive) < 2:
        raise InputError("edge subset contains no cycle")
    deg = {}
    for i in alive:
        for v in h.edges[i]:
            deg[v] = deg.get(v, 0) + 1
    joints = sorted(v for v, k in deg.items() if k == 2)
    start = joints[0]
    first = min(i for i in alive if start in h.edges[i])
    order = [first]
    cur_edge, cur_vertex = first, start
    while True:
        nxt_vertex = next(v for v in h.edges[cur_edge] if v != cur_vertex and deg.get(v) == 2)
        nxt_edge = next(i for i in alive if i != cur_edge and nxt_vertex in h.edges[i])
        if nxt_edge == first:
            break
        order.append(nxt_edge)
        cur_edge, cur_vertex = nxt_edge, nxt_vertex
    if len(order) != len(alive):
        raise InputError("edge subset contains more than one cycle")
    return order


def c_unicyclic(ws: WeightedSubhypergraph) -> Fraction:
    """C of a weighted sub-hypergraph containing the cycle of a linear unicyclic parent."""
    return partial_unicyclic_factor(ws, ())


def partial_unicyclic_factor(ws: WeightedSubhypergraph, excluded: Iterable[int] = ()) -> Fraction:
    """c_unicyclic with the (d_v - 1)! factors of up to two excluded vertices left out."""
    _require_kind(ws, CONTAINS_CYCLE)
    excluded = set(excluded)
    if len(excluded) > 2:
        raise InputError("at most two vertices can be excluded")
    m = ws.m
    weights = ws.weight_of
    omega0 = [weights[i] for i in cycle_order(ws.shape.parent, ws.shape.edge_subset)]
    # cycle arborescences carry prod(w)^(m-2), not the tree exponent m-1, hence the 1/prod(w)
    cycle_weight = 1
    for w in omega0:
        cycle_weight *= w
    return _common_factor(ws, excluded) * Fraction(2, m * cycle_weight) * omega_cycle(omega0)


def coefficient(ws: WeightedSubhypergraph) -> Fraction:
    return c_tree(ws) if ws.shape.kind == TREE else c_unicyclic(ws)


def _check_parent(h: Hypergraph) -> str:
    kind = topology(h)
    if kind is None:
        raise UnsupportedTopologyError(
            "closed-form traces cover hypertrees and linear unicyclic hypergraphs only; "
            "use the brute-force oracle (trace_bruteforce) for this input"
        )
    return kind


def tr_d(shape: SubhypergraphClass, d: int) -> Fraction:
    """Sum of C over all weightings of ``shape`` with total weight d/m."""
    _check_parent(shape.parent)
    m = shape.parent.m
    if d < 1 or d % m or shape.num_edges > d // m:
        return Fraction(0)
    total = Fraction(0)
    for comp in weight_compositions(shape.num_edges, d // m):
        total += coefficient(WeightedSubhypergraph(shape, comp.weights))
    return total


def num_eigenvalues(h: Hypergraph) -> int:
    """N = n (m-1)^(n-1), the number of eigenvalues of the adjacency tensor."""
    return h.n * (h.m - 1) ** (h.n - 1)


def trace_terms(h: Hypergraph, d: int) -> list[tuple[SubhypergraphClass, Fraction]]:
    """Non-zero tr_d contributions, one per connected sub-hypergraph."""
    if not is_connected(h):
        raise InputError("trace is only defined here for connected hypergraphs")
    _check_parent(h)
    if d < 1 or d % h.m or not h.num_edges:
        return []
    out = []
    for shape in connected_subhypergraphs(h, d // h.m):
        value = tr_d(shape, d)
        if value:
            out.append((shape, value))
    return out


def trace(h: Hypergraph, d: int) -> Fraction:
    """Tr_d(h) for a connected hypertree or linear unicyclic hypergraph.

    ``Tr_0`` is taken to be the eigenvalue count N.
    """
    if d < 0:
        raise InputError("d must be nonnegative")
    if not is_connected(h):
        raise InputError("trace is only defined here for connected hypergraphs")
    kind = _check_parent(h)
    if d == 0:
        return Fraction(num_eigenvalues(h))
    if kind == "linear_unicyclic" and h.m == 2 and odd_winding_possible(h, d):
        raise UnsupportedTopologyError(
            f"closed walks of length {d} can wind an odd number of times around the "
            "cycle of this graph, which the closed form does not count; "
            "use matrix_power_trace or trace_bruteforce"
        )
    s = sum((v for _, v in trace_terms(h, d)), Fraction(0))
    return d * (h.m - 1) ** h.n * s


def odd_winding_possible(h: Hypergraph, d: int) -> bool:
    """True when a unicyclic graph (m = 2) has closed d-walks crossing its cycle an odd number of times.

    Such walks give every cycle edge an odd multiplicity, so they have no
    weighting with multiplicities m * omega.  They exist exactly when d is at
    least the girth and has the same parity.
    """
    if h.m != 2 or topology(h) != "linear_unicyclic":
        return False
    g = int(girth(h))
    return d >= g and (d - g) % 2 == 0


def factorial_inequality_check(x: int, y: int, a: int, b: int) -> bool:
    """(x+y+a)! b! + (x+y+b)! a! > (x+a)!(y+b)! + (x+b)!(y+a)!, in exact integers."""
    if x < 1 or y < 1 or a < 0 or b < 0:
        raise InputError("need x, y >= 1 and a, b >= 0")
    lhs = fact(x + y + a) * fact(b) + fact(x + y + b) * fact(a)
    rhs = fact(x + a) * fact(y + b) + fact(x + b) * fact(y + a)
    return lhs > rhs


def composition_count(k: int, total: int) -> int:
    return comb(total - 1, k - 1) if total >= k >= 1 else 0


__all__ = [
    "WeightedSubhypergraph",
    "WeightComposition",
    "weighted",
    "weighted_degree",
    "c_tree",
    "partial_tree_factor",
    "omega_cycle",
    "cycle_tau",
    "cycle_rooting_count",
    "cycle_order",
    "c_unicyclic",
    "partial_unicyclic_factor",
    "coefficient",
    "tr_d",
    "trace",
    "trace_terms",
    "num_eigenvalues",
    "factorial_inequality_check",
    "odd_winding_possible",
]
