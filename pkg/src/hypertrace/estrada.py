"""Certified truncations of the Estrada index EE(h) = sum_d Tr_d(h) / d!.

Every eigenvalue satisfies |lambda| <= rho <= Delta (the largest row sum of
the adjacency tensor is the maximum degree), so 0 <= Tr_d <= N Delta^d and
the tail past depth D is at most

    N Delta^(D+1) / (D+1)!  *  1 / (1 - Delta / (D+2)).

Partial sums and tails are exact rationals; decimals are only for display.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Decimal, localcontext
from fractions import Fraction
from math import factorial

from .errors import InputError
from .hypergraph import Hypergraph, max_degree, topology
from .oracle import matrix_power_trace
from .traces import _check_parent, num_eigenvalues, trace

TAIL_TARGET = Fraction(1, 10**9)

A_GREATER = "a_greater"
B_GREATER = "b_greater"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CertifiedValue:
    partial_sum: Fraction
    tail_bound: Fraction
    depth: int

    @property
    def lower(self) -> Fraction:
        return self.partial_sum

    @property
    def upper(self) -> Fraction:
        return self.partial_sum + self.tail_bound

    @property
    def width(self) -> Fraction:
        return self.tail_bound

    def contains(self, x) -> bool:
        return self.lower <= Fraction(x) <= self.upper

    def lower_decimal(self, digits: int = 12) -> str:
        return _decimal(self.lower, digits, ROUND_FLOOR)

    def upper_decimal(self, digits: int = 12) -> str:
        return _decimal(self.upper, digits, ROUND_CEILING)

    def to_dict(self) -> dict:
        return {
            "lower": self.lower_decimal(),
            "upper": self.upper_decimal(),
            "exact_lower": _rational(self.lower),
            "exact_upper": _rational(self.upper),
            "D": self.depth,
        }


def _rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _decimal(q: Fraction, digits: int, rounding: str) -> str:
    with localcontext() as ctx:
        ctx.prec = 60
        ctx.rounding = rounding
        value = Decimal(q.numerator) / Decimal(q.denominator)
        return str(value.quantize(Decimal(1).scaleb(-digits)))


def tail_bound(h: Hypergraph, depth: int) -> Fraction:
    """Upper bound on sum_{d > depth} Tr_d / d!; needs depth + 2 > Delta."""
    delta = max_degree(h)
    if depth + 2 <= delta:
        raise InputError(f"depth {depth} is too small for maximum degree {delta}; use depth >= {delta - 1}")
    n_eig = num_eigenvalues(h)
    ratio = Fraction(delta, depth + 2)
    return Fraction(n_eig * delta ** (depth + 1), factorial(depth + 1)) / (1 - ratio)


def default_depth(h: Hypergraph) -> int:
    """Smallest multiple of m that is at least max(4m, 2 Delta + 8) with tail <= 1e-9."""
    m = h.m
    delta = max_degree(h)
    depth = max(4 * m, 2 * delta + 8)
    depth += -depth % m
    while tail_bound(h, depth) > TAIL_TARGET:
        depth += m
    return depth


def _uses_matrix_traces(h: Hypergraph) -> bool:
    # odd closed walks around a graph cycle fall outside the closed form
    return h.m == 2 and topology(h) == "linear_unicyclic"


def _term(h: Hypergraph, d: int) -> Fraction:
    if _uses_matrix_traces(h):
        return Fraction(matrix_power_trace(h, d), factorial(d))
    return trace(h, d) / factorial(d)


def estrada_truncated(h: Hypergraph, depth: int | None = None, jobs: int = 1) -> CertifiedValue:
    """Certified enclosure of EE(h) from the traces up to ``depth``.

    Only d = 0 and multiples of m contribute, except for graphs (m = 2) with a
    cycle, where every d is summed using exact adjacency-matrix powers.
    """
    _check_parent(h)
    if depth is None:
        depth = default_depth(h)
    if depth < h.m:
        raise InputError(f"depth must be at least m = {h.m}")
    tail = tail_bound(h, depth)
    step = 1 if _uses_matrix_traces(h) else h.m
    ds = [0] + list(range(h.m if step > 1 else 1, depth + 1, step))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            terms = list(pool.map(_term, [h] * len(ds), ds))
    else:
        terms = [_term(h, d) for d in ds]
    return CertifiedValue(sum(terms, Fraction(0)), tail, depth)


def compare_ee(a: Hypergraph, b: Hypergraph, depth: int | None = None, jobs: int = 1) -> tuple[str, CertifiedValue, CertifiedValue]:
    """Verdict from disjoint certified intervals; never claims equality."""
    if depth is None:
        depth = max(default_depth(a), default_depth(b))
        depth += -depth % a.m
    va = estrada_truncated(a, depth, jobs)
    vb = estrada_truncated(b, depth, jobs)
    if va.lower > vb.upper:
        verdict = A_GREATER
    elif vb.lower > va.upper:
        verdict = B_GREATER
    else:
        verdict = INCONCLUSIVE
    return verdict, va, vb
