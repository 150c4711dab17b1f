"""Canonical forms of hypergraphs up to vertex relabelling.

A hypergraph is encoded through its bipartite vertex-edge incidence graph.
Components of that graph which are trees or have exactly one cycle (this
covers every hypertree and linear unicyclic hypergraph) get an AHU-style
rooted-tree encoding; anything else goes through colour refinement plus
exhaustive individualisation, which is exact but only meant for small inputs.
"""

from __future__ import annotations

from .hypergraph import Hypergraph


def canonical_form(h: Hypergraph) -> bytes:
    """Byte string that is equal for two hypergraphs iff they are isomorphic."""
    adj, kinds = _incidence(h)
    comps = _components(adj)
    codes = []
    for comp in comps:
        arcs = sum(len(adj[x]) for x in comp) // 2
        if arcs == len(comp) - 1:
            codes.append(_tree_code(adj, kinds, comp))
        elif arcs == len(comp):
            codes.append(_unicyclic_code(adj, kinds, comp))
        else:
            codes = None
            break
    if codes is not None:
        body = "F" + "".join(sorted(codes))
    else:
        body = "G" + repr(_refinement_code(adj, kinds, h.n))
    return f"m{h.m}n{h.n}e{h.num_edges}|{body}".encode()


def is_isomorphic(a: Hypergraph, b: Hypergraph) -> bool:
    return canonical_form(a) == canonical_form(b)


def _incidence(h: Hypergraph) -> tuple[list[list[int]], list[str]]:
    n = h.n
    adj = [[n + i for i in h.incidence[v]] for v in range(n)]
    adj += [list(e) for e in h.edges]
    kinds = ["v"] * n + ["e"] * h.num_edges
    return adj, kinds


def _components(adj: list[list[int]]) -> list[list[int]]:
    seen = [False] * len(adj)
    comps = []
    for s in range(len(adj)):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(comp)
    return comps


def _rooted_code(adj, kinds, root: int, blocked: set[int]) -> str:
    # iterative post-order so deep hyperpaths do not hit the recursion limit
    order, parent = [], {root: None}
    stack = [root]
    while stack:
        x = stack.pop()
        order.append(x)
        for y in adj[x]:
            if y != parent[x] and y not in blocked:
                parent[y] = x
                stack.append(y)
    code: dict[int, str] = {}
    for x in reversed(order):
        kids = sorted(code.pop(y) for y in adj[x] if parent.get(y) == x and y in code)
        code[x] = "(" + kinds[x] + "".join(kids) + ")"
    return code[root]


def _peel_leaves(adj, comp: list[int]) -> tuple[set[int], list[int]]:
    """Repeatedly strip degree-1 nodes; returns the surviving core and the last layer."""
    deg = {x: len(adj[x]) for x in comp}
    alive = set(comp)
    layer = [x for x in comp if deg[x] <= 1]
    last = list(comp)
    while layer and len(alive) > 2:
        last = layer
        nxt = []
        for x in layer:
            alive.discard(x)
            for y in adj[x]:
                if y in alive:
                    deg[y] -= 1
                    if deg[y] == 1:
                        nxt.append(y)
        layer = nxt
    return alive, last


def _tree_code(adj, kinds, comp: list[int]) -> str:
    if len(comp) == 1:
        return "T(" + kinds[comp[0]] + ")"
    centers, _ = _peel_leaves(adj, comp)
    return "T" + min(_rooted_code(adj, kinds, c, set()) for c in centers)


def _unicyclic_code(adj, kinds, comp: list[int]) -> str:
    deg = {x: len(adj[x]) for x in comp}
    alive = set(comp)
    stack = [x for x in comp if deg[x] == 1]
    while stack:
        x = stack.pop()
        alive.discard(x)
        for y in adj[x]:
            if y in alive:
                deg[y] -= 1
                if deg[y] == 1:
                    stack.append(y)
    start = min(alive)
    cycle = [start]
    prev, cur = None, start
    while True:
        nxt = next(y for y in adj[cur] if y in alive and y != prev)
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
    seq = [_rooted_code(adj, kinds, x, alive - {x}) for x in cycle]
    k = len(seq)
    variants = []
    for s in (seq, seq[::-1]):
        for r in range(k):
            variants.append("".join(s[r:] + s[:r]))
    return "U[" + min(variants) + "]"


def _refine(adj, cells: list[list[int]]) -> list[list[int]]:
    while True:
        where = {}
        for ci, cell in enumerate(cells):
            for x in cell:
                where[x] = ci
        out = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            sig = {}
            for x in cell:
                counts = [0] * len(cells)
                for y in adj[x]:
                    counts[where[y]] += 1
                sig.setdefault(tuple(counts), []).append(x)
            out.extend(sig[key] for key in sorted(sig))
        if len(out) == len(cells):
            return out
        cells = out


def _refinement_code(adj, kinds, n: int) -> tuple:
    by_key: dict[tuple, list[int]] = {}
    for x in range(len(adj)):
        by_key.setdefault((kinds[x], len(adj[x])), []).append(x)
    cells = _refine(adj, [by_key[k] for k in sorted(by_key)])
    best = None

    def leaf_code(cells):
        pos = {cell[0]: i for i, cell in enumerate(cells)}
        vrank = {x: r for r, x in enumerate(sorted((x for x in pos if x < n), key=pos.get))}
        return tuple(sorted(tuple(sorted(vrank[y] for y in adj[x])) for x in pos if x >= n))

    def search(cells):
        nonlocal best
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            code = leaf_code(cells)
            if best is None or code < best:
                best = code
            return
        for x in cells[target]:
            rest = [y for y in cells[target] if y != x]
            split = cells[:target] + [[x], rest] + cells[target + 1:]
            search(_refine(adj, split))

    search(cells)
    return best
