"""Executable checks of the perturbation lemmas, extremal theorems and structure lemmas.

Lemma instances are data: a lemma id, the uniformity m, named rooted
components and a list of d values.  Builders below turn components into the
before/after hypergraphs of each lemma and check its structural hypotheses.
Components are JSON objects of one of the forms

    {"family": "hyperstar", "params": {"k": 2}, "root": 0}
    {"n": 5, "edges": [[0, 1, 2], [2, 3, 4]], "root": 2}
    {"family": "trivial"}

with ``root`` defaulting to 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from typing import Any, Callable

from .canonical import canonical_form
from .enumerate import (
    enumerate_hypertrees,
    enumerate_pm_hypertrees,
    enumerate_unicyclic,
    pm_edge_count,
    whole,
)
from .errors import HypothesisError, InputError, UnsupportedTopologyError
from .estrada import A_GREATER, INCONCLUSIVE, compare_ee, default_depth
from .hypergraph import (
    Hypergraph,
    RootedSite,
    attach,
    build_family_primitive,
    coalesce,
    count_perfect_matchings,
    degree,
    has_perfect_matching,
    hyperpath,
    hyperstar,
    is_connected,
    is_hypertree,
    is_linear_unicyclic,
    loose_cycle,
    power_of_graph,
    s_m_n_t,
    single_edge,
    t_mt,
    topology,
)
from .oracle import euler_rootings, euler_rootings_multi
from .traces import cycle_order, tr_d, trace, weighted

PASS = "PASS"
FAIL = "FAIL"
MAX_RETRY_DEPTH = 80


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# --------------------------------------------------------------------------
# components
# --------------------------------------------------------------------------

def component(desc: dict, m: int) -> RootedSite:
    if not isinstance(desc, dict):
        raise InputError(f"component must be an object, got {desc!r}")
    if "family" in desc:
        h = build_family_primitive(desc["family"], m, **desc.get("params", {}))
    elif "edges" in desc:
        h = Hypergraph(m, desc["n"], tuple(tuple(e) for e in desc["edges"]))
    else:
        raise InputError(f"component needs 'family' or 'edges': {desc!r}")
    root = desc.get("root", 0)
    if not 0 <= root < h.n:
        raise InputError(f"root {root} outside 0..{h.n - 1}")
    return RootedSite(h, root)


def _require(cond: bool, lemma: str, what: str):
    if not cond:
        raise HypothesisError(f"lemma {lemma}: hypothesis failed: {what}")


def _nontrivial_tree(site: RootedSite, lemma: str, name: str):
    _require(site.host.num_edges > 0 and is_hypertree(site.host), lemma, f"{name} must be a nontrivial hypertree")


def _tree_or_trivial(site: RootedSite, lemma: str, name: str):
    _require(site.host.num_edges == 0 or is_hypertree(site.host), lemma, f"{name} must be a hypertree (trivial allowed)")


# --------------------------------------------------------------------------
# lemma builders: each returns (sides, strict predicate, granularity)
# sides is ([lhs hypergraphs], [rhs hypergraphs]); the claim is sum(lhs) >= sum(rhs)
# --------------------------------------------------------------------------

@dataclass
class Construction:
    lhs: list[Hypergraph]
    rhs: list[Hypergraph]
    granularity: str  # "Tr" or "tr"
    strict: Callable[[int], bool | None]
    notes: list[str] = field(default_factory=list)


def _tr_strict(m: int, threshold: int) -> Callable[[int], bool]:
    return lambda d: d % m == 0 and d // m >= threshold


def _build_3_3(m: int, c: dict) -> Construction:
    lemma = "3.3"
    t1 = component(c["T1"], m)
    hats = [component(s, m) for s in c.get("T_hat", [])]
    t = component(c["T"], m)
    _nontrivial_tree(t1, lemma, "T1")
    _nontrivial_tree(t, lemma, "T")
    _require(len(hats) <= m - 2, lemma, f"at most m-2 = {m - 2} hypertrees on the inner vertices of e2")
    for i, s in enumerate(hats):
        _tree_or_trivial(s, lemma, f"T_hat[{i}]")
    path = power_of_graph([(0, 1), (1, 2), (2, 3)], m, 4)
    inner = [4 + (m - 2) + j for j in range(m - 2)]  # inserted vertices of e2
    h = attach(path, [(1, t1)] + [(inner[j], s) for j, s in enumerate(hats)])
    return Construction([coalesce(RootedSite(h, 1), t)], [coalesce(RootedSite(h, 2), t)], "Tr", _tr_strict(m, 2))


def _cycle_edge_with(u: Hypergraph, a: int, b: int) -> bool:
    order = cycle_order(u, tuple(range(u.num_edges)))
    return any(a in u.edges[i] and b in u.edges[i] for i in order)


def _build_4_4(m: int, c: dict) -> Construction:
    lemma = "4.4"
    base = component(c["U"], m)
    u_graph = base.host
    v, u = c["v"], c["u"]
    t = component(c["T"], m)
    _require(is_linear_unicyclic(u_graph), lemma, "U must be a linear unicyclic hypergraph")
    _nontrivial_tree(t, lemma, "T")
    _require(degree(u_graph, v) == 2, lemma, f"vertex v={v} must have degree 2")
    _require(degree(u_graph, u) == 1, lemma, f"vertex u={u} must have degree 1")
    _require(_cycle_edge_with(u_graph, u, v), lemma, "u and v must lie in a common edge of the cycle")
    # the statement's "equality" clause is recorded, not asserted
    return Construction(
        [coalesce(RootedSite(u_graph, v), t)],
        [coalesce(RootedSite(u_graph, u), t)],
        "Tr",
        lambda d: None,
        ["strictness is recorded per d rather than asserted"],
    )


def _edge_with_attachments(m: int, c: dict, lemma: str, key: str, tree_only: bool) -> Hypergraph:
    parts = [component(s, m) for s in c[key]]
    _require(1 <= len(parts) <= m - 1, lemma, f"need 1..m-1 attachments, got {len(parts)}")
    for i, s in enumerate(parts):
        _require(s.host.num_edges > 0, lemma, f"{key}[{i}] must be nontrivial")
        if tree_only:
            _nontrivial_tree(s, lemma, f"{key}[{i}]")
    return attach(single_edge(m), [(i + 1, s) for i, s in enumerate(parts)])


def _build_5_1(m: int, c: dict) -> Construction:
    lemma = "5.1"
    h1 = _edge_with_attachments(m, c, lemma, "G", tree_only=False)
    h2 = component(c["H2"], m)
    _require(h2.host.num_edges > 0 and is_connected(h2.host), lemma, "H2 must be nontrivial and connected")
    return Construction(
        [coalesce(RootedSite(h1, 1), h2)], [coalesce(RootedSite(h1, 0), h2)], "Tr", _tr_strict(m, 2)
    )


def _build_6_2_1(m: int, c: dict) -> Construction:
    lemma = "6.2(1)"
    h = _edge_with_attachments(m, c, lemma, "T_list", tree_only=True)
    t = component(c["T"], m)
    _nontrivial_tree(t, lemma, "T")
    a, b = coalesce(RootedSite(h, 1), t), coalesce(RootedSite(h, 0), t)
    return Construction([a], [b], "tr", _tr_strict(m, a.num_edges))


def _build_6_2_2(m: int, c: dict) -> Construction:
    lemma = "6.2(2)"
    h = _edge_with_attachments(m, c, lemma, "T_list", tree_only=True)
    t = component(c["T"], m)
    tt = component(c["T_tilde"], m)
    _nontrivial_tree(t, lemma, "T")
    _nontrivial_tree(tt, lemma, "T_tilde")
    h1, h2 = coalesce(RootedSite(h, 1), t), coalesce(RootedSite(h, 0), t)
    h11, h12 = coalesce(RootedSite(h1, 1), tt), coalesce(RootedSite(h1, 0), tt)
    h21, h22 = coalesce(RootedSite(h2, 1), tt), coalesce(RootedSite(h2, 0), tt)
    return Construction([h11, h12], [h21, h22], "tr", _tr_strict(m, h11.num_edges))


def _build_6_3(m: int, c: dict) -> Construction:
    lemma = "6.3"
    t0 = component(c["T0"], m)
    hat = component(c.get("T_hat", {"family": "trivial"}), m)
    t = component(c["T"], m)
    _nontrivial_tree(t0, lemma, "T0")
    _tree_or_trivial(hat, lemma, "T_hat")
    _nontrivial_tree(t, lemma, "T")
    h = attach(power_of_graph([(0, 1), (1, 2)], m, 3), [(0, t0), (1, hat)])
    a, b = coalesce(RootedSite(h, 0), t), coalesce(RootedSite(h, 2), t)
    # whole-hypergraph tr_d vanishes until d/m reaches the edge count
    return Construction([a], [b], "tr", _tr_strict(m, max(4, a.num_edges)))


def _cycle_scaffold(m: int, c: dict, lemma: str) -> tuple[Hypergraph, RootedSite]:
    t1 = component(c["T1"], m)
    hat = component(c.get("T3_hat", {"family": "trivial"}), m)
    t2 = component(c["T2"], m)
    _nontrivial_tree(t1, lemma, "T1")
    _tree_or_trivial(hat, lemma, "T3_hat")
    _nontrivial_tree(t2, lemma, "T2")
    # v1, v2, v3 of the triangle are vertices 0, 1, 2
    return attach(loose_cycle(3, m), [(0, t1), (2, hat)]), t2


def _build_6_4(m: int, c: dict) -> Construction:
    h, t2 = _cycle_scaffold(m, c, "6.4")
    a, b = coalesce(RootedSite(h, 0), t2), coalesce(RootedSite(h, 1), t2)
    return Construction([a], [b], "tr", _tr_strict(m, a.num_edges))


def _build_6_5(m: int, c: dict) -> Construction:
    h, t2 = _cycle_scaffold(m, c, "6.5")
    a, b = coalesce(RootedSite(h, 0), t2), coalesce(RootedSite(h, 1), t2)
    return Construction([a], [b], "Tr", _tr_strict(m, 2))


BUILDERS: dict[str, Callable[[int, dict], Construction]] = {
    "3.3": _build_3_3,
    "4.4": _build_4_4,
    "5.1": _build_5_1,
    "6.2(1)": _build_6_2_1,
    "6.2(2)": _build_6_2_2,
    "6.3": _build_6_3,
    "6.4": _build_6_4,
    "6.5": _build_6_5,
}


@dataclass(frozen=True)
class LemmaInstance:
    lemma: str
    m: int
    components: dict[str, Any]
    d_values: tuple[int, ...]
    name: str = ""

    @classmethod
    def from_dict(cls, data: dict) -> LemmaInstance:
        try:
            lemma = str(data["lemma"])
            m = int(data["m"])
            comps = dict(data["components"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed lemma instance: {exc}") from exc
        if lemma not in BUILDERS:
            raise InputError(f"unknown lemma {lemma!r}; known: {sorted(BUILDERS)}")
        ds = tuple(data.get("d", (m, 2 * m, 3 * m)))
        return cls(lemma, m, comps, ds, data.get("name", ""))

    def build(self) -> Construction:
        con = BUILDERS[self.lemma](self.m, self.components)
        for h in con.lhs + con.rhs:
            if topology(h) is None:
                raise UnsupportedTopologyError(f"lemma {self.lemma} instance builds an unsupported hypergraph")
        return con


def _side_value(hs: list[Hypergraph], d: int, granularity: str) -> Fraction:
    if granularity == "Tr":
        return sum((trace(h, d) for h in hs), Fraction(0))
    return sum((tr_d(whole(h), d) for h in hs), Fraction(0))


def check_perturbation(inst: LemmaInstance, d_values=None) -> dict:
    """Evaluate both sides at every d and judge them against the lemma's strictness rule."""
    con = inst.build()
    rows = []
    ok_all = True
    for d in d_values or inst.d_values:
        lhs = _side_value(con.lhs, d, con.granularity)
        rhs = _side_value(con.rhs, d, con.granularity)
        rel = ">" if lhs > rhs else "=" if lhs == rhs else "<"
        strict = con.strict(d)
        ok = lhs > rhs if strict else lhs >= rhs
        ok_all &= ok
        rows.append({"d": d, "lhs": _q(lhs), "rhs": _q(rhs), "relation": rel, "strict_expected": strict, "ok": ok})
    return {
        "lemma": inst.lemma,
        "instance": inst.name,
        "m": inst.m,
        "granularity": con.granularity,
        "rows": rows,
        "notes": con.notes,
        "status": PASS if ok_all else FAIL,
    }


def load_instances(lemma: str | None = None) -> list[LemmaInstance]:
    """The bundled instance library, optionally restricted to one lemma id."""
    out = []
    folder = resources.files("hypertrace") / "instances"
    for entry in sorted(folder.iterdir(), key=lambda p: p.name):
        if not entry.name.endswith(".json"):
            continue
        for data in json.loads(entry.read_text()):
            inst = LemmaInstance.from_dict(data)
            if lemma is None or inst.lemma == lemma:
                out.append(inst)
    return out


def run_lemma_suite(lemma: str | None = None) -> dict:
    reports = [check_perturbation(i) for i in load_instances(lemma)]
    if not reports:
        raise InputError(f"no instances for lemma {lemma!r}")
    status = PASS if all(r["status"] == PASS for r in reports) else FAIL
    return {"lemma": lemma or "all", "reports": reports, "status": status}


# --------------------------------------------------------------------------
# extremal theorems
# --------------------------------------------------------------------------

def is_star_attachment(h: Hypergraph) -> bool:
    """A cycle with hyperstars glued by their centres to degree-2 cycle vertices."""
    if not is_linear_unicyclic(h):
        return False
    cyc = set(cycle_order(h, tuple(range(h.num_edges))))
    joints = {v for i in cyc for v in h.edges[i] if sum(v in h.edges[j] for j in cyc) == 2}
    for i, e in enumerate(h.edges):
        if i in cyc:
            continue
        hits = [v for v in e if v in joints]
        if len(hits) != 1 or any(degree(h, v) != 1 for v in e if v != hits[0]):
            return False
    return True


def _family(which: str, m: int, size: int) -> tuple[list[Hypergraph], Hypergraph]:
    if which == "pm_hypertrees":
        if pm_edge_count(m, size) is None:
            raise InputError(f"no hypertree on {m * size} vertices has a perfect matching when (m-1) does not divide (k-1)")
        return enumerate_pm_hypertrees(m, size), t_mt(m, (size - 1) // (m - 1))
    if which == "unicyclic_girth3":
        if size < 3:
            raise InputError("need z >= 3")
        return enumerate_unicyclic(m, size, 3), s_m_n_t(m, 3, size - 3)
    raise InputError(f"unknown family {which!r}")


def _certified_compare(a: Hypergraph, b: Hypergraph, depth: int | None, jobs: int) -> tuple[str, int]:
    d = depth or max(default_depth(a), default_depth(b))
    d += -d % a.m
    while True:
        verdict, _, _ = compare_ee(a, b, d, jobs)
        if verdict != INCONCLUSIVE or d >= MAX_RETRY_DEPTH:
            return verdict, d
        d += 2 * a.m


def check_extremal_theorem(which: str, m: int, size: int, depth: int | None = None, jobs: int = 1) -> dict:
    """Certify that the named maximizer beats every other member of the family."""
    family, target = _family(which, m, size)
    key = canonical_form(target)
    if key not in {canonical_form(h) for h in family}:
        raise HypothesisError("the predicted maximizer is not a member of the enumerated family")
    rows = []
    ok = True
    for h in family:
        if canonical_form(h) == key:
            continue
        verdict, used = _certified_compare(target, h, depth, jobs)
        rows.append({"other": h.to_dict(), "verdict": verdict, "D": used})
        ok &= verdict == A_GREATER
    report = {
        "theorem": "5.3" if which == "pm_hypertrees" else "6.6",
        "family": which,
        "m": m,
        "size": size,
        "members": len(family),
        "maximizer": target.to_dict(),
        "comparisons": rows,
    }
    if which == "unicyclic_girth3":
        report["maximizer_star_attachment"] = is_star_attachment(target)
        ok &= report["maximizer_star_attachment"]
    if len(family) == 1:
        report["notes"] = ["family has a single member; the comparison is vacuous"]
    report["status"] = PASS if ok else FAIL
    return report


def problem_sweep(m: int, z: int, depth: int | None = None, jobs: int = 1) -> dict:
    """Compare S^m_{3,z-3} with every linear unicyclic hypergraph on z edges, all girths.

    Exploratory: comparisons are listed, no verdict is drawn.
    """
    target = s_m_n_t(m, 3, z - 3)
    key = canonical_form(target)
    rows = []
    for g in range(3, z + 1):
        for h in enumerate_unicyclic(m, z, g):
            if canonical_form(h) == key:
                continue
            verdict, used = _certified_compare(target, h, depth, jobs)
            rows.append({"girth": g, "other": h.to_dict(), "verdict": verdict, "D": used})
    return {"problem": "6.7", "m": m, "z": z, "candidate": target.to_dict(), "comparisons": rows}


# --------------------------------------------------------------------------
# structure lemmas
# --------------------------------------------------------------------------

def _tree_root_report(max_edges: int = 3, ms=(2, 3, 4), max_weight: int = 2) -> dict:
    checked, bad = 0, []
    for m in ms:
        for k in range(1, max_edges + 1):
            for t in enumerate_hypertrees(m, k):
                for omega in product(range(1, max_weight + 1), repeat=k):
                    ws = weighted(t, omega)
                    found = [f.counts for f in euler_rootings(ws)]
                    expected = tuple(sorted(((i, v), omega[i]) for i in range(k) for v in t.edges[i]))
                    checked += 1
                    if found != [expected]:
                        bad.append({"tree": t.to_dict(), "omega": list(omega), "assignments": len(found)})
    return {"lemma": "3.1", "checked": checked, "violations": bad, "status": PASS if not bad else FAIL}


def _cored_corpus() -> list[Hypergraph]:
    return [single_edge(2), single_edge(3), single_edge(4), hyperpath(2, 3), hyperstar(2, 3), loose_cycle(3, 3)]


def _cored_multiplicity_report(max_mult: int = 6) -> dict:
    checked, rootable, bad = 0, 0, []
    for h in _cored_corpus():
        m = h.m
        for mult in product(range(1, max_mult + 1), repeat=h.num_edges):
            checked += 1
            counts = dict(enumerate(mult))
            if next(euler_rootings_multi(h, counts), None) is None:
                continue
            rootable += 1
            for i, e in enumerate(h.edges):
                cored = any(degree(h, v) == 1 for v in e)
                if cored and mult[i] % m:
                    bad.append({"hypergraph": h.to_dict(), "multiplicities": list(mult), "edge": i})
    return {"lemma": "4.1", "checked": checked, "rootable": rootable, "violations": bad, "status": PASS if not bad else FAIL}


def find_comb(t: Hypergraph) -> tuple[int, int, list[int]] | None:
    """An (endpoint u, comb edge, pendant edges) split leaving a remainder with a perfect matching."""
    for i0, e0 in enumerate(t.edges):
        for u in e0:
            pend = []
            for v in e0:
                if v == u:
                    continue
                others = [j for j in t.incidence[v] if j != i0]
                if len(others) != 1:
                    break
                j = others[0]
                if any(degree(t, x) != 1 for x in t.edges[j] if x != v):
                    break
                pend.append(j)
            else:
                drop = {i0, *pend}
                rest_edges = [e for j, e in enumerate(t.edges) if j not in drop]
                verts = sorted({x for e in rest_edges for x in e})
                if u not in verts:
                    continue
                idx = {x: k for k, x in enumerate(verts)}
                rest = Hypergraph(t.m, len(verts), tuple(tuple(idx[x] for x in e) for e in rest_edges))
                if is_connected(rest) and has_perfect_matching(rest) is not None:
                    return u, i0, sorted(pend)
    return None


def _pm_decomposition_report(cases=((2, 3), (3, 3), (3, 5))) -> dict:
    rows, ok = [], True
    for m, k in cases:
        for t in enumerate_pm_hypertrees(m, k):
            split = find_comb(t) if t.num_edges > 1 else None
            unique = count_perfect_matchings(t) == 1
            good = unique and (t.num_edges == 1 or split is not None)
            ok &= good
            rows.append({"m": m, "k": k, "tree": t.to_dict(), "comb": split, "unique_matching": unique, "ok": good})
    return {"lemma": "5.2", "checked": len(rows), "rows": rows, "status": PASS if ok else FAIL}


STRUCTURE_CHECKS = {
    "tree_root": _tree_root_report,
    "cored_multiplicity": _cored_multiplicity_report,
    "pm_decomposition": _pm_decomposition_report,
}


def check_structure_lemma(which: str, **kwargs) -> dict:
    try:
        fn = STRUCTURE_CHECKS[which]
    except KeyError:
        raise InputError(f"unknown structure lemma {which!r}; choose from {sorted(STRUCTURE_CHECKS)}") from None
    return fn(**kwargs)
