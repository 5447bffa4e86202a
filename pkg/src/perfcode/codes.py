"""Deciding whether a subgroup is a perfect code of some Cayley graph.

Three routes:
  * Phi(G, H) for normal H: every g with g^2 in H has some h in H with
    (gh)^2 = e.
  * for a 2-group H, Phi(N_G(H), H).
  * any H: existence of an inverse-closed left transversal, searched by
    backtracking or by a matching on the coset inverse graph.

Plus a definitional checker on the Cayley graph itself.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

import networkx as nx
import numpy as np

from . import groups, kernels
from .errors import LimitExceeded, NotEnumerableError, PerfCodeError, UsageError
from .groups import Group, SubgroupView

BACKTRACK_LIMIT = 5000
MATCHING_LIMIT = 10**6
# largest group whose cosets are enumerated element by element
COSET_GROUP_LIMIT = 2 * 10**6
GRAPH_LIMIT_T1 = 10**5
GRAPH_LIMIT_T = 10**4

REPORT_VERSION = 1


class MethodDisagreement(PerfCodeError):
    pass


# -- Phi ------------------------------------------------------------------------

@dataclass
class PhiResult:
    holds: bool
    counterexample: Optional[int]
    witness_map: dict          # g with g^2 in H  ->  some h with (gh)^2 = e, or None
    scanned: int
    backend: str = "python"

    @property
    def bad_square_count(self) -> int:
        return len(self.witness_map)

    @property
    def failure_count(self) -> int:
        return sum(1 for h in self.witness_map.values() if h is None)


def verify_phi_counterexample(G: Group, H: SubgroupView, g: int) -> bool:
    """g^2 in H and (gh)^2 != e for every h in H."""
    if G.mul(g, g) not in H:
        return False
    e = G.identity
    for h in H:
        x = G.mul(g, h)
        if G.mul(x, x) == e:
            return False
    return True


def _kernel_scope(scope: SubgroupView, H: SubgroupView):
    G = scope.parent
    if not isinstance(G, groups.AffineGroup) or not groups.same_subgroup_as_hq(G, H):
        return None
    if scope.kind == "normalizer_hq":
        return G.gl2(subfield_only=True)
    if scope.kind == "whole":
        if not G.enumerable:
            raise NotEnumerableError(f"full scan of {G.spec} ({G.order} elements) is out of reach")
        return G.gl2()
    return None


def phi_check(scope: SubgroupView, H: SubgroupView) -> PhiResult:
    """Scan `scope` (G itself or a subgroup of it) in index order.

    The first failing g is the counterexample; the whole scope is still
    scanned so the witness map is complete.
    """
    G = scope.parent
    if H.parent is not G:
        raise UsageError("scope and H live in different groups")
    mats = _kernel_scope(scope, H)
    if mats is not None:
        hv = groups.TranslationSubgroup(G).translations()
        hids = groups.TranslationSubgroup(G).ids()
        res = kernels.phi_scan_affine(G.tower, mats, hv)
        wmap = {int(g): (hids[h] if h >= 0 else None) for g, h in zip(res.g.tolist(), res.h.tolist())}
        cex = res.first_failure
        out = PhiResult(cex is None, cex, wmap, res.scanned, res.backend)
    else:
        if not scope.enumerable:
            raise NotEnumerableError("phi_check needs an enumerable scope")
        e = G.identity
        hs = H.ids()
        wmap, cex, n = {}, None, 0
        for g in scope:
            n += 1
            if G.mul(g, g) not in H:
                continue
            found = None
            for h in hs:
                x = G.mul(g, h)
                if G.mul(x, x) == e:
                    found = h
                    break
            wmap[g] = found
            if found is None and cex is None:
                cex = g
        out = PhiResult(cex is None, cex, wmap, n)
    if out.counterexample is not None and not verify_phi_counterexample(G, H, out.counterexample):
        raise AssertionError(f"counterexample {G.label(out.counterexample)} does not re-verify")
    return out


# -- transversals ---------------------------------------------------------------

@dataclass(frozen=True)
class TransversalWitness:
    elements: frozenset
    contains_identity: bool

    def ids(self) -> list[int]:
        return sorted(self.elements)


@dataclass(frozen=True)
class ConnectionSet:
    elements: frozenset

    def ids(self) -> list[int]:
        return sorted(self.elements)


def validate_transversal(G: Group, cosets: groups.Cosets, T: Iterable[int]) -> bool:
    T = set(T)
    hit = [0] * len(cosets)
    for x in T:
        if x not in cosets.coset_of:
            return False
        hit[cosets.coset_of[x]] += 1
    return all(k == 1 for k in hit) and all(G.inv(x) in T for x in T)


def _check_searchable(G: Group, H: SubgroupView, limit: int) -> None:
    if not G.enumerable or G.order > COSET_GROUP_LIMIT:
        raise LimitExceeded(f"{G.spec}: {G.order} elements is beyond coset enumeration")
    index = G.order // H.order
    if index > limit:
        raise LimitExceeded(f"[G:H] = {index} exceeds limit {limit}")


def _coset_options(G: Group, cosets: groups.Cosets):
    """Per coset: (x, coset of x^-1 or None when x is an involution or e)."""
    opts = []
    for cell in cosets.cells:
        row = []
        cid = cosets.coset_of[cell[0]]
        for x in cell:
            y = G.inv(x)
            if y == x:
                row.append((x, None))
            else:
                cy = cosets.coset_of[y]
                if cy != cid:
                    row.append((x, cy))
        opts.append(row)
    return opts


def transversal_search_backtracking(G: Group, H: SubgroupView, limit: int = BACKTRACK_LIMIT,
                                    require_identity: bool = False,
                                    cosets: groups.Cosets | None = None) -> Optional[TransversalWitness]:
    """Depth-first search, most-constrained coset first.

    Returns None when no inverse-closed left transversal exists; raises
    LimitExceeded when the search was not attempted.
    """
    _check_searchable(G, H, limit)
    cosets = cosets or groups.left_cosets(G, H)
    opts = _coset_options(G, cosets)
    if require_identity:
        opts[cosets.coset_of[G.identity]] = [(G.identity, None)]
    k = len(cosets)
    choice: list = [None] * k

    def available(c):
        return [(x, c2) for x, c2 in opts[c] if c2 is None or choice[c2] is None]

    def pick():
        best, best_n = None, None
        for c in range(k):
            if choice[c] is not None:
                continue
            n = sum(1 for _, c2 in opts[c] if c2 is None or choice[c2] is None)
            if best_n is None or n < best_n:
                best, best_n = c, n
                if n == 0:
                    break
        return best

    stack = []   # frames: [coset, options, next option, cosets assigned by this frame]

    def descend():
        c = pick()
        if c is None:
            return True
        stack.append([c, available(c), 0, ()])
        return False

    if descend():
        return _witness(G, choice)
    while stack:
        fr = stack[-1]
        for cc in fr[3]:
            choice[cc] = None
        fr[3] = ()
        if fr[2] >= len(fr[1]):
            stack.pop()
            continue
        x, c2 = fr[1][fr[2]]
        fr[2] += 1
        choice[fr[0]] = x
        fr[3] = (fr[0],)
        if c2 is not None:
            choice[c2] = G.inv(x)
            fr[3] = (fr[0], c2)
        if descend():
            return _witness(G, choice)
    return None


def _witness(G: Group, chosen: Iterable[int]) -> TransversalWitness:
    T = frozenset(chosen)
    return TransversalWitness(T, G.identity in T)


@dataclass
class CosetInverseGraph:
    """Vertices are cosets. An edge joins the cosets of x and x^-1 when
    they differ; ``self_cover[c]`` is the least involution (or e) in c."""

    n_cosets: int
    edges: dict                  # (c1, c2), c1 < c2  ->  least realizing (x, x^-1)
    self_cover: dict
    cross_pairs: int             # inverse pairs {x, x^-1} spanning two cosets
    unusable_pairs: int          # x != x^-1 inside one coset
    involutions: int             # x with x^2 = e, identity included

    def orbit_count_ok(self, G: Group) -> bool:
        n = sum(1 for g in G.elements() if G.inv(g) >= g)
        return self.cross_pairs + self.unusable_pairs + self.involutions == n


def coset_inverse_graph(G: Group, cosets: groups.Cosets) -> CosetInverseGraph:
    edges, self_cover = {}, {}
    cross = unusable = invol = 0
    for x in G.elements():
        y = G.inv(x)
        cx = cosets.coset_of[x]
        if y == x:
            invol += 1
            self_cover.setdefault(cx, x)
        elif x < y:
            cy = cosets.coset_of[y]
            if cx == cy:
                unusable += 1
                continue
            cross += 1
            key = (cx, cy) if cx < cy else (cy, cx)
            pair = (x, y) if key[0] == cx else (y, x)
            # elements arrive ascending, so the first pair seen has the least x
            edges.setdefault(key, pair)
    return CosetInverseGraph(len(cosets), edges, self_cover, cross, unusable, invol)


def transversal_search_matching(G: Group, H: SubgroupView, limit: int = MATCHING_LIMIT,
                                require_identity: bool = False,
                                cosets: groups.Cosets | None = None) -> Optional[TransversalWitness]:
    """Cover every coset by a matching edge or by a self-inverse element.

    Each self-coverable coset gets a private dummy neighbour. Coset-coset
    edges weigh 2 and coset-dummy edges 1, so a maximum weight matching
    covers as many cosets as possible; a transversal exists iff it covers
    all of them.
    """
    _check_searchable(G, H, limit)
    cosets = cosets or groups.left_cosets(G, H)
    cig = coset_inverse_graph(G, cosets)
    fixed = {}
    if require_identity:
        fixed[cosets.coset_of[G.identity]] = G.identity
    graph = nx.Graph()
    graph.add_nodes_from(c for c in range(cig.n_cosets) if c not in fixed)
    for (c1, c2) in cig.edges:
        if c1 not in fixed and c2 not in fixed:
            graph.add_edge(c1, c2, weight=2)
    for c, x in cig.self_cover.items():
        if c not in fixed:
            graph.add_edge(c, ("dummy", c), weight=1)
    matching = nx.max_weight_matching(graph)
    chosen = dict(fixed)
    for u, v in matching:
        if isinstance(u, tuple) or isinstance(v, tuple):
            c = v if isinstance(u, tuple) else u
            chosen[c] = cig.self_cover[c]
        else:
            x, y = cig.edges[(min(u, v), max(u, v))]
            chosen[cosets.coset_of[x]] = x
            chosen[cosets.coset_of[y]] = y
    for c in range(cig.n_cosets):
        if c not in chosen and c in cig.self_cover:
            chosen[c] = cig.self_cover[c]
    if len(chosen) < cig.n_cosets:
        return None
    return _witness(G, chosen.values())


def connection_set_from_transversal(G: Group, T: TransversalWitness) -> ConnectionSet:
    if not T.contains_identity:
        raise UsageError("transversal must contain the identity; search again with require_identity")
    return ConnectionSet(frozenset(T.elements - {G.identity}))


# -- Cayley graphs --------------------------------------------------------------

def check_connection_set(G: Group, S: Iterable[int]) -> None:
    S = set(S)
    G.check_member(*S)
    if G.identity in S:
        raise UsageError("connection set contains the identity")
    missing = [x for x in S if G.inv(x) not in S]
    if missing:
        x = min(missing)
        raise UsageError(f"connection set is not inverse-closed: {G.label(x)} has inverse "
                         f"{G.label(G.inv(x))} missing")


def cayley_perfect_code_check(G: Group, S: Iterable[int], C: Iterable[int], t: int = 1) -> bool:
    """Is C a perfect t-code of Cay(G, S)?  Neighbours of g are s*g, s in S."""
    S = sorted(set(S))
    C = np.array(sorted(set(C)), dtype=np.int64)
    if t < 1:
        raise UsageError("radius must be >= 1")
    bound = GRAPH_LIMIT_T1 if t == 1 else GRAPH_LIMIT_T
    if not G.enumerable or G.order > bound:
        raise LimitExceeded(f"graph check limited to {bound} vertices")
    check_connection_set(G, S)
    G.check_member(*C.tolist())
    verts = np.fromiter(G.elements(), dtype=np.int64, count=G.order)
    nbrs = np.stack([G.left_mul_vec(s, verts) for s in S], axis=1) if S else \
        np.empty((len(verts), 0), dtype=np.int64)
    if t == 1:
        code_nbrs = np.isin(nbrs, C).sum(axis=1)
        in_c = np.isin(verts, C)
        return bool(np.all(code_nbrs[in_c] == 0) and np.all(code_nbrs[~in_c] == 1))
    # row positions for neighbour lookups
    pos = np.searchsorted(verts, nbrs)
    adj = pos.tolist()
    within = np.zeros(len(verts), dtype=np.int64)
    for c in np.searchsorted(verts, C).tolist():
        dist = {c: 0}
        queue = deque([c])
        while queue:
            v = queue.popleft()
            if dist[v] == t:
                continue
            for w in adj[v]:
                if w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        within[list(dist)] += 1
    return bool(np.all(within == 1))


# -- decision pipeline ----------------------------------------------------------

METHODS = ("normal_phi", "two_group_criterion", "transversal_backtracking",
           "transversal_matching", "direct_graph")


@dataclass
class MethodOutcome:
    name: str
    outcome: str        # perfect_code | not_perfect_code | inconclusive | confirmed | skipped
    millis: float
    detail: str = ""


@dataclass
class DecisionReport:
    verdict: str
    group: str
    subgroup: list
    methods: list = field(default_factory=list)
    phi: Optional[PhiResult] = None
    transversal: Optional[TransversalWitness] = None
    connection_set: Optional[ConnectionSet] = None

    @property
    def methods_run(self) -> list[str]:
        return [m.name for m in self.methods if m.outcome != "skipped"]

    def to_json(self, timings: bool = False) -> dict:
        wit = {}
        if self.transversal is not None:
            wit["transversal"] = [format(x, "x") for x in self.transversal.ids()]
        if self.connection_set is not None:
            wit["connection_set"] = [format(x, "x") for x in self.connection_set.ids()]
        if self.phi is not None and self.phi.counterexample is not None:
            wit["phi_counterexample"] = format(self.phi.counterexample, "x")
        methods = []
        for m in self.methods:
            d = {"name": m.name, "outcome": m.outcome}
            if m.detail:
                d["detail"] = m.detail
            if timings:
                d["millis"] = round(m.millis, 3)
            methods.append(d)
        return {"version": REPORT_VERSION, "verdict": self.verdict, "methods": methods,
                "witnesses": wit, "group": self.group,
                "subgroup": [format(x, "x") for x in self.subgroup]}


def _verdict(flag: bool) -> str:
    return "perfect_code" if flag else "not_perfect_code"


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t0) * 1e3


def two_group_criterion(G: Group, H: SubgroupView) -> tuple[bool, PhiResult]:
    if not groups.is_2_group(H):
        raise UsageError(f"|H| = {H.order} is not a power of 2")
    N = groups.normalizer(G, H)
    res = phi_check(N, H)
    return res.holds, res


def is_perfect_code(G: Group, H: SubgroupView, policy: str = "decide",
                    backtrack_limit: int = BACKTRACK_LIMIT,
                    matching_limit: int = MATCHING_LIMIT,
                    methods: Iterable[str] | None = None) -> DecisionReport:
    """Run the criteria; under policy "cross_validate" every applicable
    method runs and they must agree."""
    if policy not in ("decide", "cross_validate"):
        raise UsageError(f"unknown policy {policy!r}")
    wanted = set(methods) if methods is not None else set(METHODS)
    unknown = wanted - set(METHODS)
    if unknown:
        raise UsageError(f"unknown method(s) {sorted(unknown)}")
    cross = policy == "cross_validate"
    gens = list(H.generators) if H.generators is not None else H.ids()
    rep = DecisionReport("inconclusive", G.spec, gens)
    verdicts: dict[str, bool] = {}
    cosets = None

    def record(name, clock, flag, detail=""):
        rep.methods.append(MethodOutcome(name, _verdict(flag), clock.ms, detail))
        verdicts[name] = flag

    def settled():
        return bool(verdicts) and not cross

    if H.order in (1, G.order) and G.order > COSET_GROUP_LIMIT:
        # T = G for H = {e}, T = {e} for H = G; too large to list here
        rep.verdict = "perfect_code"
        rep.methods.append(MethodOutcome("degenerate", "perfect_code", 0.0,
                                         "trivial subgroup" if H.order == 1 else "H = G"))
        return rep

    # Theorem for normal subgroups
    if "normal_phi" in wanted:
        try:
            with _Clock() as ck:
                normal = groups.is_normal(G, H)
                res = phi_check(groups.whole(G), H) if normal else None
            if normal:
                rep.phi = res
                record("normal_phi", ck, res.holds)
            else:
                rep.methods.append(MethodOutcome("normal_phi", "skipped", ck.ms, "H is not normal"))
        except (NotEnumerableError, LimitExceeded) as exc:
            rep.methods.append(MethodOutcome("normal_phi", "skipped", 0.0, str(exc)))

    if not settled() and "two_group_criterion" in wanted:
        if groups.is_2_group(H):
            try:
                with _Clock() as ck:
                    flag, res = two_group_criterion(G, H)
                rep.phi = rep.phi or res
                record("two_group_criterion", ck, flag)
            except (NotEnumerableError, LimitExceeded) as exc:
                rep.methods.append(MethodOutcome("two_group_criterion", "inconclusive", 0.0, str(exc)))
        else:
            rep.methods.append(MethodOutcome("two_group_criterion", "skipped", 0.0, "H is not a 2-group"))

    searches = (("transversal_matching", transversal_search_matching, matching_limit),
                ("transversal_backtracking", transversal_search_backtracking, backtrack_limit))
    for name, search, limit in searches:
        if name not in wanted or settled():
            continue
        try:
            with _Clock() as ck:
                if cosets is None:
                    _check_searchable(G, H, limit)
                    cosets = groups.left_cosets(G, H)
                T = search(G, H, limit=limit, cosets=cosets)
            if T is not None:
                if not validate_transversal(G, cosets, T.elements):
                    raise AssertionError(f"{name} returned an invalid transversal")
                rep.transversal = rep.transversal or T
            record(name, ck, T is not None)
        except LimitExceeded as exc:
            rep.methods.append(MethodOutcome(name, "inconclusive", 0.0, str(exc)))

    if not verdicts:
        return rep
    if len(set(verdicts.values())) > 1:
        raise MethodDisagreement(f"{G.spec}, H={gens}: " +
                                 ", ".join(f"{k}={_verdict(v)}" for k, v in verdicts.items()))
    flag = next(iter(verdicts.values()))
    rep.verdict = _verdict(flag)

    if flag and cross and "direct_graph" in wanted:
        try:
            with _Clock() as ck:
                T = rep.transversal
                if T is None or not T.contains_identity:
                    T = transversal_search_matching(G, H, limit=matching_limit,
                                                    require_identity=True, cosets=cosets)
                if T is None:
                    raise MethodDisagreement("transversal exists but none contains the identity")
                S = connection_set_from_transversal(G, T)
                ok = cayley_perfect_code_check(G, S.elements, H.elements, 1)
            if not ok:
                raise MethodDisagreement("connection set from transversal fails the graph check")
            rep.transversal, rep.connection_set = T, S
            rep.methods.append(MethodOutcome("direct_graph", "confirmed", ck.ms))
        except LimitExceeded as exc:
            rep.methods.append(MethodOutcome("direct_graph", "skipped", 0.0, str(exc)))
    elif flag and rep.transversal is not None and rep.transversal.contains_identity:
        rep.connection_set = connection_set_from_transversal(G, rep.transversal)
    return rep
