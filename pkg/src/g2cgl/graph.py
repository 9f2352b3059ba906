"""Explorer for the superspecial (2,2)-isogeny multigraph at small primes.

Vertices are isomorphism classes of principally polarized abelian
surfaces over F_{p^2}: jacobians of genus-2 curves ("J" vertices, keyed
by their invariant triple) and products of two supersingular elliptic
curves ("E" vertices, keyed by the sorted pair of j-invariants).  Each
vertex has exactly 15 outgoing edges, one per two-torsion kernel:

* at a J vertex, the 15 quadratic splittings of the six root slots;
* at an E vertex, the 9 product kernels and the 6 isomorphism-graph
  matchings.

The builder runs a breadth-first closure from explicit superspecial
seed curves plus every product of supersingular elliptic curves; its
completeness is certified afterwards by matching the exact vertex-count
bounds (``verify_counts``), not assumed.

Walk-level structure needs more than vertex identity: the successor
taxonomy (dual / bad / good) is defined relative to the *incoming*
kernel, and the same vertex can be entered with inequivalent incoming
kernels.  The explorer therefore labels every J->J edge with the
arrival class of its incoming kernel: splittings of a vertex are put in
canonical form under projective changes of the root model, and
equivalent splittings share a class label (the smallest equivalent
splitting index of the stored model).  The lifted state graph on
(vertex, arrival class) pairs with good-extension transitions is what
``verify_conjectures`` and ``find_path(good_only=True)`` traverse.

At p = 5 the invariant triple is unavailable (its normalization divides
by 5), so J vertices are keyed by the canonical form of the root set
itself, which classifies curves over the algebraic closure just as the
triple does.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .errors import InternalInvariantError
from .field import FieldContext, Fp2
from .invariants import (
    PAIRINGS15,
    EllipticRootsForm,
    enumerate_ss_j,
    j_invariant,
    supersingular_j_lambda_map,
)
from .richelot import (
    PRODUCT_KERNELS,
    FactorList,
    SelfIsogeny,
    SplitDetected,
    pairings_share_pair,
    richelot_step_splitting,
    split_codomain,
    superspecial_seeds,
)
from .errors import DegenerateSplittingError

__all__ = [
    "VertexData",
    "GraphSnapshot",
    "CheckResult",
    "build_graph",
    "verify_counts",
    "verify_theorems",
    "verify_conjectures",
    "find_path",
    "replay_path",
    "export_dot",
    "export_json",
    "edge_multiset_from_json",
    "format_check",
]


# ---------------------------------------------------------------------------
# canonical forms of root models under projective substitutions
#
# A root model is six points of the projective line (one may be the
# point at infinity when the sextic degenerates to degree five).  Two
# models present the same curve exactly when a fractional-linear
# substitution maps one root set to the other, so the canonical form of
# (root set, splitting) classifies incoming kernels intrinsically.
#
# The canonical form maps an anchor triple (a, b, c) of distinct roots
# to (infinity, 0, 1) and records the images of all six roots; taking
# the lexicographically smallest record over the allowed anchors makes
# the result model-independent.  For a splitting, anchors are
# constrained to (pair member, its partner, any other root), keeping
# the candidate set equivariant; a bare root set allows all anchors.


def _slot_points(fl: FactorList) -> List[Tuple[int, int, int, int]]:
    """The six slots as projective points (u : v) in raw coefficient
    form (ua, ub, va, vb); the constant slot is the point at infinity.
    Raw integers keep the canonical-form search, the hot loop of the
    builder, free of element-object overhead."""
    pts = []
    for i in range(6):
        r = fl.root(i)
        if r is None:
            pts.append((1, 0, 0, 0))
        else:
            pts.append((r.a, r.b, 1, 0))
    return pts


def _inv_fn(ctx: FieldContext):
    """encode -> encode inversion for the canon search."""
    if ctx._use_tables:
        ctx._ensure_tables()
        return ctx._inv_table.__getitem__
    p, n = ctx.p, ctx.n

    def inv(e: int) -> int:
        a, b = e % p, e // p
        ni = pow((a * a - n * b * b) % p, p - 2, p)
        return a * ni % p + p * ((-b * ni) % p)

    return inv


def _anchor_images(p, n, inv, points, a, b, c, inf_code) -> List[int]:
    """Encodings of the images of all points under the substitution
    sending point a to infinity, b to 0 and c to 1."""
    ua, ub, va, vb = points[a]
    wa, wb, xa, xb = points[b]
    ya, yb, za, zb = points[c]
    # ca = cross(c, a), cb = cross(c, b)
    ca_a = (ya * va + n * yb * vb - (za * ua + n * zb * ub)) % p
    ca_b = (ya * vb + yb * va - (za * ub + zb * ua)) % p
    cb_a = (ya * xa + n * yb * xb - (za * wa + n * zb * wb)) % p
    cb_b = (ya * xb + yb * xa - (za * wb + zb * wa)) % p
    out = []
    for (ea, eb, fa, fb) in points:
        nb_a = (ea * xa + n * eb * xb - (fa * wa + n * fb * wb)) % p
        nb_b = (ea * xb + eb * xa - (fa * wb + fb * wa)) % p
        na_a = (ea * va + n * eb * vb - (fa * ua + n * fb * ub)) % p
        na_b = (ea * vb + eb * va - (fa * ub + fb * ua)) % p
        den_a = (na_a * cb_a + n * na_b * cb_b) % p
        den_b = (na_a * cb_b + na_b * cb_a) % p
        if den_a == 0 and den_b == 0:
            out.append(inf_code)
            continue
        num_a = (nb_a * ca_a + n * nb_b * ca_b) % p
        num_b = (nb_a * ca_b + nb_b * ca_a) % p
        ie = inv(den_a + p * den_b)
        ia, ib = ie % p, ie // p
        out.append(
            (num_a * ia + n * num_b * ib) % p
            + p * ((num_a * ib + num_b * ia) % p)
        )
    return out


def _pairing_canon(ctx: FieldContext, points, pairing, inf_code: int):
    p, n = ctx.p, ctx.n
    inv = _inv_fn(ctx)
    best = None
    for pr in pairing:
        for a, b in (pr, (pr[1], pr[0])):
            rest = [i for i in range(6) if i not in pr]
            for c in rest:
                img = _anchor_images(p, n, inv, points, a, b, c, inf_code)
                key = tuple(
                    sorted(
                        tuple(sorted((img[i], img[j]))) for i, j in pairing
                    )
                )
                if best is None or key < best:
                    best = key
    return best


def _curve_canon(ctx: FieldContext, points, inf_code: int):
    p, n = ctx.p, ctx.n
    inv = _inv_fn(ctx)
    best = None
    for a in range(6):
        for b in range(6):
            if b == a:
                continue
            for c in range(6):
                if c == a or c == b:
                    continue
                img = _anchor_images(p, n, inv, points, a, b, c, inf_code)
                key = tuple(sorted(img))
                if best is None or key < best:
                    best = key
    return best


# ---------------------------------------------------------------------------
# snapshot data model


Edge = Tuple[int, tuple, Optional[int]]  # (kernel index, target key, class)


@dataclass
class VertexData:
    """One vertex: its kind, a stored state (a factor list for J, an
    ordered pair of elliptic root forms for E), and its 15 out-edges as
    (kernel index, target key, arrival class) with the class set on
    J->J edges only."""

    kind: str
    state: object
    edges: Tuple[Edge, ...] = ()
    _canon_table: Optional[Dict[tuple, int]] = field(default=None, repr=False)


@dataclass
class GraphSnapshot:
    p: int
    ctx: FieldContext
    vertices: Dict[tuple, VertexData]

    def keys_sorted(self) -> List[tuple]:
        return sorted(self.vertices, key=lambda k: (k[0] != "J", k))

    def jacobian_keys(self) -> List[tuple]:
        return [k for k in self.keys_sorted() if k[0] == "J"]

    def product_keys(self) -> List[tuple]:
        return [k for k in self.keys_sorted() if k[0] == "E"]

    def out_edges(self, key: tuple) -> Tuple[Edge, ...]:
        return self.vertices[key].edges

    def multiplicity(self, src: tuple, dst: tuple) -> int:
        return sum(1 for _, t, _ in self.vertices[src].edges if t == dst)

    def edge_multiset(self) -> Dict[Tuple[tuple, tuple], int]:
        out: Dict[Tuple[tuple, tuple], int] = {}
        for k, v in self.vertices.items():
            for _, t, _ in v.edges:
                out[(k, t)] = out.get((k, t), 0) + 1
        return out


def _canon_table_of(g: GraphSnapshot, key: tuple) -> Dict[tuple, int]:
    """Map pairing-canonical form -> smallest equivalent splitting index,
    for the stored model of a J vertex."""
    v = g.vertices[key]
    if v._canon_table is None:
        pts = _slot_points(v.state)
        inf_code = g.p * g.p
        table: Dict[tuple, int] = {}
        for k, pairing in enumerate(PAIRINGS15):
            ck = _pairing_canon(g.ctx, pts, pairing, inf_code)
            if ck not in table:
                table[ck] = k
        v._canon_table = table
    return v._canon_table


# ---------------------------------------------------------------------------
# building


def _jkey(g_p: int, fl: FactorList) -> tuple:
    if g_p == 5:
        pts = _slot_points(fl)
        return ("J", ("canon",) + _curve_canon(fl.ctx, pts, 25))
    return ("J", fl.invariants().encode())


def _ekey(e1: EllipticRootsForm, e2: EllipticRootsForm) -> tuple:
    j1, j2 = j_invariant(e1).encode(), j_invariant(e2).encode()
    return ("E", tuple(sorted((j1, j2))))


def _ordered_pair(
    e1: EllipticRootsForm, e2: EllipticRootsForm
) -> Tuple[EllipticRootsForm, EllipticRootsForm]:
    if j_invariant(e1).encode() <= j_invariant(e2).encode():
        return (e1, e2)
    return (e2, e1)


def build_graph(p: int) -> GraphSnapshot:
    """Breadth-first closure of the superspecial (2,2)-multigraph over
    F_{p^2}.  Every vertex gets exactly 15 outgoing edges; J->J edges
    carry the arrival class of their incoming kernel."""
    ctx = FieldContext(p)
    g = GraphSnapshot(p, ctx, {})
    queue: deque = deque()

    def ensure_j(fl: FactorList) -> tuple:
        key = _jkey(p, fl)
        if key not in g.vertices:
            g.vertices[key] = VertexData("J", fl)
            queue.append(key)
        return key

    def ensure_e(e1: EllipticRootsForm, e2: EllipticRootsForm) -> tuple:
        key = _ekey(e1, e2)
        if key not in g.vertices:
            g.vertices[key] = VertexData("E", _ordered_pair(e1, e2))
            queue.append(key)
        return key

    # seeds: explicit superspecial curves (when a family applies) ...
    try:
        for fl in superspecial_seeds(ctx):
            ensure_j(fl)
    except DegenerateSplittingError:
        pass  # no explicit family for this congruence; products seed all
    # ... plus every product of supersingular elliptic curves
    jmap = supersingular_j_lambda_map(ctx)
    lams = [jmap[je] for je in sorted(jmap)]
    forms = [
        EllipticRootsForm(ctx.zero, ctx.one, lam) for lam in lams
    ]
    for i in range(len(forms)):
        for j in range(i, len(forms)):
            ensure_e(forms[i], forms[j])

    inf_code = p * p
    while queue:
        key = queue.popleft()
        v = g.vertices[key]
        edges: List[Edge] = []
        if v.kind == "J":
            fl: FactorList = v.state
            for k, pairing in enumerate(PAIRINGS15):
                s = fl.splitting(pairing)
                out = richelot_step_splitting(s)
                if isinstance(out, SplitDetected):
                    e1, e2 = split_codomain(s)
                    tkey = ensure_e(e1, e2)
                    edges.append((k, tkey, None))
                else:
                    tkey = ensure_j(out)
                    if p == 5:
                        cls: Optional[int] = None
                    else:
                        ck = _pairing_canon(
                            g.ctx, _slot_points(out), PAIRINGS15[0], inf_code
                        )
                        table = _canon_table_of(g, tkey)
                        if ck not in table:
                            raise InternalInvariantError(
                                "arrival kernel not equivalent to any "
                                "splitting of the stored model"
                            )
                        cls = table[ck]
                    edges.append((k, tkey, cls))
        else:
            e1, e2 = v.state
            for idx, kern in enumerate(PRODUCT_KERNELS):
                if kern.kind == "product":
                    n1, n2 = product_step_forms(e1, e2, kern.indices)
                    tkey = ensure_e(n1, n2)
                    edges.append((idx, tkey, None))
                else:
                    out = glue_forms(e1, e2, kern.indices)
                    if isinstance(out, SelfIsogeny):
                        edges.append((idx, key, None))
                    else:
                        tkey = ensure_j(out)
                        edges.append((idx, tkey, None))
        v.edges = tuple(edges)
    return g


# thin aliases so the build loop reads uniformly
def product_step_forms(e1, e2, indices):
    from .richelot import product_step

    return product_step(e1, e2, indices)


def glue_forms(e1, e2, sigma):
    from .richelot import glue_product_list

    return glue_product_list(e1, e2, sigma)


# ---------------------------------------------------------------------------
# checks


@dataclass(frozen=True)
class CheckResult:
    name: str
    p: int
    passed: bool
    details: str


def format_check(r: CheckResult) -> str:
    return (
        f"CHECK {r.name} p={r.p} {'PASS' if r.passed else 'FAIL'} {r.details}"
    )


def verify_counts(g: GraphSnapshot) -> CheckResult:
    """Exact vertex-count certificate.

    The number of jacobian vertices must exceed the cubic main term by a
    bounded non-negative defect, the number of supersingular
    j-invariants must exceed (p-1)/12 likewise, and the product vertices
    must number exactly n(n+1)/2.  Matching these counts certifies that
    the breadth-first closure found the whole graph.
    """
    p = g.p
    nj = len(g.jacobian_keys())
    ne = len(g.product_keys())
    regular = all(len(v.edges) == 15 for v in g.vertices.values())
    if p == 5:
        ok = regular and nj == 1 and ne == 1
        return CheckResult(
            "counts", p, ok, f"#J={nj} (expected 1) #E={ne} (expected 1)"
        )
    n = len(enumerate_ss_j(g.ctx))
    base = Fraction(p**3 + 24 * p**2 + 141 * p - 346, 2880)
    dj = Fraction(nj) - base
    de = Fraction(n) - Fraction(p - 1, 12)
    ok = (
        regular
        and 0 <= dj <= Fraction(881, 720)
        and 0 <= de <= Fraction(7, 6)
        and ne == n * (n + 1) // 2
    )
    details = (
        f"#J={nj} deltaJ={dj} (p%120={p % 120}) "
        f"n={n} epsN={de} (p%12={p % 12}) #E={ne}={n}*{n + 1}/2"
        f"{'' if regular else ' NOT-15-REGULAR'}"
    )
    return CheckResult("counts", p, ok, details)


def _aut_order_ss(ctx: FieldContext, j_enc: int) -> int:
    """Automorphism-group order of an elliptic curve with this
    j-invariant (p > 3): 6 at j = 0, 4 at j = 1728, else 2."""
    if j_enc == 0:
        return 6
    if j_enc == 1728 % ctx.p:
        return 4
    return 2


def verify_theorems(g: GraphSnapshot) -> CheckResult:
    """Edge-count bounds: every J vertex has at most 6 edges into the
    product locus (except p = 5, where the unique J vertex has exactly
    10); every E vertex has at most 6 edges back, exactly 6 off the
    diagonal and exactly 6 - #Aut/2 on it; and every edge has a dual."""
    p = g.p
    problems = []
    jmax = 0
    for k in g.jacobian_keys():
        cnt = sum(1 for _, t, _ in g.out_edges(k) if t[0] == "E")
        jmax = max(jmax, cnt)
        if p == 5:
            if cnt != 10:
                problems.append(f"J{k} has {cnt} split kernels, expected 10")
        elif cnt > 6:
            problems.append(f"{k} has {cnt} edges into products")
    for k in g.product_keys():
        cnt = sum(1 for _, t, _ in g.out_edges(k) if t[0] == "J")
        j1, j2 = k[1]
        if j1 == j2:
            expect = 6 - _aut_order_ss(g.ctx, j1) // 2
            if cnt != expect:
                problems.append(
                    f"diagonal {k}: {cnt} edges to jacobians, "
                    f"expected {expect}"
                )
        elif cnt != 6:
            problems.append(f"{k}: {cnt} edges to jacobians, expected 6")
    ms = g.edge_multiset()
    for (a, b) in ms:
        if (b, a) not in ms:
            problems.append(f"edge {a}->{b} has no dual edge")
    details = (
        f"maxJ->E={jmax}; diagonal E->J counts in {{3,4,5}}; duals ok"
        if not problems
        else "; ".join(problems[:4])
    )
    return CheckResult("theorems", p, not problems, details)


def _component_count(adj: Dict[tuple, set], keys: List[tuple]) -> int:
    seen = set()
    comps = 0
    for start in keys:
        if start in seen:
            continue
        comps += 1
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj.get(x, ()):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return comps


def _undirected_adj(
    g: GraphSnapshot, restrict: Optional[str] = None
) -> Dict[tuple, set]:
    adj: Dict[tuple, set] = {}
    for k, v in g.vertices.items():
        if restrict and k[0] != restrict:
            continue
        adj.setdefault(k, set())
        for _, t, _ in v.edges:
            if restrict and t[0] != restrict:
                continue
            adj.setdefault(t, set())
            adj[k].add(t)
            adj[t].add(k)
    return adj


def _lifted_graph(g: GraphSnapshot):
    """Nodes (J key, arrival class) with good-extension transitions along
    J->J edges; returns (node list, successor index lists, per-J-vertex
    start node indices, J key order)."""
    jkeys = g.jacobian_keys()
    jindex = {k: i for i, k in enumerate(jkeys)}
    good_of = [
        [
            k
            for k in range(15)
            if not pairings_share_pair(PAIRINGS15[k], PAIRINGS15[c])
        ]
        for c in range(15)
    ]
    nodes: List[Tuple[tuple, int]] = []
    nindex: Dict[Tuple[tuple, int], int] = {}
    for k in jkeys:
        for _, t, cls in g.out_edges(k):
            if cls is None:
                continue
            node = (t, cls)
            if node not in nindex:
                nindex[node] = len(nodes)
                nodes.append(node)
    succ: List[List[int]] = [[] for _ in nodes]
    starts: List[List[int]] = [[] for _ in jkeys]
    for k in jkeys:
        for _, t, cls in g.out_edges(k):
            if cls is not None:
                starts[jindex[k]].append(nindex[(t, cls)])
    for ni, (vkey, cls) in enumerate(nodes):
        edges = g.out_edges(vkey)
        allowed = set(good_of[cls])
        for idx, t, tcls in edges:
            if idx in allowed and tcls is not None:
                succ[ni].append(nindex[(t, tcls)])
    return nodes, succ, starts, jkeys


def _sccs(succ: List[List[int]]) -> List[List[int]]:
    """Kosaraju strongly connected components, iterative."""
    n = len(succ)
    order: List[int] = []
    seen = [False] * n
    for s in range(n):
        if seen[s]:
            continue
        stack = [(s, 0)]
        seen[s] = True
        while stack:
            x, i = stack.pop()
            if i < len(succ[x]):
                stack.append((x, i + 1))
                y = succ[x][i]
                if not seen[y]:
                    seen[y] = True
                    stack.append((y, 0))
            else:
                order.append(x)
    rsucc: List[List[int]] = [[] for _ in range(n)]
    for x in range(n):
        for y in succ[x]:
            rsucc[y].append(x)
    comp = [-1] * n
    comps: List[List[int]] = []
    for s in reversed(order):
        if comp[s] != -1:
            continue
        cid = len(comps)
        comps.append([])
        stack = [s]
        comp[s] = cid
        while stack:
            x = stack.pop()
            comps[cid].append(x)
            for y in rsucc[x]:
                if comp[y] == -1:
                    comp[y] = cid
                    stack.append(y)
    return comps


def _lifted_reachability(g: GraphSnapshot):
    """For each J vertex, the bitmask of J vertices reachable by chains
    of good extensions (first edge unconstrained)."""
    nodes, succ, starts, jkeys = _lifted_graph(g)
    jindex = {k: i for i, k in enumerate(jkeys)}
    comps = _sccs(succ)
    n = len(nodes)
    comp_of = [0] * n
    for cid, members in enumerate(comps):
        for x in members:
            comp_of[x] = cid
    # Kosaraju discovers components in topological order of the
    # condensation (sources first), so accumulate reachable-vertex bits
    # sink-to-source: successors always have a larger component id.
    bits = [0] * len(comps)
    for cid in range(len(comps) - 1, -1, -1):
        b = 0
        for x in comps[cid]:
            b |= 1 << jindex[nodes[x][0]]
            for y in succ[x]:
                b |= bits[comp_of[y]]
        bits[cid] = b
    reach = []
    for i, k in enumerate(jkeys):
        b = 1 << i
        for s in starts[i]:
            b |= bits[comp_of[s]]
        reach.append(b)
    return reach, jkeys


def verify_conjectures(g: GraphSnapshot) -> List[CheckResult]:
    """Connectivity of the whole graph; connectivity of the jacobian
    subgraph; and all-pairs reachability in the lifted good-extension
    state graph."""
    p = g.p
    out = []
    comps = _component_count(_undirected_adj(g), list(g.vertices))
    out.append(
        CheckResult(
            "conjecture1", p, comps == 1, f"weak components={comps}"
        )
    )
    jadj = _undirected_adj(g, restrict="J")
    jcomps = _component_count(jadj, g.jacobian_keys())
    out.append(
        CheckResult(
            "conjecture2",
            p,
            jcomps == 1,
            f"jacobian subgraph components={jcomps}",
        )
    )
    if p == 5:
        out.append(
            CheckResult(
                "conjecture3", p, True, "single jacobian vertex (trivial)"
            )
        )
        return out
    reach, jkeys = _lifted_reachability(g)
    full = (1 << len(jkeys)) - 1
    bad = [jkeys[i] for i, b in enumerate(reach) if b != full]
    out.append(
        CheckResult(
            "conjecture3",
            p,
            not bad,
            f"good-walk reachability over {len(jkeys)} jacobians"
            + ("" if not bad else f"; failing from {bad[:3]}"),
        )
    )
    return out


# ---------------------------------------------------------------------------
# path finding and replay


def _apply_kernel(g: GraphSnapshot, kind: str, state, index: int):
    """Apply kernel ``index`` to an actual state; returns
    (target key, new state, new kind)."""
    if kind == "J":
        s = state.splitting(PAIRINGS15[index])
        out = richelot_step_splitting(s)
        if isinstance(out, SplitDetected):
            e1, e2 = split_codomain(s)
            return _ekey(e1, e2), (e1, e2), "E"
        return _jkey(g.p, out), out, "J"
    e1, e2 = state
    kern = PRODUCT_KERNELS[index]
    if kern.kind == "product":
        n1, n2 = product_step_forms(e1, e2, kern.indices)
        return _ekey(n1, n2), (n1, n2), "E"
    out = glue_forms(e1, e2, kern.indices)
    if isinstance(out, SelfIsogeny):
        return _ekey(e1, e2), (e1, e2), "E"
    return _jkey(g.p, out), out, "J"


def _arrival_class(g: GraphSnapshot, key: tuple, state: FactorList) -> int:
    ck = _pairing_canon(g.ctx, _slot_points(state), PAIRINGS15[0], g.p * g.p)
    return _canon_table_of(g, key)[ck]


def find_path(
    g: GraphSnapshot,
    src: tuple,
    dst: tuple,
    good_only: bool = False,
) -> Optional[List[int]]:
    """Shortest kernel-index path from src to dst, or None.

    Indices apply to the *actual walker state* (the stored model of src
    for the first step, each arrival model afterwards): index i at a
    jacobian selects splitting i of the current factor list; at a
    product vertex it selects the i-th product kernel.  With
    ``good_only`` every step after the first is a good extension of the
    previous one and the path stays on jacobians.
    """
    if src not in g.vertices or dst not in g.vertices:
        raise KeyError("unknown vertex key")
    if src == dst:
        return []
    if not good_only:
        # vertex-level BFS on stored edges
        prev: Dict[tuple, Tuple[tuple, int]] = {src: (None, -1)}
        q = deque([src])
        while q:
            x = q.popleft()
            for idx, t, _ in g.out_edges(x):
                if t not in prev:
                    prev[t] = (x, idx)
                    if t == dst:
                        q.clear()
                        break
                    q.append(t)
        if dst not in prev:
            return None
        hops = []
        x = dst
        while x != src:
            px, idx = prev[x]
            hops.append(x)
            x = px
        hops.reverse()
        # convert stored-edge indices to actual-state indices by replay
        out = []
        kind = g.vertices[src].kind
        state = g.vertices[src].state
        for target in hops:
            for i in range(15):
                try:
                    tkey, tstate, tkind = _apply_kernel(g, kind, state, i)
                except DegenerateSplittingError:
                    continue
                if tkey == target:
                    out.append(i)
                    kind, state = tkind, tstate
                    break
            else:
                raise InternalInvariantError(
                    "no kernel of the actual model reaches the BFS target"
                )
        return out
    # lifted BFS: states are (J key, arrival class)
    if src[0] != "J" or dst[0] != "J":
        raise ValueError("good_only paths connect jacobian vertices")
    nodes, succ, starts, jkeys = _lifted_graph(g)
    jindex = {k: i for i, k in enumerate(jkeys)}
    first_edge: Dict[int, int] = {}
    for idx, t, cls in g.out_edges(src):
        if cls is not None:
            ni = nodes.index((t, cls))
            if ni not in first_edge:
                first_edge[ni] = idx
    prevn: Dict[int, Tuple[Optional[int], Optional[int]]] = {}
    q = deque()
    goal = None
    for ni, idx in sorted(first_edge.items()):
        prevn[ni] = (None, idx)
        q.append(ni)
        if nodes[ni][0] == dst:
            goal = ni
            break
    # map each lifted transition back to the stored splitting index
    while goal is None and q:
        x = q.popleft()
        vkey, cls = nodes[x]
        allowed = {
            k
            for k in range(15)
            if not pairings_share_pair(PAIRINGS15[k], PAIRINGS15[cls])
        }
        for idx, t, tcls in g.out_edges(vkey):
            if idx not in allowed or tcls is None:
                continue
            ni = nindex_of(nodes, t, tcls)
            if ni not in prevn:
                prevn[ni] = (x, idx)
                if nodes[ni][0] == dst:
                    goal = ni
                    q.clear()
                    break
                q.append(ni)
    if goal is None:
        return None
    chain = []
    x = goal
    while x is not None:
        px, idx = prevn[x]
        chain.append((x, idx))
        x = px
    chain.reverse()
    # convert to actual-state indices
    out = [chain[0][1]]
    state = g.vertices[src].state
    key, state, kind = _apply_kernel(g, "J", state, chain[0][1])
    assert kind == "J"
    cur = (key, _arrival_class(g, key, state))
    assert cur == nodes[chain[0][0]]
    for node_i, _stored_idx in chain[1:]:
        want = nodes[node_i]
        allowed = [
            k
            for k in range(15)
            if not pairings_share_pair(PAIRINGS15[k], PAIRINGS15[cur[1]])
        ]
        for i in allowed:
            try:
                tkey, tstate, tkind = _apply_kernel(g, "J", state, i)
            except DegenerateSplittingError:
                continue
            if tkind != "J" or tkey != want[0]:
                continue
            cls = _arrival_class(g, tkey, tstate)
            if (tkey, cls) == want:
                out.append(i)
                state = tstate
                cur = (tkey, cls)
                break
        else:
            raise InternalInvariantError(
                "lifted transition not realizable on the actual model"
            )
    return out


def nindex_of(nodes: List[Tuple[tuple, int]], t: tuple, cls: int) -> int:
    return nodes.index((t, cls))


def replay_path(
    g: GraphSnapshot, src: tuple, indices: List[int]
) -> tuple:
    """Re-execute a kernel-index path from src; returns the final vertex
    key (raises if an index is degenerate for the walker's state)."""
    kind = g.vertices[src].kind
    state = g.vertices[src].state
    key = src
    for i in indices:
        key, state, kind = _apply_kernel(g, kind, state, i)
    return key


# ---------------------------------------------------------------------------
# export


def vertex_ids(g: GraphSnapshot) -> Dict[tuple, str]:
    ids = {}
    nj = ne = 0
    for k in g.keys_sorted():
        if k[0] == "J":
            ids[k] = f"J{nj}"
            nj += 1
        else:
            ids[k] = f"E{ne}"
            ne += 1
    return ids


def _key_label(k: tuple) -> str:
    return f"{k[0]}{list(k[1])}"


def export_dot(g: GraphSnapshot) -> str:
    ids = vertex_ids(g)
    lines = [f"digraph superspecial_p{g.p} {{"]
    for k in g.keys_sorted():
        shape = "ellipse" if k[0] == "J" else "box"
        lines.append(
            f'  {ids[k]} [label="{_key_label(k)}" shape={shape}];'
        )
    ms = g.edge_multiset()
    for (a, b) in sorted(ms, key=lambda ab: (ids[ab[0]], ids[ab[1]])):
        lines.append(f'  {ids[a]} -> {ids[b]} [label="{ms[(a, b)]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(g: GraphSnapshot) -> str:
    ids = vertex_ids(g)
    ms = g.edge_multiset()
    doc = {
        "p": g.p,
        "vertices": [
            {
                "id": ids[k],
                "kind": k[0],
                "key": list(k[1]),
                "kernels": [
                    {"index": idx, "to": ids[t]}
                    for idx, t, _ in g.out_edges(k)
                ],
            }
            for k in g.keys_sorted()
        ],
        "edges": [
            {"from": ids[a], "to": ids[b], "multiplicity": ms[(a, b)]}
            for (a, b) in sorted(
                ms, key=lambda ab: (ids[ab[0]], ids[ab[1]])
            )
        ],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def edge_multiset_from_json(text: str) -> Tuple[int, Dict[Tuple[str, str], int], Dict[str, list]]:
    """Parse an exported document back into comparable structures:
    (p, {(from id, to id): multiplicity}, {id: key})."""
    doc = json.loads(text)
    edges = {
        (e["from"], e["to"]): e["multiplicity"] for e in doc["edges"]
    }
    keys = {v["id"]: v["key"] for v in doc["vertices"]}
    return doc["p"], edges, keys
