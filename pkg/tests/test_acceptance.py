"""End-to-end acceptance suite: ten numbered properties of the package.

Each test checks one property at its stated tolerance, records a single
PASS/FAIL verdict line (printed uncaptured in the terminal summary by
conftest), and then fails hard if the property does not hold.  Graphs
are shared through the session cache, except where a property times a
fresh build.
"""

import itertools
import random
import time
from collections import Counter
from fractions import Fraction

import sympy

import conftest
from conftest import record_acceptance
from g2cgl.baseline import bench
from g2cgl.field import FieldContext
from g2cgl.graph import (
    _arrival_class,
    build_graph,
    verify_conjectures,
    verify_counts,
    verify_theorems,
)
from g2cgl.hashing import hash_bytes, hash_digits, message_digits, setup
from g2cgl.invariants import cq_from_roots, enumerate_ss_j
from g2cgl.kat import CONTEXT_ARGS, load_vectors
from g2cgl.richelot import (
    BASE_PAIRING,
    PAIRINGS15,
    SPLIT_TABLE,
    ExtensionClass,
    SplitDetected,
    all_splittings,
    classify_extension,
    delta,
    pairings_share_pair,
    quintic_seed,
    richelot_step,
    richelot_step_splitting,
    sextic_seed,
)
from oracle import OracleField, invariant_triple
from test_invariants import _moebius_remodel, _roots_poly_high

SWEEP_PRIMES = tuple(sympy.primerange(7, 200))


# ---------------------------------------------------------------------------
# 1. the 4-vertex graph at p = 13, exactly, in under ten seconds


def test_criterion_01_exact_p13_figure():
    t0 = time.perf_counter()
    g = build_graph(13)
    dt = time.perf_counter() - t0
    conftest._GRAPHS.setdefault(13, g)

    problems = []
    if len(g.vertices) != 4:
        problems.append(f"{len(g.vertices)} vertices, expected 4")
    trip = {
        g.vertices[k].state.invariants().encode(): k
        for k in g.jacobian_keys()
    }
    try:
        j1, j2, j3 = trip[(2, 6, 5)], trip[(7, 2, 2)], trip[(4, 9, 6)]
        (e0,) = g.product_keys()
        expect = {
            (j1, j1): 5, (j1, j2): 4, (j1, e0): 6,
            (j2, j1): 1, (j2, j2): 5, (j2, j3): 6, (j2, e0): 3,
            (j3, j2): 4, (j3, j3): 9, (j3, e0): 2,
            (e0, e0): 10, (e0, j1): 1, (e0, j2): 2, (e0, j3): 2,
        }
        if g.edge_multiset() != expect:
            problems.append("edge multiset differs from the expected figure")
    except (KeyError, ValueError):
        problems.append("expected vertex classes not all present")
    if dt >= 10.0:
        problems.append(f"build took {dt:.2f}s, bound 10s")

    ok = not problems
    record_acceptance(
        1,
        "exact-p13-figure",
        ok,
        f"4 vertices, 60 edges, loops (5,5,9,10), built in {dt:.2f}s"
        if ok
        else "; ".join(problems),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 2. vertex-count bounds for every prime 7 <= p <= 199, exact rationals


def test_criterion_02_count_bounds_full_sweep(graph_cache):
    t0 = time.perf_counter()
    problems = []
    worst_dj, worst_de = Fraction(0), Fraction(0)
    for p in SWEEP_PRIMES:
        g = graph_cache(p)
        r = verify_counts(g)
        if not r.passed:
            problems.append(f"p={p}: {r.details}")
        # independent recomputation of the stated rational bounds
        nj, ne = len(g.jacobian_keys()), len(g.product_keys())
        n = len(enumerate_ss_j(g.ctx))
        dj = Fraction(nj) - Fraction(p**3 + 24 * p**2 + 141 * p - 346, 2880)
        de = Fraction(n) - Fraction(p - 1, 12)
        if not (0 <= dj <= Fraction(881, 720)):
            problems.append(f"p={p}: jacobian defect {dj} out of [0, 881/720]")
        if not (0 <= de <= Fraction(7, 6)):
            problems.append(f"p={p}: j-count defect {de} out of [0, 7/6]")
        if ne != n * (n + 1) // 2:
            problems.append(f"p={p}: {ne} product vertices != {n}({n}+1)/2")
        worst_dj, worst_de = max(worst_dj, dj), max(worst_de, de)
    dt = time.perf_counter() - t0
    if dt >= 1800:
        problems.append(f"sweep took {dt:.0f}s, bound 1800s")

    ok = not problems
    record_acceptance(
        2,
        "count-bounds-sweep-7..199",
        ok,
        f"{len(SWEEP_PRIMES)} primes in {dt:.1f}s; max jacobian defect "
        f"{worst_dj}, max j-count defect {worst_de}"
        if ok
        else "; ".join(problems[:4]),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 3. split-edge bounds and the determinant patterns of the quintic seed


def _sign_class(v):
    return frozenset((v.encode(), (-v).encode()))


def test_criterion_03_split_bounds_and_delta_patterns(graph_cache):
    problems = []

    # (a) every tested p != 5: at most 6 splits per jacobian vertex,
    # diagonal product vertices exactly 6 - #Aut/2 in {3,4,5}
    diag_counts = set()
    for p in SWEEP_PRIMES:
        g = graph_cache(p)
        r = verify_theorems(g)
        if not r.passed:
            problems.append(f"p={p}: {r.details}")
        for k in g.jacobian_keys():
            cnt = sum(1 for _, t, _ in g.out_edges(k) if t[0] == "E")
            if cnt > 6:
                problems.append(f"p={p}: jacobian vertex with {cnt} splits")
        for k in g.product_keys():
            cnt = sum(1 for _, t, _ in g.out_edges(k) if t[0] == "J")
            if k[1][0] == k[1][1]:
                diag_counts.add(cnt)
                if cnt not in (3, 4, 5):
                    problems.append(f"p={p}: diagonal vertex with {cnt} glues")
    if not diag_counts <= {3, 4, 5}:
        problems.append(f"diagonal glue counts {sorted(diag_counts)}")

    # (b) p = 5: the unique jacobian vertex splits in exactly 10 of its
    # 15 kernels, by determinant and by executing the step
    g5 = conftest._GRAPHS.setdefault(5, build_graph(5))
    r5 = verify_theorems(g5)
    if not r5.passed:
        problems.append(f"p=5: {r5.details}")
    seed5 = quintic_seed(FieldContext(5))
    by_delta5 = sum(
        1 for pr in PAIRINGS15 if delta(seed5.splitting(pr)).is_zero()
    )
    by_step5 = sum(
        1
        for pr in PAIRINGS15
        if isinstance(
            richelot_step_splitting(seed5.splitting(pr)), SplitDetected
        )
    )
    if not (by_delta5 == by_step5 == 10):
        problems.append(
            f"p=5 singular splittings: {by_delta5} by determinant, "
            f"{by_step5} by step, expected 10"
        )

    # (c) p in {13, 29, 37}: exactly 6 singular splittings, and the
    # 15 determinants match the fixed pattern up to sign:
    # six 0, one pair +-2, four +-(3i+1), four +-(3i-1), i = sqrt(-1)
    for p in (13, 29, 37):
        ctx = FieldContext(p)
        seed = quintic_seed(ctx)
        i = (-ctx.one).sqrt()
        one, two = ctx.one, ctx.one + ctx.one
        three = two + one
        want = Counter(
            {
                _sign_class(ctx.zero): 6,
                _sign_class(two): 1,
                _sign_class(three * i + one): 4,
                _sign_class(three * i - one): 4,
            }
        )
        got = Counter(
            _sign_class(delta(seed.splitting(pr))) for pr in PAIRINGS15
        )
        if got != want:
            problems.append(f"p={p}: determinant pattern mismatch")
        by_step = sum(
            1
            for pr in PAIRINGS15
            if isinstance(
                richelot_step_splitting(seed.splitting(pr)), SplitDetected
            )
        )
        by_delta = got[_sign_class(ctx.zero)]
        if not (by_step == by_delta == 6):
            problems.append(
                f"p={p}: {by_delta} zero determinants, {by_step} split steps,"
                " expected 6"
            )
        # same census through the standalone curve-enumeration route
        alt = Counter(_sign_class(delta(s)) for s in all_splittings(seed.curve()))
        if alt != got:
            problems.append(f"p={p}: curve-route splitting census differs")

    ok = not problems
    record_acceptance(
        3,
        "split-bounds-delta-patterns",
        ok,
        f"max 6 splits/J over {len(SWEEP_PRIMES)} primes; diagonal glue "
        f"counts {sorted(diag_counts)}; p=5 gives 10/15 singular; "
        "determinant patterns match at p=13,29,37"
        if ok
        else "; ".join(problems[:4]),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 4. connectivity properties at every sweep prime, as hard failures


def test_criterion_04_connectivity_all_primes(graph_cache):
    failures = []
    for p in SWEEP_PRIMES:
        for r in verify_conjectures(graph_cache(p)):
            if not r.passed:
                failures.append(f"p={p} {r.name}: {r.details}")
    ok = not failures
    record_acceptance(
        4,
        "connectivity-sweep-7..199",
        ok,
        f"graph connected, jacobian subgraph connected, good-walk "
        f"reachability total at all {len(SWEEP_PRIMES)} primes"
        if ok
        else "; ".join(failures[:4]),
    )
    assert ok, failures


# ---------------------------------------------------------------------------
# 5. hash walks and the graph agree on every digit string of length <= 5


def _graph_ball_multisets(g, hctx, depth):
    """Per-length Counter of endpoint triples ('BOTTOM' for walks that
    die), driven purely by the snapshot's stored edges and arrival
    classes -- no field arithmetic."""
    skey = ("J", hctx.start.invariants().encode())
    cls0 = _arrival_class(g, skey, hctx.start)
    good_of = [
        [
            k
            for k in range(15)
            if not pairings_share_pair(PAIRINGS15[k], PAIRINGS15[c])
        ]
        for c in range(15)
    ]
    per_len = []
    cur = Counter({(skey, cls0): 1})
    dead = 0
    for _ in range(depth + 1):
        ms = Counter()
        for (k, _cls), cnt in cur.items():
            ms[k[1]] += cnt
        if dead:
            ms["BOTTOM"] = dead
        per_len.append(ms)
        nxt = Counter()
        ndead = dead * 8
        for (k, cls), cnt in cur.items():
            edges = {idx: (t, tcls) for idx, t, tcls in g.out_edges(k)}
            allowed = good_of[cls]
            assert len(allowed) == 8
            for idx in allowed:
                t, tcls = edges[idx]
                if t[0] == "E":
                    ndead += cnt
                else:
                    nxt[(t, tcls)] += cnt
        cur, dead = nxt, ndead
    return per_len


def test_criterion_05_hash_graph_ball_equivalence(graph_cache):
    problems = []
    strings = 0
    for p in (11, 13):
        hctx = setup(prime=p)
        graph_side = _graph_ball_multisets(graph_cache(p), hctx, 5)
        for ln in range(6):
            hash_side = Counter()
            for digits in itertools.product(range(8), repeat=ln):
                t = hash_digits(hctx, digits)
                hash_side[t.encode() if t is not None else "BOTTOM"] += 1
            strings += 8**ln
            if hash_side != graph_side[ln]:
                problems.append(
                    f"p={p} length {ln}: hash multiset != graph ball"
                )
    ok = not problems
    record_acceptance(
        5,
        "hash-graph-ball-equivalence",
        ok,
        f"exact multiset match at p=11 and p=13 over all {strings} digit "
        "strings of length <= 5"
        if ok
        else "; ".join(problems[:4]),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 6. consecutive random steps never reuse a quadratic of the marking


def _scale_free_keys(splitting):
    """Scale-insensitive identity of each factor, computed directly from
    the coefficients (deliberately not via the library's own helper)."""
    out = set()
    for g in splitting.polys():
        lead = g[g.degree]
        out.add(
            (g.degree,)
            + tuple((g[k] / lead).encode() for k in range(g.degree + 1))
        )
    return out


def test_criterion_06_good_extension_invariant():
    rng = random.Random(20260818)
    problems = []
    pairs_total, steps_total = 0, 0
    for p in (11, 23, 10007):
        hctx = setup(prime=p)
        state, fresh = hctx.start, True
        pairs = 0
        while pairs < 3334:
            digit = rng.randrange(8)
            chosen = state.splitting(SPLIT_TABLE[digit])
            if not fresh:
                marking = state.splitting(BASE_PAIRING)
                if (
                    classify_extension(marking, chosen)
                    is not ExtensionClass.GOOD
                ):
                    problems.append(f"p={p}: consecutive pair not good")
                if _scale_free_keys(chosen) & _scale_free_keys(marking):
                    problems.append(
                        f"p={p}: chosen splitting shares a quadratic with "
                        "the previous step's factors"
                    )
                if pairings_share_pair(SPLIT_TABLE[digit], BASE_PAIRING):
                    problems.append("table row collides with the marking")
                pairs += 1
                if problems:
                    break
            out = richelot_step(state, digit)
            steps_total += 1
            if isinstance(out, SplitDetected):
                state, fresh = hctx.start, True
            else:
                state, fresh = out, False
        pairs_total += pairs
        if problems:
            break
    ok = not problems and pairs_total >= 10000
    record_acceptance(
        6,
        "good-extension-invariant",
        ok,
        f"{pairs_total} consecutive step pairs over {steps_total} random "
        "steps at p=11,23,10007: all good, no shared quadratic"
        if ok
        else "; ".join(problems[:4]) or f"only {pairs_total} pairs",
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 7. frozen known-answer vectors, sequential and parallel


def test_criterion_07_kats_bit_exact():
    vecs = load_vectors()
    ctxs = {name: setup(**kw) for name, kw in CONTEXT_ARGS.items()}
    problems = []
    for vec in vecs:
        hctx = ctxs[vec.context]
        got = {}
        for par in (False, True):
            if vec.mode == "msg":
                out = hash_bytes(hctx, vec.input, parallel=par)
            else:
                t = hash_digits(hctx, vec.digits, parallel=par)
                out = None if t is None else t.to_bytes()
            got[par] = out
            if out != vec.expected:
                problems.append(
                    f"{vec.name} ({'parallel' if par else 'sequential'})"
                )
        if got[False] != got[True]:
            problems.append(f"{vec.name}: parallel differs from sequential")
    if len(vecs) < 20:
        problems.append(f"only {len(vecs)} vectors, need >= 20")
    ok = not problems
    record_acceptance(
        7,
        "known-answer-vectors",
        ok,
        f"{len(vecs)} vectors bit-exact, parallel == sequential on all"
        if ok
        else "; ".join(problems[:4]),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 8. the invariant triple is a complete, stable class key


def test_criterion_08_invariants_complete_under_remodel(graph_cache):
    rng = random.Random(88)
    problems = []

    g13 = graph_cache(13)
    curves = [
        (f"p13-{g13.vertices[k].state.invariants().encode()}",
         g13.ctx, g13.vertices[k].state.finite_roots())
        for k in g13.jacobian_keys()
    ]
    ctx11, ctx29 = FieldContext(11), FieldContext(29)
    curves.append(("p11-seed", ctx11, sextic_seed(ctx11).finite_roots()))
    curves.append(("p29-seed", ctx29, quintic_seed(ctx29).finite_roots()))
    hctx = setup(prime=1019)
    for mhex in ("00", "deadbeef"):
        state = hctx.start
        for d in message_digits(bytes.fromhex(mhex)):
            state = richelot_step(state, d)
            assert not isinstance(state, SplitDetected)
        curves.append((f"p1019-walk-{mhex}", hctx.field, state.finite_roots()))

    p13_triples = set()
    remodels = oracle_checks = 0
    for label, ctx, roots in curves:
        base = cq_from_roots(roots).encode()
        if label.startswith("p13-"):
            p13_triples.add(base)
        F = OracleField(ctx.p)
        done = 0
        while done < 1000:
            new = _moebius_remodel(ctx, roots, rng)
            if new is None:
                continue
            if cq_from_roots(new).encode() != base:
                problems.append(f"{label}: remodel {done} changed the triple")
                break
            if done % 250 == 0:
                # independent route, with a random quadratic twist folded in
                poly = _roots_poly_high(F, [x.encode() for x in new])
                lam = F.decode(rng.randrange(1, ctx.p * ctx.p))
                want = invariant_triple(F, [F.mul(lam, c) for c in poly])
                if base != tuple(F.encode(w) for w in want):
                    problems.append(f"{label}: oracle route disagrees")
                    break
                oracle_checks += 1
            done += 1
        remodels += done
    if len(p13_triples) != 3:
        problems.append(f"p=13 classes give {len(p13_triples)} distinct triples")
    ok = not problems
    record_acceptance(
        8,
        "invariant-remodel-stability",
        ok,
        f"{remodels} substitutions over {len(curves)} curves, triples "
        f"unchanged ({oracle_checks} twisted oracle cross-checks); "
        "3 distinct classes at p=13"
        if ok
        else "; ".join(problems[:4]),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 9. operation counts and scaling of the timing harness


def test_criterion_09_operation_counts_and_scaling():
    problems = []
    per_bit = []
    for lam in (128, 192, 256, 384):
        r = bench(lam, 96, "genus2-sequential", messages=8, seed=9)
        per_bit.append(r.per_bit_ms)
        if r.sqrt_per_step != 3.0:
            problems.append(
                f"lam={lam}: {r.sqrt_per_step} sqrts per step, expected 3"
            )
        e = bench(lam, 96, "elliptic-cgl", messages=8, seed=9)
        if e.sqrt_per_bit != 1.0:
            problems.append(
                f"lam={lam}: elliptic {e.sqrt_per_bit} sqrts per bit"
            )
    if not all(a <= b for a, b in zip(per_bit, per_bit[1:])):
        problems.append(f"per-bit ms not monotone: {per_bit}")
    ok = not problems
    record_acceptance(
        9,
        "operation-counts-scaling",
        ok,
        "per-bit ms "
        + " <= ".join(f"{b:.3f}" for b in per_bit)
        + " over lambda 128..384; exactly 3 sqrts per 3-bit step vs 1 "
        "per bit for the elliptic walk"
        if ok
        else "; ".join(problems[:4]),
    )
    assert ok, problems


# ---------------------------------------------------------------------------
# 10. failure-outcome rate at a 20-bit characteristic


def test_criterion_10_bottom_rate_near_2_20():
    p = 1048583  # smallest prime above 2^20 that fits the sextic family
    hctx = setup(prime=p)
    rng = random.Random(1010)
    n = 10000
    bottoms = sum(
        1
        for _ in range(n)
        if hash_bytes(hctx, rng.getrandbits(100).to_bytes(13, "big")) is None
    )
    rate = bottoms / n
    ok = rate <= 0.005
    record_acceptance(
        10,
        "bottom-rate-20bit",
        ok,
        f"p={p}: {bottoms}/{n} walks hit the failure outcome "
        f"({100 * rate:.3f}%, bound 0.5%)",
    )
    assert ok, (bottoms, n)
