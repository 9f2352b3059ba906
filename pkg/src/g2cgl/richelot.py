"""(2,2)-isogeny steps on principally polarized abelian surfaces.

The objects here are the states and moves of a walk on genus-2 jacobians
and products of elliptic curves:

* ``FactorList`` - six monic linear factors (one may be the constant 1,
  marking a Weierstrass point at infinity) of the curve's defining
  polynomial.  Consecutive pairs (L1 L2, L3 L4, L5 L6) are the kernel the
  walk just quotiented by, i.e. the dual marking on the arrival curve.
* ``QuadraticSplitting`` - an ordered triple of coprime degree (<= 2)
  factors of the defining polynomial, identifying one of the 15
  two-torsion kernels.
* ``richelot_step`` - the closed-formula isogeny quotient.  When the
  bracket polynomials H_i become proportional (equivalently the delta
  determinant vanishes) the codomain degenerates to a product of two
  elliptic curves; the step reports that as a ``SplitDetected`` value and
  ``split_codomain`` extracts the two factors.
* ``glue_product`` / ``product_step`` - the moves out of a product
  vertex: 6 gluings indexed by two-torsion matchings (those that extend
  to a curve isomorphism are self-dual and returned as ``SelfIsogeny``)
  and 9 products of 2-isogenies.
* ``classify_extension`` - the successor-kernel taxonomy (dual / bad /
  good) by intersection of the new kernel with the image of the previous
  one; of the 15 successors exactly 1 is dual, 6 bad, 8 good.

All polynomials are kept monic: rescaling any kernel factor rescales each
bracket polynomial by a constant, so the root data - the only thing any
downstream invariant sees - is unchanged, and twists are invisible by
construction.

Indices are 0-based throughout (slots 0-5, root indices 0-2); the split
table below is the fixed digit-to-regrouping wire format of the hash.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations
from typing import Optional, Sequence, Union

from .errors import DegenerateSplittingError, InternalInvariantError
from .field import FieldContext, Fp2
from .invariants import (
    EllipticRootsForm,
    Genus2Curve,
    PAIRINGS15,
    cq_from_roots,
    InvariantTriple,
)
from .poly import Poly, disc2, disc3, factor_deg_le2, roots_of_linear_or_quadratic

# ---------------------------------------------------------------------------
# the fixed tables

#: The pairing the arrival factor list always carries: consecutive slots.
BASE_PAIRING = ((0, 1), (2, 3), (4, 5))

#: Digit -> slot regrouping.  Normative wire format: entry k is the k-th
#: regrouping in lexicographic order among the eight that avoid all of the
#: arrival pairs {0,1}, {2,3}, {4,5} (the "good" successors).
SPLIT_TABLE = (
    ((0, 2), (1, 4), (3, 5)),
    ((0, 2), (1, 5), (3, 4)),
    ((0, 3), (1, 4), (2, 5)),
    ((0, 3), (1, 5), (2, 4)),
    ((0, 4), (1, 2), (3, 5)),
    ((0, 4), (1, 3), (2, 5)),
    ((0, 5), (1, 2), (3, 4)),
    ((0, 5), (1, 3), (2, 4)),
)


def pairings_share_pair(p1, p2) -> bool:
    """Whether two slot pairings have a pair in common."""
    return bool({tuple(sorted(q)) for q in p1} & {tuple(sorted(q)) for q in p2})


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class QuadraticSplitting:
    """Ordered triple of monic factors of degree <= 2 of the defining
    polynomial; the product must be squarefree of degree 5 or 6."""

    g1: Poly
    g2: Poly
    g3: Poly

    def __post_init__(self):
        for g in (self.g1, self.g2, self.g3):
            if g.is_zero() or g.degree > 2:
                raise DegenerateSplittingError(
                    "splitting factors must be nonzero of degree <= 2"
                )

    @property
    def ctx(self) -> FieldContext:
        return self.g1.ctx

    def polys(self) -> tuple[Poly, Poly, Poly]:
        return (self.g1, self.g2, self.g3)

    def coefficient_rows(self) -> tuple:
        return tuple((g[2], g[1], g[0]) for g in self.polys())

    def product(self) -> Poly:
        return self.g1 * self.g2 * self.g3

    def curve(self) -> Genus2Curve:
        return Genus2Curve(self.product().monic())

    def monic_key(self) -> frozenset:
        """Scale-insensitive identity of the factor set, for comparisons."""
        return frozenset(
            tuple(c.encode() for c in g.monic().coeffs) for g in self.polys()
        )

    def validate(self) -> "QuadraticSplitting":
        prod = self.product()
        if prod.degree not in (5, 6) or not prod.is_squarefree():
            raise DegenerateSplittingError(
                "splitting product must be squarefree of degree 5 or 6"
            )
        return self


@dataclass(frozen=True)
class FactorList:
    """Six entries, each a monic linear factor or (at most once) the
    constant 1 standing for a Weierstrass point at infinity.  Consecutive
    pairs are the dual kernel marking left by the step that produced it."""

    entries: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.entries) != 6:
            raise DegenerateSplittingError("factor list needs six entries")
        keys = []
        constants = 0
        for e in self.entries:
            if e.degree == 1:
                if not e.leading == e.ctx.one:
                    raise DegenerateSplittingError("linear entries must be monic")
                keys.append((-e[0]).encode())
            elif e.degree == 0 and e[0] == e.ctx.one:
                constants += 1
            else:
                raise DegenerateSplittingError(
                    "entries must be monic linear or the constant 1"
                )
        if constants > 1:
            raise DegenerateSplittingError("at most one entry may be constant")
        if len(set(keys)) != len(keys):
            raise DegenerateSplittingError("factor roots must be distinct")

    @classmethod
    def from_roots(
        cls, ctx: FieldContext, roots: Sequence[Fp2]
    ) -> "FactorList":
        """Build from five or six finite roots (five means the last slot is
        the constant 1, i.e. a Weierstrass point at infinity)."""
        entries = [Poly(ctx, [-r, ctx.one]) for r in roots]
        if len(roots) == 5:
            entries.append(Poly.one(ctx))
        if len(entries) != 6:
            raise DegenerateSplittingError("expected five or six roots")
        return cls(tuple(entries))

    @property
    def ctx(self) -> FieldContext:
        return self.entries[0].ctx

    def root(self, i: int) -> Optional[Fp2]:
        """Root of entry i, or None for the constant (infinity) entry."""
        e = self.entries[i]
        return -e[0] if e.degree == 1 else None

    def roots(self) -> tuple:
        return tuple(self.root(i) for i in range(6))

    def finite_roots(self) -> list[Fp2]:
        return [r for r in self.roots() if r is not None]

    def sextic(self) -> Poly:
        out = self.entries[0]
        for e in self.entries[1:]:
            out = out * e
        return out

    def curve(self) -> Genus2Curve:
        return Genus2Curve(self.sextic())

    def splitting(self, pairing=BASE_PAIRING) -> QuadraticSplitting:
        """Regroup the six entries into three factors per the given slot
        pairing (pair order is kept; it fixes which bracket is which)."""
        gs = [self.entries[a] * self.entries[b] for a, b in pairing]
        return QuadraticSplitting(*gs)

    def invariants(self) -> "InvariantTriple":
        return cq_from_roots(self.finite_roots())


@dataclass(frozen=True)
class SplitDetected:
    """Step outcome when the codomain degenerates to a product of two
    elliptic curves (the hash's bottom; the explorer's edge into E_p)."""

    splitting: QuadraticSplitting


@dataclass(frozen=True)
class SelfIsogeny:
    """Gluing outcome when the two-torsion matching extends to a curve
    isomorphism: the quotient is the same product surface again."""

    e1: EllipticRootsForm
    e2: EllipticRootsForm


@dataclass(frozen=True)
class GluingData:
    """Simultaneous diagonalization of a degenerate splitting:
    G_i = a_{i,1} (x - s1)^2 + a_{i,2} (x - s2)^2 (after a fractional-
    linear change of variable making every root finite)."""

    s1: Fp2
    s2: Fp2
    rows: tuple  # three (a_{i,1}, a_{i,2}) pairs


@dataclass(frozen=True)
class GluingConstants:
    """The eight constants of the gluing formulas; all nonzero whenever
    the matching does not extend to an isomorphism."""

    delta_alpha: Fp2
    delta_beta: Fp2
    a1: Fp2
    b1: Fp2
    a2: Fp2
    b2: Fp2
    A: Fp2
    B: Fp2


class ExtensionClass(Enum):
    DUAL = "dual"
    BAD = "bad"
    GOOD = "good"


@dataclass(frozen=True)
class ProductKernel:
    """A two-torsion kernel at a product vertex E1 x E2.

    kind "product": indices (i, j) are root indices (0-2) on each factor;
    the kernel is {O} x {O}, (P_i, O), (O, Q_j), (P_i, Q_j).
    kind "graph": indices is a permutation sigma of (0, 1, 2); the kernel
    is the graph {(P_k, Q_{sigma(k)})} plus the identity.
    """

    kind: str
    indices: tuple

    def __post_init__(self):
        if self.kind == "product":
            if len(self.indices) != 2 or not all(
                0 <= v <= 2 for v in self.indices
            ):
                raise ValueError("product kernel needs two root indices 0-2")
        elif self.kind == "graph":
            if tuple(sorted(self.indices)) != (0, 1, 2):
                raise ValueError("graph kernel needs a permutation of (0,1,2)")
        else:
            raise ValueError(f"unknown kernel kind {self.kind!r}")

    def elements(self) -> frozenset:
        """The four kernel points as (label, label) with 0 = identity and
        k+1 = the k-th two-torsion point of the factor."""
        if self.kind == "product":
            i, j = self.indices
            return frozenset({(0, 0), (i + 1, 0), (0, j + 1), (i + 1, j + 1)})
        return frozenset({(0, 0)} | {(k + 1, s + 1) for k, s in enumerate(self.indices)})


#: All 15 kernels of a product vertex: 9 product kernels (row-major) then
#: the 6 matchings in lexicographic order.
PRODUCT_KERNELS = tuple(
    [ProductKernel("product", (i, j)) for i in range(3) for j in range(3)]
    + [ProductKernel("graph", s) for s in sorted(permutations((0, 1, 2)))]
)

#: Dual marking left on the arrival product vertex by each move kind.
DUAL_AFTER_SPLIT = ProductKernel("graph", (0, 1, 2))
DUAL_AFTER_PRODUCT_STEP = ProductKernel("product", (0, 0))


# ---------------------------------------------------------------------------
# the determinant and the step


def _det3(rows) -> Fp2:
    (a1, b1, c1), (a2, b2, c2), (a3, b3, c3) = rows
    return (
        a1 * (b2 * c3 - b3 * c2)
        - b1 * (a2 * c3 - a3 * c2)
        + c1 * (a2 * b3 - a3 * b2)
    )


def delta(s: QuadraticSplitting) -> Fp2:
    """Determinant of the 3x3 coefficient matrix of the splitting (rows in
    splitting order, columns by descending degree).  Only its vanishing is
    meaningful; the sign depends on row order."""
    return _det3(s.coefficient_rows())


def _bracket(gj: Poly, gk: Poly) -> Poly:
    return gj.derivative() * gk - gj * gk.derivative()


def richelot_step_splitting(
    s: QuadraticSplitting,
    pool=None,
) -> Union[FactorList, SplitDetected]:
    """Quotient by the kernel identified by the splitting.

    Returns the codomain's factor list (its consecutive pairs are the dual
    kernel), or SplitDetected when the bracket polynomials are mutually
    proportional - the codomain is then a product of elliptic curves and
    split_codomain(s) extracts it.

    When ``pool`` (a concurrent.futures.Executor) is given, the three
    independent factorizations run concurrently; the result is assembled in
    the same fixed order, so the output is bit-identical to the sequential
    path.
    """
    g1, g2, g3 = s.polys()
    h1 = _bracket(g2, g3)
    h2 = _bracket(g3, g1)
    h3 = _bracket(g1, g2)
    if h1.is_zero() and h2.is_zero():
        raise DegenerateSplittingError(
            "both leading brackets vanish: input splitting was not "
            "a valid two-torsion kernel"
        )
    # rank of the 2x3 coefficient matrix of (h1, h2): 1 means proportional
    r1 = (h1[2], h1[1], h1[0])
    r2 = (h2[2], h2[1], h2[0])
    if all(
        (r1[a] * r2[b] - r1[b] * r2[a]).is_zero() for a, b in ((2, 1), (2, 0), (1, 0))
    ):
        return SplitDetected(s)
    for h in (h1, h2, h3):
        if h.degree < 1:
            raise DegenerateSplittingError(
                "bracket polynomial collapsed to a constant; "
                "input was not a valid genus-2 splitting"
            )
    entries = []
    if pool is None:
        for h in (h1, h2, h3):
            entries.extend(factor_deg_le2(h))
    else:
        for fut in [pool.submit(factor_deg_le2, h) for h in (h1, h2, h3)]:
            entries.extend(fut.result())
    return FactorList(tuple(entries))


def richelot_step(
    l: FactorList, digit: int, pool=None
) -> Union[FactorList, SplitDetected]:
    """One hash step: regroup the factor list per SPLIT_TABLE[digit] (a
    good successor kernel by construction) and quotient."""
    if not 0 <= digit <= 7:
        raise ValueError("digit must be in 0..7")
    return richelot_step_splitting(l.splitting(SPLIT_TABLE[digit]), pool=pool)


def good_splittings_after(l: FactorList) -> list[QuadraticSplitting]:
    """The eight good successor kernels of the step that produced l, in
    split-table order."""
    return [l.splitting(pattern) for pattern in SPLIT_TABLE]


# ---------------------------------------------------------------------------
# enumeration of all 15 kernels of a jacobian vertex


def roots_of_split_poly(f: Poly) -> list[Fp2]:
    """All roots of a polynomial that splits into distinct linear factors
    over F_{p^2}, sorted by encoding.  Exhaustive vectorized scan; capped
    at p <= 4096 like the supersingular enumeration."""
    import numpy as np

    ctx = f.ctx
    p = ctx.p
    if p > 4096:
        raise ValueError("root scan capped at p <= 4096")
    e = np.arange(p * p, dtype=np.int64)
    A = e % p
    B = e // p
    acc_a = np.zeros(p * p, dtype=np.int64)
    acc_b = np.zeros(p * p, dtype=np.int64)
    n = ctx.n
    for c in reversed(f.coeffs):
        acc_a, acc_b = (
            (acc_a * A + n * acc_b * B + c.a) % p,
            (acc_a * B + acc_b * A + c.b) % p,
        )
    hits = np.nonzero((acc_a == 0) & (acc_b == 0))[0]
    roots = [ctx.from_encoded(int(v)) for v in hits]
    if len(roots) != f.degree:
        raise DegenerateSplittingError(
            f"polynomial does not split into distinct linear factors: "
            f"{len(roots)} roots for degree {f.degree}"
        )
    return roots


def factor_list_of_curve(c: Genus2Curve) -> FactorList:
    """The curve's factor list with roots sorted by encoding (degree-5
    models get the constant 1 in the last slot)."""
    return FactorList.from_roots(c.ctx, roots_of_split_poly(c.f))


def all_splittings(c: Genus2Curve) -> list[QuadraticSplitting]:
    """All 15 two-torsion kernels of the curve, in the fixed lexicographic
    pairing order over encoding-sorted root slots."""
    l = factor_list_of_curve(c)
    return [l.splitting(pairing) for pairing in PAIRINGS15]


# ---------------------------------------------------------------------------
# the degenerate branch: extracting the product codomain


def _splitting_root_pairs(s: QuadraticSplitting) -> list[list[Optional[Fp2]]]:
    pairs = []
    for g in s.polys():
        rr = roots_of_linear_or_quadratic(g)
        if len(rr) == 1:
            rr = rr + [None]  # second root at infinity
        pairs.append(rr)
    return pairs


def gluing_data(s: QuadraticSplitting) -> GluingData:
    """Simultaneously diagonalize a splitting with delta(s) = 0.

    Scans deterministically for a fractional-linear substitution
    x -> 1/(x - c) that makes all six roots finite and keeps both
    perfect-square members of the factor pencil at full degree, then
    solves for the two double roots s1, s2 and the row coefficients.
    """
    ctx = s.ctx
    pairs = _splitting_root_pairs(s)
    finite = {r.encode() for pr in pairs for r in pr if r is not None}
    for e in range(ctx.p * ctx.p):
        if e in finite:
            continue
        c = ctx.from_encoded(e)
        moved = [
            [(r - c).inverse() if r is not None else ctx.zero for r in pr]
            for pr in pairs
        ]
        gs = [Poly.from_roots(ctx, pr) for pr in moved]
        # discriminant of the pencil member lam*G1 + G2, as a quadratic
        # in lam (monic members have leading coefficient lam + 1)
        b1c, c1c = gs[0][1], gs[0][0]
        b2c, c2c = gs[1][1], gs[1][0]
        A = disc2(gs[0])
        C = disc2(gs[1])
        B = 2 * b1c * b2c - 4 * (c1c + c2c)
        if (A - B + C).is_zero():
            continue  # the member at lam = -1 degenerates in degree; reshuffle
        D = B * B - 4 * A * C
        if D.is_zero():
            raise DegenerateSplittingError(
                "factor pencil has a single degenerate member"
            )
        sD = D.sqrt()
        if sD is None:
            raise InternalInvariantError(
                "pencil discriminant is a non-square; input was not a "
                "degenerate splitting of a superspecial curve"
            )
        inv2A = (2 * A).inverse()
        lams = sorted(((-B + sD) * inv2A, (-B - sD) * inv2A), key=Fp2.encode)
        svals = []
        for lam in lams:
            svals.append(-(lam * b1c + b2c) / (2 * (lam + ctx.one)))
        s1v, s2v = svals
        if s1v == s2v:
            raise DegenerateSplittingError("coincident double roots in pencil")
        inv_ds = (s1v - s2v).inverse()
        rows = []
        for g in gs:
            ai1 = (-g[1] / 2 - s2v) * inv_ds
            ai2 = ctx.one - ai1
            if ai1.is_zero() or ai2.is_zero():
                raise InternalInvariantError(
                    "diagonalization row coefficient vanished on a "
                    "squarefree splitting"
                )
            if ai1 * s1v * s1v + ai2 * s2v * s2v != g[0]:
                raise InternalInvariantError(
                    "splitting is not in the degenerate pencil: delta != 0?"
                )
            rows.append((ai1, ai2))
        return GluingData(s1v, s2v, tuple(rows))
    raise InternalInvariantError("no admissible substitution found")


def split_codomain(
    s: QuadraticSplitting,
) -> tuple[EllipticRootsForm, EllipticRootsForm]:
    """The two elliptic factors of the codomain of a degenerate splitting
    (delta = 0).  Root i of the first factor and root i of the second are
    the image of the i-th kernel factor: the image of the domain's
    two-torsion is the index-aligned matching (the graph of the identity
    in this indexing).
    """
    gd = gluing_data(s)
    alphas = []
    betas = []
    for ai1, ai2 in gd.rows:
        alphas.append(-ai2 / ai1)
        betas.append(-ai1 / ai2)
    return (
        EllipticRootsForm(*alphas),
        EllipticRootsForm(*betas),
    )


# ---------------------------------------------------------------------------
# moves out of a product vertex


def _glue_core(
    e1: EllipticRootsForm, e2: EllipticRootsForm, sigma: tuple
) -> Union[tuple[GluingConstants, FactorList], SelfIsogeny]:
    ctx = e1.ctx
    if tuple(sorted(sigma)) != (0, 1, 2):
        raise ValueError("sigma must be a permutation of (0, 1, 2)")
    al = e1.roots()
    b0 = e2.roots()
    be = tuple(b0[sigma[k]] for k in range(3))
    # does the matching alpha_k -> beta_k extend to x -> u x + r?
    u = (be[1] - be[0]) / (al[1] - al[0])
    r = be[0] - u * al[0]
    if u * al[2] + r == be[2]:
        return SelfIsogeny(e1, e2)
    da = disc3(*al)
    db = disc3(*be)
    dal = (al[2] - al[1], al[0] - al[2], al[1] - al[0])
    dbe = (be[2] - be[1], be[0] - be[2], be[1] - be[0])
    a1 = sum((dal[k] * dal[k] / dbe[k] for k in range(3)), ctx.zero)
    b1 = sum((dbe[k] * dbe[k] / dal[k] for k in range(3)), ctx.zero)
    a2 = al[0] * dbe[0] + al[1] * dbe[1] + al[2] * dbe[2]
    b2 = be[0] * dal[0] + be[1] * dal[1] + be[2] * dal[2]
    consts = [da, db, a1, b1, a2, b2]
    if any(v.is_zero() for v in consts):
        raise InternalInvariantError(
            "gluing constant vanished although the matching is not the "
            "graph of an isomorphism"
        )
    A = db * a1 / a2
    B = da * b1 / b2
    gc = GluingConstants(da, db, a1, b1, a2, b2, A, B)
    entries = []
    # factor k of the codomain: A*dal[perm]*... x^2 + B*(matching beta part);
    # cyclic products of consecutive root differences
    for k in range(3):
        ca = A * dal[(k + 2) % 3] * dal[(k + 1) % 3]
        cb = B * dbe[(k + 2) % 3] * dbe[(k + 1) % 3]
        if ca.is_zero() or cb.is_zero():
            raise InternalInvariantError("gluing factor coefficient vanished")
        v = (-cb / ca).sqrt()
        if v is None:
            raise InternalInvariantError(
                "gluing factor with no roots in F_{p^2}; inputs were not "
                "supersingular"
            )
        rr = sorted((v, -v), key=Fp2.encode)
        entries.extend(Poly(ctx, [-root, ctx.one]) for root in rr)
    return gc, FactorList(tuple(entries))


def glue_product_list(
    e1: EllipticRootsForm, e2: EllipticRootsForm, sigma: tuple
) -> Union[FactorList, SelfIsogeny]:
    """Glue two elliptic curves along the two-torsion matching
    alpha_k <-> beta_{sigma(k)}.  Returns the factor list of the genus-2
    codomain (its consecutive pairs are the dual marking), or SelfIsogeny
    when the matching extends to an isomorphism of the curves (the
    quotient is then the same product surface)."""
    out = _glue_core(e1, e2, sigma)
    if isinstance(out, SelfIsogeny):
        return out
    return out[1]


def glue_product(
    e1: EllipticRootsForm, e2: EllipticRootsForm, sigma: tuple
) -> Union[Genus2Curve, SelfIsogeny]:
    """Same as glue_product_list but returns the codomain curve itself."""
    out = glue_product_list(e1, e2, sigma)
    if isinstance(out, SelfIsogeny):
        return out
    return out.curve()


def gluing_constants(
    e1: EllipticRootsForm, e2: EllipticRootsForm, sigma: tuple
) -> Union[GluingConstants, SelfIsogeny]:
    """The eight formula constants for a gluing (exposed for checking the
    all-nonzero property)."""
    out = _glue_core(e1, e2, sigma)
    if isinstance(out, SelfIsogeny):
        return out
    return out[0]


def _two_isogeny(e: EllipticRootsForm, k: int) -> EllipticRootsForm:
    """Quotient by the two-torsion point over root k.  The codomain is
    returned with the dual kernel's root first (index 0), the remaining
    two roots in encoding order."""
    ctx = e.ctx
    rs = e.roots()
    gamma = rs[k]
    others = [rs[i] - gamma for i in range(3) if i != k]
    u, v = others
    a = -(u + v)
    b = u * v
    sb = b.sqrt()
    if sb is None:
        raise InternalInvariantError(
            "2-isogeny codomain lacks rational two-torsion; input was not "
            "supersingular over F_{p^2}"
        )
    r1 = a + 2 * sb
    r2 = a - 2 * sb
    if r1.encode() > r2.encode():
        r1, r2 = r2, r1
    return EllipticRootsForm(ctx.zero, r1, r2)


def product_step(
    e1: EllipticRootsForm, e2: EllipticRootsForm, kernel: tuple
) -> tuple[EllipticRootsForm, EllipticRootsForm]:
    """Product-kernel move: independent 2-isogenies on the two factors,
    kernelled at root kernel[0] of e1 and root kernel[1] of e2.  On each
    codomain the dual kernel is the root at index 0."""
    i, j = kernel
    return _two_isogeny(e1, i), _two_isogeny(e2, j)


# ---------------------------------------------------------------------------
# successor taxonomy


def classify_extension(prev, nxt) -> ExtensionClass:
    """Classify the successor kernel ``nxt`` against the image ``prev`` of
    the previous step's two-torsion at the shared middle vertex.

    Jacobian middle: both arguments are QuadraticSplittings on the same
    six roots; dual = same factor set, bad = shared factor, good =
    disjoint.  Product middle: both are ProductKernels on the same pair of
    root triples; dual = same subgroup, bad = nontrivial intersection,
    good = trivial intersection.  (The composed kernel is (Z/4)^2 exactly
    in the good case.)
    """
    if isinstance(prev, QuadraticSplitting) and isinstance(nxt, QuadraticSplitting):
        a = prev.monic_key()
        b = nxt.monic_key()
        if a == b:
            return ExtensionClass.DUAL
        if a & b:
            return ExtensionClass.BAD
        return ExtensionClass.GOOD
    if isinstance(prev, ProductKernel) and isinstance(nxt, ProductKernel):
        ea = prev.elements()
        eb = nxt.elements()
        if ea == eb:
            return ExtensionClass.DUAL
        if (ea & eb) - {(0, 0)}:
            return ExtensionClass.BAD
        return ExtensionClass.GOOD
    raise ValueError(
        "extension classification needs two kernels at the same vertex type"
    )


# ---------------------------------------------------------------------------
# the two explicit superspecial seed curves


def sextic_seed(ctx: FieldContext) -> FactorList:
    """Factor list of y^2 = x(x-1)(x+1)(x-2)(x-1/2) in the hash's fixed
    entry order.  The curve is superspecial exactly when p = 5 (mod 6)."""
    half = (ctx.p + 1) // 2
    xs = [1, -1, 0, 2, half]
    entries = [Poly.from_ints(ctx, [-v, 1]) for v in xs]
    entries.append(Poly.one(ctx))
    return FactorList(tuple(entries))


def quintic_seed(ctx: FieldContext) -> FactorList:
    """Factor list of y^2 = x^5 - x, entry order (x-1, x+1, x-i, x+i, x, 1)
    with i the canonical square root of -1.  Superspecial exactly when
    p = 5, 7 (mod 8)."""
    i = ctx.elem(-1).sqrt()
    if i is None:  # -1 is always a square in F_{p^2}
        raise InternalInvariantError("no square root of -1 in F_{p^2}")
    one = ctx.one
    roots = [one, -one, i, -i, ctx.zero]
    return FactorList.from_roots(ctx, roots)


def superspecial_seeds(ctx: FieldContext) -> list[FactorList]:
    """The applicable explicit superspecial seeds for this prime (possibly
    both).  Raises if neither congruence family applies."""
    out = []
    if ctx.p % 8 in (5, 7):
        out.append(quintic_seed(ctx))
    if ctx.p % 6 == 5:
        out.append(sextic_seed(ctx))
    if not out:
        raise DegenerateSplittingError(
            f"no explicit superspecial seed curve for p = {ctx.p}: "
            f"p mod 8 = {ctx.p % 8} not in (5, 7) and p mod 6 = "
            f"{ctx.p % 6} != 5"
        )
    return out
