"""Dense univariate polynomials over F_{p^2}.

Coefficients are stored lowest degree first in an immutable tuple with no
trailing zeros; the zero polynomial has an empty tuple and degree -1.
Everything here stays at the small degrees (<= 6 in the isogeny code, <= 12
in invariant computations) where schoolbook arithmetic is the right tool.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import DegenerateSplittingError, InternalInvariantError
from .field import FieldContext, Fp2


class Poly:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: Iterable[Fp2]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_ints(cls, ctx: FieldContext, coeffs: Sequence[int]) -> "Poly":
        return cls(ctx, [ctx.elem(c) for c in coeffs])

    @classmethod
    def from_roots(cls, ctx: FieldContext, roots: Sequence[Fp2]) -> "Poly":
        """Monic polynomial with the given roots."""
        out = cls(ctx, [ctx.one])
        for r in roots:
            out = out * cls(ctx, [-r, ctx.one])
        return out

    @classmethod
    def zero(cls, ctx: FieldContext) -> "Poly":
        return cls(ctx, [])

    @classmethod
    def one(cls, ctx: FieldContext) -> "Poly":
        return cls(ctx, [ctx.one])

    @classmethod
    def x(cls, ctx: FieldContext) -> "Poly":
        return cls(ctx, [ctx.zero, ctx.one])

    # -- basic queries --------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> Fp2:
        """Coefficient of x^i (zero beyond the degree)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero

    @property
    def leading(self) -> Fp2:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.ctx, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.ctx, [-c for c in self.coeffs])

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Fp2):
            return Poly(self.ctx, [c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.ctx)
        out = [self.ctx.zero] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca.is_zero():
                continue
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ValueError("cannot normalize the zero polynomial")
        lc = self.leading
        if lc == self.ctx.one:
            return self
        inv = lc.inverse()
        return Poly(self.ctx, [c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(
            self.ctx,
            [self.coeffs[i] * i for i in range(1, len(self.coeffs))],
        )

    def __call__(self, x: Fp2) -> Fp2:
        acc = self.ctx.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        ctx = self.ctx
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(ctx), self
        quo = [ctx.zero] * (dq + 1)
        inv_lc = other.leading.inverse()
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv_lc
            quo[i] = c
            if not c.is_zero():
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * oc
        return Poly(ctx, quo), Poly(ctx, rem)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a.monic()

    def is_squarefree(self) -> bool:
        if self.degree < 1:
            return not self.is_zero()
        return self.gcd(self.derivative()).degree == 0

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if c.b == 0:
                cs = str(c.a)
            else:
                cs = f"({c.a}+{c.b}t)"
            parts.append(cs if i == 0 else (f"{cs}*x^{i}" if i > 1 else f"{cs}*x"))
        return "Poly(" + " + ".join(parts) + ")"


# -- discriminants ---------------------------------------------------------


def disc2(q: Poly) -> Fp2:
    """b^2 - 4ac for q = a*x^2 + b*x + c (a may be zero)."""
    if q.degree > 2:
        raise ValueError("disc2 expects degree <= 2")
    a, b, c = q[2], q[1], q[0]
    return b * b - 4 * a * c


def disc3(r1: Fp2, r2: Fp2, r3: Fp2) -> Fp2:
    """Discriminant of a monic cubic given by its roots: prod (ri - rj)^2."""
    d = (r1 - r2) * (r2 - r3) * (r3 - r1)
    return d * d


# -- canonical factorization of the degree <= 2 pieces of a walk step --------


def factor_deg_le2(h: Poly) -> tuple[Poly, Poly]:
    """Split a degree-1 or degree-2 polynomial into two canonical factors.

    Degree 2: returns (x - r1, x - r2) with encode(r1) <= encode(r2); the
    leading coefficient is discarded (it only twists the curve, which no
    invariant downstream can see).  Degree 1: returns (monic linear, 1).

    Raises InternalInvariantError if a quadratic has no roots in F_{p^2}:
    on the superspecial walks that feed this function all two-torsion is
    F_{p^2}-rational, so an irreducible quadratic means the input curve was
    not superspecial.
    """
    ctx = h.ctx
    if h.degree == 2:
        a, b = h[2], h[1]
        d = disc2(h)
        s = d.sqrt()
        if s is None:
            raise InternalInvariantError(
                "quadratic with no roots in F_{p^2} during a walk step"
            )
        inv2a = (a + a).inverse()
        r1 = (-b + s) * inv2a
        r2 = (-b - s) * inv2a
        if r1.encode() > r2.encode():
            r1, r2 = r2, r1
        return (
            Poly(ctx, [-r1, ctx.one]),
            Poly(ctx, [-r2, ctx.one]),
        )
    if h.degree == 1:
        return h.monic(), Poly.one(ctx)
    raise DegenerateSplittingError(
        f"expected a polynomial of degree 1 or 2, got degree {h.degree}"
    )


def roots_of_linear_or_quadratic(h: Poly) -> list[Fp2]:
    """The roots of a degree-1/2 polynomial, ordered by encoding."""
    f1, f2 = factor_deg_le2(h)
    out = [-f1[0]]
    if f2.degree == 1:
        out.append(-f2[0])
    return out
