"""Arithmetic in F_{p^2} = F_p[t]/(t^2 - n) with a canonical square root.

n is the smallest integer that is a quadratic non-residue modulo p, so the
extension is always generated by t = sqrt(n).  An element a + b*t is stored
as the pair of representatives (a, b) with 0 <= a, b < p.

encode(a + b*t) = a + p*b defines a total order on the field.  Every routine
that has to pick one of several field elements (square roots, root orderings
inside polynomial factorizations) picks the one with the smaller encoding,
which makes all higher layers bit-for-bit deterministic.

Contexts are immutable after construction and safe to share between threads;
the only mutable state is the square-root call counter used by the benchmark
harness, which is only meaningful for single-threaded runs.
"""

from __future__ import annotations

from typing import Optional

# Contexts with p below this bound replace modular exponentiation with
# lookup tables for sqrt and inversion.  p <= 512 keeps the tables under a
# few hundred thousand entries.
AUTO_TABLE_BOUND = 512


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    if p < 37 * 37:
        return True
    from sympy import isprime  # deferred: sympy import is slow

    return bool(isprime(p))


class FieldContext:
    """Parameters and shared tables for one F_{p^2}.

    p must be an odd prime, p >= 5.  Invariant computations in other modules
    additionally require p > 5 (their formulas divide by 2, 3 and 5); the
    p = 5 field itself is fully functional and is used by the graph explorer
    for splitting arithmetic only.
    """

    __slots__ = (
        "p",
        "n",
        "byte_width",
        "sqrt_count",
        "_zero",
        "_one",
        "_t",
        "_sqrt_table",
        "_inv_table",
        "_use_tables",
    )

    def __init__(self, p: int, use_tables: Optional[bool] = None):
        if not isinstance(p, int):
            raise TypeError("p must be an int")
        if p < 5 or not _is_prime(p):
            raise ValueError(f"p must be a prime >= 5, got {p}")
        self.p = p
        self.n = self._smallest_nonresidue(p)
        self.byte_width = (p.bit_length() + 7) // 8
        self.sqrt_count = 0
        if use_tables is None:
            use_tables = p <= AUTO_TABLE_BOUND
        self._use_tables = use_tables
        self._sqrt_table: Optional[dict] = None
        self._inv_table: Optional[list] = None
        self._zero = Fp2(self, 0, 0)
        self._one = Fp2(self, 1, 0)
        self._t = Fp2(self, 0, 1)

    @staticmethod
    def _smallest_nonresidue(p: int) -> int:
        e = (p - 1) // 2
        k = 2
        while pow(k, e, p) == 1:
            k += 1
        return k

    # -- element constructors ------------------------------------------------

    def elem(self, a: int, b: int = 0) -> "Fp2":
        return Fp2(self, a % self.p, b % self.p)

    @property
    def zero(self) -> "Fp2":
        return self._zero

    @property
    def one(self) -> "Fp2":
        return self._one

    @property
    def t(self) -> "Fp2":
        return self._t

    def from_encoded(self, e: int) -> "Fp2":
        if not 0 <= e < self.p * self.p:
            raise ValueError("encoding out of range")
        return Fp2(self, e % self.p, e // self.p)

    def from_bytes(self, data: bytes) -> "Fp2":
        w = self.byte_width
        if len(data) != 2 * w:
            raise ValueError(f"expected {2 * w} bytes, got {len(data)}")
        a = int.from_bytes(data[:w], "little")
        b = int.from_bytes(data[w:], "little")
        if a >= self.p or b >= self.p:
            raise ValueError("coefficient not reduced mod p")
        return Fp2(self, a, b)

    # -- F_p helpers ----------------------------------------------------------

    def legendre(self, a: int) -> int:
        """Euler criterion for a mod p: 1 for nonzero squares, -1 for
        non-squares, 0 for zero."""
        r = pow(a % self.p, (self.p - 1) // 2, self.p)
        return -1 if r == self.p - 1 else r

    def sqrt_fp(self, a: int) -> int:
        """One square root of a quadratic residue a mod p (Tonelli-Shanks,
        derandomized with the context's fixed non-residue)."""
        p = self.p
        a %= p
        if a == 0:
            return 0
        if p % 4 == 3:
            return pow(a, (p + 1) // 4, p)
        # write p - 1 = q * 2^s with q odd
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = pow(self.n, q, p)
        m, c, t_, r = s, z, pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t_ != 1:
            i, sq = 0, t_
            while sq != 1:
                sq = sq * sq % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t_ = t_ * c % p
            r = r * b % p
        return r

    # -- lookup tables for small p ---------------------------------------------

    def _ensure_tables(self) -> None:
        if self._sqrt_table is not None:
            return
        p = self.p
        # F_p inverses in linear time, then lift through the norm map.
        inv_p = [0] * p
        inv_p[1] = 1
        for i in range(2, p):
            inv_p[i] = (p - (p // i) * inv_p[p % i]) % p
        n = self.n
        inv = [0] * (p * p)
        sqrt_t: dict = {}
        for e in range(p * p):
            a, b = e % p, e // p
            norm = (a * a - n * b * b) % p
            if norm:
                ni = inv_p[norm]
                inv[e] = (a * ni) % p + p * ((-b * ni) % p)
            sq = (a * a + n * b * b) % p + p * (2 * a * b % p)
            if sq not in sqrt_t:
                sqrt_t[sq] = e
        self._inv_table = inv
        self._sqrt_table = sqrt_t

    # -- canonical square root --------------------------------------------------

    def sqrt(self, x: "Fp2") -> Optional["Fp2"]:
        """The canonical square root of x, or None if x is not a square.

        Of the two roots r and -r, returns the one with the smaller
        encode() value.
        """
        self.sqrt_count += 1
        if self._use_tables:
            self._ensure_tables()
            e = self._sqrt_table.get(x.a + self.p * x.b)
            return None if e is None else Fp2(self, e % self.p, e // self.p)
        p, n = self.p, self.n
        a, b = x.a, x.b
        if b == 0:
            if a == 0:
                return self._zero
            if self.legendre(a) == 1:
                r = self.sqrt_fp(a)
                return Fp2(self, min(r, p - r), 0)
            # a = n * (a/n) with a/n a residue, so sqrt(a) = sqrt(a/n) * t
            c = self.sqrt_fp(a * pow(n, p - 2, p) % p)
            return Fp2(self, 0, min(c, p - c))
        norm = (a * a - n * b * b) % p
        if self.legendre(norm) != 1:
            # x is a square in F_{p^2} iff its norm is a square in F_p
            return None
        m = self.sqrt_fp(norm)
        inv2 = (p + 1) // 2
        z = (a + m) * inv2 % p
        if self.legendre(z) != 1:
            z = (a - m) * inv2 % p
        u = self.sqrt_fp(z)
        v = b * pow(2 * u, p - 2, p) % p
        if u + p * v > (p - u) + p * (p - v):
            u, v = p - u, p - v
        r = Fp2(self, u, v)
        assert r * r == x
        return r

    def reset_sqrt_count(self) -> None:
        self.sqrt_count = 0

    def __repr__(self) -> str:
        return f"FieldContext(p={self.p}, n={self.n})"


class Fp2:
    """An element a + b*t of F_{p^2}, immutable."""

    __slots__ = ("ctx", "a", "b")

    def __init__(self, ctx: FieldContext, a: int, b: int):
        self.ctx = ctx
        self.a = a
        self.b = b

    def _coerce(self, other) -> "Fp2":
        if isinstance(other, Fp2):
            if other.ctx is not self.ctx:
                raise ValueError("elements from different field contexts")
            return other
        if isinstance(other, int):
            return Fp2(self.ctx, other % self.ctx.p, 0)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return Fp2(self.ctx, (self.a + o.a) % p, (self.b + o.b) % p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        p = self.ctx.p
        return Fp2(self.ctx, (self.a - o.a) % p, (self.b - o.b) % p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        ctx = self.ctx
        p = ctx.p
        return Fp2(
            ctx,
            (self.a * o.a + ctx.n * self.b * o.b) % p,
            (self.a * o.b + self.b * o.a) % p,
        )

    __rmul__ = __mul__

    def __neg__(self):
        p = self.ctx.p
        return Fp2(self.ctx, -self.a % p, -self.b % p)

    def inverse(self) -> "Fp2":
        ctx = self.ctx
        p = ctx.p
        if ctx._inv_table is not None:
            e = ctx._inv_table[self.a + p * self.b]
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("inverse of zero in F_{p^2}")
            return Fp2(ctx, e % p, e // p)
        norm = (self.a * self.a - ctx.n * self.b * self.b) % p
        if norm == 0:
            raise ZeroDivisionError("inverse of zero in F_{p^2}")
        ni = pow(norm, p - 2, p)
        return Fp2(ctx, self.a * ni % p, -self.b * ni % p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int) -> "Fp2":
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.b == 0 and self.a == other % self.ctx.p
        if not isinstance(other, Fp2):
            return NotImplemented
        return self.ctx.p == other.ctx.p and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.ctx.p, self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def conj(self) -> "Fp2":
        """Frobenius image a - b*t (= x^p)."""
        return Fp2(self.ctx, self.a, -self.b % self.ctx.p)

    def in_prime_field(self) -> bool:
        return self.b == 0

    def encode(self) -> int:
        """Canonical integer encoding a + p*b, the order used everywhere a
        deterministic choice between field elements is needed."""
        return self.a + self.ctx.p * self.b

    def sqrt(self) -> Optional["Fp2"]:
        return self.ctx.sqrt(self)

    def to_bytes(self) -> bytes:
        w = self.ctx.byte_width
        return self.a.to_bytes(w, "little") + self.b.to_bytes(w, "little")

    def __repr__(self) -> str:
        if self.b == 0:
            return f"Fp2({self.a})"
        return f"Fp2({self.a} + {self.b}*t)"
