"""Classical elliptic-curve CGL walk and a timing harness.

The genus-2 hash digests 3 bits per walk step at the cost of 3 square
roots, over a field roughly a third of the size needed by the classical
supersingular elliptic-curve construction at the same security level.
This module provides that elliptic baseline — the simplest correct
non-backtracking 2-isogeny walk — and a benchmark harness that measures
per-bit wall time and per-step square-root counts for four modes:

* ``genus2-sequential`` — the genus-2 hash, one thread;
* ``genus2-parallel``  — the genus-2 hash with its three quadratic
  factorisations per step done concurrently (digest bit-identical);
* ``elliptic-cgl``     — the elliptic walk at a prime sized for the
  same classical security (about ``2^(2*security)``);
* ``3cgl``             — the message split into three chunks, each
  hashed independently by the elliptic walk; the digest is the triple.

Elliptic walk convention: the walk starts at j = 1728, realised as
``y^2 = x(x-1)(x+1)``, and the state is the pair of forward kernel
x-coordinates after translating the backtracking (dual) kernel to 0.
Each bit picks the forward root with the smaller (bit 0) or larger
(bit 1) canonical encoding; at the start the root 0 is the one marked
as backtracking.  Quotienting ``y^2 = x(x-A)(x-B)`` by the 2-torsion
point at x = 0 yields ``y^2 = x(x^2 + 2(A+B)x + (A-B)^2)``, whose
non-zero roots are ``-(A+B) +- 2*sqrt(A*B)`` — one square root per
digested bit, and x = 0 is again the dual kernel.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import sympy

from .errors import SetupError
from .field import FieldContext, Fp2
from .hashing import HashContext, hash_bytes, message_digits, setup
from .invariants import EllipticRootsForm, j_invariant

MODES = (
    "genus2-sequential",
    "genus2-parallel",
    "elliptic-cgl",
    "3cgl",
)


# ---------------------------------------------------------------------------
# elliptic 2-isogeny walk


def _elliptic_context(p: int) -> FieldContext:
    if not sympy.isprime(p):
        raise SetupError(f"{p} is not prime")
    if p <= 5 or p % 4 != 3:
        raise SetupError(
            "elliptic walk needs a prime p > 5 with p = 3 mod 4 "
            f"(got {p})"
        )
    return FieldContext(p)


def _elliptic_step(alpha: Fp2, beta: Fp2, bit: int) -> Tuple[Fp2, Fp2]:
    """One walk step from forward roots (alpha, beta), dual kernel at 0.

    Returns the next pair of forward roots, again normalised so that the
    new dual kernel sits at 0.  Exactly one square root.
    """
    if alpha.encode() <= beta.encode():
        lo, hi = alpha, beta
    else:
        lo, hi = beta, alpha
    k, other = (lo, hi) if bit == 0 else (hi, lo)
    # translate the chosen kernel to 0; the two remaining 2-torsion
    # roots become A (the non-chosen forward root) and B (the old dual)
    a = other - k
    b = -k
    s = (a * b).sqrt()
    if s is None:  # unreachable: every element of F_{p^2} is a square
        raise SetupError("square root failed in quadratic extension")
    m = -(a + b)
    two_s = s + s
    return (m + two_s, m - two_s)


def cgl_elliptic_hash(
    p: int, bits: Iterable[int], ctx: Optional[FieldContext] = None
) -> Fp2:
    """Non-backtracking supersingular 2-isogeny walk over F_{p^2}.

    Starts at j = 1728 (so p = 3 mod 4, p > 5 is required for the start
    curve to be supersingular), consumes one bit per step choosing
    between the two forward kernels ordered by canonical encoding, and
    returns the j-invariant of the final curve.  The empty bit sequence
    hashes to 1728.
    """
    if ctx is None:
        ctx = _elliptic_context(p)
    elif ctx.p != p:
        raise SetupError("field context does not match the prime")
    alpha, beta = ctx.one, -ctx.one
    for bit in bits:
        if bit not in (0, 1):
            raise SetupError(f"bits must be 0 or 1, got {bit!r}")
        alpha, beta = _elliptic_step(alpha, beta, bit)
    return j_invariant(EllipticRootsForm(ctx.zero, alpha, beta))


def split_in_three(bits: Sequence[int]) -> Tuple[List[int], List[int], List[int]]:
    """Split a bit sequence into three nearly equal contiguous chunks
    (earlier chunks take the remainder)."""
    n = len(bits)
    q, r = divmod(n, 3)
    sizes = [q + (1 if i < r else 0) for i in range(3)]
    out = []
    pos = 0
    for s in sizes:
        out.append(list(bits[pos : pos + s]))
        pos += s
    return out[0], out[1], out[2]


def cgl_3_elliptic_hash(
    p: int, bits: Sequence[int], ctx: Optional[FieldContext] = None
) -> Tuple[Fp2, Fp2, Fp2]:
    """Three independent elliptic walks over the three message chunks;
    the digest is the triple of final j-invariants."""
    if ctx is None:
        ctx = _elliptic_context(p)
    c1, c2, c3 = split_in_three(bits)
    return (
        cgl_elliptic_hash(p, c1, ctx),
        cgl_elliptic_hash(p, c2, ctx),
        cgl_elliptic_hash(p, c3, ctx),
    )


def elliptic_prime(security: int) -> int:
    """Smallest prime = 3 mod 4 above 2^(2*security): the classical
    walk needs a field of roughly twice as many bits as the security
    level, three times the genus-2 requirement."""
    p = sympy.nextprime(1 << (2 * security))
    while p % 4 != 3:
        p = sympy.nextprime(p)
    return int(p)


# ---------------------------------------------------------------------------
# benchmark harness


@dataclass(frozen=True)
class BenchReport:
    """One benchmark measurement.

    ``sqrt_per_step`` counts square-root extractions per walk step
    (3 for the genus-2 hash, which digests 3 bits per step; 1 for the
    elliptic walk, which digests 1 bit per step).
    """

    mode: str
    security: int
    prime_bits: int
    message_bits: int
    messages: int
    total_ms: float
    per_bit_ms: float
    sqrt_per_step: float
    sqrt_per_bit: float

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "security": self.security,
            "prime_bits": self.prime_bits,
            "message_bits": self.message_bits,
            "messages": self.messages,
            "total_ms": round(self.total_ms, 3),
            "per_bit_ms": round(self.per_bit_ms, 6),
            "sqrt_per_step": round(self.sqrt_per_step, 6),
            "sqrt_per_bit": round(self.sqrt_per_bit, 6),
        }


def format_table(reports: Sequence[BenchReport]) -> str:
    header = (
        f"{'mode':<18} {'sec':>4} {'p bits':>6} {'msg bits':>8} "
        f"{'msgs':>5} {'ms/bit':>10} {'sqrt/step':>10} {'sqrt/bit':>9}"
    )
    lines = [header, "-" * len(header)]
    for r in reports:
        lines.append(
            f"{r.mode:<18} {r.security:>4} {r.prime_bits:>6} "
            f"{r.message_bits:>8} {r.messages:>5} {r.per_bit_ms:>10.4f} "
            f"{r.sqrt_per_step:>10.3f} {r.sqrt_per_bit:>9.3f}"
        )
    return "\n".join(lines)


def reports_json(reports: Sequence[BenchReport]) -> str:
    return json.dumps([r.as_dict() for r in reports], indent=2)


def _genus2_inputs(
    hctx: HashContext, rng, messages: int, nbytes: int
) -> List[bytes]:
    """Random byte messages whose padded walks do not bottom out, so a
    timing loop measures complete digests.  At benchmark-size primes a
    failing walk is vanishingly rare; small primes may need retries."""
    out: List[bytes] = []
    attempts = 0
    while len(out) < messages:
        msg = rng.randbytes(nbytes)
        attempts += 1
        if attempts > 100 * messages:
            raise SetupError(
                "could not find enough walk inputs that avoid the "
                "degenerate outcome at this prime"
            )
        if hash_bytes(hctx, msg) is not None:
            out.append(msg)
    return out


def bench(
    security: int,
    message_bits: int,
    mode: str,
    *,
    messages: int = 10,
    seed: int = 2026,
) -> BenchReport:
    """Measure one mode at one security level.

    Messages are drawn from ``random.Random(seed)`` so runs are
    reproducible.  Timing covers the digest computations only; message
    generation, context setup and square-root accounting happen outside
    the timed region.  For the genus-2 parallel mode the digests are
    additionally checked to be bit-identical to the sequential ones,
    and the square-root count is taken from a sequential replay (the
    counter is a plain field, not synchronised across worker threads).
    """
    if mode not in MODES:
        raise SetupError(f"unknown bench mode {mode!r}")
    if message_bits <= 0:
        raise SetupError("message_bits must be positive")
    rng = random.Random(seed)

    if mode in ("genus2-sequential", "genus2-parallel"):
        hctx = setup(security=security)
        ctx = hctx.field
        nbytes = max(1, message_bits // 8)
        msgs = _genus2_inputs(hctx, rng, messages, nbytes)
        per_msg_bits = 8 * nbytes
        total_bits = per_msg_bits * len(msgs)
        total_steps = sum(len(message_digits(m)) for m in msgs)
        parallel = mode == "genus2-parallel"
        if parallel:
            seq = [hash_bytes(hctx, m) for m in msgs]
        ctx.reset_sqrt_count()
        seq_sqrts = 0
        if parallel:
            # account square roots on a sequential replay, then time
            for m in msgs:
                hash_bytes(hctx, m)
            seq_sqrts = ctx.sqrt_count
        t0 = time.perf_counter()
        digests = [hash_bytes(hctx, m, parallel=parallel) for m in msgs]
        elapsed = time.perf_counter() - t0
        if parallel:
            if digests != seq:
                raise SetupError(
                    "parallel digest differs from sequential digest"
                )
            sqrts = seq_sqrts
        else:
            sqrts = ctx.sqrt_count
        prime_bits = ctx.p.bit_length()
    elif mode == "elliptic-cgl":
        p = elliptic_prime(security)
        ctx = FieldContext(p)
        bit_lists = [
            [rng.getrandbits(1) for _ in range(message_bits)]
            for _ in range(messages)
        ]
        per_msg_bits = message_bits
        total_bits = message_bits * messages
        total_steps = total_bits
        ctx.reset_sqrt_count()
        t0 = time.perf_counter()
        for bits in bit_lists:
            cgl_elliptic_hash(p, bits, ctx)
        elapsed = time.perf_counter() - t0
        sqrts = ctx.sqrt_count
        prime_bits = p.bit_length()
    else:  # 3cgl
        p = elliptic_prime(security)
        ctx = FieldContext(p)
        bit_lists = [
            [rng.getrandbits(1) for _ in range(message_bits)]
            for _ in range(messages)
        ]
        per_msg_bits = message_bits
        total_bits = message_bits * messages
        total_steps = total_bits  # chunks walk one step per bit overall
        ctx.reset_sqrt_count()
        t0 = time.perf_counter()
        for bits in bit_lists:
            cgl_3_elliptic_hash(p, bits, ctx)
        elapsed = time.perf_counter() - t0
        sqrts = ctx.sqrt_count
        prime_bits = p.bit_length()

    total_ms = 1000.0 * elapsed
    return BenchReport(
        mode=mode,
        security=security,
        prime_bits=prime_bits,
        message_bits=per_msg_bits,
        messages=messages,
        total_ms=total_ms,
        per_bit_ms=total_ms / total_bits,
        sqrt_per_step=sqrts / total_steps,
        sqrt_per_bit=sqrts / total_bits,
    )
