"""Genus-2 CGL-style hash: a walk in the Richelot (2,2)-isogeny graph.

The message is turned into a stream of base-8 digits.  Starting from a
fixed superspecial curve presented as a factor list (six monic slots
whose consecutive pairs mark the incoming kernel), each digit selects
one of the eight *good* successor kernels -- the quadratic splittings
that share no slot pair with the incoming kernel -- and the walk takes
one Richelot step.  Because the eight choices exclude the dual and the
six "bad" sideways kernels, the walk never backtracks and never
shortcuts, so distinct digit strings of equal length end at distinct
walk histories.  The digest is the canonical invariant triple of the
final curve, serialized.

A walk step can land on a product of elliptic curves (the codomain
splits).  The factor-list presentation cannot continue from there, so
the hash reports the distinguished failure outcome ``None`` (pronounced
"bottom").  For cryptographic parameters the probability is
negligible -- on the order of the inverse of the field characteristic
per step -- but at toy sizes it is observable, and callers must handle
it.

Digit extraction
----------------

For a message of ``k`` bytes, let ``m = (1 << 8k) | int(msg)`` with the
bytes read big-endian.  The leading 1 bit is a length sentinel: it makes
the map from byte strings to integers injective (messages with leading
zero bytes stay distinct).  The walk input is ``m * 2**30``; the ten
zero digits appended by the shift separate the variable part of the
walk from the start curve, so near-collisions at the end of the message
cannot produce near-collisions of the digest.  Digits come off least
significant first: ``digit = m % 8; m = m // 8`` until ``m`` is zero.
The empty message therefore hashes with ``m = 2**30``: an 11-step walk.

Parameter selection
-------------------

``setup(security=lam)`` picks the smallest prime ``p`` congruent to 5
mod 6 exceeding ``2**ceil(2*lam/3)``.  The congruence guarantees the
fixed sextic start curve is superspecial; the size makes the best known
classical collision attack on the walk cost about ``2**lam`` operations
(the attack scales as the 3/2 power of the characteristic).

``setup(prime=p)`` accepts an explicit characteristic for testing and
cross-validation.  Primes congruent to 5 mod 6 use the sextic start
curve; other primes congruent to 5 or 7 mod 8 use the quintic start
curve (superspecial exactly under that congruence), which widens the
set of usable toy primes; anything else raises SetupError.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional

import sympy

from .errors import SetupError
from .field import FieldContext
from .invariants import InvariantTriple
from .richelot import (
    SPLIT_TABLE,
    FactorList,
    SplitDetected,
    quintic_seed,
    richelot_step,
    sextic_seed,
)

__all__ = [
    "PAD_SHIFT",
    "HashContext",
    "setup",
    "message_digits",
    "hash_digits",
    "hash_bytes",
    "context_line",
]

# Number of bits of zero padding appended below the message: ten base-8
# zero digits between the message-dependent part of the walk and the
# start curve.
PAD_SHIFT = 30

#: Smallest accepted security parameter for setup(security=...).
MIN_SECURITY = 8


@dataclass(frozen=True)
class HashContext:
    """Everything a hash evaluation needs: field, start curve, digit table.

    ``security`` is the requested security parameter, or the effective
    one (the largest ``lam`` with ``p > 2**ceil(2*lam/3)``) when the
    context was built from an explicit prime.
    """

    security: int
    field: FieldContext
    start: FactorList

    @property
    def table(self):
        """The digit-indexed table of good successor kernels."""
        return SPLIT_TABLE


def _effective_security(p: int) -> int:
    # Largest lam with ceil(2*lam/3) <= bitlen(p) - 1, i.e. p > 2**ceil(..).
    return 3 * (p.bit_length() - 1) // 2


def setup(
    security: Optional[int] = None, prime: Optional[int] = None
) -> HashContext:
    """Build a hash context from a security level or an explicit prime.

    Exactly one of ``security`` and ``prime`` must be given.  See the
    module docstring for the selection rules.
    """
    if (security is None) == (prime is None):
        raise SetupError("pass exactly one of security= or prime=")
    if security is not None:
        if not isinstance(security, int) or security < MIN_SECURITY:
            raise SetupError(
                f"security parameter must be an int >= {MIN_SECURITY}"
            )
        bound = 1 << ((2 * security + 2) // 3)  # 2**ceil(2*lam/3)
        p = int(sympy.nextprime(bound))
        while p % 6 != 5:
            p = int(sympy.nextprime(p))
        ctx = FieldContext(p)
        return HashContext(security, ctx, sextic_seed(ctx))
    p = prime
    if not isinstance(p, int) or p <= 5 or not sympy.isprime(p):
        raise SetupError(f"explicit characteristic must be a prime > 5, got {p!r}")
    ctx = FieldContext(p)
    if p % 6 == 5:
        start = sextic_seed(ctx)
    elif p % 8 in (5, 7):
        start = quintic_seed(ctx)
    else:
        raise SetupError(
            f"no superspecial start curve for p={p}: need p = 5 mod 6 "
            "or p = 5,7 mod 8"
        )
    return HashContext(_effective_security(p), ctx, start)


def message_digits(msg: bytes) -> List[int]:
    """Base-8 digit stream of a message, least significant digit first."""
    m = (1 << (8 * len(msg))) | int.from_bytes(msg, "big")
    m <<= PAD_SHIFT
    digits = []
    while m:
        digits.append(m & 7)
        m >>= 3
    return digits


def hash_digits(
    hctx: HashContext, digits, parallel: bool = False
) -> Optional[InvariantTriple]:
    """Walk the digit sequence from the start curve.

    Returns the invariant triple of the final curve, or None ("bottom")
    if any step lands on a split codomain.  With ``parallel=True`` the
    three factorizations inside each step run on a three-thread pool;
    the result is bit-identical to the sequential walk.
    """
    state = hctx.start
    if not parallel:
        for d in digits:
            out = richelot_step(state, d)
            if isinstance(out, SplitDetected):
                return None
            state = out
        return state.invariants()
    if hctx.field._use_tables:
        # Build the lookup tables before threads share the context.
        hctx.field._ensure_tables()
    with ThreadPoolExecutor(max_workers=3) as pool:
        for d in digits:
            out = richelot_step(state, d, pool=pool)
            if isinstance(out, SplitDetected):
                return None
            state = out
    return state.invariants()


def hash_bytes(
    hctx: HashContext, msg: bytes, parallel: bool = False
) -> Optional[bytes]:
    """Digest of a byte string: the serialized invariant triple of the
    endpoint of the walk, or None ("bottom") on a split codomain."""
    triple = hash_digits(hctx, message_digits(msg), parallel=parallel)
    return None if triple is None else triple.to_bytes()


def context_line(hctx: HashContext) -> str:
    """One-line context descriptor for logs."""
    f = hctx.field
    return f"p={f.p} n={f.n} lambda={hctx.security}"
