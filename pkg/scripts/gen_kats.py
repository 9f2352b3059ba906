"""One-time generator for the frozen known-answer vectors.

Expected values come exclusively from the independent reference
implementation in tests/oracle.py -- never from the package itself.
Run from the repository root:

    python3 scripts/gen_kats.py

Rewrites src/g2cgl/kat/vectors.txt.  The file is committed and treated
as frozen; regeneration is only legitimate when the normative wire
conventions themselves change.
"""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

import sympy  # noqa: E402

import oracle  # noqa: E402

OUT = ROOT / "src" / "g2cgl" / "kat" / "vectors.txt"

HEADER = """\
# Known-answer vectors for the genus-2 walk hash.
# TAB-separated: NAME<TAB>INPUT-HEX<TAB>EXPECTED-HEX
#   NAME        <mode>-<context>-<nn>
#   mode        'msg'    -> input bytes are the message (hash_bytes)
#               'digits' -> input bytes are base-8 digits, one per byte,
#                           least significant digit first (hash_digits)
#   context     p11   -> setup(prime=11)
#               p1019 -> setup(prime=1019)
#               l128  -> setup(security=128)
#   INPUT-HEX   '-' stands for empty input
#   EXPECTED    digest hex, or the token 'bottom' for the typed
#               failure outcome (walk reached a split codomain)
# Generated once by the independent reference implementation
# (tests/oracle.py); see scripts/gen_kats.py.
"""


def l128_prime() -> int:
    # smallest prime above 2**ceil(2*128/3) = 2**86 congruent to 5 mod 6
    p = int(sympy.nextprime(1 << 86))
    while p % 6 != 5:
        p = int(sympy.nextprime(p))
    return p


def main() -> None:
    rows = []

    def add(name, input_bytes, expected):
        ih = input_bytes.hex() if input_bytes else "-"
        eh = expected if expected == oracle.BOTTOM else expected.hex()
        rows.append(f"{name}\t{ih}\t{eh}")

    # ---- p = 11: every padded message walk hits a split codomain, which
    # is itself a pinned outcome; digit-mode vectors carry real digests.
    F11 = oracle.OracleField(11)
    msgs11 = [b"", b"\x00", b"\x01", b"ab", b"\xff\x00"]
    for i, msg in enumerate(msgs11, 1):
        add(f"msg-p11-{i:02d}", msg, oracle.hash_message(F11, msg))

    candidates = [
        [0], [1], [2], [7],
        [0, 3], [1, 0], [2, 4], [7, 7],
        [1, 2, 3], [3, 1, 4],
        [0, 1, 2, 3], [4, 4, 4, 4],
        [1, 2, 3, 4, 0], [7, 6, 5, 4, 3],
    ]
    kept = 0
    for digits in candidates:
        if kept >= 10:
            break
        got = oracle.hash_digit_string(F11, digits)
        if got == oracle.BOTTOM:
            continue
        kept += 1
        add(f"digits-p11-{kept:02d}", bytes(digits), got)
    assert kept == 10, f"only {kept} non-bottom digit vectors at p=11"

    # ---- p = 1019: mostly digest vectors; b"abc" genuinely reaches a
    # split codomain at this scale and is pinned as such.
    F1019 = oracle.OracleField(1019)
    msgs1019 = [b"", b"\x00", b"a", b"abc", b"\xde\xad\xbe\xef",
                bytes(range(8))]
    digests = 0
    for i, msg in enumerate(msgs1019, 1):
        got = oracle.hash_message(F1019, msg)
        if got != oracle.BOTTOM:
            digests += 1
        add(f"msg-p1019-{i:02d}", msg, got)
    assert digests >= 5, f"only {digests} digest vectors at p=1019"

    # ---- lambda = 128 (p just above 2^86)
    p = l128_prime()
    Fbig = oracle.OracleField(p)
    msgsbig = [b"", b"KAT", b"\x00\x01\x02", b"The quick brown fox",
               bytes(range(16))]
    for i, msg in enumerate(msgsbig, 1):
        got = oracle.hash_message(Fbig, msg)
        assert got != oracle.BOTTOM, ("unexpected bottom at l128", msg)
        add(f"msg-l128-{i:02d}", msg, got)

    OUT.write_text(HEADER + "\n".join(rows) + "\n")
    print(f"wrote {len(rows)} vectors to {OUT}")
    print(f"l128 prime: {p} ({p.bit_length()} bits, p % 6 = {p % 6})")


if __name__ == "__main__":
    main()
