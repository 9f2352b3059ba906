"""Frozen known-answer vectors and their loader.

``vectors.txt`` is TAB-separated ``NAME  INPUT-HEX  EXPECTED-HEX``; see
the file header for the NAME grammar.  Expected values were generated
once by the independent reference implementation and are treated as
frozen wire-format pins.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from typing import List, Optional, Tuple

__all__ = ["KatVector", "load_vectors", "CONTEXT_ARGS"]

#: context label -> keyword arguments for hashing.setup()
CONTEXT_ARGS = {
    "p11": {"prime": 11},
    "p1019": {"prime": 1019},
    "l128": {"security": 128},
}


@dataclass(frozen=True)
class KatVector:
    name: str
    mode: str           # "msg" or "digits"
    context: str        # key into CONTEXT_ARGS
    input: bytes
    expected: Optional[bytes]  # None means the typed failure outcome

    @property
    def digits(self) -> Tuple[int, ...]:
        if self.mode != "digits":
            raise ValueError("not a digit-mode vector")
        return tuple(self.input)


def load_vectors() -> List[KatVector]:
    text = (
        importlib.resources.files(__package__)
        .joinpath("vectors.txt")
        .read_text()
    )
    out = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, ih, eh = line.split("\t")
        mode, context, _ = name.split("-")
        if mode not in ("msg", "digits") or context not in CONTEXT_ARGS:
            raise ValueError(f"malformed vector name: {name}")
        data = b"" if ih == "-" else bytes.fromhex(ih)
        expected = None if eh == "bottom" else bytes.fromhex(eh)
        out.append(KatVector(name, mode, context, data, expected))
    return out
