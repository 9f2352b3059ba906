"""Exception types shared across the package."""


class G2Error(Exception):
    """Base class for package-specific failures."""


class DegenerateSplittingError(G2Error, ValueError):
    """A splitting or factor list violates its preconditions (zero factor,
    repeated root, wrong degrees, non-coprime parts)."""


class InternalInvariantError(G2Error, RuntimeError):
    """A value occurred that the superspecial theory rules out, e.g. an
    irreducible quadratic showing up while factoring a walk step.  Seeing
    this means the input object was not what the caller claimed."""


class SetupError(G2Error, ValueError):
    """Hash context construction failed (bad prime, unsupported congruence
    class, out-of-range security level)."""
