"""Exception types shared across the package."""


class DegeneracyError(RuntimeError):
    """Raised when a linear system is too ill-conditioned to solve reliably.

    Signals numerical rank deficiency (condition number beyond 1e12) in the
    restricted least-squares step or a singular row Gram in the l1 decoder.
    """
