"""Exception hierarchy shared by all modules of the package."""


class NormcheckError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(NormcheckError):
    """Matrix or vector dimensions do not fit the requested operation."""


class SingularMatrixError(NormcheckError):
    """An exact solve hit a singular coefficient matrix."""

    def __init__(self, rank: int):
        super().__init__(f"singular coefficient matrix (rank {rank})")
        self.rank = rank


class RankError(NormcheckError):
    """A nullspace computation found a dimension other than one."""

    def __init__(self, dimension: int):
        super().__init__(f"nullspace has dimension {dimension}, expected 1")
        self.dimension = dimension


class StochasticityError(NormcheckError):
    """A matrix expected to be row-stochastic is not."""


class PositivityError(NormcheckError):
    """An eigenvector expected to be strictly positive is not."""


class FormatError(NormcheckError):
    """A machine description file is malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class DfaError(NormcheckError):
    """An operation required a deterministic complete automaton."""


class AmbiguousTransducerError(NormcheckError):
    """The machine admits two accepting runs over a common input."""

    def __init__(self, witness: str | None = None):
        self.witness = witness
        msg = "transducer is ambiguous"
        if witness is not None:
            msg += f" (two accepting runs share the input prefix {witness!r})"
        super().__init__(msg)


class EmptyLanguageError(NormcheckError):
    """Trimming removed every state; the machine accepts nothing."""


class NoInfiniteOutputError(NormcheckError):
    """Every transition of the component emits the empty word, so no
    infinite input can produce an infinite output."""


class NotAnalyzableError(NormcheckError):
    """The requested component has no final state or unit-radius matrix."""


class NoRunError(NormcheckError):
    """The input word is not a prefix of any accepted sequence."""

    def __init__(self, position: int):
        super().__init__(f"no run survives past input position {position}")
        self.position = position
