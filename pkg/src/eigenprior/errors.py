"""Exception hierarchy shared across the package."""


class EigenpriorError(Exception):
    """Base class for all package errors."""


class DataError(EigenpriorError):
    """Malformed or unusable input data (corpus, vocab, graph, dataset files)."""


class ContractViolation(EigenpriorError):
    """A caller broke an operation precondition (shape mismatch, bad range)."""


class VerificationFailure(EigenpriorError):
    """A numerical identity check did not hold."""
