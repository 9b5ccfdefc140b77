"""Exception hierarchy shared by every strandsim module."""


class StrandSimError(Exception):
    """Base class for all errors raised by strandsim."""


class CapacityError(StrandSimError, ValueError):
    """A size limit (qubits, controls, matrix width) was exceeded."""


class UsageError(StrandSimError, ValueError):
    """An operation was called with arguments it does not accept."""


class UnsupportedFeatureError(StrandSimError):
    """The request is well formed but outside what the simulator models."""


class SequenceValidationError(StrandSimError, ValueError):
    """A nucleotide sequence contains a symbol outside A/C/G/T."""


class FastaFormatError(StrandSimError, ValueError):
    """The FASTA text is structurally malformed."""


class LengthMismatchError(StrandSimError, ValueError):
    """Two sequences that must be compared position by position differ in length."""
