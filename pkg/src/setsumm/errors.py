"""Exception types shared across the package."""


class SetsummError(Exception):
    """Base class for all setsumm errors."""


# -- ingestion --------------------------------------------------------------

class IngestError(SetsummError):
    """Malformed or unusable catalog input."""


class NoHeaderError(IngestError):
    pass


class NoPriceColumnError(IngestError):
    pass


class EmptyTableError(IngestError):
    pass


class UnknownFeatureError(SetsummError):
    pass


class KindMismatchError(SetsummError):
    pass


# -- statistics / analysis --------------------------------------------------

class EmptyInputError(SetsummError):
    pass


class OutOfRangeError(SetsummError):
    pass


class FeatureMismatchError(SetsummError):
    pass


class InsufficientSupportError(SetsummError):
    pass


# -- realization ------------------------------------------------------------

class EmptyListError(SetsummError):
    pass


class WrongModeError(SetsummError):
    pass


# -- evaluation -------------------------------------------------------------

class EmptySetError(SetsummError):
    pass


class UnknownProductError(SetsummError):
    pass


class DegenerateVarianceError(SetsummError):
    pass


class InvalidNError(SetsummError):
    pass


class InsufficientDataError(SetsummError):
    pass


class RecordFormatError(SetsummError):
    """A row in an evaluation input file could not be parsed."""
