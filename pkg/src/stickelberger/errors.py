"""Exception hierarchy shared by every module of the package."""


class StickelbergerError(ValueError):
    """Base class for all input and structural errors raised here."""


class CompositeInput(StickelbergerError):
    pass


class NotADivisor(StickelbergerError):
    pass


class NotAUnit(StickelbergerError):
    pass


class NotCoprime(StickelbergerError):
    pass


class GroupMismatch(StickelbergerError):
    pass


class NoConjugation(StickelbergerError):
    pass


class DimensionMismatch(StickelbergerError):
    pass


class NotASublattice(StickelbergerError):
    pass


class RankDeficient(StickelbergerError):
    """An index was requested between lattices of different rank."""


class WrongResidueClass(StickelbergerError):
    pass


class BadInvariantFactors(StickelbergerError):
    pass


class ActionOrderMismatch(StickelbergerError):
    pass


class SchemaError(StickelbergerError):
    """A module description file does not follow the documented schema."""
