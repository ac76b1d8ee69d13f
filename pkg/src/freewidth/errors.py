"""Exception hierarchy. Every domain failure carries a stable name used in reports."""


class FreewidthError(Exception):
    """Base class for all structured domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


# group-core
class NotAGroup(FreewidthError):
    pass


class OrderCapExceeded(FreewidthError):
    pass


class NotClosed(FreewidthError):
    pass


class MissingIdentity(FreewidthError):
    pass


class NotBijective(FreewidthError):
    pass


class NotHomomorphism(FreewidthError):
    pass


class NotNormal(FreewidthError):
    pass


class NoCase2Witness(FreewidthError):
    pass


class OrderTwoInDoubleCoset(FreewidthError):
    pass


class NotProper(FreewidthError):
    pass


# words
class UnknownLetter(FreewidthError):
    pass


class WordParseError(FreewidthError):
    pass


class InstanceTooSmall(FreewidthError):
    pass


class NoSeparatorElement(FreewidthError):
    pass


class WitnessNotApplicable(FreewidthError):
    pass


class NoFillerElement(FreewidthError):
    pass


class NoOppositeFactorElement(FreewidthError):
    pass


# lab
class BallCapExceeded(FreewidthError):
    pass


class SuiteUnknown(FreewidthError):
    pass


class InstanceFormatError(FreewidthError):
    pass
