"""Exception hierarchy shared by all modules."""


class FatArcError(Exception):
    """Base class for every error raised by fatarc."""


class RingMismatch(FatArcError):
    pass


class ParseError(FatArcError):
    def __init__(self, message, position=None):
        self.position = position
        self.message = message
        if position is not None:
            message = f"{message} (at offset {position})"
        super().__init__(message)


class ResourceLimitExceeded(FatArcError):
    """A configured budget (Groebner pairs, degree, enumeration size) was hit.

    Never a wrong answer: the computation is abandoned instead.
    """


class InfiniteStaircase(FatArcError):
    pass


class NotFinite(FatArcError):
    """A fat point was requested from an ideal of positive dimension."""


class NotSupportedAtOrigin(FatArcError):
    pass


class FiltrationViolated(FatArcError):
    pass


class CharacteristicError(FatArcError):
    pass


class NotCertified(FatArcError):
    """A symbolic class was requested but no certificate exists."""


class ContainmentError(FatArcError):
    pass
