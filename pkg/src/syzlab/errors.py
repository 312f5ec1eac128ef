"""Exception hierarchy.

Every error raised on bad input derives from :class:`InputError`; the CLI maps
those to exit code 2.  :class:`InternalError` subclasses signal states that
should be impossible for valid input (a bug, or a violated hypothesis).
"""


class SyzlabError(Exception):
    pass


class InputError(SyzlabError, ValueError):
    pass


class InternalError(SyzlabError, RuntimeError):
    pass


# exact-field
class NotPrime(InputError):
    pass


class OutOfRange(InputError):
    pass


class NoSuchRoot(InputError):
    pass


class ExhaustedSearch(InternalError):
    pass


# poly / parsing
class DegreeTooHigh(InputError):
    pass


class PolySyntaxError(InputError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class NotHomogeneous(InputError):
    pass


# linalg
class TooLarge(InputError):
    pass


# nodal
class CharacteristicTooSmall(InputError):
    pass


class InvalidLevel(InputError):
    pass


class NodeVerificationFailed(InternalError):
    pass


class StabilizationFailure(InternalError):
    pass


# invariants
class DegreeTooSmall(InputError):
    pass


class NotNodal(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class EigenvalueOutOfRange(InputError):
    pass


class SmoothInput(InputError):
    pass


class InconsistentSmooth(InternalError):
    pass


class SearchExhausted(InternalError):
    pass


class RouteMismatch(InternalError):
    """Two independent computations of the same quantity disagree."""
