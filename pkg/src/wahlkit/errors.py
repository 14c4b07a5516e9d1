class WahlkitError(Exception):
    """Base class for all library errors."""


class InvalidChain(WahlkitError):
    pass


class NotCoprime(WahlkitError):
    pass


class OutOfRange(WahlkitError):
    pass


class NotContractible(WahlkitError):
    pass


class Sentinel(WahlkitError):
    pass


class ExcludedChain(WahlkitError):
    pass


class InvalidMarking(WahlkitError):
    pass


class NoSlide(WahlkitError):
    pass


class NotDegree8(WahlkitError):
    pass


class BoundTooSmall(WahlkitError):
    pass


class NotExtremal(WahlkitError):
    pass


class NoBar(WahlkitError):
    pass


class AmbiguousBar(WahlkitError):
    pass


class NotMarkovMutation(WahlkitError):
    pass


class UnknownFamily(WahlkitError):
    pass


class MissingPullback(WahlkitError):
    pass


class NotNef(WahlkitError):
    pass


class InvariantViolation(WahlkitError):
    """A computed value contradicts a proven identity; always a bug."""


class VerificationFailed(InvariantViolation):
    pass


class IdentityViolation(InvariantViolation):
    pass


class SingularSystem(InvariantViolation):
    pass
