"""Exception types shared across the package."""


class OrdalgError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInput(OrdalgError):
    """Input data (relation, map, file) does not satisfy its structural contract."""


class NotAPoset(OrdalgError):
    """A poset was required but the relation is not antisymmetric or not transitive."""


class NotAdmissible(OrdalgError):
    """An admissible inclusion of preorders was required."""


class NotAContraction(OrdalgError):
    """A contraction (or collapse) map was required."""


class CarrierMismatch(OrdalgError):
    """Algebra elements over different carriers were combined."""


class SizeBoundExceeded(OrdalgError):
    """An exhaustive operation was requested beyond the configured size bound."""


class SpeciesMembershipError(OrdalgError):
    """A coproduct was requested on a non-member, or closure of the species failed."""
