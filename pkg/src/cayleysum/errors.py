"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map
failures onto exit statuses without string matching.
"""


class CayleySumError(Exception):
    code = "error"


class InvalidInput(CayleySumError, ValueError):
    code = "invalid-input"


class InvalidFactor(InvalidInput):
    code = "invalid-factor"


class InvalidModulus(InvalidInput):
    code = "invalid-modulus"


class InvalidGenerator(InvalidInput):
    code = "invalid-generator"


class GroupMismatch(InvalidInput):
    code = "group-mismatch"


class TooSmall(InvalidInput):
    code = "too-small"


class ContainsIdentity(InvalidInput):
    code = "contains-identity"


class NotSymmetric(InvalidInput):
    code = "not-symmetric"


class InfiniteHomSet(InvalidInput):
    code = "infinite-hom-set"


class PreconditionViolation(InvalidInput):
    code = "precondition-violation"


class TooLarge(CayleySumError):
    """A configured enumeration budget would be exceeded."""

    code = "too-large"
