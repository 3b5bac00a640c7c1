"""Exception hierarchy; each class carries the CLI exit code it maps to."""


class ACNFError(Exception):
    exit_code = 1


class InputError(ACNFError):
    """Malformed problem data or a violated input invariant."""

    exit_code = 1


class InvalidOrderError(InputError):
    """Generators that do not span an order of full rank."""

    exit_code = 4


class UnsupportedTargetError(ACNFError):
    """An oracle was asked about an algebra it does not cover."""

    exit_code = 5


class InconsistencyError(ACNFError):
    """Two routes that must agree did not. Always a bug."""

    exit_code = 3
