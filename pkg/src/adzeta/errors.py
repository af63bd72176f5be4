"""Exception types shared across the package."""


class AdzetaError(Exception):
    """Base class for all errors raised by adzeta."""


class PoleAt(AdzetaError, ValueError):
    def __init__(self, s, what="function"):
        super().__init__(f"{what} has a pole at s={s!r}")
        self.s = s


class NonPositiveEigenvalue(AdzetaError, ValueError):
    """A tangential eigenvalue is <= 0, i.e. the tangential operator is not invertible."""

    def __init__(self, value, where=""):
        msg = f"non-positive eigenvalue {value!r}"
        if where:
            msg += f" ({where})"
        super().__init__(msg)
        self.value = value
        self.where = where


class TruncationInsufficient(AdzetaError, RuntimeError):
    pass


class ContinuationUnavailable(AdzetaError, ValueError):
    pass


class OutsideConvergenceStrip(AdzetaError, ValueError):
    def __init__(self, term, s, strip):
        super().__init__(f"{term}: s={s!r} outside convergence strip {strip}")
        self.term = term


class BracketingFailure(AdzetaError, RuntimeError):
    pass


class UnsupportedBC(AdzetaError, ValueError):
    pass


class QuadratureFailure(AdzetaError, RuntimeError):
    pass


class ConfigError(AdzetaError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = (", ".join(where) + ": ") if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field
