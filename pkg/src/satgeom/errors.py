"""Exception hierarchy shared by every satgeom module."""


class SatGeomError(Exception):
    """Base class for all library errors."""


# -- fields ---------------------------------------------------------------

class NotPrime(SatGeomError, ValueError):
    def __init__(self, p, message=None):
        super().__init__(message or f"{p} is not prime")
        self.p = p


class FieldTooLarge(SatGeomError, ValueError):
    pass


class DivisionByZero(SatGeomError, ZeroDivisionError):
    pass


# -- geometry -------------------------------------------------------------

class ParseError(SatGeomError, ValueError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class AxiomViolation(SatGeomError, ValueError):
    """An ingested plane breaks one of the projective plane axioms.

    ``which`` is one of ``"counts"``, ``"line size"``, ``"point degree"``,
    ``"unique line"``; ``witness`` holds the offending point/line indices.
    """

    def __init__(self, which, witness=(), message=""):
        text = f"axiom violated: {which}"
        if message:
            text += f" ({message})"
        super().__init__(text)
        self.which = which
        self.witness = tuple(witness)


class SamePoint(SatGeomError, ValueError):
    pass


class SpaceTooLarge(SatGeomError, ValueError):
    pass


class GeometryMismatch(SatGeomError, ValueError):
    pass


# -- randomized constructions ---------------------------------------------

class RetriesExhausted(SatGeomError, RuntimeError):
    def __init__(self, trials, failure_probability_bound, stage=None):
        msg = (f"no success in {trials} trials "
               f"(per-trial failure bound {failure_probability_bound:.4g})")
        if stage is not None:
            msg = f"stage {stage}: " + msg
        super().__init__(msg)
        self.trials = trials
        self.failure_probability_bound = failure_probability_bound
        self.stage = stage


class RangeViolation(SatGeomError, ValueError):
    pass


class PreconditionFailed(SatGeomError, ValueError):
    pass


class QBelowThreshold(SatGeomError, ValueError):
    pass


class UnsupportedMu(SatGeomError, ValueError):
    pass


class EmptyExperiment(SatGeomError, ValueError):
    pass


class KTooLarge(SatGeomError, ValueError):
    pass


# -- bounds ---------------------------------------------------------------

class InvalidRange(SatGeomError, ValueError):
    pass


class NotFound(SatGeomError, LookupError):
    pass


class NoApplicableRow(SatGeomError, LookupError):
    pass


class ConstraintViolated(SatGeomError, ValueError):
    def __init__(self, which):
        which = tuple(which)
        super().__init__("constraint violated: " + "; ".join(which))
        self.which = which


# -- oracle / codes -------------------------------------------------------

class BudgetExceeded(SatGeomError, RuntimeError):
    pass


class NoCoordinates(SatGeomError, ValueError):
    pass


class EmptySet(SatGeomError, ValueError):
    pass


class InvalidMatrix(SatGeomError, ValueError):
    pass
