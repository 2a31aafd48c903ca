"""Exception hierarchy shared by every module of the package."""


class CongruenceError(Exception):
    """Base class for all package errors."""


class SpecMismatch(CongruenceError):
    pass


class NotAUnit(CongruenceError):
    pass


class ZeroElement(CongruenceError):
    pass


class DimensionMismatch(CongruenceError):
    pass


class AmbientMismatch(CongruenceError):
    pass


class IllDefinedMap(CongruenceError):
    pass


class InfiniteLength(CongruenceError):
    def __init__(self, free_rank: int, msg: str | None = None):
        self.free_rank = free_rank
        super().__init__(msg or f"module has positive free rank {free_rank}")


class ValidationError(CongruenceError):
    """An input failed one of the structural axioms.

    ``axiom`` is the short name reported by the CLI, ``witness`` a small
    tuple pointing at the offending data.
    """

    axiom = "Validation"

    def __init__(self, msg: str, witness=None):
        self.witness = witness
        super().__init__(msg)


class NotAssociative(ValidationError):
    axiom = "NotAssociative"


class NotCommutative(ValidationError):
    axiom = "NotCommutative"


class NotUnital(ValidationError):
    axiom = "NotUnital"


class NotWellDefined(ValidationError):
    axiom = "NotWellDefined"


class LambdaNotMultiplicative(ValidationError):
    axiom = "LambdaNotMultiplicative"


class LambdaNotUnital(ValidationError):
    axiom = "LambdaNotUnital"


class NotLocal(ValidationError):
    axiom = "NotLocal"


class ConormalInfinite(ValidationError):
    axiom = "ConormalInfinite"


class ActionInvalid(ValidationError):
    axiom = "ActionInvalid"


class NotAlgebraMap(ValidationError):
    axiom = "NotAlgebraMap"


class AugmentationNotInduced(ValidationError):
    axiom = "AugmentationNotInduced"


class NotSurjective(ValidationError):
    axiom = "NotSurjective"


class NotCIPresentation(ValidationError):
    axiom = "NotCIPresentation"


class InternalInvariantViolation(CongruenceError):
    """A theorem-level identity failed on concrete data; ``lemma`` names it."""

    def __init__(self, lemma: str, msg: str):
        self.lemma = lemma
        super().__init__(f"{lemma}: {msg}")


class PreconditionFailed(CongruenceError):
    pass


class NotGorensteinInput(PreconditionFailed):
    pass


class StabilizationFailure(CongruenceError):
    pass


class ParseError(CongruenceError):
    pass
