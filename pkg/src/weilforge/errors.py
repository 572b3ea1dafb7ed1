"""Exception hierarchy shared by all modules."""


class WeilError(Exception):
    """Base class for every error raised by weilforge."""


class InvalidAlgebra(WeilError):
    pass


class NotCommutative(InvalidAlgebra):
    pass


class NotAssociative(InvalidAlgebra):
    pass


class NoUnit(InvalidAlgebra):
    pass


class NotLocal(InvalidAlgebra):
    pass


class AlgebraTooLarge(WeilError):
    pass


class ImproperIdeal(WeilError):
    pass


class AlgebraMismatch(WeilError):
    pass


class GeneratorNotNilpotent(WeilError):
    pass


class ElementNotInMaximal(WeilError):
    pass


class NotInvariant(WeilError):
    pass


class IncompatibleModule(WeilError):
    pass


class HypothesisViolated(WeilError):
    """A standing hypothesis of a construction fails.

    ``witness`` carries the obstruction when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RelationsViolated(WeilError):
    pass


class NotInvertible(WeilError):
    pass


class NotAutomorphism(WeilError):
    pass


class NotRegular(WeilError):
    pass


class BaseMismatch(WeilError):
    pass


class NotExactWarning(UserWarning):
    """jet addition was requested where the affine sequence is not exact."""
