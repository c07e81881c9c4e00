class KKTLabError(Exception):
    """Root of every error raised by kktlab."""


class UsageError(KKTLabError):
    """Malformed spec strings, unknown commands or unsupported options."""


class KindMismatchError(KKTLabError):
    pass


class AlgebraMismatchError(KKTLabError):
    pass


class SlotError(KKTLabError):
    pass


class GCMError(KKTLabError):
    """The matrix violates the generalized Cartan matrix axioms or a node is out of range."""


class NotFiniteTypeError(KKTLabError):
    pass


class NotAnIdealError(KKTLabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        # (ideal index, algebra index) whose bracket leaves the ideal
        self.witness = witness


class MissingStructureError(KKTLabError):
    """A grading or involution was required but is not attached."""


class DegreeOverflowError(KKTLabError):
    pass


class ClosureError(KKTLabError):
    def __init__(self, message, grade=None):
        super().__init__(message)
        self.grade = grade
