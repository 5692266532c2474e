"""Exception hierarchy shared by all polyinv modules."""


class PolyinvError(Exception):
    """Base class for every error raised by polyinv."""


class NonSquare(PolyinvError, ValueError):
    pass


class DimensionMismatch(PolyinvError, ValueError):
    pass


class ConvergenceFailure(PolyinvError, ArithmeticError):
    """The QR iteration hit its sweep cap before deflating."""


class NotAnEigenvalue(PolyinvError, ValueError):
    pass


class Singular(PolyinvError, ArithmeticError):
    pass


class IllConditioned(PolyinvError, ArithmeticError):
    """Jordan structure could not be recovered to the declared tolerance."""


class Unsynthesizable(PolyinvError):
    """No construction is available for some eigenvalue of the system."""


class VerificationFailed(PolyinvError, ArithmeticError):
    """A synthesized invariant did not pass the LP re-check."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NumericalBreakdown(PolyinvError, ArithmeticError):
    """Simplex pivot fell below tolerance or the iteration cap was hit."""


class ZeroRow(PolyinvError, ValueError):
    pass


class DegenerateDirection(PolyinvError, ArithmeticError):
    pass


class ParseError(PolyinvError, ValueError):
    def __init__(self, msg, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + msg)
        self.line = line
        self.column = column


class RaggedRows(ParseError):
    pass
