"""Exception hierarchy shared by all modules."""


class TwoDiagError(Exception):
    """Base class for every error raised by this package."""


class ZeroDivisor(TwoDiagError, ZeroDivisionError):
    """Division by a scalar that is exactly zero (or zero within tolerance)."""


class DegreeOverflow(TwoDiagError):
    pass


class DegenerateSeed(TwoDiagError):
    pass


class DegenerateExtension(TwoDiagError):
    pass


class SpectrumDegenerate(TwoDiagError):
    """A denominator built from spectrum differences vanished."""


class InconsistentSpectrum(TwoDiagError):
    pass


class DegenerateFunctional(TwoDiagError):
    """Some Hankel determinant of the moment sequence vanished."""


class NotOrthogonal(TwoDiagError):
    def __init__(self, degree, detail=""):
        self.degree = degree
        super().__init__(f"three-term recurrence fails at degree {degree}" + (f": {detail}" if detail else ""))


class NotAdmissible(TwoDiagError):
    def __init__(self, violations=()):
        self.violations = list(violations)
        rules = sorted({v.rule for v in self.violations})
        super().__init__(f"spectrum is not admissible (rules {', '.join(rules) or '?'})")


class InvalidParams(TwoDiagError):
    pass


class NoKnownWeight(TwoDiagError):
    pass


class NonPolynomialOutput(TwoDiagError):
    pass


class NotTwoDiagonal(TwoDiagError):
    def __init__(self, n, stray_degree):
        self.n = n
        self.stray_degree = stray_degree
        super().__init__(f"operator maps x^{n} onto x^{stray_degree}")


class NotUmbralClassical(TwoDiagError):
    pass


class FitFailed(TwoDiagError):
    pass


class ZeroKappa(TwoDiagError, ValueError):
    pass
