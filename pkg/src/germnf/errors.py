"""Exception hierarchy. The CLI maps these onto exit codes."""


class GermError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(GermError, ValueError):
    """An operation was called outside its documented domain."""


class InvalidComposition(PreconditionError):
    """Composition with an inner map that does not fix the origin, or a too-short jet."""


class HypothesisViolation(GermError):
    """The input germ does not satisfy a standing hypothesis (H1, H2, H3)."""

    def __init__(self, hypothesis: str, message: str):
        super().__init__(f"({hypothesis}) {message}")
        self.hypothesis = hypothesis


class DegenerateInput(HypothesisViolation):
    """``f`` equals the identity through the truncation degree."""

    def __init__(self, message: str = "f is the identity through the truncation degree"):
        super().__init__("f != id", message)


class RootNotInField(GermError):
    """A scaling constraint ``x**n == c`` has no solution in Q(i)."""

    def __init__(self, n: int, c, equation: str):
        super().__init__(f"no solution in Q(i) of {equation} (x^{n} = {c})")
        self.n = n
        self.c = c
        self.equation = equation


class CaseTableError(GermError):
    """A complement set failed its spanning check: an internal bug, never user input."""
