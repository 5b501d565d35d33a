"""Exception types raised by the workbench."""


class MpjError(Exception):
    """Base class for all workbench errors."""


class AlphabetMismatchError(MpjError, ValueError):
    """Words, expressions or automata over different alphabets were combined."""


class NonAssociativeError(MpjError, ValueError):
    """A multiplication table violates associativity."""

    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        a, b, c = triple
        super().__init__(f"table is not associative at ({a}, {b}, {c})")


class IdentityLawError(MpjError, ValueError):
    """The declared identity is not neutral."""


class CapExceededError(MpjError):
    """A construction grew beyond its configured cap."""

    def __init__(self, what: str, cap: int, subject: str = ""):
        self.what = what
        self.cap = cap
        self.subject = subject
        message = f"{what} exceeded cap {cap}"
        if subject:
            message += f" while building {subject}"
        super().__init__(message)


class LengthMismatchError(MpjError, ValueError):
    """An input word does not have the program's input length."""


class ShapeMismatchError(MpjError, ValueError):
    """Programs or reductions cannot be combined because their shapes differ."""


class CostaFormError(MpjError, ValueError):
    """A Costa form violates its bridge constraints."""


class RepeatedLetterError(MpjError, ValueError):
    """A construction needs a factor with pairwise-distinct letters."""


class UnsupportedExpressionError(MpjError, ValueError):
    """An expression lies outside the fragment a construction accepts."""


class RegexSyntaxError(MpjError, ValueError):
    """The regex-lite input could not be parsed."""


class UnknownCheckError(MpjError, KeyError):
    """A suite names a check that is not registered."""


class ConfigurationError(MpjError, ValueError):
    """Invalid suite or CLI configuration."""
