"""Exception types shared across the package."""


class HybridmcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidExtensionError(HybridmcError):
    """Structure extension with a value that does not fit the symbol."""


class SizeLimitError(HybridmcError):
    """An operation exceeded its configured size cap."""


class FragmentError(HybridmcError):
    """A formula lies outside the fragment required by an operation."""


class InvalidKernelError(HybridmcError):
    """The requested kernel class is not quantifier-free."""


class UnsupportedSubstitutionError(HybridmcError):
    """Substitution hit a first-order application of a bound set symbol."""


class IncompleteKitError(HybridmcError):
    """A translation kit is missing an entry for a used symbol or modality."""


class BudgetExceededError(HybridmcError):
    """A translation would blow up beyond the configured budget."""


class NoImageError(HybridmcError):
    """The encoding does not come with an image formula."""


class InvalidInjectionError(HybridmcError):
    """A partial injection does not map between the given universes."""


class ParseError(HybridmcError):
    """Syntax error with source position and expected-token information."""

    def __init__(self, message, line=None, column=None, expected=None):
        self.message = message
        self.line = line
        self.column = column
        self.expected = frozenset(expected or ())
        where = f" at {line}:{column}" if line is not None else ""
        hint = ""
        if self.expected:
            hint = " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{message}{where}{hint}")
