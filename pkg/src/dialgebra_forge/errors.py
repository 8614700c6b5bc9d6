"""Exception hierarchy shared by every module."""


class ForgeError(Exception):
    """Base class for all dialgebra-forge errors."""


class AlphabetError(ForgeError):
    """Unknown generator, or elements over different alphabets combined."""


class WordSyntaxError(ForgeError):
    pass


class DimensionError(ForgeError):
    pass


class MissingOperatorError(ForgeError):
    pass


class AssignmentError(ForgeError):
    """A generator or variable was left without a value."""


class AdfError(ForgeError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"{message}, line {line}"
        super().__init__(message)


class DslError(ForgeError):
    """Positioned error from the identity parser."""

    def __init__(self, message, line, col):
        self.message = message
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


class BindingError(ForgeError):
    pass


class NotMultilinearError(ForgeError):
    pass


class SuiteError(ForgeError):
    pass
