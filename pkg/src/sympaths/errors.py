"""Exception hierarchy shared by all modules.

Two families matter for the CLI exit-code contract: FormatError covers
malformed input (exit 2), PreconditionError covers violated mathematical
hypotheses (exit 3).  Verification returning ``False`` is not an error.
"""


class SympathsError(Exception):
    """Base class for every error raised by this package."""


class FormatError(SympathsError):
    """Malformed input: bad syntax, wrong alphabet, broken schema."""


class ParseError(FormatError):
    pass


class UnknownGenerator(FormatError):
    pass


class AlphabetMismatch(FormatError):
    pass


class GroundMismatch(FormatError):
    pass


class LengthMismatch(FormatError):
    pass


class SpecOutOfBounds(FormatError):
    pass


class PreconditionError(SympathsError):
    """A stated hypothesis of the requested operation does not hold."""


class NotInKernel(PreconditionError):
    pass


class NotInKernelF(NotInKernel):
    pass


class NotInKernelH(NotInKernel):
    pass


class InstanceInvalid(PreconditionError):
    pass


class NotSurjectiveF(InstanceInvalid):
    pass


class NotSurjectiveH(InstanceInvalid):
    pass


class KernelPairsDoNotCommute(InstanceInvalid):
    pass


class NoCompletion(PreconditionError):
    pass
