""" Exceptions raised by the algebra kernel.

Classes:

    KernelError
    GenericityError
    SingularArgumentError
    DiagramError
    BasisError
    InvariantSubspaceError
    ConfigError
"""


class KernelError(Exception):
    """ Base class for every error raised by the kernel. """


class GenericityError(KernelError):
    """ A parameter point makes some q-number inside the scan bound vanish,
    or no generic point was found within the retry budget.
    """


class SingularArgumentError(KernelError):
    """ A coefficient was asked for at one of its poles. """

    def __init__(self, what: str, argument: object = None):
        self.what = what
        self.argument = argument
        if argument is None:
            super().__init__(what)
        else:
            super().__init__(f"{what} is singular at {argument}")


class DiagramError(KernelError):
    """ Malformed half-diagram text, bad generator index or mismatched size. """


class BasisError(KernelError):
    """ A path basis could not be built (E_N not of rank one, or the vectors
    are linearly dependent).
    """


class InvariantSubspaceError(KernelError):
    """ The expected invariant block is not invariant. """


class ConfigError(KernelError):
    """ Invalid command line configuration. """
