"""Exception hierarchy shared by all modules.

Every message is prefixed with the name of the module that raised it, so the
CLI can print errors verbatim.
"""


class TdlcError(Exception):
    exit_code = 2

    def __init__(self, module, message):
        self.module = module
        super().__init__(f"{module}: {message}")


class InputError(TdlcError):
    """Malformed input: bad germ string, unknown name, invalid group data..."""

    exit_code = 2


class ResourceLimitError(TdlcError):
    """A configured vertex / simplex / group-order cap was exceeded."""

    exit_code = 3


class InvariantError(TdlcError):
    """A structural invariant (for example a vanishing double boundary) failed."""

    exit_code = 2
