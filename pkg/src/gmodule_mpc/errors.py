"""Exception hierarchy shared by every module."""


class GModuleMPCError(Exception):
    pass


class MalformedInputError(GModuleMPCError, ValueError):
    """An element or vector does not fit the declared group or dimension."""


class InvalidGroupElementError(MalformedInputError):
    pass


class ConfigurationError(GModuleMPCError, ValueError):
    """Protocol parameters violate a precondition (prime too small, non-abelian group, ...)."""


class ProtocolStateError(GModuleMPCError):
    """A party asked for a correlation that was never dealt or has the wrong tag."""


class ProtocolLogicError(GModuleMPCError):
    """Deadlock or cyclic message dependencies."""


class CommodityModelViolation(ProtocolLogicError):
    """The dealer tried to take part in the online phase."""


class CorruptedInputError(GModuleMPCError):
    """The shared vector handed to FNZ was not a nonzero 0-1 vector."""
