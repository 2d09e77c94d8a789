"""Exception hierarchy shared by every module."""


class StegoError(Exception):
    """Base class for all errors raised by bpxor."""


class DimensionMismatch(StegoError, ValueError):
    pass


class UnsupportedDepth(StegoError, ValueError):
    pass


class PayloadTooLarge(StegoError, ValueError):
    pass


class DimensionsTooLarge(StegoError, ValueError):
    pass


class EmptyImage(StegoError, ValueError):
    pass


class SecretTooLarge(StegoError, ValueError):
    pass


class RequestTooLarge(StegoError, ValueError):
    pass


class FormatError(StegoError, ValueError):
    """File content is not an 8-bit gray/RGB image we can store losslessly."""


class IoError(StegoError, OSError):
    pass
