class PAdicMRAError(Exception):
    """Base class for errors raised by this package."""


class SupportCapError(PAdicMRAError):
    """The Fourier transform of a refinable function did not vanish at the probe cap."""

    def __init__(self, message: str, shell_max: float):
        super().__init__(message)
        self.shell_max = shell_max


class MaskInfeasibleError(PAdicMRAError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class VerificationError(PAdicMRAError):
    """A computed object failed an a-posteriori check (unitarity, orthonormality, ...)."""

    def __init__(self, message: str, deviation: float):
        super().__init__(message)
        self.deviation = deviation
