"""Exception hierarchy shared across the library.

Exit-code mapping used by the CLI:
    2 usage, 3 invalid kernel, 4 degenerate parameters, 5 internal consistency.
"""


class KummerError(Exception):
    """Base class for all library errors."""

    exit_code = 5


class UsageError(KummerError):
    """Malformed input or unsupported option combination."""

    exit_code = 2


class ContractError(KummerError):
    """A caller violated a documented precondition (degree mismatch, bad index)."""

    exit_code = 2


class DegenerateParametersError(KummerError):
    """Surface or curve parameters fail a non-degeneracy requirement."""

    exit_code = 4

    def __init__(self, message, vanishing=None):
        super().__init__(message)
        self.vanishing = vanishing


class SingularCurveError(DegenerateParametersError):
    """The sextic/quintic has a repeated root."""


class InvalidKernelError(KummerError):
    """The supplied pair of torsion points does not generate a valid kernel."""

    exit_code = 3


class RationalityError(KummerError):
    """A required square root does not exist in the ground field."""

    exit_code = 4


class StructureError(KummerError):
    """Matrix inputs do not have the structure an operation requires."""

    exit_code = 4


class InternalConsistencyError(KummerError):
    """An identity that must hold by construction failed (arithmetic bug)."""

    exit_code = 5


class SamplingFailureError(KummerError):
    """Random point/torsion sampling exhausted its retry budget."""

    exit_code = 5


class ConjectureFailureError(KummerError):
    """The standard index set failed to span the invariant space for this N."""

    exit_code = 5

    def __init__(self, message, N=None):
        super().__init__(message)
        self.N = N


class PrecisionUnavailableError(KummerError):
    """A power-series computation was requested beyond the stored precision."""

    exit_code = 2
