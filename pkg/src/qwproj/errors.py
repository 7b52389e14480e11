"""Exception types shared across the package."""


class QwprojError(Exception):
    """Base class for every error raised by this library."""


class DimensionMismatch(QwprojError):
    """A coin vector or matrix has the wrong dimension for its walk."""


class InvalidPosition(QwprojError):
    """A position key does not belong to the space."""


class SpaceMismatch(QwprojError):
    """Two states (or a state and an operator) live on incompatible spaces."""


class UnknownDisplacement(QwprojError):
    """A displacement label is not declared by the space."""


class NotUnitary(QwprojError):
    """A coin matrix fails the unitarity tolerance."""


class NotCoprime(QwprojError):
    """gcd(k, l) != 1 where a coprime pair is required."""


class InvalidModulus(QwprojError):
    """Circle size must be a positive integer."""


class MissingSigma(QwprojError):
    """A phase-weighted operation needs a sigma homomorphism."""


class NullProjection(QwprojError):
    """The projected state is (numerically) the zero vector."""


class InhomogeneousCoin(QwprojError):
    """The coin assignment varies within an equivalence class of rho."""


class GridTooCoarse(QwprojError):
    """Too few phase samples to resolve the requested sigma values."""


class InconsistentGrid(QwprojError):
    """Phase samples do not form a uniform grid of spacing 2*pi/M."""


class UnknownScenario(QwprojError):
    """No catalog scenario is registered under the given name."""


class InvalidParameter(QwprojError):
    """A scenario or plan parameter is out of range."""


class SubspaceNotInvariant(QwprojError):
    """The coin does not preserve the requested coin subspace."""


class StateOutsideSubspace(QwprojError):
    """The state has amplitude outside the requested coin subspace."""
