"""Exception hierarchy for thermorep."""


class ThermorepError(Exception):
    """Base class for all errors raised by this package."""


class NonUniformGrid(ThermorepError, ValueError):
    pass


class NegativeDensity(ThermorepError, ValueError):
    pass


class ZeroMass(ThermorepError, ValueError):
    pass


class DimensionUnsupported(ThermorepError, NotImplementedError):
    """Numeric evaluation is only implemented for one-dimensional densities."""


class VacuumHasNoMomentum(ThermorepError, ValueError):
    pass


class BudgetExceeded(ThermorepError, RuntimeError):
    """A requested enumeration or eigen-decomposition is larger than the configured cap."""


class WeightSumInvalid(ThermorepError, ValueError):
    pass


class DuplicateConfig(ThermorepError, ValueError):
    pass


class PauliViolation(ThermorepError, ValueError):
    pass


class DomainError(ThermorepError, ValueError):
    pass


class TargetOutOfRange(ThermorepError, ValueError):
    pass


class InfeasibleTarget(ThermorepError, ValueError):
    """No state with the requested (p, Nbar, S) exists."""
