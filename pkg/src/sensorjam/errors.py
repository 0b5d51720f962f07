"""Exception hierarchy shared by all sensorjam modules."""


class SensorJamError(Exception):
    """Base class for all domain errors raised by this package."""


class ConfigError(SensorJamError, ValueError):
    """A network configuration field violates its constraint."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class NonPositiveChannelNoise(ConfigError):
    def __init__(self, value: float):
        super().__init__("var_Z", f"channel noise variance must be > 0, got {value}")


class NegativeParameter(ConfigError):
    def __init__(self, field: str, value: float):
        super().__init__(field, f"must be >= 0, got {value}")


class InfeasiblePower(SensorJamError):
    """A strategy's analytic transmit power exceeds its budget."""


class DegenerateObservation(SensorJamError):
    """Signal-plus-observation-noise variance is zero; gains are undefined."""


class RequiresTransmitters(SensorJamError):
    """Closed forms for the two game settings need at least one transmitter."""


class ZeroObservationPower(SensorJamError):
    """Channel output has zero second moment; no linear estimate exists."""


class DegenerateCEO(SensorJamError):
    """The remote estimation problem has no sensors at all."""


class RateDomainError(SensorJamError, ValueError):
    """Rate or distortion argument outside the valid rate-distortion domain."""


class NotPSD(SensorJamError):
    """Correlation matrix is not symmetric positive semidefinite."""


class NoAdversaries(SensorJamError):
    """Operation needs K >= 1 adversarial sensors."""


class ZeroSamples(SensorJamError, ValueError):
    """Monte Carlo sample count must be >= 1."""


class DegenerateCorrelation(SensorJamError, ValueError):
    """|rho| >= 1 leaves no valid bivariate normal density."""


class DegenerateMarginal(SensorJamError):
    """A retained bin carries zero marginal mass."""
