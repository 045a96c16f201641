"""Exception types shared across the package."""


class AngleLimit(ValueError):
    """The oblique angle reached the camera's angle limit (coverage diverges)."""


class ZeroDistance(ValueError):
    """UAV and base station coincide; free-space gain is undefined."""


class ZeroRate(ValueError):
    pass


class Infeasible(RuntimeError):
    """No placement satisfies the resolution, angle and containment constraints."""


class SubproblemInfeasible(RuntimeError):
    """The expansion point violates its own convex surrogate constraints."""


class ConfigError(ValueError):
    def __init__(self, key: str, reason: str):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


class ValidationFailed(RuntimeError):
    pass
