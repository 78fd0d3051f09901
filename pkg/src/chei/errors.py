"""Exception types shared across the package."""


class NonHermitianInput(ValueError):
    """Spectral coefficients are not conjugate-symmetric within tolerance."""


class NonFiniteState(RuntimeError):
    """A time step produced a non-finite coefficient (blow-up).

    The failing step index is carried so drivers can report where the
    trajectory died and still flush partial results.
    """

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or f"non-finite state at step {step}")


class MalformedFile(ValueError):
    """A snapshot or config file does not follow its documented format."""


class GridMismatch(ValueError):
    """A field's grid is incompatible with the requested grid."""


class ConfigError(ValueError):
    """Invalid or unknown configuration key/value."""
