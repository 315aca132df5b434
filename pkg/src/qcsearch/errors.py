"""Exception types shared across the package."""


class AdmissibilityError(ValueError):
    """A promise-model marked count exceeds the admissible bound."""


class InvariantError(RuntimeError):
    """An internal invariant broke (norm drift, exhausted scan, ...).

    Surfaces as exit code 3 at the CLI, as opposed to the exit code 2
    used for bad arguments and configuration.
    """
