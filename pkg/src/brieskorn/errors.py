"""Exception hierarchy. CLI exit codes are attached to each class."""

from __future__ import annotations


class BrieskornError(Exception):
    exit_code = 1


class ValidationError(BrieskornError, ValueError):
    exit_code = 2


class MissingBettiError(BrieskornError, LookupError):
    exit_code = 3

    def __init__(self, sub_tuple):
        self.sub_tuple = tuple(sub_tuple)
        key = ",".join(str(a) for a in self.sub_tuple)
        super().__init__(
            f"no GF(2) Betti data for sub-tuple ({key}); "
            f'supply a Betti file containing {{"{key}": [b_0, ..., b_dim]}}'
        )

    @property
    def key(self) -> str:
        return ",".join(str(a) for a in self.sub_tuple)


class UnknownExampleError(BrieskornError, KeyError):
    exit_code = 4


class NotConvergedError(BrieskornError):
    exit_code = 5

    def __init__(self, message: str, degrees=()):
        self.degrees = list(degrees)
        super().__init__(message)


class CoverageError(BrieskornError):
    """A computation was asked for data outside what was enumerated."""

    exit_code = 2


class ModeError(BrieskornError):
    """Finite per-degree dimensions requested for a zero-shift (Laurent series) module."""

    exit_code = 2


class DifferentialUnknownError(BrieskornError):
    exit_code = 2

    def __init__(self, witnesses):
        self.witnesses = list(witnesses)
        super().__init__(
            f"differential not shown to vanish: {len(self.witnesses)} candidate pair(s); "
            "pass an external-vanishing override to proceed"
        )


class InhomogeneousRelationError(ValidationError):
    pass
