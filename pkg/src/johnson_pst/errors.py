"""Exception types shared across the package."""

from __future__ import annotations


class CapacityError(Exception):
    """A requested computation exceeds its configured size cap."""

    def __init__(self, message: str, *, needed: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.cap = cap


class ObstructionError(Exception):
    """No weighting can work: the coefficient support is provably too short.

    Raised when m < 2**floor(log2(k)): every eigenvalue difference at
    x = 2**floor(log2(k)) - 1 is then even, so no transfer time exists.
    """

    def __init__(self, k: int, m: int):
        self.k = k
        self.m = m
        self.required = 1 << (k.bit_length() - 1)
        super().__init__(
            f"perfect state transfer is impossible for k={k} with m={m}: "
            f"m must be at least {self.required}"
        )


class ParityPatternError(Exception):
    """Coefficient parities violate the power-of-two pattern."""

    def __init__(self, offending: tuple[int, ...]):
        self.offending = tuple(offending)
        super().__init__(
            "coefficients must be odd exactly at power-of-two indices; "
            f"violated at j in {list(self.offending)}"
        )


class NumericFailure(Exception):
    """The floating-point eigendecomposition failed its residual check."""

    def __init__(self, message: str, *, residual: float | None = None):
        super().__init__(message)
        self.residual = residual
