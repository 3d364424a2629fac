import enum


class Normalization(enum.Enum):
    RAW = "raw"
    FIRST = "first"
    SECOND = "second"


class FunctionKind(enum.Enum):
    RAW = "raw"
    NORM_FIRST = "norm-first"
    NORM_FIRST_DERIV = "norm-first-deriv"
    NORM_SECOND = "norm-second"
    NORM_SECOND_DERIV = "norm-second-deriv"
    ALEXANDER_FIRST = "alexander-first"

    @property
    def normalization(self) -> Normalization:
        if self is FunctionKind.RAW:
            return Normalization.RAW
        if self in (FunctionKind.NORM_SECOND, FunctionKind.NORM_SECOND_DERIV):
            return Normalization.SECOND
        return Normalization.FIRST

    @property
    def is_derivative(self) -> bool:
        return self in (FunctionKind.NORM_FIRST_DERIV, FunctionKind.NORM_SECOND_DERIV)

    @property
    def head_power(self) -> int:
        """Power of z carried by the leading term (z for values, 1 for derivatives)."""
        if self is FunctionKind.RAW or self.is_derivative:
            return 0
        return 1
