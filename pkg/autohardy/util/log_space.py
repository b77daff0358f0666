import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import logsumexp


FLOAT_LOG_LIMIT = 700.0


@dataclass(frozen=True)
class LogMagnitude:
    """
    A positive real number stored through its natural logarithm.

    Radial quantities on trees grow or decay like q^n, so at deep radii they leave the range of a double. Operations
    that can hit this regime return a `LogMagnitude` instead of a float.

    Parameters
    ----------
    log
        The natural logarithm of the (positive) value.
    sign
        The sign of the value, +1 or -1.
    """

    log: float
    sign: int = 1

    def __float__(self) -> float:
        try:
            return self.sign * math.exp(self.log)
        except OverflowError:
            return self.sign * math.inf

    @property
    def value(self) -> float:
        return float(self)

    def __mul__(self, other: Union[float, "LogMagnitude"]) -> "LogMagnitude":
        if isinstance(other, LogMagnitude):
            return LogMagnitude(log=self.log + other.log, sign=self.sign * other.sign)
        if other == 0:
            raise ValueError("Cannot represent zero as a LogMagnitude.")
        return LogMagnitude(
            log=self.log + math.log(abs(other)), sign=self.sign * (1 if other > 0 else -1)
        )

    __rmul__ = __mul__


Real = Union[float, LogMagnitude]


def as_log(value: Real) -> float:
    """
    The natural logarithm of the absolute value of a float or `LogMagnitude`.
    """
    if isinstance(value, LogMagnitude):
        return value.log
    return math.log(abs(value))


def maybe_exp(log_value: float, threshold: float, sign: int = 1) -> Real:
    """
    Return exp(log_value) as a float when |log_value| is within `threshold`, otherwise as a `LogMagnitude`.
    """
    if abs(log_value) <= threshold:
        return sign * math.exp(log_value)
    return LogMagnitude(log=log_value, sign=sign)


def log_sum_exp(log_terms: np.ndarray) -> float:
    """
    The logarithm of sum(exp(log_terms)). Terms of -inf (zeros) are allowed.
    """
    log_terms = np.asarray(log_terms, dtype=float)

    if log_terms.size == 0 or np.all(np.isneginf(log_terms)):
        return -math.inf

    return float(logsumexp(log_terms))
