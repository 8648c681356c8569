"""The two vector norms for which ergodicity coefficients have explicit forms."""

from __future__ import annotations

import enum
import math


class PNorm(enum.Enum):
    ONE = "1"
    INF = "inf"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, value) -> "PNorm":
        """Accept ``PNorm`` members, ``1``, ``"1"``, ``"inf"``, ``math.inf`` and friends."""
        if isinstance(value, cls):
            return value
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            if value == 1:
                return cls.ONE
            if math.isinf(value) and value > 0:
                return cls.INF
        if isinstance(value, str):
            key = value.strip().lower()
            if key in ("1", "one", "l1"):
                return cls.ONE
            if key in ("inf", "infinity", "oo", "linf", "max"):
                return cls.INF
        raise ValueError(f"unsupported norm selector {value!r}; use 1 or inf")


BOTH = (PNorm.ONE, PNorm.INF)
