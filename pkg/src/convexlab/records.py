"""Result carriers for verified inequalities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class InequalityRecord:
    """One verified inequality instance: pass iff lhs >= rhs - tolerance."""

    name: str
    dim: int
    lhs: float
    rhs: float
    tolerance: float
    body: str = ""
    body2: str = ""
    seed: int | None = None
    resolution: int | None = None
    flags: tuple = ()

    @property
    def gap(self) -> float:
        return self.lhs - self.rhs

    @property
    def passed(self) -> bool:
        return (
            math.isfinite(self.lhs)
            and math.isfinite(self.rhs)
            and self.gap >= -self.tolerance
        )


@dataclass(frozen=True)
class ChainRecord:
    """The double inequality lower <= middle <= upper with its two pass flags."""

    name: str
    dim: int
    lower: float
    middle: float
    upper: float
    tolerance: float
    body: str = ""
    body2: str = ""
    seed: int | None = None
    resolution: int | None = None
    flags: tuple = ()

    @property
    def pass_lower(self) -> bool:
        return math.isfinite(self.lower) and math.isfinite(self.middle) and (
            self.middle - self.lower >= -self.tolerance
        )

    @property
    def pass_upper(self) -> bool:
        return math.isfinite(self.middle) and math.isfinite(self.upper) and (
            self.upper - self.middle >= -self.tolerance
        )

    @property
    def passed(self) -> bool:
        return self.pass_lower and self.pass_upper


def quadrature_tolerance(reference: float) -> float:
    """Default tolerance on quadrature paths: max(1e-3 * |reference|, 1e-6)."""
    return max(1e-3 * abs(reference), 1e-6)


EXACT_TOL = 1e-9
