"""The spatially symmetric quartic potential ``V = (X1**2 + alpha X2) / 2``.

Odd powers of ``x`` enter through ``|x|`` so that ``V(x) == V(-x)`` exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .group import BetaVector

__all__ = [
    "PotentialParams",
    "MonomialForm",
    "WellClass",
    "WellReport",
    "eval_potential",
    "to_monomial",
    "slope_at_zero_plus",
    "classify_well",
]


@dataclass(frozen=True)
class PotentialParams:
    alpha: float
    beta: BetaVector

    def __post_init__(self):
        if not self.beta.beta3 > 0:
            raise ValueError(f"beta3 must be positive, got {self.beta.beta3!r}")


@dataclass(frozen=True)
class MonomialForm:
    """``V(x) = V0 + A|x| + B x**2 + C |x|**3 + D x**4``."""

    V0: float
    A: float
    B: float
    C: float
    D: float

    def __call__(self, x):
        ax = np.abs(x)
        return self.V0 + ax * (self.A + ax * (self.B + ax * (self.C + ax * self.D)))


def eval_potential(p: PotentialParams, x):
    b1, b2, b3 = p.beta.as_tuple()
    ax = np.abs(x)
    x1 = b1 + ax * (b2 + 0.5 * b3 * ax)
    return 0.5 * (x1 * x1 + p.alpha * (b2 + b3 * ax))


def to_monomial(p: PotentialParams) -> MonomialForm:
    b1, b2, b3 = p.beta.as_tuple()
    a = p.alpha
    return MonomialForm(
        V0=0.5 * (b1 * b1 + a * b2),
        A=b1 * b2 + 0.5 * a * b3,
        B=0.5 * (b2 * b2 + b1 * b3),
        C=0.5 * b2 * b3,
        D=b3 * b3 / 8.0,
    )


def slope_at_zero_plus(p: PotentialParams) -> float:
    """``dV/dx`` as ``x -> 0+``; the ``0-`` slope is its negative."""
    b1, b2, b3 = p.beta.as_tuple()
    return b1 * b2 + 0.5 * p.alpha * b3


class WellClass(enum.Enum):
    SINGLE = "SingleWell"
    DOUBLE = "DoubleWell"
    MULTI = "MultiWell"


@dataclass(frozen=True)
class WellReport:
    kind: WellClass
    minima: tuple[float, ...]
    plateau: bool = False


def classify_well(p: PotentialParams, scan_range: float, points: int = 10_001) -> WellReport:
    """Count strict local minima of ``V`` on ``[-scan_range, scan_range]``.

    The grid has an odd number of points so that ``x = 0`` (where the
    potential may have a kink) is sampled. Each grid minimum is refined by
    bounded minimization on its two neighbouring cells.
    """
    if not scan_range > 0:
        raise ValueError("scan_range must be positive")
    if points % 2 == 0:
        points += 1
    x = np.linspace(-scan_range, scan_range, points)
    v = eval_potential(p, x)
    dv = np.diff(v)
    plateau = bool(np.any(dv == 0.0))
    left, right = dv[:-1], dv[1:]
    idx = np.nonzero((left < 0) & (right > 0))[0] + 1
    if plateau:
        return WellReport(WellClass.MULTI, tuple(float(x[i]) for i in idx), plateau=True)
    minima = tuple(float(_refine_min(p, x[i - 1], x[i + 1])) for i in idx)
    n = len(minima)
    if n == 1:
        kind = WellClass.SINGLE
    elif n == 2:
        kind = WellClass.DOUBLE
    else:
        kind = WellClass.MULTI
    return WellReport(kind, minima)


def _refine_min(p: PotentialParams, lo: float, hi: float) -> float:
    from scipy.optimize import minimize_scalar

    res = minimize_scalar(lambda t: float(eval_potential(p, t)), bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-12})
    return res.x
