"""Generators of the quartic Lie algebra and the unitary irrep.

Generators act on polynomials with exact Gaussian-rational coefficients, so
commutation relations and scaling identities can be checked with no rounding.
Float labels are converted with ``Fraction(float)``, which is exact.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .group import BetaVector, GroupElement

__all__ = [
    "GeneratorId",
    "PolyFunction",
    "WEIGHTS",
    "apply_generator",
    "commutator",
    "commutator_defect",
    "expected_commutator",
    "irrep_apply",
    "scale_conjugate_defect",
]

Number = int | float | Fraction


class GeneratorId(enum.Enum):
    X0 = 0
    X1 = 1
    X2 = 2
    X3 = 3


# scaling weights: S_t X_k(beta) S_t^-1 = t**-w_k X_k(beta_t)
WEIGHTS = {GeneratorId.X0: 1, GeneratorId.X1: 1, GeneratorId.X2: 2, GeneratorId.X3: 3}


def _q(x: Number) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class PolyFunction:
    """``f(x) = sum_k (re[k] + i im[k]) x**k`` with exact rational parts."""

    re: tuple[Fraction, ...]
    im: tuple[Fraction, ...]

    def __post_init__(self):
        n = max(len(self.re), len(self.im))
        re = tuple(_q(c) for c in self.re) + (Fraction(0),) * (n - len(self.re))
        im = tuple(_q(c) for c in self.im) + (Fraction(0),) * (n - len(self.im))
        while n > 0 and re[n - 1] == 0 and im[n - 1] == 0:
            n -= 1
        object.__setattr__(self, "re", re[:n])
        object.__setattr__(self, "im", im[:n])

    @classmethod
    def real(cls, coeffs: Iterable[Number]) -> "PolyFunction":
        return cls(tuple(coeffs), ())

    @classmethod
    def monomial(cls, k: int) -> "PolyFunction":
        return cls((0,) * k + (1,), ())

    @classmethod
    def zero(cls) -> "PolyFunction":
        return cls((), ())

    @property
    def degree(self) -> int:
        return len(self.re) - 1

    def is_zero(self) -> bool:
        return len(self.re) == 0

    def __add__(self, other: "PolyFunction") -> "PolyFunction":
        n = max(len(self.re), len(other.re))
        re = [Fraction(0)] * n
        im = [Fraction(0)] * n
        for k, (r, i) in enumerate(zip(self.re, self.im)):
            re[k] += r
            im[k] += i
        for k, (r, i) in enumerate(zip(other.re, other.im)):
            re[k] += r
            im[k] += i
        return PolyFunction(tuple(re), tuple(im))

    def __neg__(self) -> "PolyFunction":
        return PolyFunction(tuple(-r for r in self.re), tuple(-i for i in self.im))

    def __sub__(self, other: "PolyFunction") -> "PolyFunction":
        return self + (-other)

    def scale(self, re: Number = 0, im: Number = 0) -> "PolyFunction":
        """Multiply by the complex constant ``re + i im``."""
        s, t = _q(re), _q(im)
        return PolyFunction(
            tuple(s * r - t * i for r, i in zip(self.re, self.im)),
            tuple(s * i + t * r for r, i in zip(self.re, self.im)),
        )

    def times_i(self) -> "PolyFunction":
        return PolyFunction(tuple(-i for i in self.im), self.re)

    def mul_real(self, p: Sequence[Number]) -> "PolyFunction":
        """Multiply by the real polynomial with coefficients ``p``."""
        p = [_q(c) for c in p]
        if not p or self.is_zero():
            return PolyFunction.zero()
        n = len(self.re) + len(p) - 1
        re = [Fraction(0)] * n
        im = [Fraction(0)] * n
        for j, pj in enumerate(p):
            if pj == 0:
                continue
            for k, (r, i) in enumerate(zip(self.re, self.im)):
                re[j + k] += pj * r
                im[j + k] += pj * i
        return PolyFunction(tuple(re), tuple(im))

    def derivative(self) -> "PolyFunction":
        return PolyFunction(
            tuple(k * r for k, r in enumerate(self.re) if k),
            tuple(k * i for k, i in enumerate(self.im) if k),
        )

    def dilate(self, t: Number) -> "PolyFunction":
        """``x -> f(t x)``."""
        t = _q(t)
        return PolyFunction(
            tuple(r * t**k for k, r in enumerate(self.re)),
            tuple(i * t**k for k, i in enumerate(self.im)),
        )

    def max_abs(self) -> float:
        if self.is_zero():
            return 0.0
        return max(abs(complex(float(r), float(i))) for r, i in zip(self.re, self.im))

    def __call__(self, x: complex) -> complex:
        acc = 0j
        for r, i in zip(reversed(self.re), reversed(self.im)):
            acc = acc * x + complex(float(r), float(i))
        return acc


def _multiplier(gid: GeneratorId, beta: BetaVector) -> list[Fraction]:
    b1, b2, b3 = (_q(b) for b in beta.as_tuple())
    if gid is GeneratorId.X1:
        return [b1, b2, b3 / 2]
    if gid is GeneratorId.X2:
        return [b2, b3]
    if gid is GeneratorId.X3:
        return [b3]
    raise ValueError(gid)


def apply_generator(gid: GeneratorId, beta: BetaVector, f: PolyFunction) -> PolyFunction:
    if gid is GeneratorId.X0:
        return f.derivative().times_i()
    return f.mul_real(_multiplier(gid, beta))


def commutator(a: GeneratorId, b: GeneratorId, beta: BetaVector, f: PolyFunction) -> PolyFunction:
    return apply_generator(a, beta, apply_generator(b, beta, f)) - apply_generator(
        b, beta, apply_generator(a, beta, f)
    )


def expected_commutator(
    a: GeneratorId, b: GeneratorId, beta: BetaVector, f: PolyFunction
) -> PolyFunction:
    """Right-hand side of the algebra relations applied to ``f``."""
    X0, X1, X2, X3 = GeneratorId
    pair = (a, b)
    sign = 1
    if pair in ((X1, X0), (X2, X0)):
        pair, sign = (b, a), -1
    if pair == (X0, X1):
        out = apply_generator(X2, beta, f).times_i()
    elif pair == (X0, X2):
        out = apply_generator(X3, beta, f).times_i()
    else:
        return PolyFunction.zero()
    return out if sign > 0 else -out


def commutator_defect(a: GeneratorId, b: GeneratorId, beta: BetaVector, degree: int = 10) -> float:
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    worst = 0.0
    for k in range(degree + 1):
        f = PolyFunction.monomial(k)
        d = commutator(a, b, beta, f) - expected_commutator(a, b, beta, f)
        worst = max(worst, d.max_abs())
    return worst


def scale_conjugate_defect(gid: GeneratorId, beta: BetaVector, t: Number, degree: int = 10) -> float:
    """Max coefficient deviation of ``S_t X(beta) S_t^-1 - t**-w X(beta_t)`` on monomials.

    ``(S_t f)(x) = sqrt(t) f(t x)``; the sqrt(t) factors cancel in the
    conjugation, so everything stays rational for rational ``t``.
    """
    t = _q(t)
    if not t > 0:
        raise ValueError(f"scale factor must be positive, got {t!r}")
    b1, b2, b3 = (_q(b) for b in beta.as_tuple())
    beta_t = BetaVector(t * b1, t * t * b2, t**3 * b3)  # exact, unlike scale_beta
    w = WEIGHTS[gid]
    worst = 0.0
    for k in range(degree + 1):
        f = PolyFunction.monomial(k)
        lhs = apply_generator(gid, beta, f.dilate(1 / t)).dilate(t)
        rhs = apply_generator(gid, beta_t, f).scale(t ** (-w))
        worst = max(worst, (lhs - rhs).max_abs())
    return worst


def irrep_apply(
    g: GroupElement, beta: BetaVector, phi: Callable[[float], complex], x: float
) -> complex:
    a, b1, b2, b3 = g.as_tuple()
    B1, B2, B3 = beta.as_tuple()
    phase = B1 * b1 + B2 * (b2 + b1 * x) + B3 * (b3 + b2 * x + 0.5 * b1 * x * x)
    return cmath.exp(-1j * phase) * phi(x + a)
