"""The quartic nilpotent group as a value algebra.

Elements ``(a, b1, b2, b3)`` are realized by the 4x4 upper-triangular matrix

    [[1, a, a**2/2, b3],
     [0, 1, a,      b2],
     [0, 0, 1,      b1],
     [0, 0, 0,      1 ]]

and the group law is matrix multiplication read back into coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GroupElement",
    "BetaVector",
    "AutomorphismMatrix",
    "IDENTITY",
    "compose",
    "inverse",
    "embed_heisenberg",
    "heisenberg_compose",
    "casimir_c",
    "translate_beta",
    "scale_beta",
    "automorphism",
    "structure_defect",
]


@dataclass(frozen=True)
class GroupElement:
    a: float
    b1: float
    b2: float
    b3: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.a, self.b1, self.b2, self.b3)

    def matrix(self) -> np.ndarray:
        a = self.a
        return np.array(
            [
                [1.0, a, 0.5 * a * a, self.b3],
                [0.0, 1.0, a, self.b2],
                [0.0, 0.0, 1.0, self.b1],
                [0.0, 0.0, 0.0, 1.0],
            ]
        )

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "GroupElement":
        """Read coordinates back from a 4x4 representative (no shape check)."""
        return cls(float(m[0, 1]), float(m[2, 3]), float(m[1, 3]), float(m[0, 3]))

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)


IDENTITY = GroupElement(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class BetaVector:
    """Irrep labels. Physical potentials need ``beta3 > 0``."""

    beta1: float
    beta2: float
    beta3: float

    @property
    def c(self) -> float:
        return casimir_c(self)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.beta1, self.beta2, self.beta3)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    a = g.a
    return GroupElement(
        g.a + h.a,
        g.b1 + h.b1,
        g.b2 + h.b2 + a * h.b1,
        # a**2/2, not a/2: the matrix product fixes the coefficient
        g.b3 + h.b3 + a * h.b2 + 0.5 * a * a * h.b1,
    )


def inverse(g: GroupElement) -> GroupElement:
    a = g.a
    return GroupElement(
        -a,
        -g.b1,
        -g.b2 + a * g.b1,
        -g.b3 + a * g.b2 - 0.5 * a * a * g.b1,
    )


def embed_heisenberg(a: float, b1h: float, b2h: float) -> GroupElement:
    """Heisenberg element ``(a, b1h, b2h)`` as the quartic element ``(a, 0, b1h, b2h)``."""
    return GroupElement(a, 0.0, b1h, b2h)


def heisenberg_compose(
    x: tuple[float, float, float], y: tuple[float, float, float]
) -> tuple[float, float, float]:
    """Heisenberg law ``(a,b1,b2)(a',b1',b2') = (a+a', b1+b1', b2+b2'+a b1')``."""
    a, b1, b2 = x
    ap, b1p, b2p = y
    return (a + ap, b1 + b1p, b2 + b2p + a * b1p)


def casimir_c(beta: BetaVector) -> float:
    return 2.0 * beta.beta1 * beta.beta3 - beta.beta2 * beta.beta2


def translate_beta(beta: BetaVector, a: float) -> BetaVector:
    """Labels of the equivalent irrep obtained by conjugating with ``(a, 0, 0, 0)``."""
    b1, b2, b3 = beta.as_tuple()
    return BetaVector(b1 + a * b2 + 0.5 * a * a * b3, b2 + a * b3, b3)


def scale_beta(beta: BetaVector, t: float) -> BetaVector:
    if not t > 0:
        raise ValueError(f"scale factor must be positive, got {t!r}")
    return BetaVector(t * beta.beta1, t * t * beta.beta2, t**3 * beta.beta3)


# [X_i, X_j] = i * STRUCTURE[i, j, k] X_k
STRUCTURE = np.zeros((4, 4, 4))
STRUCTURE[0, 1, 2], STRUCTURE[1, 0, 2] = 1.0, -1.0
STRUCTURE[0, 2, 3], STRUCTURE[2, 0, 3] = 1.0, -1.0


@dataclass(frozen=True)
class AutomorphismMatrix:
    """Lie algebra automorphism ``X_i -> sum_j g[i, j] X_j``."""

    g: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        if g.shape != (4, 4):
            raise ValueError(f"automorphism matrix must be 4x4, got {g.shape}")
        object.__setattr__(self, "g", g)

    def shape_defect(self) -> float:
        """Deviation from the constrained upper-triangular form."""
        g = self.g
        g00, g11, g12 = g[0, 0], g[1, 1], g[1, 2]
        expected = np.array(
            [
                [g00, g[0, 1], g[0, 2], g[0, 3]],
                [0.0, g11, g12, g[1, 3]],
                [0.0, 0.0, g00 * g11, g00 * g12],
                [0.0, 0.0, 0.0, g00 * g00 * g11],
            ]
        )
        return float(np.max(np.abs(g - expected)))

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        """Image of the Lie algebra element ``sum_i coeffs[i] X_i``."""
        return np.asarray(coeffs, dtype=float) @ self.g


def automorphism(
    g00: float,
    g01: float = 0.0,
    g02: float = 0.0,
    g03: float = 0.0,
    g11: float = 1.0,
    g12: float = 0.0,
    g13: float = 0.0,
) -> AutomorphismMatrix:
    if g00 == 0 or g11 == 0:
        raise ValueError("g00 and g11 must be nonzero for an invertible map")
    g = np.array(
        [
            [g00, g01, g02, g03],
            [0.0, g11, g12, g13],
            [0.0, 0.0, g00 * g11, g00 * g12],
            [0.0, 0.0, 0.0, g00 * g00 * g11],
        ]
    )
    return AutomorphismMatrix(g)


def structure_defect(aut: AutomorphismMatrix) -> float:
    """Max violation of ``[a(X_i), a(X_j)] = a([X_i, X_j])`` over all pairs."""
    g = aut.g
    # bracket of images: g_ia g_jb f_ab^k ; image of bracket: f_ij^m g_mk
    lhs = np.einsum("ia,jb,abk->ijk", g, g, STRUCTURE)
    rhs = np.einsum("ijm,mk->ijk", STRUCTURE, g)
    return float(np.max(np.abs(lhs - rhs)))


def is_close(g: GroupElement, h: GroupElement, tol: float = 1e-12) -> bool:
    return all(math.isclose(x, y, rel_tol=0.0, abs_tol=tol) for x, y in zip(g.as_tuple(), h.as_tuple()))
