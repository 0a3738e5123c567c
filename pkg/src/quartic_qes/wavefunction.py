"""Closed-form QES eigenfunctions.

``psi(x) = sign(x)**parity * p(beta2 + beta3|x|) * exp(-(beta1|x| + beta2 x**2/2 + beta3|x|**3/6))``
with ``p(u) = sum_n a_n u**n``. Derivatives are exact (product rule on the
polynomial-times-exponential form).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from . import kernels
from .group import BetaVector
from .potential import PotentialParams, eval_potential
from .qes import Parity, QESSolution

__all__ = [
    "WavefunctionSpec",
    "NodeReport",
    "find_nodes",
    "from_solution",
    "eval_psi",
    "psi_derivatives",
    "schrodinger_residual",
    "relative_residual",
    "count_nodes",
    "normalize_arctan",
    "normalized",
]


@dataclass(frozen=True)
class WavefunctionSpec:
    solution: QESSolution
    normalization: float = 1.0

    @property
    def beta(self) -> BetaVector:
        return self.solution.beta

    @property
    def parity(self) -> Parity:
        return self.solution.parity

    @property
    def energy(self) -> float:
        return self.solution.E

    @property
    def potential(self) -> PotentialParams:
        return PotentialParams(self.solution.alpha, self.beta)


def from_solution(sol: QESSolution) -> WavefunctionSpec:
    return WavefunctionSpec(sol)


def psi_derivatives(w: WavefunctionSpec, x):
    """``(psi, psi', psi'')`` including the normalization constant."""
    s = w.solution
    psi, d1, d2 = kernels.psi_derivs(s.coeffs, s.beta1, s.beta2, s.beta3, s.parity.odd, np.asarray(x, dtype=float))
    k = w.normalization
    return k * psi, k * d1, k * d2


def eval_psi(w: WavefunctionSpec, x):
    psi = psi_derivatives(w, x)[0]
    return psi if np.ndim(x) else float(psi)


def schrodinger_residual(w: WavefunctionSpec, x):
    """``|-psi'' + 2 V psi - 2 E psi|`` pointwise; undefined at the kink ``x = 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0.0):
        raise ValueError("residual is not defined at x = 0")
    psi, _, d2 = psi_derivatives(w, x)
    r = np.abs(-d2 + 2.0 * eval_potential(w.potential, x) * psi - 2.0 * w.energy * psi)
    return r if r.ndim else float(r)


def relative_residual(w: WavefunctionSpec, x) -> float:
    """Max residual over ``x`` divided by the largest of ``|psi''|``, ``|2 V psi|``, ``|2 E psi|``."""
    x = np.asarray(x, dtype=float)
    psi, _, d2 = psi_derivatives(w, x)
    v = eval_potential(w.potential, x)
    r = np.abs(-d2 + 2.0 * v * psi - 2.0 * w.energy * psi)
    scale = np.maximum.reduce([np.abs(d2), np.abs(2.0 * v * psi), np.abs(2.0 * w.energy * psi)])
    peak = max(float(np.max(scale)), np.finfo(float).tiny)
    return float(np.max(r) / peak)


@dataclass(frozen=True)
class NodeReport:
    nodes: int
    locations: tuple[float, ...] = ()
    touching: tuple[float, ...] = ()


def find_nodes(w: WavefunctionSpec, range: float = 20.0, samples: int = 4001) -> NodeReport:
    """Sign changes of ``psi`` on ``(-range, range)``.

    A run of exact zeros between samples of opposite sign is one crossing
    (this is how the odd node at the origin shows up when it is sampled);
    zeros flanked by equal signs are touching points, reported but not
    counted. Each bracket gets one bisection step to locate the node.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples")
    x = np.linspace(-range, range, samples)
    psi = np.asarray(eval_psi(w, x))
    nz = np.nonzero(psi != 0.0)[0]
    sgn = np.sign(psi[nz])
    nodes = []
    touching = []
    for i, j, si, sj in zip(nz[:-1], nz[1:], sgn[:-1], sgn[1:]):
        if si != sj:
            if j == i + 1:
                mid = 0.5 * (x[i] + x[j])
                fm = eval_psi(w, mid)
                nodes.append(0.5 * (mid + x[j]) if np.sign(fm) == si else 0.5 * (x[i] + mid))
            else:
                nodes.append(float(x[(i + j) // 2]))
        elif j > i + 1:
            touching.append(float(x[(i + j) // 2]))
    return NodeReport(len(nodes), tuple(float(v) for v in nodes), tuple(touching))


def count_nodes(w: WavefunctionSpec, range: float = 20.0, samples: int = 4001) -> int:
    return find_nodes(w, range, samples).nodes


def normalize_arctan(w: WavefunctionSpec, grid_points: int = 10_001) -> float:
    """``kappa`` with ``int_{-pi/2}^{pi/2} (kappa psi(tan y))**2 dy = 1`` (Simpson).

    ``kappa`` multiplies the raw closed form; ``w.normalization`` is ignored.
    """
    if grid_points < 100:
        raise ValueError("need at least 100 grid points")
    if grid_points % 2 == 0:
        grid_points += 1
    y = np.linspace(-np.pi / 2, np.pi / 2, grid_points)
    inner = y[1:-1]
    raw = dataclasses.replace(w, normalization=1.0)
    vals = np.zeros_like(y)
    vals[1:-1] = np.asarray(eval_psi(raw, np.tan(inner))) ** 2
    total = simpson(vals, x=y)
    if not total > 0:
        raise ValueError("wavefunction vanishes identically")
    return float(1.0 / np.sqrt(total))


def normalized(w: WavefunctionSpec, grid_points: int = 10_001) -> WavefunctionSpec:
    return dataclasses.replace(w, normalization=normalize_arctan(w, grid_points))
