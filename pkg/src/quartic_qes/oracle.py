"""Independent finite-difference spectrum of ``H = -1/2 d^2/dx^2 + V(x)``.

The default mode maps the real line to ``(-pi/2, pi/2)`` with ``x = tan y``.
With ``w = cos(y)**2`` the kinetic term is ``-w d/dy (w d/dy)``; discretizing
the flux form on half points and symmetrizing with ``sqrt(w)`` gives a
symmetric tridiagonal matrix for ``2H`` with Dirichlet ends. Rows where
``2V`` exceeds ``potential_cap`` are dropped (Dirichlet there): those
entries grow like ``x**6`` towards the ends, carry no eigenfunction weight,
and would otherwise cost accuracy in the eigensolver.

A uniform large-box grid in ``x`` is available as a cross-check mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .potential import PotentialParams, eval_potential

__all__ = [
    "OracleConfig",
    "Discretization",
    "SpectrumResult",
    "NoMatch",
    "AmbiguousMatch",
    "NotConverged",
    "discretize_hamiltonian",
    "discretize_box",
    "lowest_eigenvalues",
    "richardson",
    "rank_of_energy",
    "eigenvector_nodes",
    "overlap_with",
]

Potential = Union[PotentialParams, Callable[[np.ndarray], np.ndarray]]


class NoMatch(LookupError):
    pass


class AmbiguousMatch(LookupError):
    pass


class NotConverged(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    grid_points: int = 2001
    domain: tuple[float, float] = (-math.pi / 2, math.pi / 2)
    eigen_count: int = 3
    refinement_levels: int = 3
    potential_cap: float = 1e6
    mode: str = "arctan"  # or "box"
    box_margin: float = 50.0
    convergence_tol: float = 1e-3

    def __post_init__(self):
        if self.grid_points < 200:
            raise ValueError("grid_points must be at least 200")
        if not self.domain[1] > self.domain[0]:
            raise ValueError("domain must satisfy y_max > y_min")
        if self.eigen_count < 1 or self.refinement_levels < 1:
            raise ValueError("eigen_count and refinement_levels must be positive")
        if self.mode not in ("arctan", "box"):
            raise ValueError(f"unknown oracle mode {self.mode!r}")

    def level_points(self) -> list[int]:
        """Grid sizes with the spacing halved at each level."""
        return [(self.grid_points - 1) * 2**k + 1 for k in range(self.refinement_levels)]


def _potential_fn(p: Potential) -> Callable[[np.ndarray], np.ndarray]:
    if isinstance(p, PotentialParams):
        return lambda x: eval_potential(p, x)
    return p


@dataclass(frozen=True)
class Discretization:
    """Symmetric tridiagonal ``2H`` on the kept interior nodes."""

    diag: np.ndarray
    off: np.ndarray
    x: np.ndarray
    y: np.ndarray
    sqrt_w: np.ndarray
    h: float

    def toarray(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)

    def to_psi(self, u: np.ndarray) -> np.ndarray:
        """Map a Euclidean-normalized eigenvector to ``psi(x)`` with ``int psi**2 dx = 1``."""
        return u * self.sqrt_w / math.sqrt(self.h)


def discretize_hamiltonian(p: Potential, cfg: OracleConfig, n: int | None = None) -> Discretization:
    n = cfg.grid_points if n is None else n
    y0, y1 = cfg.domain
    h = (y1 - y0) / (n - 1)
    y = y0 + h * np.arange(n)
    yi = y[1:-1]
    w = np.cos(yi) ** 2
    wh = np.cos(y[:-1] + 0.5 * h) ** 2
    x = np.tan(yi)
    pot = 2.0 * _potential_fn(p)(x)
    diag = w * (wh[1:] + wh[:-1]) / (h * h) + pot
    off = -np.sqrt(w[:-1] * w[1:]) * wh[1:-1] / (h * h)
    keep = np.nonzero(pot < cfg.potential_cap)[0]
    lo, hi = keep[0], keep[-1]
    return Discretization(diag[lo : hi + 1], off[lo:hi], x[lo : hi + 1], yi[lo : hi + 1], np.sqrt(w[lo : hi + 1]), h)


def discretize_box(p: Potential, half_width: float, n: int) -> Discretization:
    """Second-order differences on a uniform grid over ``[-L, L]``, Dirichlet ends."""
    x_all = np.linspace(-half_width, half_width, n)
    h = x_all[1] - x_all[0]
    x = x_all[1:-1]
    pot = 2.0 * _potential_fn(p)(x)
    diag = 2.0 / (h * h) + pot
    off = np.full(x.size - 1, -1.0 / (h * h))
    return Discretization(diag, off, x, x, np.ones_like(x), h)


def _box_half_width(fn, e_ref: float, margin: float) -> float:
    # smallest L beyond which the potential stays above e_ref + margin on both sides
    xs = np.linspace(0.0, 200.0, 200_001)
    bad = np.nonzero(np.minimum(fn(xs), fn(-xs)) <= e_ref + margin)[0]
    if bad.size == 0:
        return 1.0
    return float(xs[min(bad[-1] + 1, xs.size - 1)])


def richardson(values: np.ndarray, ratio: float = 2.0, order: int = 2) -> np.ndarray:
    """Richardson table along axis 0 for errors ``h**order, h**(2 order), ...``.

    ``values[k]`` was computed with step ``h / ratio**k``.
    """
    level = np.asarray(values, dtype=float)
    m = 1
    while level.shape[0] > 1:
        f = ratio ** (order * m)
        level = (f * level[1:] - level[:-1]) / (f - 1.0)
        m += 1
    return level[0]


@dataclass
class SpectrumResult:
    energies: np.ndarray
    level_points: list[int]
    level_energies: np.ndarray
    extrapolated: np.ndarray
    level_changes: np.ndarray
    precision: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    grid: Discretization = field(repr=False)
    converged: bool = True
    mode: str = "arctan"

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "energies": [float(e) for e in self.energies],
            "levels": [
                {"grid_points": int(n), "energies": [float(e) for e in row]}
                for n, row in zip(self.level_points, self.level_energies)
            ],
            "level_changes": [[float(v) for v in row] for row in self.level_changes],
            "precision": [float(v) for v in self.precision],
            "converged": bool(self.converged),
        }


def _lowest(d: Discretization, k: int, vectors: bool):
    k = min(k, d.diag.size)
    if vectors:
        ev, vec = eigh_tridiagonal(d.diag, d.off, select="i", select_range=(0, k - 1))
        return ev / 2.0, vec
    ev = eigh_tridiagonal(d.diag, d.off, eigvals_only=True, select="i", select_range=(0, k - 1))
    return ev / 2.0, None


def lowest_eigenvalues(p: Potential, cfg: OracleConfig | None = None) -> SpectrumResult:
    """Lowest ``cfg.eigen_count`` levels at every refinement plus their Richardson limit.

    ``energies`` holds the extrapolated values; eigenvectors come from the
    finest grid. ``converged`` is False when the last two levels differ by
    more than ``cfg.convergence_tol``.
    """
    cfg = cfg or OracleConfig()
    fn = _potential_fn(p)
    sizes = cfg.level_points()
    if cfg.mode == "box":
        coarse = lowest_eigenvalues(fn, OracleConfig(grid_points=401, eigen_count=cfg.eigen_count,
                                                     refinement_levels=1, potential_cap=cfg.potential_cap))
        half = _box_half_width(fn, float(np.max(coarse.energies)), cfg.box_margin)
        build = lambda n: discretize_box(fn, half, n)  # noqa: E731
    else:
        build = lambda n: discretize_hamiltonian(fn, cfg, n)  # noqa: E731

    rows = []
    vec = grid = None
    for i, n in enumerate(sizes):
        d = build(n)
        last = i == len(sizes) - 1
        ev, v = _lowest(d, cfg.eigen_count, vectors=last)
        rows.append(ev)
        if last:
            vec, grid = v, d
    levels = np.array(rows)
    if len(sizes) > 1:
        extrap = richardson(levels)
        changes = np.abs(np.diff(levels, axis=0))
        first = richardson(levels[-2:])
        precision = np.abs(extrap - first) if len(sizes) > 2 else changes[-1] / 3.0
        converged = bool(np.all(changes[-1] <= cfg.convergence_tol))
    else:
        extrap = levels[0]
        changes = np.zeros((0, levels.shape[1]))
        precision = np.full(levels.shape[1], np.nan)
        converged = False
    return SpectrumResult(
        energies=extrap,
        level_points=sizes,
        level_energies=levels,
        extrapolated=extrap,
        level_changes=changes,
        precision=precision,
        eigenvectors=vec,
        grid=grid,
        converged=converged,
        mode=cfg.mode,
    )


def rank_of_energy(result: SpectrumResult, E: float, tol: float) -> int:
    if not tol > 0:
        raise ValueError("tol must be positive")
    hits = np.nonzero(np.abs(result.energies - E) <= tol)[0]
    if hits.size == 0:
        raise NoMatch(f"no level within {tol} of E={E}")
    if hits.size > 1:
        raise AmbiguousMatch(f"{hits.size} levels within {tol} of E={E}")
    return int(hits[0])


def eigenvector_nodes(result: SpectrumResult, k: int, rel_floor: float = 1e-6) -> int:
    """Sign changes of the k-th oracle eigenvector, ignoring entries below ``rel_floor`` of its peak."""
    psi = result.grid.to_psi(result.eigenvectors[:, k])
    big = np.abs(psi) > rel_floor * np.max(np.abs(psi))
    s = np.sign(psi[big])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def overlap_with(result: SpectrumResult, k: int, psi_fn: Callable[[np.ndarray], np.ndarray]) -> float:
    """``|<psi_oracle, psi>|`` after normalizing both on the oracle grid."""
    g = result.grid
    u = result.eigenvectors[:, k]
    ua = np.asarray(psi_fn(g.x), dtype=float) / g.sqrt_w
    ua = ua / np.linalg.norm(ua)
    return float(abs(np.dot(u, ua)))
