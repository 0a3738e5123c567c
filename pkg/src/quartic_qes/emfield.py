"""Charged particle in the plane: fields of the reducible representation and mode synthesis.

In the gauge ``A = (0, A_y(x))`` the operator

    2H = -d_x**2 + (-i d_y + A_y(x))**2 + Phi(x)

with ``A_y = beta2 x + beta3 x**2 / 2`` and ``Phi = alpha (beta2 + beta3 x)``
is translation invariant in ``y``. A plane wave ``exp(i beta1 y) g(x)`` sees
the 1D Hamiltonian with labels ``(beta1, beta2, beta3)``. The default
``symmetric=True`` uses ``|x|`` in place of ``x`` so that the per-mode
operator is exactly the parity-symmetric potential the QES solutions solve.

Along a QES family ``beta2 = beta2(beta1)`` the energy also moves with
``beta1``, so a superposition of modes is not a 2D eigenfunction. Synthesis
therefore certifies each mode separately and reports the energy spread.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .qes import (
    NoRealSolution,
    Parity,
    QESSolution,
    alpha_for,
    build_matrix,
    closed_form_n1,
    energy_roots,
    make_solution,
)
from .wavefunction import WavefunctionSpec, eval_psi, relative_residual

__all__ = [
    "EMFieldSpec",
    "field_components",
    "reducible_hamiltonian_apply",
    "InvalidMode",
    "SynthesisSpec",
    "SynthesisResult",
    "synthesize_psi",
    "trapezoid_weights",
    "n1_even_family",
    "grid_csv",
    "metadata",
    "write_outputs",
]

MODE_TOL = 1e-8


@dataclass(frozen=True)
class EMFieldSpec:
    alpha: float
    beta2: float
    beta3: float


def field_components(spec: EMFieldSpec, x):
    """``(Phi, A_y, E_x, B_z)`` at ``x``: ``E_x = beta3`` is constant, ``B_z = beta2 + beta3 x``."""
    x = np.asarray(x, dtype=float)
    a_y = spec.beta2 + spec.beta3 * x
    phi = spec.alpha * a_y
    e_x = np.full_like(x, spec.beta3)
    b_z = spec.beta2 + spec.beta3 * x
    if x.ndim == 0:
        return float(phi), float(a_y), float(e_x), float(b_z)
    return phi, a_y, e_x, b_z


def _uniform_step(v: np.ndarray, name: str) -> float:
    d = np.diff(v)
    if v.ndim != 1 or v.size < 3 or not np.allclose(d, d[0], rtol=1e-9, atol=0.0) or d[0] <= 0:
        raise ValueError(f"{name} must be a uniform increasing 1D grid with at least 3 points")
    return float(d[0])


def reducible_hamiltonian_apply(
    spec: EMFieldSpec,
    f: np.ndarray,
    x: np.ndarray,
    y: np.ndarray,
    *,
    symmetric: bool = True,
    periodic_y: bool = True,
) -> np.ndarray:
    """Apply ``2H`` to ``f[j, i] = f(x[i], y[j])`` with second-order differences.

    Outside the x-grid ``f`` is taken as zero. In ``y`` the grid is periodic
    (the point after the last one is ``y[0]``) unless ``periodic_y`` is False,
    in which case ``f`` vanishes outside the y-grid too.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    f = np.asarray(f, dtype=complex)
    if f.shape != (y.size, x.size):
        raise ValueError(f"grid mismatch: f has shape {f.shape}, expected {(y.size, x.size)}")
    hx = _uniform_step(x, "x")
    hy = _uniform_step(y, "y")

    xs = np.abs(x) if symmetric else x
    a_y = spec.beta2 * xs + 0.5 * spec.beta3 * x * x
    phi = spec.alpha * (spec.beta2 + spec.beta3 * xs)

    fp = np.pad(f, ((1, 1), (1, 1)))
    if periodic_y:
        fp[0, 1:-1] = f[-1]
        fp[-1, 1:-1] = f[0]
    c = fp[1:-1, 1:-1]
    d2x = (fp[1:-1, 2:] - 2.0 * c + fp[1:-1, :-2]) / (hx * hx)
    d1y = (fp[2:, 1:-1] - fp[:-2, 1:-1]) / (2.0 * hy)
    d2y = (fp[2:, 1:-1] - 2.0 * c + fp[:-2, 1:-1]) / (hy * hy)
    # (-i d_y + A)^2 f = -f_yy - 2 i A f_y + A^2 f
    return -d2x - d2y - 2j * a_y * d1y + (a_y * a_y + phi) * f


class InvalidMode(ValueError):
    def __init__(self, beta1: float, reason: str):
        super().__init__(f"beta1={beta1!r}: {reason}")
        self.beta1 = beta1
        self.reason = reason


def trapezoid_weights(beta1s: Sequence[float]) -> np.ndarray:
    """Trapezoid weights over the samples including the ``1/sqrt(2 pi)`` prefactor.

    A single sample gets weight 1 (degenerate quadrature).
    """
    b = np.asarray(beta1s, dtype=float)
    if b.size == 1:
        return np.ones(1)
    if np.any(np.diff(b) <= 0):
        raise ValueError("beta1 samples must be strictly increasing")
    w = np.zeros_like(b)
    h = np.diff(b)
    w[:-1] += 0.5 * h
    w[1:] += 0.5 * h
    return w / math.sqrt(2.0 * math.pi)


def n1_even_family(beta3: float) -> Callable[[float], float]:
    """``beta1 -> beta2`` along the N = 1 even closed-form family."""
    return lambda b1: closed_form_n1(Parity.EVEN, b1, beta3)[1]


@dataclass(frozen=True)
class SynthesisSpec:
    """Inputs for the quadrature over ``beta1``.

    ``energy_of_beta1`` is optional; without it each mode's energy is the
    unique characteristic root that also satisfies the matching condition.
    ``energy_target``/``energy_window`` keep only samples with
    ``|E(beta1) - E*| <= window`` (their weights are kept as given).
    ``conjugate_symmetric`` adds for every mode its complex conjugate with
    the weight split in half, so the sum is ``sum w psi cos(beta1 y)``.
    """

    N: int
    parity: Parity
    beta3: float
    beta1_samples: tuple[float, ...]
    weights: tuple[float, ...]
    beta2_of_beta1: Callable[[float], float]
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    energy_of_beta1: Callable[[float], float] | None = None
    conjugate_symmetric: bool = False
    energy_target: float | None = None
    energy_window: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity.parse(self.parity))
        object.__setattr__(self, "beta1_samples", tuple(float(b) for b in self.beta1_samples))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if len(self.beta1_samples) == 0:
            raise ValueError("need at least one beta1 sample")
        if len(self.weights) != len(self.beta1_samples):
            raise ValueError("weights and beta1 samples differ in length")
        if not self.beta3 > 0:
            raise ValueError("beta3 must be positive")
        if (self.energy_target is None) != (self.energy_window is None):
            raise ValueError("energy_target and energy_window go together")

    @property
    def alpha(self) -> float:
        return alpha_for(self.N)


@dataclass
class SynthesisResult:
    psi: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    modes: list[QESSolution]
    weights: np.ndarray
    energies: np.ndarray
    residuals: np.ndarray
    conjugate_symmetric: bool = False

    @property
    def energy_spread(self) -> float:
        return float(np.max(self.energies) - np.min(self.energies))

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals))


def _mode(spec: SynthesisSpec, b1: float, x_check: np.ndarray) -> tuple[QESSolution, float]:
    try:
        b2 = float(spec.beta2_of_beta1(b1))
    except (ValueError, ZeroDivisionError, NoRealSolution) as exc:
        raise InvalidMode(b1, f"beta2 map failed: {exc}") from exc
    if not math.isfinite(b2):
        raise InvalidMode(b1, "beta2 map is not finite")
    c = 2.0 * b1 * spec.beta3 - b2 * b2
    if spec.energy_of_beta1 is not None:
        candidates = [float(spec.energy_of_beta1(b1))]
    else:
        candidates = list(energy_roots(build_matrix(spec.N, c, spec.beta3)))
    good = []
    for E in candidates:
        try:
            s = make_solution(spec.N, spec.parity, b1, b2, spec.beta3, E)
        except ValueError:
            continue
        if s.matrix_residual() <= 1e-9 and s.continuity_relative() <= 1e-9:
            good.append(s)
    if not good:
        raise InvalidMode(b1, "no energy satisfies both the recursion and the matching condition")
    if len(good) > 1:
        raise InvalidMode(b1, f"{len(good)} energies satisfy the matching condition; pass energy_of_beta1")
    sol = good[0]
    res = relative_residual(WavefunctionSpec(sol), x_check)
    if not res <= MODE_TOL:
        raise InvalidMode(b1, f"Schrodinger residual {res:.3e} exceeds {MODE_TOL}")
    return sol, res


def synthesize_psi(spec: SynthesisSpec) -> SynthesisResult:
    """Quadrature ``sum_m w_m exp(i beta1_m y) psi_m(x)`` over valid QES modes.

    The first invalid sample aborts with :class:`InvalidMode`.
    """
    x = np.asarray(spec.x, dtype=float)
    y = np.asarray(spec.y, dtype=float)
    x_check = x[x != 0.0]
    if x_check.size == 0:
        raise ValueError("x-grid has no points away from the origin")

    modes, residuals, keep_w = [], [], []
    for b1, w in zip(spec.beta1_samples, spec.weights):
        sol, res = _mode(spec, b1, x_check)
        if spec.energy_target is not None and abs(sol.E - spec.energy_target) > spec.energy_window:
            continue
        modes.append(sol)
        residuals.append(res)
        keep_w.append(w)
    if not modes:
        raise ValueError("no samples inside the requested energy window")

    b1s = np.array([s.beta1 for s in modes])
    wts = np.array(keep_w)
    profiles = np.array([eval_psi(WavefunctionSpec(s), x) for s in modes], dtype=complex)
    if spec.conjugate_symmetric:
        b1s_all = np.concatenate([b1s, -b1s])
        w_all = np.concatenate([0.5 * wts, 0.5 * wts])
        profiles = np.concatenate([profiles, profiles.conj()])
    else:
        b1s_all, w_all = b1s, wts
    psi = kernels.superpose_modes(b1s_all, w_all, profiles, y)
    return SynthesisResult(
        psi=psi,
        x=x,
        y=y,
        modes=modes,
        weights=wts,
        energies=np.array([s.E for s in modes]),
        residuals=np.array(residuals),
        conjugate_symmetric=spec.conjugate_symmetric,
    )


def _g(v: float) -> str:
    return format(float(v), ".17g")


def grid_csv(result: SynthesisResult) -> str:
    """CSV rows ``x, y, re_psi, im_psi`` with y as the outer loop."""
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["x", "y", "re_psi", "im_psi"])
    for j, yv in enumerate(result.y):
        for i, xv in enumerate(result.x):
            z = result.psi[j, i]
            wr.writerow([_g(xv), _g(yv), _g(z.real), _g(z.imag)])
    return buf.getvalue()


def metadata(result: SynthesisResult, spec: SynthesisSpec) -> dict:
    return {
        "params": {
            "N": spec.N,
            "parity": spec.parity.value,
            "alpha": spec.alpha,
            "beta3": spec.beta3,
            "conjugate_symmetric": spec.conjugate_symmetric,
            "energy_target": spec.energy_target,
            "energy_window": spec.energy_window,
            "nx": int(result.x.size),
            "ny": int(result.y.size),
        },
        "solutions": [
            dict(s.to_dict(), weight=float(w), residual=float(r))
            for s, w, r in zip(result.modes, result.weights, result.residuals)
        ],
        "checks": {
            "max_mode_residual": result.max_residual,
            "mode_tolerance": MODE_TOL,
            "energy_spread": result.energy_spread,
            "ok": bool(result.max_residual <= MODE_TOL),
        },
    }


def write_outputs(result: SynthesisResult, spec: SynthesisSpec, csv_path, json_path) -> None:
    with open(csv_path, "w", newline="") as fh:
        fh.write(grid_csv(result))
    with open(json_path, "w") as fh:
        json.dump(metadata(result, spec), fh, indent=2, sort_keys=True)
        fh.write("\n")
