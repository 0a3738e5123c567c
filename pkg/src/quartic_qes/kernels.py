"""Hot numeric kernels, each in a loop form (numba) and a vectorized numpy form.

``scan_continuity``, ``psi_derivs`` and ``superpose_modes`` are bound to the
numba versions when numba is usable (see ``_accel``), otherwise to the numpy
versions. Both variants stay importable under ``*_numba`` / ``*_numpy`` so
they can be benchmarked and cross-checked against each other.
"""

from __future__ import annotations

import numpy as np

from . import _accel

__all__ = [
    "REAL_ROOT_TOL",
    "DEDUP_TOL",
    "scan_continuity",
    "scan_continuity_numpy",
    "scan_continuity_numba",
    "psi_derivs",
    "psi_derivs_numpy",
    "psi_derivs_numba",
    "superpose_modes",
    "superpose_modes_numpy",
    "superpose_modes_numba",
    "backend",
]

REAL_ROOT_TOL = 1e-9
DEDUP_TOL = 1e-9


# --------------------------------------------------------------------------
# continuity scan over beta2
# --------------------------------------------------------------------------


def _scan_loop(N, beta1, beta3, beta2s, odd):
    n = beta2s.shape[0]
    m = N + 1
    energies = np.full((n, m), np.nan)
    resid = np.full((n, m), np.nan)
    counts = np.zeros(n, dtype=np.int64)
    alpha = -(N + 1.0)
    b3sq = beta3 * beta3
    poly = np.zeros((N + 3, N + 2))
    cp = np.zeros(N + 2)
    a = np.zeros(N + 3)
    for s in range(n):
        b2 = beta2s[s]
        c = 2.0 * beta1 * beta3 - b2 * b2
        # a_k as polynomials in E (ascending), from a_N = 1 downwards
        poly[:, :] = 0.0
        poly[N, 0] = 1.0
        for k in range(N, 0, -1):
            denom = alpha + k
            for j in range(N + 2):
                v = -(k + 1) * c * poly[k + 1, j] + (k + 2) * (k + 1) * b3sq * poly[k + 2, j]
                if j > 0:
                    v += 2.0 * poly[k, j - 1]
                poly[k - 1, j] = v / denom
        for j in range(N + 2):
            v = c * poly[1, j] - 2.0 * b3sq * poly[2, j]
            if j > 0:
                v -= 2.0 * poly[0, j - 1]
            cp[j] = v
        lead = cp[N + 1]
        deg = N + 1
        comp = np.zeros((deg, deg))
        for j in range(deg):
            comp[0, j] = -cp[deg - 1 - j] / lead
        for j in range(1, deg):
            comp[j, j - 1] = 1.0
        ev = np.linalg.eigvals(comp.astype(np.complex128))
        roots = np.empty(deg)
        nr = 0
        for r in ev:
            if abs(r.imag) <= 1e-9 * (1.0 + abs(r.real)):
                x = r.real
                # one Newton polish step on the characteristic polynomial
                p = 0.0
                dp = 0.0
                for j in range(deg, -1, -1):
                    dp = dp * x + p
                    p = p * x + cp[j]
                if dp != 0.0:
                    x -= p / dp
                roots[nr] = x
                nr += 1
        roots_sorted = np.sort(roots[:nr])
        kept = 0
        for i in range(nr):
            x = roots_sorted[i]
            if kept > 0 and abs(x - energies[s, kept - 1]) <= 1e-9:
                continue
            a[:] = 0.0
            a[N] = 1.0
            for k in range(N, 0, -1):
                a[k - 1] = (2.0 * x * a[k] - (k + 1) * c * a[k + 1]
                            + (k + 2) * (k + 1) * b3sq * a[k + 2]) / (alpha + k)
            if odd:
                acc = 0.0
                pw = 1.0
                for k in range(N + 1):
                    acc += a[k] * pw
                    pw *= b2
            else:
                acc = a[0] * beta1
                pw = 1.0
                for k in range(1, N + 1):
                    acc -= a[k] * (k * beta3 - beta1 * b2) * pw
                    pw *= b2
            energies[s, kept] = x
            resid[s, kept] = acc
            kept += 1
        counts[s] = kept
    return energies, resid, counts


def scan_continuity_numpy(N, beta1, beta3, beta2s, odd):
    """Real energy roots and parity continuity residual at every ``beta2``.

    Returns ``(energies, residuals, counts)``; row ``s`` holds the ascending
    real roots for ``beta2s[s]`` padded with NaN.
    """
    beta2s = np.asarray(beta2s, dtype=float)
    n = beta2s.shape[0]
    deg = N + 1
    alpha = -(N + 1.0)
    b3sq = beta3 * beta3
    c = 2.0 * beta1 * beta3 - beta2s**2
    poly = np.zeros((N + 3, n, N + 2))
    poly[N, :, 0] = 1.0
    for k in range(N, 0, -1):
        v = -(k + 1) * c[:, None] * poly[k + 1] + (k + 2) * (k + 1) * b3sq * poly[k + 2]
        v[:, 1:] += 2.0 * poly[k, :, :-1]
        poly[k - 1] = v / (alpha + k)
    cp = c[:, None] * poly[1] - 2.0 * b3sq * poly[2]
    cp[:, 1:] -= 2.0 * poly[0, :, :-1]
    lead = cp[:, deg]
    comp = np.zeros((n, deg, deg))
    comp[:, 0, :] = -cp[:, deg - 1::-1] / lead[:, None]
    if deg > 1:
        idx = np.arange(1, deg)
        comp[:, idx, idx - 1] = 1.0
    ev = np.linalg.eigvals(comp)
    real = np.abs(ev.imag) <= REAL_ROOT_TOL * (1.0 + np.abs(ev.real))
    x = ev.real
    p = np.zeros_like(x)
    dp = np.zeros_like(x)
    for j in range(deg, -1, -1):
        dp = dp * x + p
        p = p * x + cp[:, j : j + 1]
    with np.errstate(divide="ignore", invalid="ignore"):
        step = np.where(dp != 0.0, p / dp, 0.0)
    x = np.where(real, x - step, np.nan)
    x = np.sort(x, axis=1)
    dup = np.zeros_like(x, dtype=bool)
    dup[:, 1:] = np.abs(np.diff(x, axis=1)) <= DEDUP_TOL
    x = np.sort(np.where(dup, np.nan, x), axis=1)

    a = np.zeros((N + 3,) + x.shape)
    a[N] = 1.0
    cc = c[:, None]
    for k in range(N, 0, -1):
        a[k - 1] = (2.0 * x * a[k] - (k + 1) * cc * a[k + 1] + (k + 2) * (k + 1) * b3sq * a[k + 2]) / (alpha + k)
    b2 = beta2s[:, None]
    pw = np.ones_like(x)
    if odd:
        acc = np.zeros_like(x)
        for k in range(N + 1):
            acc = acc + a[k] * pw
            pw = pw * b2
    else:
        acc = a[0] * beta1
        for k in range(1, N + 1):
            acc = acc - a[k] * (k * beta3 - beta1 * b2) * pw
            pw = pw * b2
    resid = np.where(np.isnan(x), np.nan, acc)
    counts = np.sum(~np.isnan(x), axis=1).astype(np.int64)
    return x, resid, counts


# --------------------------------------------------------------------------
# closed-form wavefunction with first and second derivatives
# --------------------------------------------------------------------------


def _psi_loop(coeffs, beta1, beta2, beta3, odd, x):
    n = x.shape[0]
    deg = coeffs.shape[0] - 1
    psi = np.empty(n)
    d1 = np.empty(n)
    d2 = np.empty(n)
    for i in range(n):
        xi = x[i]
        r = abs(xi)
        u = beta2 + beta3 * r
        p = 0.0
        dp = 0.0
        ddp = 0.0
        for k in range(deg, -1, -1):
            ddp = ddp * u + 2.0 * dp
            dp = dp * u + p
            p = p * u + coeffs[k]
        x1 = beta1 + r * (beta2 + 0.5 * beta3 * r)
        e = np.exp(-r * (beta1 + r * (0.5 * beta2 + beta3 * r / 6.0)))
        g = p * e
        g1 = (beta3 * dp - x1 * p) * e
        g2 = (beta3 * beta3 * ddp - 2.0 * x1 * beta3 * dp + (x1 * x1 - u) * p) * e
        sgn = 1.0 if xi > 0 else (-1.0 if xi < 0 else 0.0)
        if odd:
            psi[i] = sgn * g
            d1[i] = g1
            d2[i] = sgn * g2
        else:
            psi[i] = g
            d1[i] = sgn * g1
            d2[i] = g2
    return psi, d1, d2


def psi_derivs_numpy(coeffs, beta1, beta2, beta3, odd, x):
    """``(psi, psi', psi'')`` of the unnormalized parity-symmetrized closed form."""
    coeffs = np.asarray(coeffs, dtype=float)
    x = np.asarray(x, dtype=float)
    r = np.abs(x)
    u = beta2 + beta3 * r
    p = np.zeros_like(u)
    dp = np.zeros_like(u)
    ddp = np.zeros_like(u)
    for ck in coeffs[::-1]:
        ddp = ddp * u + 2.0 * dp
        dp = dp * u + p
        p = p * u + ck
    x1 = beta1 + r * (beta2 + 0.5 * beta3 * r)
    e = np.exp(-r * (beta1 + r * (0.5 * beta2 + beta3 * r / 6.0)))
    g = p * e
    g1 = (beta3 * dp - x1 * p) * e
    g2 = (beta3 * beta3 * ddp - 2.0 * x1 * beta3 * dp + (x1 * x1 - u) * p) * e
    sgn = np.sign(x)
    if odd:
        return sgn * g, g1, sgn * g2
    return g, sgn * g1, g2


# --------------------------------------------------------------------------
# Fourier superposition of 1D modes
# --------------------------------------------------------------------------


def _superpose_loop(beta1s, weights, modes, y):
    k = beta1s.shape[0]
    ny = y.shape[0]
    nx = modes.shape[1]
    out = np.zeros((ny, nx), dtype=np.complex128)
    for j in range(ny):
        for m in range(k):
            ph = weights[m] * np.exp(1j * beta1s[m] * y[j])
            for i in range(nx):
                out[j, i] += ph * modes[m, i]
    return out


def superpose_modes_numpy(beta1s, weights, modes, y):
    """``out[j, i] = sum_m weights[m] exp(i beta1s[m] y[j]) modes[m, i]``."""
    beta1s = np.asarray(beta1s, dtype=float)
    phases = np.exp(1j * np.outer(np.asarray(y, dtype=float), beta1s)) * np.asarray(weights, dtype=float)
    return phases @ np.asarray(modes, dtype=complex)


if _accel.HAVE_NUMBA:
    import numba as _numba

    scan_continuity_numba = _numba.njit(cache=True)(_scan_loop)
    psi_derivs_numba = _numba.njit(cache=True)(_psi_loop)
    superpose_modes_numba = _numba.njit(cache=True)(_superpose_loop)
else:  # pragma: no cover - depends on environment
    scan_continuity_numba = _scan_loop
    psi_derivs_numba = _psi_loop
    superpose_modes_numba = _superpose_loop


def _as_arrays_scan(f):
    def scan(N, beta1, beta3, beta2s, odd):
        return f(int(N), float(beta1), float(beta3), np.ascontiguousarray(beta2s, dtype=float), bool(odd))

    scan.__doc__ = scan_continuity_numpy.__doc__
    return scan


def _as_arrays_psi(f):
    def psi(coeffs, beta1, beta2, beta3, odd, x):
        x = np.asarray(x, dtype=float)
        out = f(
            np.ascontiguousarray(coeffs, dtype=float),
            float(beta1), float(beta2), float(beta3), bool(odd),
            np.ascontiguousarray(x.ravel()),
        )
        return tuple(o.reshape(x.shape) for o in out)

    psi.__doc__ = psi_derivs_numpy.__doc__
    return psi


def _as_arrays_superpose(f):
    def sup(beta1s, weights, modes, y):
        return f(
            np.ascontiguousarray(beta1s, dtype=float),
            np.ascontiguousarray(weights, dtype=float),
            np.ascontiguousarray(modes, dtype=np.complex128),
            np.ascontiguousarray(y, dtype=float),
        )

    sup.__doc__ = superpose_modes_numpy.__doc__
    return sup


if _accel.USE_NUMBA:
    scan_continuity = _as_arrays_scan(scan_continuity_numba)
    psi_derivs = _as_arrays_psi(psi_derivs_numba)
    superpose_modes = _as_arrays_superpose(superpose_modes_numba)
else:
    scan_continuity = scan_continuity_numpy
    psi_derivs = psi_derivs_numpy
    superpose_modes = superpose_modes_numpy

# wrapped loop variants, for cross-checks and benchmarks
scan_continuity_loop = _as_arrays_scan(scan_continuity_numba)
psi_derivs_loop = _as_arrays_psi(psi_derivs_numba)
superpose_modes_loop = _as_arrays_superpose(superpose_modes_numba)


def backend() -> str:
    return "numba" if _accel.USE_NUMBA else "numpy"
