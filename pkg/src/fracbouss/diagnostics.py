"""Norms, energy budgets and dyadic-shell diagnostics.

All physical-space norms use the equal-weight rule on the grid, i.e.
Lebesgue measure on [0, 2π)² with cell area (2π/n)².  Quantities that are
pure Fourier sums (energies, dissipation rates) go through Parseval and
need no transform.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .spectral import (
    TWO_PI,
    Grid,
    SpectralField,
    inverse_transform,
    riesz_r_alpha,
)

SHELL_CONVENTION = "sharp: j=-1 is the zero mode, j>=0 holds 2^j <= |xi| < 2^(j+1)"


def lp_norm(f: SpectralField, p: float) -> float:
    """‖f‖_{L^p} by equal-weight quadrature; grid max of |f| for p = inf."""
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p}")
    samples = np.abs(inverse_transform(f))
    if np.isinf(p):
        return float(samples.max())
    return float((f.grid.cell_area * np.sum(samples**p)) ** (1.0 / p))


# ----------------------------------------------------------------------------
# Parseval integrands


def _weighted_energy(f: SpectralField, weight: np.ndarray) -> float:
    return float(TWO_PI**2 * np.sum(weight * np.abs(f.coeffs) ** 2))


def velocity_energy(omega: SpectralField) -> float:
    """‖u‖²_{L²} for u = ∇^⊥Δ^{-1}ω, i.e. (2π)² Σ |ω̂|²/|ξ|²."""
    return _weighted_energy(omega, omega.grid.inv_ksq)


def velocity_dissipation(omega: SpectralField, alpha: float) -> float:
    """‖Λ^{α/2}u‖²_{L²} = (2π)² Σ |ξ|^{α-2} |ω̂|²."""
    return _weighted_energy(omega, omega.grid.power(alpha) * omega.grid.inv_ksq)


def theta_dissipation(theta: SpectralField, gamma: float) -> float:
    """‖Λ^{γ/2}θ‖²_{L²} = (2π)² Σ |ξ|^γ |θ̂|²."""
    return _weighted_energy(theta, theta.grid.power(gamma))


def buoyancy_work(omega: SpectralField, theta: SpectralField) -> float:
    """∫ θ u₂ dx with û₂ = -i ξ₁ ω̂ / |ξ|²."""
    g = omega.grid
    u2 = -1j * g.k1_odd * g.inv_ksq * omega.coeffs
    return float(TWO_PI**2 * np.real(np.vdot(theta.coeffs, u2)))


def _trapezoid_cumulative(values, times) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    times = np.asarray(times, dtype=float)
    out = np.zeros_like(values)
    if len(values) > 1:
        out[1:] = np.cumsum(0.5 * (values[1:] + values[:-1]) * np.diff(times))
    return out


def _check_cadence(times):
    steps = np.diff(np.asarray(times, dtype=float))
    if len(steps) and np.ptp(steps) > 1e-9 * max(1.0, abs(steps[0])):
        raise ValueError("states are not at a uniform cadence")


def energy_budget_theta(states: Sequence, beta: float) -> np.ndarray:
    """‖θ(t)‖² + 2∫₀^t‖Λ^{β/2}θ‖² - ‖θ₀‖² along a series of states.

    ``states`` needs ``theta`` and ``t`` attributes; the time integral is a
    trapezoid over the series, so the residual is second order in the
    cadence.
    """
    _check_cadence([s.t for s in states])
    energy = np.array([TWO_PI**2 * np.sum(np.abs(s.theta.coeffs) ** 2) for s in states])
    diss = [theta_dissipation(s.theta, beta) for s in states]
    return energy + 2 * _trapezoid_cumulative(diss, [s.t for s in states]) - energy[0]


def energy_budget_u(states: Sequence, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Velocity energy residual and the growth-bound margin.

    Returns
    -------
    residual : ndarray
        ½‖u(t)‖² + ∫₀^t‖Λ^{α/2}u‖² - ∫₀^t∫θu₂ - ½‖u₀‖².
    margin : ndarray
        ‖u₀‖ + t‖θ₀‖ - ‖u(t)‖, nonnegative for the exact solution.
    """
    times = np.array([s.t for s in states])
    _check_cadence(times)
    energy = np.array([velocity_energy(s.omega) for s in states])
    diss = [velocity_dissipation(s.omega, alpha) for s in states]
    work = [buoyancy_work(s.omega, s.theta) for s in states]
    residual = (
        0.5 * energy
        + _trapezoid_cumulative(diss, times)
        - _trapezoid_cumulative(work, times)
        - 0.5 * energy[0]
    )
    theta0 = TWO_PI * np.sqrt(np.sum(np.abs(states[0].theta.coeffs) ** 2))
    margin = np.sqrt(energy[0]) + (times - times[0]) * theta0 - np.sqrt(energy)
    return residual, margin


# ----------------------------------------------------------------------------
# dyadic shells


def shell_index(grid: Grid) -> np.ndarray:
    """j with 4^j ≤ |ξ|² < 4^{j+1}, and -1 at the zero mode (integer exact)."""
    ksq = (grid.k1.astype(np.int64) ** 2 + grid.k2.astype(np.int64) ** 2)
    out = np.full(ksq.shape, -1, dtype=np.int64)
    nz = ksq > 0
    # floor(log2 |ξ|) = floor(floor(log2 |ξ|²) / 2)
    bits = np.frexp(ksq[nz].astype(float))[1] - 1
    out[nz] = bits // 2
    return out


@dataclass(frozen=True)
class ShellSpectrum:
    """Per-shell L² and L^∞ norms of a field."""

    j: np.ndarray
    l2: np.ndarray
    linf: np.ndarray
    convention: str = SHELL_CONVENTION

    def weights(self, s: float) -> np.ndarray:
        return 2.0 ** (self.j * s)


def shell_restrict(f: SpectralField, j: int) -> SpectralField:
    return SpectralField(f.grid, np.where(shell_index(f.grid) == j, f.coeffs, 0))


def _shells_present(f: SpectralField) -> np.ndarray:
    return np.arange(-1, int(shell_index(f.grid).max()) + 1)


def dyadic_shells(f: SpectralField) -> ShellSpectrum:
    idx = shell_index(f.grid)
    js = _shells_present(f)
    parts = np.stack([np.where(idx == j, f.coeffs, 0) for j in js])
    l2 = TWO_PI * np.sqrt(np.sum(np.abs(parts) ** 2, axis=(1, 2)))
    samples = np.fft.ifft2(parts, axes=(1, 2)).real * f.grid.n**2
    linf = np.abs(samples).max(axis=(1, 2))
    return ShellSpectrum(js, l2, linf)


def besov_proxy(f: SpectralField, s: float, p: float, r: float) -> float:
    """(Σ_j (2^{js}‖Δ_j f‖_{L^p})^r)^{1/r} with sharp shells, sup over j for r = inf."""
    if not (p >= 1 and r >= 1):
        raise ValueError("p and r must be >= 1")
    idx = shell_index(f.grid)
    terms = np.array(
        [
            2.0 ** (j * s) * lp_norm(SpectralField(f.grid, np.where(idx == j, f.coeffs, 0)), p)
            for j in _shells_present(f)
        ]
    )
    if np.isinf(r):
        return float(terms.max())
    return float(np.sum(terms**r) ** (1.0 / r))


def bernstein_ratio(f: SpectralField, k: float, a: float, b: float) -> float:
    """‖Λ^k f‖_{L^b} / (2^{jk + 2j(1/a - 1/b)} ‖f‖_{L^a}) for f in one shell j."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    idx = shell_index(f.grid)
    shells = np.unique(idx[np.abs(f.coeffs) > 0])
    if len(shells) != 1:
        raise ValueError(f"field must live in a single shell, found {shells.tolist()}")
    j = int(shells[0])
    lam = SpectralField(f.grid, f.grid.power(k) * f.coeffs)
    inv_b = 0.0 if np.isinf(b) else 1.0 / b
    scale = 2.0 ** (j * k + 2 * j * (1.0 / a - inv_b))
    return lp_norm(lam, b) / (scale * lp_norm(f, a))


# ----------------------------------------------------------------------------
# per-run monitoring


def csv_columns(lp_exponents: Sequence[float]) -> list[str]:
    """Diagnostics CSV header, in its fixed order."""
    lp = [f"Lp_theta_{p:g}" for p in lp_exponents]
    return (
        ["step", "t", "L2_u", "L2_theta", "Linf_theta"]
        + lp
        + [
            "L2_G",
            "Lm_G",
            "diss_u_cum",
            "diss_theta_cum",
            "diss_theta_delta_cum",
            "resid_theta",
            "resid_u",
            "besov_inf1_omega",
        ]
    )


@dataclass
class DiagnosticsRow:
    step: int
    t: float
    L2_u: float
    L2_theta: float
    Linf_theta: float
    Lp_theta: dict
    L2_G: float
    Lm_G: float
    diss_u_cum: float
    diss_theta_cum: float
    diss_theta_delta_cum: float
    resid_theta: float
    resid_u: float
    besov_inf1_omega: float
    # not a CSV column: ‖u₀‖ + t‖θ₀‖ - ‖u(t)‖
    margin_u: float = 0.0

    def values(self) -> list:
        return (
            [self.step, self.t, self.L2_u, self.L2_theta, self.Linf_theta]
            + list(self.Lp_theta.values())
            + [
                self.L2_G,
                self.Lm_G,
                self.diss_u_cum,
                self.diss_theta_cum,
                self.diss_theta_delta_cum,
                self.resid_theta,
                self.resid_u,
                self.besov_inf1_omega,
            ]
        )


@dataclass
class Monitor:
    """Accumulates dissipation and forcing integrals along a run.

    Call :meth:`advance` after every time step; the trapezoid therefore
    runs at the time-step cadence even when rows are written less often.
    """

    alpha: float
    beta: float
    delta: float
    m: float
    lp_exponents: Sequence[float]
    t: float = 0.0
    _rates: Optional[tuple] = None
    _cum: np.ndarray = field(default_factory=lambda: np.zeros(4))
    _theta0_sq: float = 0.0
    _u0_sq: float = 0.0
    _t0: float = 0.0

    def _integrands(self, omega, theta):
        return np.array(
            [
                velocity_dissipation(omega, self.alpha),
                theta_dissipation(theta, self.beta),
                theta_dissipation(theta, 2 * self.delta + self.beta),
                buoyancy_work(omega, theta),
            ]
        )

    def start(self, omega: SpectralField, theta: SpectralField, t: float = 0.0):
        self.t = self._t0 = t
        self._rates = self._integrands(omega, theta)
        self._cum = np.zeros(4)
        self._theta0_sq = TWO_PI**2 * float(np.sum(np.abs(theta.coeffs) ** 2))
        self._u0_sq = velocity_energy(omega)

    def advance(self, omega: SpectralField, theta: SpectralField, t: float):
        rates = self._integrands(omega, theta)
        self._cum += 0.5 * (rates + self._rates) * (t - self.t)
        self._rates = rates
        self.t = t

    def row(self, step: int, omega: SpectralField, theta: SpectralField) -> DiagnosticsRow:
        g = SpectralField(theta.grid, omega.coeffs - riesz_r_alpha(theta, self.alpha).coeffs)
        u_sq = velocity_energy(omega)
        theta_sq = TWO_PI**2 * float(np.sum(np.abs(theta.coeffs) ** 2))
        diss_u, diss_th, diss_del, work = self._cum
        samples = np.abs(inverse_transform(theta))
        cell = theta.grid.cell_area
        lp = {p: float(np.max(samples)) if np.isinf(p) else float((cell * np.sum(samples**p)) ** (1 / p))
              for p in self.lp_exponents}
        return DiagnosticsRow(
            step=step,
            t=self.t,
            L2_u=float(np.sqrt(u_sq)),
            L2_theta=float(np.sqrt(theta_sq)),
            Linf_theta=float(samples.max()),
            Lp_theta=lp,
            L2_G=lp_norm(g, 2),
            Lm_G=lp_norm(g, self.m),
            diss_u_cum=float(diss_u),
            diss_theta_cum=float(diss_th),
            diss_theta_delta_cum=float(diss_del),
            resid_theta=float(theta_sq + 2 * diss_th - self._theta0_sq),
            resid_u=float(0.5 * u_sq + diss_u - work - 0.5 * self._u0_sq),
            besov_inf1_omega=float(np.sum(dyadic_shells(omega).linf)),
            margin_u=float(
                np.sqrt(self._u0_sq) + (self.t - self._t0) * np.sqrt(self._theta0_sq) - np.sqrt(u_sq)
            ),
        )
