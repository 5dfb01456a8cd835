"""Fourier machinery on the 2π-periodic square.

Fields are stored as full complex coefficient arrays ``c[i1, i2]`` where
axis 0 carries the wavenumber ξ₁ (the x direction) and axis 1 carries ξ₂.
Coefficients use the unit-amplitude convention: the samples of
``exp(i ξ·x)`` transform to a single coefficient equal to 1 at ξ.

Odd multipliers (derivatives, R_α, Biot–Savart) vanish on the Nyquist
line ξ_i = -n/2, which has no Hermitian partner on the grid.  Fields that
have been dealiased never carry such modes, so nothing is lost in practice.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

TWO_PI = 2.0 * np.pi

#: Tolerance on |ω̂(0)| accepted by :func:`biot_savart`.
MEAN_TOL = 1e-13


class GridMismatchError(ValueError):
    """Operands live on different grids."""


@dataclass(frozen=True)
class Grid:
    """Square ``n × n`` collocation grid on [0, 2π)²."""

    n: int

    def __post_init__(self):
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < 8 or n & (n - 1):
            raise ValueError(f"grid size must be a power of two >= 8, got {n!r}")

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Integer wavenumbers in FFT order, components in [-n/2, n/2)."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n).round().astype(np.int64)

    @cached_property
    def k1(self) -> np.ndarray:
        return np.broadcast_to(self.wavenumbers[:, None], (self.n, self.n))

    @cached_property
    def k2(self) -> np.ndarray:
        return np.broadcast_to(self.wavenumbers[None, :], (self.n, self.n))

    @cached_property
    def k1_odd(self) -> np.ndarray:
        return np.where(self.k1 == -self.n // 2, 0, self.k1).astype(float)

    @cached_property
    def k2_odd(self) -> np.ndarray:
        return np.where(self.k2 == -self.n // 2, 0, self.k2).astype(float)

    @cached_property
    def ksq(self) -> np.ndarray:
        return (self.k1**2 + self.k2**2).astype(float)

    @cached_property
    def kmag(self) -> np.ndarray:
        return np.sqrt(self.ksq)

    @cached_property
    def inv_ksq(self) -> np.ndarray:
        """1/|ξ|² with the zero mode mapped to 0."""
        out = np.zeros_like(self.ksq)
        np.divide(1.0, self.ksq, out=out, where=self.ksq > 0)
        return out

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        cutoff = self.n / 3.0
        return (np.abs(self.k1) <= cutoff) & (np.abs(self.k2) <= cutoff)

    @cached_property
    def nyquist_free(self) -> np.ndarray:
        half = self.n // 2
        return (self.k1 != -half) & (self.k2 != -half)

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n

    @property
    def cell_area(self) -> float:
        return self.spacing**2

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical sample locations ``(x, y)`` with ``indexing='ij'``."""
        x = np.arange(self.n) * self.spacing
        return np.meshgrid(x, x, indexing="ij")

    def power(self, gamma: float) -> np.ndarray:
        """|ξ|^γ with the zero mode set to 0 unless γ == 0."""
        if gamma == 0:
            return np.ones_like(self.kmag)
        out = np.zeros_like(self.kmag)
        np.power(self.kmag, gamma, out=out, where=self.kmag > 0)
        return out

    def index(self, k1: int, k2: int) -> tuple[int, int]:
        """Array index of wavenumber (k1, k2)."""
        half = self.n // 2
        if not (-half <= k1 < half and -half <= k2 < half):
            raise IndexError(f"wavenumber ({k1}, {k2}) not on a {self.n}-grid")
        return k1 % self.n, k2 % self.n


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients of a real scalar field."""

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128)
        if c.shape != (self.grid.n, self.grid.n):
            raise ValueError(
                f"coefficient shape {c.shape} does not match grid n={self.grid.n}"
            )
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, grid: Grid) -> "SpectralField":
        return cls(grid, np.zeros((grid.n, grid.n), dtype=np.complex128))

    @classmethod
    def from_modes(cls, grid: Grid, modes: dict) -> "SpectralField":
        """Build a field from ``{(k1, k2): coefficient}``.

        The caller is responsible for supplying conjugate pairs.
        """
        c = np.zeros((grid.n, grid.n), dtype=np.complex128)
        for (k1, k2), value in modes.items():
            c[grid.index(k1, k2)] += value
        return cls(grid, c)

    @classmethod
    def from_physical(cls, grid: Grid, samples) -> "SpectralField":
        return forward_transform(grid, samples)

    def physical(self) -> np.ndarray:
        return inverse_transform(self)

    def coeff(self, k1: int, k2: int) -> complex:
        return complex(self.coeffs[self.grid.index(k1, k2)])

    @property
    def mean(self) -> complex:
        return complex(self.coeffs[0, 0])

    def hermitian_defect(self) -> float:
        """max |c(-ξ) - conj(c(ξ))| over Nyquist-free modes."""
        flipped = np.roll(np.flip(self.coeffs, axis=(0, 1)), 1, axis=(0, 1))
        diff = np.abs(flipped - np.conj(self.coeffs))
        return float(np.max(diff[self.grid.nyquist_free], initial=0.0))

    def _check(self, other: "SpectralField"):
        if other.grid != self.grid:
            raise GridMismatchError(f"grids differ: {self.grid} vs {other.grid}")

    def __add__(self, other):
        if not isinstance(other, SpectralField):
            return NotImplemented
        self._check(other)
        return SpectralField(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other):
        if not isinstance(other, SpectralField):
            return NotImplemented
        self._check(other)
        return SpectralField(self.grid, self.coeffs - other.coeffs)

    def __neg__(self):
        return SpectralField(self.grid, -self.coeffs)

    def __mul__(self, scalar):
        if isinstance(scalar, SpectralField):
            return NotImplemented
        return SpectralField(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class VectorField:
    """A velocity-like pair of spectral fields."""

    u1: SpectralField
    u2: SpectralField

    def __post_init__(self):
        if self.u1.grid != self.u2.grid:
            raise GridMismatchError("vector components on different grids")

    @property
    def grid(self) -> Grid:
        return self.u1.grid

    def divergence(self) -> SpectralField:
        g = self.grid
        return SpectralField(
            g, 1j * g.k1 * self.u1.coeffs + 1j * g.k2 * self.u2.coeffs
        )

    def physical(self) -> tuple[np.ndarray, np.ndarray]:
        return self.u1.physical(), self.u2.physical()


def forward_transform(grid: Grid, samples) -> SpectralField:
    """Physical samples on ``grid`` to unit-amplitude Fourier coefficients."""
    samples = np.asarray(samples)
    if samples.shape != (grid.n, grid.n):
        raise ValueError(
            f"sample shape {samples.shape} does not match grid n={grid.n}"
        )
    return SpectralField(grid, np.fft.fft2(samples) / grid.n**2)


def inverse_transform(field: SpectralField) -> np.ndarray:
    """Real physical samples of ``field``."""
    n = field.grid.n
    return np.fft.ifft2(field.coeffs).real * n**2


def dealias(f: SpectralField) -> SpectralField:
    """2/3-rule truncation: zero every mode with max(|ξ₁|, |ξ₂|) > n/3."""
    return SpectralField(f.grid, np.where(f.grid.dealias_mask, f.coeffs, 0))


def fractional_laplacian(f: SpectralField, gamma: float) -> SpectralField:
    """Apply Λ^γ, the multiplier |ξ|^γ.  The zero mode is dropped if γ ≠ 0."""
    if not -2.0 <= gamma <= 2.0:
        raise ValueError(f"exponent must lie in [-2, 2], got {gamma}")
    return SpectralField(f.grid, f.grid.power(gamma) * f.coeffs)


def derivative_x(f: SpectralField) -> SpectralField:
    return SpectralField(f.grid, 1j * f.grid.k1_odd * f.coeffs)


def derivative_y(f: SpectralField) -> SpectralField:
    return SpectralField(f.grid, 1j * f.grid.k2_odd * f.coeffs)


def riesz_r_alpha(f: SpectralField, alpha: float) -> SpectralField:
    """R_α = ∂_x Λ^{-α}: multiplier i ξ₁ |ξ|^{-α}, zero at ξ = 0.

    The estimates that use this operator need 0 < α < 1; the multiplier
    itself is well defined for any α in (0, 2] and is evaluated there too.
    """
    if not 0.0 < alpha <= 2.0:
        raise ValueError(f"alpha must lie in (0, 2], got {alpha}")
    g = f.grid
    return SpectralField(g, 1j * g.k1_odd * g.power(-alpha) * f.coeffs)


def biot_savart(omega: SpectralField) -> VectorField:
    """Velocity u = ∇^⊥ Δ^{-1} ω of a mean-zero vorticity.

    With ∇^⊥ = (-∂_y, ∂_x) this is û = (i ξ₂, -i ξ₁) ω̂ / |ξ|².
    """
    if abs(omega.mean) > MEAN_TOL:
        raise ValueError(f"vorticity must have zero mean, got {omega.mean:.3e}")
    g = omega.grid
    scaled = omega.coeffs * g.inv_ksq
    return VectorField(
        SpectralField(g, 1j * g.k2_odd * scaled),
        SpectralField(g, -1j * g.k1_odd * scaled),
    )


def curl(u: VectorField) -> SpectralField:
    """Scalar vorticity ∂₁u₂ - ∂₂u₁."""
    return derivative_x(u.u2) - derivative_y(u.u1)


def advect(u: VectorField, f: SpectralField) -> SpectralField:
    """Dealiased pseudo-spectral transport term u·∇f."""
    if u.grid != f.grid:
        raise GridMismatchError(f"grids differ: {u.grid} vs {f.grid}")
    g = f.grid
    stack = np.stack(
        [
            u.u1.coeffs,
            u.u2.coeffs,
            1j * g.k1_odd * f.coeffs,
            1j * g.k2_odd * f.coeffs,
        ]
    )
    u1, u2, fx, fy = np.fft.ifft2(stack, axes=(1, 2)).real * g.n**2
    product = np.fft.fft2(u1 * fx + u2 * fy) / g.n**2
    return SpectralField(g, np.where(g.dealias_mask, product, 0))


def commutator_r_alpha(u: VectorField, theta: SpectralField, alpha: float) -> SpectralField:
    """[R_α, u·∇]θ = R_α(u·∇θ) - u·∇(R_α θ)."""
    return riesz_r_alpha(advect(u, theta), alpha) - advect(u, riesz_r_alpha(theta, alpha))


def l2_norm(f: SpectralField) -> float:
    """‖f‖_{L²} on [0, 2π)² by Parseval."""
    return float(TWO_PI * np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


def inner(f: SpectralField, g: SpectralField) -> float:
    """∫ f g dx for real fields, by Parseval."""
    return float(TWO_PI**2 * np.real(np.vdot(g.coeffs, f.coeffs)))


def hermitian_part(coeffs: np.ndarray) -> np.ndarray:
    """Project a coefficient array onto real fields: (c(ξ) + conj c(-ξ)) / 2."""
    flipped = np.roll(np.flip(coeffs, axis=(0, 1)), 1, axis=(0, 1))
    return 0.5 * (coeffs + np.conj(flipped))
