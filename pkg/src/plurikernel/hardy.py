"""Fourier / Hardy-space machinery on the unit circle.

Everything here works with trigonometric polynomials sampled on the uniform
grid theta_k = 2*pi*k/M and with truncated power series on the closed unit
disc.  Three value types:

* :class:`BoundaryLoop`   -- two-sided spectrum, frequencies -N..N, per component;
* :class:`AnalyticDisc`   -- one-sided spectrum, frequencies 0..N (a holomorphic
  map of the disc given by its truncated Taylor series);
* :class:`RealTrigPoly`   -- a real trigonometric polynomial
  a0 + sum_j (a_j cos j*theta + b_j sin j*theta).

The grid size must satisfy M >= 4N + 2 so that pointwise products of degree-N
data (as they appear in boundary residuals of attached discs) stay alias-free.
All operations are pure; instances are treated as immutable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "BoundaryLoop",
    "AnalyticDisc",
    "RealTrigPoly",
    "grid_angles",
    "grid_points",
    "analyze",
    "synthesize",
    "holomorphic_split",
    "conjugate",
]

DEFAULT_MODES = 64


def default_grid(modes: int) -> int:
    """Smallest even grid size with the anti-aliasing margin, M = 4N + 4."""
    return 4 * modes + 4


def grid_angles(grid_size: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(grid_size) / grid_size


def grid_points(grid_size: int) -> np.ndarray:
    """The grid nodes e^{i theta_k} on the unit circle."""
    return np.exp(1j * grid_angles(grid_size))


def _check_grid(grid_size: int, modes: int) -> None:
    if grid_size % 2 != 0:
        raise ValueError(f"grid size must be even, got {grid_size}")
    if grid_size < 4 * modes + 2:
        raise ValueError(
            f"grid size {grid_size} too small for {modes} modes "
            f"(need at least {4 * modes + 2})"
        )


def analyze(samples: np.ndarray, modes: int) -> np.ndarray:
    """Discrete Fourier analysis of grid samples.

    ``samples`` has shape (..., M); the returned coefficient array has shape
    (..., 2*modes+1) and is indexed by frequency j = -modes..modes at position
    modes + j.  Exact for trigonometric polynomials of degree <= modes.
    """
    samples = np.asarray(samples, dtype=complex)
    m = samples.shape[-1]
    _check_grid(m, modes)
    spec = np.fft.fft(samples, axis=-1) / m
    idx = np.arange(-modes, modes + 1) % m
    return spec[..., idx]


def synthesize(coeffs: np.ndarray, grid_size: int) -> np.ndarray:
    """Evaluate a two-sided spectrum (indexed -N..N) on the grid."""
    coeffs = np.asarray(coeffs, dtype=complex)
    two_sided = coeffs.shape[-1]
    modes = (two_sided - 1) // 2
    _check_grid(grid_size, modes)
    spec = np.zeros(coeffs.shape[:-1] + (grid_size,), dtype=complex)
    idx = np.arange(-modes, modes + 1) % grid_size
    spec[..., idx] = coeffs
    return np.fft.ifft(spec, axis=-1) * grid_size


@dataclass(frozen=True)
class BoundaryLoop:
    """Smooth loop on the circle: two-sided Fourier data for n components.

    coeffs: complex array (n, 2N+1), frequency j stored at column N+j.
    grid_size: the sampling grid M the loop is associated with.
    """

    coeffs: np.ndarray
    grid_size: int

    @property
    def modes(self) -> int:
        return (self.coeffs.shape[-1] - 1) // 2

    @property
    def ncomp(self) -> int:
        return self.coeffs.shape[0]

    @classmethod
    def from_samples(cls, samples: np.ndarray, modes: int) -> "BoundaryLoop":
        samples = np.atleast_2d(np.asarray(samples, dtype=complex))
        return cls(analyze(samples, modes), samples.shape[-1])

    def coeff(self, component: int, freq: int) -> complex:
        return complex(self.coeffs[component, self.modes + freq])

    def values(self, grid_size: int | None = None) -> np.ndarray:
        return synthesize(self.coeffs, grid_size or self.grid_size)


@dataclass(frozen=True)
class AnalyticDisc:
    """Truncated power series for a holomorphic map of the closed disc.

    coeffs: complex array (n, N+1); row j holds the Taylor coefficients of
    component j.  Valid for |zeta| <= 1 only.
    """

    coeffs: np.ndarray

    @property
    def ncomp(self) -> int:
        return self.coeffs.shape[0]

    @property
    def degree(self) -> int:
        return self.coeffs.shape[-1] - 1

    @classmethod
    def constant(cls, value: np.ndarray, degree: int = 0) -> "AnalyticDisc":
        value = np.atleast_1d(np.asarray(value, dtype=complex))
        coeffs = np.zeros((value.size, degree + 1), dtype=complex)
        coeffs[:, 0] = value
        return cls(coeffs)

    def derivative(self, order: int = 1) -> "AnalyticDisc":
        c = self.coeffs
        for _ in range(order):
            k = np.arange(1, c.shape[-1])
            c = c[..., 1:] * k
            if c.shape[-1] == 0:
                c = np.zeros((self.ncomp, 1), dtype=complex)
        return AnalyticDisc(c)

    def eval(self, zeta, order: int = 0) -> np.ndarray:
        """order-th derivative of the truncated series at zeta, |zeta| <= 1.

        zeta may be a scalar or an array; output shape is (n,) + shape(zeta).
        """
        zeta = np.asarray(zeta, dtype=complex)
        if np.any(np.abs(zeta) > 1.0 + 1e-12):
            raise ValueError("evaluation point outside the closed unit disc")
        disc = self.derivative(order) if order else self
        # Horner over the coefficient axis, vectorized in zeta.
        acc = np.zeros(zeta.shape + (self.ncomp,), dtype=complex)
        for k in range(disc.coeffs.shape[-1] - 1, -1, -1):
            acc = acc * zeta[..., None] + disc.coeffs[:, k]
        return np.moveaxis(acc, -1, 0)

    def boundary_values(self, grid_size: int) -> np.ndarray:
        spec = np.zeros((self.ncomp, grid_size), dtype=complex)
        deg = min(self.degree, grid_size - 1)
        spec[:, : deg + 1] = self.coeffs[:, : deg + 1]
        return np.fft.ifft(spec, axis=-1) * grid_size

    def boundary_loop(self, grid_size: int, modes: int | None = None) -> BoundaryLoop:
        n = modes if modes is not None else self.degree
        two = np.zeros((self.ncomp, 2 * n + 1), dtype=complex)
        upto = min(self.degree, n)
        two[:, n : n + upto + 1] = self.coeffs[:, : upto + 1]
        return BoundaryLoop(two, grid_size)


def holomorphic_split(loop: BoundaryLoop) -> tuple[AnalyticDisc, float]:
    """Nonnegative-frequency part of a loop plus the size of what was dropped.

    Returns the analytic disc carried by frequencies 0..N and the l2 norm of
    the negative-frequency coefficients over all components.
    """
    n = loop.modes
    disc = AnalyticDisc(loop.coeffs[:, n:].copy())
    residual = float(np.linalg.norm(loop.coeffs[:, :n]))
    return disc, residual


@dataclass(frozen=True)
class RealTrigPoly:
    """theta |-> a0 + sum_{j>=1} (a_j cos j theta + b_j sin j theta)."""

    cos_coeffs: np.ndarray  # (N+1,): a_0 .. a_N
    sin_coeffs: np.ndarray  # (N,):   b_1 .. b_N

    @property
    def degree(self) -> int:
        return self.cos_coeffs.shape[0] - 1

    @classmethod
    def from_samples(cls, samples: np.ndarray, modes: int) -> "RealTrigPoly":
        samples = np.asarray(samples, dtype=float)
        m = samples.shape[-1]
        _check_grid(m, modes)
        spec = np.fft.rfft(samples) / m
        a = 2.0 * spec[: modes + 1].real
        a[0] = spec[0].real
        b = -2.0 * spec[1 : modes + 1].imag
        return cls(a, b)

    def values(self, grid_size: int) -> np.ndarray:
        n = self.degree
        _check_grid(grid_size, n)
        half = np.zeros(grid_size // 2 + 1, dtype=complex)
        half[0] = self.cos_coeffs[0]
        half[1 : n + 1] = 0.5 * (self.cos_coeffs[1:] - 1j * self.sin_coeffs)
        return np.fft.irfft(half * grid_size, grid_size)

    def eval(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        j = np.arange(1, self.degree + 1)
        ang = np.multiply.outer(theta, j)
        return (
            self.cos_coeffs[0]
            + np.cos(ang) @ self.cos_coeffs[1:]
            + np.sin(ang) @ self.sin_coeffs
        )


def conjugate(u: RealTrigPoly) -> RealTrigPoly:
    """Harmonic conjugate of u, normalized to vanish at theta = 0 (zeta = 1).

    Mode-wise: cos j*theta -> sin j*theta, sin j*theta -> -cos j*theta, constants
    are killed; then a constant is added so the value at theta = 0 is zero.
    """
    a = np.zeros_like(u.cos_coeffs)
    a[1:] = -u.sin_coeffs
    b = u.cos_coeffs[1:].copy()
    a[0] = -a[1:].sum()  # value at theta = 0 is a0 + sum a_j
    return RealTrigPoly(a, b)
