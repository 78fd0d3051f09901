"""Grid construction, discrete Fourier transforms, mode truncation, and
dealiased evaluation of pointwise nonlinearities on the 2pi-periodic square.

Conventions
-----------
The domain is [-pi, pi)^2 sampled uniformly at x_j = -pi + j*(2pi/M_s).
Spectral coefficients follow the integral convention

    u_hat(k) = (2pi/M_s)^2 * sum_j u(x_j) exp(-i k.x_j),

so u(x) = (2pi)^{-2} sum_k u_hat(k) exp(i k.x).  A SpectralField stores the
full centered block of retained modes |k|_inf <= N, shape (2N+1, 2N+1), with
index (i, j) holding wavenumber (i-N, j-N).  Truncation to X_N is therefore
structural: coefficients outside the block cannot be represented at all.

Real-representability is an algebraic subspace (u_hat(-k) = conj(u_hat(k))),
not a property the step arithmetic preserves automatically in floating point.
Anti-Hermitian roundoff lies in the kernel of the grid reconstruction, so it
evolves as an uncoupled "ghost" system under any per-mode recursion and can
grow exponentially wherever the recursion amplifies.  Every operation that
produces coefficients from real data projects onto the Hermitian subspace
(hermitian_project) to keep that ghost component identically zero.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NonHermitianInput

HERMITIAN_RTOL = 1e-12

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class GridSpec:
    """Discretization of the periodic square: retained modes and samples.

    modes_per_axis N: Fourier modes kept satisfy |k|_inf <= N.
    samples_per_axis M_s: uniform samples per axis, M_s >= 2N+2 so every
    retained mode is exactly representable with Hermitian symmetry intact.
    """

    modes_per_axis: int
    samples_per_axis: int

    def __post_init__(self):
        n, m = self.modes_per_axis, self.samples_per_axis
        if n < 1:
            raise ValueError(f"modes_per_axis must be >= 1, got {n}")
        if m < 2 * n + 2:
            raise ValueError(
                f"samples_per_axis must be >= 2N+2 = {2 * n + 2}, got {m}")

    @classmethod
    def from_modes(cls, n: int) -> "GridSpec":
        # default sampling M_s = 2(N+1)
        return cls(n, 2 * (n + 1))

    @classmethod
    def from_samples(cls, m: int) -> "GridSpec":
        return cls(m // 2 - 1, m)

    @property
    def coordinates(self) -> np.ndarray:
        """1D sample coordinates x_j = -pi + j*(2pi/M_s)."""
        return _tables(self).x

    @property
    def wavenumbers(self) -> np.ndarray:
        """1D retained wavenumbers -N..N (block index order)."""
        return _tables(self).k

    @property
    def ksq(self) -> np.ndarray:
        """Block of kappa^2 = k1^2 + k2^2 per retained mode."""
        return _tables(self).kk2

    @property
    def padded_samples(self) -> int:
        """Grid size used for alias-free cubic products (>= 4N+1)."""
        return _tables(self).pad


class _GridTables:
    __slots__ = ("x", "k", "kk2", "pad")

    def __init__(self, grid: GridSpec):
        n, m = grid.modes_per_axis, grid.samples_per_axis
        self.x = -np.pi + TWO_PI * np.arange(m) / m
        self.k = np.arange(-n, n + 1)
        self.kk2 = (self.k[:, None] ** 2 + self.k[None, :] ** 2).astype(float)
        # cubic products reach mode 3N; a P-point grid folds mode m onto
        # m +- P, which stays outside |k| <= N only when P >= 4N+1
        p = 1
        while p < 4 * n + 1:
            p *= 2
        self.pad = p


@lru_cache(maxsize=None)
def _tables(grid: GridSpec) -> _GridTables:
    return _GridTables(grid)


@dataclass(frozen=True)
class RealField:
    """Real grid samples of u, row index along x, column index along y."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        m = self.grid.samples_per_axis
        v = np.asarray(self.values, dtype=float)
        if v.shape != (m, m):
            raise ValueError(f"values must have shape {(m, m)}, got {v.shape}")
        if not np.isfinite(v).all():
            raise ValueError("field values must be finite")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class SpectralField:
    """Centered block of retained coefficients u_hat(k), |k|_inf <= N."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        n = self.grid.modes_per_axis
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != (2 * n + 1, 2 * n + 1):
            raise ValueError(
                f"coeffs must have shape {(2 * n + 1, 2 * n + 1)}, got {c.shape}")
        object.__setattr__(self, "coeffs", c)

    def mode(self, k1: int, k2: int) -> complex:
        n = self.grid.modes_per_axis
        if abs(k1) > n or abs(k2) > n:
            return 0.0 + 0.0j
        return complex(self.coeffs[k1 + n, k2 + n])

    @property
    def mean(self) -> float:
        """Field average, u_hat(0)/(2pi)^2."""
        n = self.grid.modes_per_axis
        return float(self.coeffs[n, n].real) / TWO_PI ** 2


def hermitian_defect(coeffs: np.ndarray) -> float:
    """Max deviation from u_hat(-k) = conj(u_hat(k)) over the block."""
    return float(np.abs(coeffs - np.conj(coeffs[::-1, ::-1])).max())


def hermitian_project(coeffs: np.ndarray) -> np.ndarray:
    """Nearest conjugate-symmetric block (kills the ghost component)."""
    return 0.5 * (coeffs + np.conj(coeffs[::-1, ::-1]))


def _require_hermitian(coeffs: np.ndarray) -> np.ndarray:
    scale = float(np.abs(coeffs).max())
    defect = hermitian_defect(coeffs)
    if defect > HERMITIAN_RTOL * max(scale, 1.0):
        raise NonHermitianInput(
            f"coefficients deviate from conjugate symmetry by {defect:.3e} "
            f"(field scale {scale:.3e}, tolerance {HERMITIAN_RTOL:g} relative)")
    return hermitian_project(coeffs)


def _origin_phases(n: int) -> np.ndarray:
    """(-1)^(k1+k2) block: the FFT's index-0 sample sits at x = -pi, not 0."""
    s = np.where(np.arange(-n, n + 1) % 2 == 0, 1.0, -1.0)
    return s[:, None] * s[None, :]


def _block_from_half(fq: np.ndarray, n: int) -> np.ndarray:
    """Extract the centered (2N+1)^2 block from an rfft2 half-spectrum."""
    p = fq.shape[0]
    rows = np.arange(-n, n + 1) % p
    block = np.empty((2 * n + 1, 2 * n + 1), dtype=complex)
    block[:, n:] = fq[np.ix_(rows, np.arange(n + 1))]
    # negative k2 by conjugate symmetry of the real source field
    block[:, :n] = np.conj(block[::-1, :n:-1])
    return hermitian_project(block * _origin_phases(n))


def _half_from_block(coeffs: np.ndarray, n: int, p: int) -> np.ndarray:
    """Embed the centered block into a (P, P//2+1) rfft2 half-spectrum."""
    h = np.zeros((p, p // 2 + 1), dtype=complex)
    rows = np.arange(-n, n + 1) % p
    shifted = coeffs * _origin_phases(n)
    h[np.ix_(rows, np.arange(n + 1))] = shifted[:, n:]
    return h


def forward_transform(f: RealField) -> SpectralField:
    """DFT with the (2pi/M_s)^2 quadrature normalization, truncated to X_N."""
    m = f.grid.samples_per_axis
    n = f.grid.modes_per_axis
    fq = np.fft.rfft2(f.values) * (TWO_PI / m) ** 2
    return SpectralField(f.grid, _block_from_half(fq, n))


def _samples_on(coeffs: np.ndarray, n: int, p: int) -> np.ndarray:
    """Evaluate the trigonometric polynomial on a P-point grid."""
    h = _half_from_block(coeffs, n, p)
    return np.fft.irfft2(h, s=(p, p)) * (p / TWO_PI) ** 2


def inverse_transform(field: SpectralField) -> RealField:
    """Grid samples of the field; rejects non-Hermitian coefficients."""
    c = _require_hermitian(field.coeffs)
    m = field.grid.samples_per_axis
    n = field.grid.modes_per_axis
    return RealField(field.grid, _samples_on(c, n, m))


# Registered pointwise maps usable in dealiased evaluation.  "f" is the
# double-well derivative driving the scheme.
POINTWISE_MAPS = {
    "f": lambda v: v ** 3 - v,
    "cube": lambda v: v ** 3,
    "neg": lambda v: -v,
}


def apply_nonlinearity_dealiased(u: SpectralField, g, dealias: bool = True) -> SpectralField:
    """Pi_N of the coefficients of g(u) for a registered pointwise map g.

    With dealias=True (default) the map is evaluated on a zero-padded grid
    large enough that retained modes of a cubic carry no aliasing, so the
    result is the exact Galerkin projection for polynomial g of degree <= 3.
    With dealias=False the map is evaluated on the base grid (aliased
    pseudo-spectral product).
    """
    fn = POINTWISE_MAPS[g] if isinstance(g, str) else g
    n = u.grid.modes_per_axis
    p = u.grid.padded_samples if dealias else u.grid.samples_per_axis
    c = _require_hermitian(u.coeffs)
    # blow-up is data, not a crash: let inf/nan flow to the step's state check
    with np.errstate(over="ignore", invalid="ignore"):
        w = fn(_samples_on(c, n, p))
        wq = np.fft.rfft2(w) * (TWO_PI / p) ** 2
    return SpectralField(u.grid, _block_from_half(wq, n))
