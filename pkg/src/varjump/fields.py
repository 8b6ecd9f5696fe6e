"""Periodic grids, spectral convolution families and pointwise scale operators."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import seqvar
from .errors import DomainError, TailSpillError
from .kernels import KernelSpec, ScaleSet, kernel_fourier

MAX_POINTS = 1 << 22
MIN_POINTS_PER_AXIS = 64
TAIL_FRACTION = 1.0 / 8.0
IMAG_RESIDUE_TOL = 1e-10


@dataclass(frozen=True)
class Grid:
    """Periodic grid on ``[-L, L)^n`` with ``N`` points per axis."""

    n: int
    L: float
    N: int

    def __post_init__(self):
        if self.n not in (1, 2):
            raise DomainError(f"grid dimension must be 1 or 2, got {self.n}")
        if not (math.isfinite(self.L) and self.L > 0):
            raise DomainError(f"grid halfwidth must be positive, got {self.L}")
        N = int(self.N)
        if N != self.N or N < MIN_POINTS_PER_AXIS or N & (N - 1):
            raise DomainError(f"points per axis must be a power of two >= 64, got {self.N}")
        if N ** self.n > MAX_POINTS:
            raise DomainError(f"grid has {N ** self.n} points, above the cap {MAX_POINTS}")
        object.__setattr__(self, "L", float(self.L))
        object.__setattr__(self, "N", N)

    @property
    def spacing(self) -> float:
        return 2.0 * self.L / self.N

    @property
    def cell_volume(self) -> float:
        return self.spacing ** self.n

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.n

    @property
    def size(self) -> int:
        return self.N ** self.n

    @property
    def nyquist(self) -> float:
        return 0.5 / self.spacing

    def axis(self) -> np.ndarray:
        return -self.L + self.spacing * np.arange(self.N)

    def coordinates(self) -> np.ndarray:
        """Point coordinates: shape (N,) for n=1, (N, N, 2) for n=2."""
        ax = self.axis()
        if self.n == 1:
            return ax
        return np.stack(np.meshgrid(ax, ax, indexing="ij"), axis=-1)

    def frequencies(self) -> np.ndarray:
        """Grid frequencies in the same layout as :meth:`coordinates` (FFT order)."""
        fr = np.fft.fftfreq(self.N, d=self.spacing)
        if self.n == 1:
            return fr
        return np.stack(np.meshgrid(fr, fr, indexing="ij"), axis=-1)

    def refined(self) -> "Grid":
        return Grid(self.n, self.L, 2 * self.N)

    def describe(self) -> dict:
        return {"dimension": self.n, "L": self.L, "N": self.N}


def make_grid(n: int, L: float, N: int) -> Grid:
    return Grid(n, L, N)


@dataclass(frozen=True, eq=False)
class SampledField:
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.shape != self.grid.shape:
            raise DomainError(f"field shape {vals.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("field values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def scaled(self, c: float) -> "SampledField":
        return SampledField(self.grid, c * self.values)


@dataclass(frozen=True, eq=False)
class ScaleFamilyField:
    """The discretized family ``phi_t * f``, axis 0 running over the scales."""

    grid: Grid
    scales: ScaleSet
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (len(self.scales),) + self.grid.shape:
            raise DomainError(f"family shape {vals.shape} does not match "
                              f"{len(self.scales)} scales on grid {self.grid.shape}")
        if not np.all(np.isfinite(vals)):
            raise DomainError("family values must be finite")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def row(self, j: int) -> SampledField:
        return SampledField(self.grid, self.values[j])


def sample(grid: Grid, func) -> SampledField:
    """Sample ``func(coordinates)`` on the grid."""
    return SampledField(grid, np.asarray(func(grid.coordinates()), dtype=float))


def zeros(grid: Grid) -> SampledField:
    return SampledField(grid, np.zeros(grid.shape))


# -- convolution -------------------------------------------------------------

def check_admissible(grid: Grid, t: float) -> None:
    if t > TAIL_FRACTION * grid.L:
        raise TailSpillError(
            f"scale {t} exceeds L/8 = {TAIL_FRACTION * grid.L} on a grid of halfwidth {grid.L}")


def multiplier(grid: Grid, spec: KernelSpec, t: float) -> np.ndarray:
    """``phi_t_hat`` sampled at the grid frequencies."""
    if spec.dimension != grid.n:
        raise DomainError(f"kernel dimension {spec.dimension} does not match grid {grid.n}")
    return kernel_fourier(spec, t, grid.frequencies())


def _apply_multiplier(fhat: np.ndarray, mult: np.ndarray, scale_ref: float) -> np.ndarray:
    out = np.fft.ifftn(fhat * mult)
    residue = np.max(np.abs(out.imag)) if out.size else 0.0
    if residue > IMAG_RESIDUE_TOL * max(1.0, scale_ref):
        raise DomainError(f"imaginary residue {residue:.3e} after spectral convolution")
    return out.real


def convolve(f: SampledField, spec: KernelSpec, t: float) -> SampledField:
    """Periodic ``phi_t * f`` computed spectrally."""
    check_admissible(f.grid, t)
    fhat = np.fft.fftn(f.values)
    ref = float(np.max(np.abs(f.values))) if f.values.size else 0.0
    return SampledField(f.grid, _apply_multiplier(fhat, multiplier(f.grid, spec, t), ref))


def convolution_family(f: SampledField, spec: KernelSpec, scales: ScaleSet) -> ScaleFamilyField:
    for t in scales:
        check_admissible(f.grid, t)
    fhat = np.fft.fftn(f.values)
    ref = float(np.max(np.abs(f.values))) if f.values.size else 0.0
    rows = [_apply_multiplier(fhat, multiplier(f.grid, spec, t), ref) for t in scales]
    return ScaleFamilyField(f.grid, scales, np.stack(rows))


# -- norms -------------------------------------------------------------------

def lp_quasinorm(f, p: float, mask=None) -> float:
    """Riemann ``(sum |f|^p dx)^(1/p)`` for ``0 < p <= 2``, optionally over a mask."""
    p = float(p)
    if not (0 < p <= 2):
        raise DomainError(f"p must lie in (0, 2], got {p}")
    vals = np.abs(np.asarray(f.values, dtype=float))
    if mask is not None:
        vals = vals[mask]
    return float(np.sum(vals ** p) * f.grid.cell_volume) ** (1.0 / p)


def lp_integral(f, p: float, mask=None) -> float:
    """``sum |f|^p dx``: the p-th power of :func:`lp_quasinorm`."""
    return lp_quasinorm(f, p, mask) ** p


def l2_squared(f) -> float:
    vals = np.asarray(f.values, dtype=float)
    return float(np.sum(vals * vals) * f.grid.cell_volume)


def spectral_l2_squared(f) -> float:
    """``||f||_2^2`` computed from the DFT (discrete Plancherel)."""
    fhat = np.fft.fftn(np.asarray(f.values, dtype=float))
    power = fhat.real ** 2 + fhat.imag ** 2
    return float(np.sum(power) / f.grid.size * f.grid.cell_volume)


# -- pointwise operators across scales ---------------------------------------

def maximal_field(fam: ScaleFamilyField) -> SampledField:
    return SampledField(fam.grid, np.max(np.abs(fam.values), axis=0))


def variation_field(fam: ScaleFamilyField, rho: float) -> SampledField:
    return SampledField(fam.grid, seqvar.rho_variation_along(fam.values, rho))


def jump_field(fam: ScaleFamilyField, lam: float) -> SampledField:
    """Pointwise lambda-jump count across scales (integer-valued field)."""
    return SampledField(fam.grid, seqvar.jump_count_along(fam.values, lam))


def square_field(fam: ScaleFamilyField) -> SampledField:
    return SampledField(fam.grid, seqvar.square_sum_along(fam.values))


def band_limited_field(grid: Grid, rng: np.random.Generator, fraction: float = 0.25) -> SampledField:
    """Random real field whose spectrum vanishes at or above ``fraction * nyquist``."""
    coeffs = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    freq = grid.frequencies()
    radius = np.abs(freq) if grid.n == 1 else np.sqrt(np.sum(freq * freq, axis=-1))
    coeffs[radius >= fraction * grid.nyquist] = 0.0
    vals = np.fft.ifftn(coeffs).real
    vals /= max(float(np.max(np.abs(vals))), 1e-300)
    return SampledField(grid, vals)
