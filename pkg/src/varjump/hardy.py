"""(p, 2)-atoms on periodic grids, finite atomic synthesis and H^p proxies."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AtomConstructionError, DomainError, GeometryError
from .fields import (Grid, SampledField, convolution_family, convolve, lp_quasinorm,
                     maximal_field)
from .kernels import KernelSpec, ScaleSet, make_kernel
from .report import CheckReport

PROFILES = ("haar-type", "polynomial-bump", "random-moment-free")
MAX_ATOMS = 256
NOISE_CELLS = 16


def check_p(p: float, n: int) -> float:
    p = float(p)
    lo = n / (n + 1.0)
    if not (lo < p <= 1.0):
        raise DomainError(f"p = {p} outside the admissible range ({lo:g}, 1] for n = {n}")
    return p


@dataclass(frozen=True)
class CubeRegion:
    """Cube ``Q = prod [c_i - r, c_i + r)`` of side ``2r``."""

    center: tuple
    half_side: float

    def __post_init__(self):
        c = tuple(float(v) for v in np.atleast_1d(self.center))
        if not all(math.isfinite(v) for v in c):
            raise DomainError("cube center must be finite")
        if not (math.isfinite(self.half_side) and self.half_side > 0):
            raise DomainError(f"cube half-side must be positive, got {self.half_side}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "half_side", float(self.half_side))

    @property
    def dimension(self) -> int:
        return len(self.center)

    @property
    def volume(self) -> float:
        return (2.0 * self.half_side) ** self.dimension

    def dilate(self, k: float) -> "CubeRegion":
        return CubeRegion(self.center, k * self.half_side)

    def check_fits(self, grid: Grid) -> None:
        """4Q must fit in the domain and ``4r <= L/2``."""
        if self.dimension != grid.n:
            raise GeometryError(f"cube dimension {self.dimension} does not match grid {grid.n}")
        r4 = 4.0 * self.half_side
        if r4 > grid.L / 2:
            raise GeometryError(f"4r = {r4} exceeds L/2 = {grid.L / 2}")
        if any(abs(c) + r4 > grid.L for c in self.center):
            raise GeometryError(f"4Q around {self.center} leaves the domain [-{grid.L}, {grid.L})")

    def mask(self, grid: Grid) -> np.ndarray:
        eps = 1e-9 * grid.spacing
        coords = grid.coordinates()
        if grid.n == 1:
            coords = coords[..., None]
        lo = np.asarray(self.center) - self.half_side - eps
        hi = np.asarray(self.center) + self.half_side - eps
        return np.all((coords >= lo) & (coords < hi), axis=-1)

    def describe(self) -> dict:
        return {"center": list(self.center), "half_side": self.half_side}


@dataclass(frozen=True, eq=False)
class Atom:
    region: CubeRegion
    p: float
    samples: SampledField
    profile: str
    seed: int = 0

    @property
    def grid(self) -> Grid:
        return self.samples.grid

    @property
    def size_bound(self) -> float:
        return self.region.volume ** (0.5 - 1.0 / self.p)

    def manifest(self) -> dict:
        return {"profile": self.profile, "center": list(self.region.center),
                "half_side": self.region.half_side, "p": self.p, "seed": self.seed}


def _profile_values(grid: Grid, region: CubeRegion, profile: str, seed: int) -> np.ndarray:
    coords = grid.coordinates()
    if grid.n == 1:
        coords = coords[..., None]
    u = (coords - np.asarray(region.center)) / region.half_side
    if profile == "haar-type":
        return np.where(u[..., 0] < 0, 1.0, -1.0)
    if profile == "polynomial-bump":
        r2 = np.sum(u * u, axis=-1)
        bump = np.zeros_like(r2)
        inside = r2 < 1
        bump[inside] = np.exp(-1.0 / (1.0 - r2[inside]))
        return u[..., 0] * bump
    if profile == "random-moment-free":
        # Noise lives on a fixed lattice of Q so the same seed gives the same
        # function on every grid resolution.
        rng = np.random.default_rng(seed)
        noise = rng.standard_normal((NOISE_CELLS,) * grid.n)
        cell = np.clip(np.floor((u + 1.0) * NOISE_CELLS / 2).astype(int), 0, NOISE_CELLS - 1)
        vals = noise[tuple(cell[..., i] for i in range(grid.n))]
        mask = region.mask(grid)
        vals = np.where(mask, vals - vals[mask].mean(), 0.0)
        smooth = make_kernel("gaussian", grid.n)
        return convolve(SampledField(grid, vals), smooth, region.half_side / 8).values
    raise DomainError(f"unknown atom profile {profile!r}; choose from {PROFILES}")


def atom_from_profile(grid: Grid, region: CubeRegion, p: float, values,
                      profile: str = "custom", seed: int = 0) -> Atom:
    """Restrict to Q, subtract the mean on Q and saturate the size bound."""
    p = check_p(p, grid.n)
    region.check_fits(grid)
    mask = region.mask(grid)
    if not mask.any():
        raise AtomConstructionError("cube contains no grid points")
    vals = np.asarray(values, dtype=float)
    vals = np.where(mask, vals - vals[mask].mean(), 0.0)
    norm = math.sqrt(float(np.sum(vals * vals)) * grid.cell_volume)
    scale_ref = float(np.max(np.abs(values))) if np.size(values) else 0.0
    if norm <= 1e-12 * scale_ref * math.sqrt(region.volume):
        raise AtomConstructionError(f"profile {profile!r} vanishes after mean subtraction")
    vals *= region.volume ** (0.5 - 1.0 / p) / norm
    return Atom(region, p, SampledField(grid, vals), profile, seed)


def make_atom(grid: Grid, region: CubeRegion, p: float, profile: str, seed: int = 0) -> Atom:
    region.check_fits(grid)
    values = _profile_values(grid, region, profile, seed)
    return atom_from_profile(grid, region, p, values, profile, seed)


def validate_atom(atom: Atom, tol: float = 1e-8) -> CheckReport:
    """Check support, size and cancellation; failures are report content."""
    grid = atom.grid
    vals = np.asarray(atom.samples.values, dtype=float)
    mask = atom.region.mask(grid)
    off_support = float(np.max(np.abs(vals[~mask]))) if (~mask).any() else 0.0
    l2 = math.sqrt(float(np.sum(vals * vals)) * grid.cell_volume)
    l1 = float(np.sum(np.abs(vals))) * grid.cell_volume
    mean = float(np.sum(vals)) * grid.cell_volume
    bound = atom.size_bound
    support_ok = off_support == 0.0
    size_ok = l2 <= bound * (1.0 + tol)
    cancel_ok = abs(mean) <= tol * l1
    return CheckReport(
        check_id="atom",
        passed=support_ok and size_ok and cancel_ok,
        measured={"support": support_ok, "size": size_ok, "cancellation": cancel_ok,
                  "off_support_max": off_support, "l2_norm": l2, "size_bound": bound,
                  "integral": mean, "l1_norm": l1},
        tolerance=tol,
        metadata={**atom.manifest(), "grid": grid.describe()},
    )


@dataclass(frozen=True, eq=False)
class AtomicCombination:
    atoms: tuple
    coeffs: tuple
    p: float = field(default=1.0)

    def __post_init__(self):
        atoms, coeffs = tuple(self.atoms), tuple(float(c) for c in self.coeffs)
        if not atoms or len(atoms) > MAX_ATOMS:
            raise DomainError(f"a combination holds 1 to {MAX_ATOMS} atoms")
        if len(atoms) != len(coeffs):
            raise DomainError("one coefficient per atom is required")
        if any(not (math.isfinite(c) and c > 0) for c in coeffs):
            raise DomainError("coefficients must be positive")
        grid = atoms[0].grid
        for a in atoms:
            if a.grid != grid:
                raise DomainError("all atoms of a combination must share one grid")
            if a.p != self.p:
                raise DomainError(f"atom exponent {a.p} differs from combination exponent {self.p}")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "coeffs", coeffs)


def synthesize(combo: AtomicCombination):
    """Return ``(sum lambda_j a_j, (sum lambda_j^p)^(1/p))``."""
    grid = combo.atoms[0].grid
    total = np.zeros(grid.shape)
    for lam, atom in zip(combo.coeffs, combo.atoms):
        total += lam * atom.samples.values
    quasi = sum(lam ** combo.p for lam in combo.coeffs) ** (1.0 / combo.p)
    return SampledField(grid, total), quasi


def hp_quasinorm(f: SampledField, spec: KernelSpec, scales: ScaleSet, p: float) -> float:
    """Grid proxy for ``||f||_{H^p}``: the L^p quasi-norm of the maximal function."""
    p = check_p(p, f.grid.n)
    return lp_quasinorm(maximal_field(convolution_family(f, spec, scales)), p)
