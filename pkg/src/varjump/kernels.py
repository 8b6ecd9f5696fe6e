"""Kernel catalog: dilations, Fourier transforms, scale sets and C1.

Fourier convention: ``phi_hat(xi) = int phi(x) exp(-2 pi i x.xi) dx``, so
Plancherel holds with constant 1 and ``phi_t_hat(xi) = phi_hat(t xi)``.

All catalog kernels are radial, real and even, so their transforms are real.
Points are arrays of shape ``(...,)`` in dimension 1 and ``(..., 2)`` in
dimension 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.special import j0, roots_legendre

from .errors import DomainError

FAMILIES = ("gaussian", "bump", "dog1")

_DEFAULT_PARAMS = {
    "gaussian": {},
    "bump": {"radius": 1.0},
    "dog1": {"ratio": 2.0, "weight": 1.0},
}

# Bump transform table, in units of radius*|xi|. Beyond BUMP_TABLE_MAX the
# transform is below 1e-12 in both dimensions and is returned as 0.
BUMP_TABLE_MAX = 96.0
BUMP_TABLE_STEP = 1.0 / 128.0
BUMP_QUADRATURE_NODES = 4096


@dataclass(frozen=True)
class KernelSpec:
    family: str
    dimension: int = 1
    params: tuple = field(default=())

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown kernel family {self.family!r}; choose from {FAMILIES}")
        if self.dimension not in (1, 2):
            raise DomainError(f"kernel dimension must be 1 or 2, got {self.dimension}")
        merged = dict(_DEFAULT_PARAMS[self.family])
        for key, value in dict(self.params).items():
            if key not in merged:
                raise DomainError(f"kernel {self.family!r} has no parameter {key!r}")
            merged[key] = float(value)
        for key, value in merged.items():
            if not math.isfinite(value) or value <= 0:
                raise DomainError(f"kernel parameter {key} must be positive, got {value}")
        if self.family == "dog1" and merged["ratio"] == 1.0:
            raise DomainError("dog1 ratio must differ from 1")
        object.__setattr__(self, "params", tuple(sorted(merged.items())))

    def param(self, name: str) -> float:
        return dict(self.params)[name]

    def describe(self) -> dict:
        return {"family": self.family, "dimension": self.dimension, **dict(self.params)}


def make_kernel(name: str, dimension: int = 1, **params) -> KernelSpec:
    return KernelSpec(name, dimension, tuple(sorted(params.items())))


@dataclass(frozen=True)
class ScaleSet:
    """Finite strictly increasing set of positive scales standing in for t > 0."""

    scales: tuple

    def __post_init__(self):
        s = tuple(float(t) for t in self.scales)
        if not 1 <= len(s) <= 64:
            raise DomainError(f"a scale set holds 1 to 64 scales, got {len(s)}")
        if any(not math.isfinite(t) or t <= 0 for t in s):
            raise DomainError("scales must be finite and positive")
        if any(b <= a for a, b in zip(s, s[1:])):
            raise DomainError("scales must be strictly increasing")
        object.__setattr__(self, "scales", s)

    def __len__(self):
        return len(self.scales)

    def __iter__(self):
        return iter(self.scales)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.scales)

    def union(self, other: Iterable[float]) -> "ScaleSet":
        return ScaleSet(tuple(sorted(set(self.scales) | set(float(t) for t in other))))


def lacunary_scales(base: float, t0: float, count: int) -> ScaleSet:
    """Scales ``t0 * base**j`` for ``j = 0 .. count-1``."""
    if not (math.isfinite(base) and base > 1):
        raise DomainError(f"lacunary base must exceed 1, got {base}")
    if not (math.isfinite(t0) and t0 > 0):
        raise DomainError(f"first scale must be positive, got {t0}")
    if int(count) != count or not 2 <= count <= 64:
        raise DomainError(f"scale count must be an integer in [2, 64], got {count}")
    return ScaleSet(tuple(t0 * base ** j for j in range(int(count))))


def _squared_radius(spec: KernelSpec, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if spec.dimension == 1:
        return x * x
    if x.shape[-1:] != (2,):
        raise DomainError(f"2-d points need a trailing axis of length 2, got shape {x.shape}")
    return np.sum(x * x, axis=-1)


def _check_scale(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t <= 0:
        raise DomainError(f"scale must be a finite positive real, got {t}")
    return t


# -- compact bump ------------------------------------------------------------

def _bump_shape(u2: np.ndarray) -> np.ndarray:
    inside = u2 < 1.0
    out = np.zeros_like(u2, dtype=float)
    out[inside] = np.exp(-1.0 / (1.0 - u2[inside]))
    return out


@lru_cache(maxsize=None)
def _bump_quadrature(dimension: int):
    nodes, weights = roots_legendre(BUMP_QUADRATURE_NODES)
    r = 0.5 * (nodes + 1.0)
    w = 0.5 * weights * _bump_shape(r * r)
    if dimension == 1:
        mass = 2.0 * np.sum(w)
    else:
        w = w * r
        mass = 2.0 * np.pi * np.sum(w)
    return r, w, mass


@lru_cache(maxsize=None)
def _bump_table(dimension: int) -> CubicSpline:
    """Unit-radius bump transform tabulated on [0, BUMP_TABLE_MAX]."""
    r, w, mass = _bump_quadrature(dimension)
    u = np.arange(0.0, BUMP_TABLE_MAX + BUMP_TABLE_STEP / 2, BUMP_TABLE_STEP)
    phase = 2.0 * np.pi * np.outer(u, r)
    if dimension == 1:
        vals = 2.0 * (np.cos(phase) @ w)
    else:
        vals = 2.0 * np.pi * (j0(phase) @ w)
    return CubicSpline(u, vals / mass)


def _bump_value(spec: KernelSpec, r2: np.ndarray) -> np.ndarray:
    radius = spec.param("radius")
    _, _, mass = _bump_quadrature(spec.dimension)
    return _bump_shape(r2 / radius ** 2) / (mass * radius ** spec.dimension)


def _bump_fourier(spec: KernelSpec, k2: np.ndarray) -> np.ndarray:
    u = spec.param("radius") * np.sqrt(k2)
    out = np.zeros_like(u)
    inside = u <= BUMP_TABLE_MAX
    out[inside] = _bump_table(spec.dimension)(u[inside])
    return out


# -- generic evaluation ------------------------------------------------------

def _gauss(r2: np.ndarray, width: float, n: int) -> np.ndarray:
    return np.exp(-np.pi * r2 / width ** 2) / width ** n


def profile_value(spec: KernelSpec, r2: np.ndarray) -> np.ndarray:
    """Undilated kernel as a function of the squared radius."""
    n = spec.dimension
    if spec.family == "gaussian":
        return np.exp(-np.pi * r2)
    if spec.family == "dog1":
        w, s = spec.param("weight"), spec.param("ratio")
        return (1.0 + w) * _gauss(r2, 1.0, n) - w * _gauss(r2, s, n)
    return _bump_value(spec, r2)


def fourier_profile(spec: KernelSpec, k2: np.ndarray) -> np.ndarray:
    """Undilated transform as a function of the squared frequency radius."""
    if spec.family == "gaussian":
        return np.exp(-np.pi * k2)
    if spec.family == "dog1":
        w, s = spec.param("weight"), spec.param("ratio")
        return (1.0 + w) * np.exp(-np.pi * k2) - w * np.exp(-np.pi * s * s * k2)
    return _bump_fourier(spec, k2)


def kernel_value(spec: KernelSpec, t: float, x) -> np.ndarray:
    """``phi_t(x) = t^-n phi(x / t)``."""
    t = _check_scale(t)
    r2 = _squared_radius(spec, x) / (t * t)
    return profile_value(spec, r2) / t ** spec.dimension


def kernel_fourier(spec: KernelSpec, t: float, xi) -> np.ndarray:
    """``phi_t_hat(xi) = phi_hat(t xi)``; real because every kernel is even."""
    t = _check_scale(t)
    return fourier_profile(spec, _squared_radius(spec, xi) * (t * t))


# -- diagnostics -------------------------------------------------------------

def kernel_integral(spec: KernelSpec, t: float = 1.0, halfwidth: float = 12.0,
                    points: int = 4096) -> float:
    """Riemann-sum integral of ``phi_t`` over a reference grid."""
    h = 2.0 * halfwidth / points
    axis = -halfwidth + h * np.arange(points)
    if spec.dimension == 1:
        return float(np.sum(kernel_value(spec, t, axis)) * h)
    mesh = np.stack(np.meshgrid(axis, axis, indexing="ij"), axis=-1)
    return float(np.sum(kernel_value(spec, t, mesh)) * h * h)


def decay_constant(spec: KernelSpec, radii=None) -> float:
    """Smallest C with ``|phi(x)| <= C (1 + |x|)^(-n-3)`` at the sampled radii."""
    if radii is None:
        radii = np.linspace(0.0, 40.0, 4001)
    radii = np.asarray(radii, dtype=float)
    vals = np.abs(profile_value(spec, radii * radii))
    return float(np.max(vals * (1.0 + radii) ** (spec.dimension + 3)))


def frequency_sweep(nyquist: float, dimension: int = 1, density: int = 8192,
                    extra=None) -> np.ndarray:
    """Radial sweep of frequency points for :func:`hypothesis_constant`.

    Covers ``[0, sqrt(n) * nyquist]`` (the largest grid frequency radius) with
    ``density`` equal steps along the first axis, plus any ``extra`` radii.
    Sweeping one axis suffices because every catalog kernel is radial.
    """
    radii = np.linspace(0.0, math.sqrt(dimension) * nyquist, density + 1)
    if extra is not None:
        radii = np.unique(np.concatenate([radii, np.asarray(extra, dtype=float).ravel()]))
    if dimension == 1:
        return radii
    pts = np.zeros((radii.size, 2))
    pts[:, 0] = radii
    return pts


def hypothesis_constant(spec: KernelSpec, scales: ScaleSet, xi_grid) -> tuple:
    """``C1 = max over xi_grid of sum_t |phi_t_hat(xi)|^2`` and its argmax point."""
    xi = np.asarray(xi_grid, dtype=float)
    npts = xi.shape[0] if xi.ndim else 0
    if npts == 0:
        raise DomainError("frequency grid must be non-empty")
    total = np.zeros(_squared_radius(spec, xi).shape)
    for t in scales:
        v = kernel_fourier(spec, t, xi)
        total += v * v
    k = int(np.argmax(total))
    return float(total[k]), xi[k]
