"""Run configuration: flat dotted-key grammar, defaults and validation.

Grammar: one ``key = value`` per line, ``#`` starts a comment, blank lines
are ignored. Lists are comma separated. Numbers may be written as fractions
(``1/256``). Unknown keys, repeated keys and constraint violations are
rejected with the line number of the offending entry.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from pathlib import Path

from .errors import ConfigError, VarJumpError
from .fields import TAIL_FRACTION, Grid
from .hardy import PROFILES
from .kernels import KernelSpec, ScaleSet, lacunary_scales

DEFAULT_LAMBDAS = tuple(10.0 ** (k / 2) for k in range(-4, 5))

# per-dimension defaults for the grid and the convolution scales
_DIMENSION_DEFAULTS = {
    1: {"L": 16.0, "N": 1024, "t0": 1.0 / 256, "probes": 7},
    2: {"L": 8.0, "N": 256, "t0": 1.0 / 512, "probes": 6},
}


@dataclass(frozen=True)
class Tolerances:
    plancherel: float = 1e-10
    identity: float = 1e-9
    inequality: float = 1e-6
    pointwise: float = 1e-12
    local: float = 0.05
    local_refine: float = 0.02
    uniform_refine: float = 0.10
    slope: float = 0.3
    linearity: float = 0.2


@dataclass(frozen=True)
class RunConfig:
    dimension: int = 1
    seed: int = 20240917
    L: float = 16.0
    N: int = 1024
    kernel: str = "gaussian"
    kernel_params: tuple = ()
    scale_base: float = 2.0
    scale_t0: float = 1.0 / 256
    scale_count: int = 10
    scale_values: tuple = ()
    sequence_count: int = 100_000
    sequence_max_length: int = 24
    oracle_count: int = 10_000
    oracle_max_length: int = 12
    field_count: int = 32
    band_fraction: float = 0.25
    atom_count: int = 64
    uniform_atom_count: int = 128
    combination_count: int = 16
    profiles: tuple = PROFILES
    p_values: tuple = (0.7, 0.9, 1.0)
    lambdas: tuple = DEFAULT_LAMBDAS
    rhos: tuple = (2.0, 2.5, 3.0, 4.0)
    jump_rhos: tuple = (2.0, 3.0)
    farfield_base: float = 2.0
    farfield_t0: float = 1.0 / 16
    farfield_count: int = 10
    farfield_half_side: float = 1.0 / 32
    farfield_probes: int = 7
    tolerances: Tolerances = field(default_factory=Tolerances)
    report_path: str = "report.json"
    details_dir: str = ""

    def grid(self) -> Grid:
        return Grid(self.dimension, self.L, self.N)

    def kernel_spec(self) -> KernelSpec:
        return KernelSpec(self.kernel, self.dimension, self.kernel_params)

    def scales(self) -> ScaleSet:
        if self.scale_values:
            return ScaleSet(self.scale_values)
        return lacunary_scales(self.scale_base, self.scale_t0, self.scale_count)

    def farfield_scales(self) -> ScaleSet:
        return lacunary_scales(self.farfield_base, self.farfield_t0, self.farfield_count)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kernel_params"] = dict(self.kernel_params)
        return d

    def digest(self) -> str:
        payload = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    def validate(self) -> "RunConfig":
        try:
            _validate(self)
        except _Invalid as exc:
            raise ConfigError(str(exc)) from None
        return self


# key -> (RunConfig attribute, parser)
def _num(text: str) -> float:
    try:
        value = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None
    return value


def _int(text: str) -> int:
    value = _num(text)
    if value != int(value):
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def _list(conv):
    def parse(text: str) -> tuple:
        items = [t.strip() for t in text.split(",") if t.strip()]
        if not items:
            raise ValueError("empty list")
        return tuple(conv(t) for t in items)
    return parse


def _str(text: str) -> str:
    return text.strip()


_KEYS = {
    "dimension": ("dimension", _int),
    "seed": ("seed", _int),
    "grid.L": ("L", _num),
    "grid.N": ("N", _int),
    "kernel.name": ("kernel", _str),
    "scales.base": ("scale_base", _num),
    "scales.t0": ("scale_t0", _num),
    "scales.count": ("scale_count", _int),
    "scales.values": ("scale_values", _list(_num)),
    "sequences.count": ("sequence_count", _int),
    "sequences.max_length": ("sequence_max_length", _int),
    "sequences.oracle_count": ("oracle_count", _int),
    "sequences.oracle_max_length": ("oracle_max_length", _int),
    "fields.count": ("field_count", _int),
    "fields.band_fraction": ("band_fraction", _num),
    "atoms.count": ("atom_count", _int),
    "atoms.uniform_count": ("uniform_atom_count", _int),
    "atoms.combinations": ("combination_count", _int),
    "atoms.profiles": ("profiles", _list(_str)),
    "atoms.p": ("p_values", _list(_num)),
    "lambda": ("lambdas", _list(_num)),
    "rho": ("rhos", _list(_num)),
    "jump.rho": ("jump_rhos", _list(_num)),
    "farfield.base": ("farfield_base", _num),
    "farfield.t0": ("farfield_t0", _num),
    "farfield.count": ("farfield_count", _int),
    "farfield.half_side": ("farfield_half_side", _num),
    "farfield.probes": ("farfield_probes", _int),
    "output.report": ("report_path", _str),
    "output.details": ("details_dir", _str),
}
_KERNEL_PARAMS = {"kernel.radius": "radius", "kernel.ratio": "ratio", "kernel.weight": "weight"}
_TOLERANCE_NAMES = {f.name for f in fields(Tolerances)}

# which config key each attribute came from, for line-numbered validation errors
_ATTR_KEYS = {attr: key for key, (attr, _) in _KEYS.items()}
_RELATED = {
    "scale_t0": ("scale_t0", "scale_count", "scale_base", "L"),
    "scale_values": ("scale_values", "L"),
    "kernel": ("kernel", "kernel_params"),
    "farfield_t0": ("farfield_t0", "farfield_count", "farfield_base"),
    "farfield_probes": ("farfield_probes", "farfield_half_side", "L"),
}


def parse_config_text(text: str) -> RunConfig:
    values: dict = {}
    params: dict = {}
    tols: dict = {}
    lines: dict = {}
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {raw.strip()!r}", lineno)
        key, _, value = (part.strip() for part in line.partition("="))
        if key in seen:
            raise ConfigError(f"key {key!r} repeated (first on line {seen[key]})", lineno)
        seen[key] = lineno
        try:
            if key in _KEYS:
                attr, conv = _KEYS[key]
                values[attr] = conv(value)
                lines[attr] = lineno
            elif key in _KERNEL_PARAMS:
                params[_KERNEL_PARAMS[key]] = _num(value)
                lines["kernel_params"] = lineno
            elif key.startswith("tolerances.") and key[11:] in _TOLERANCE_NAMES:
                tols[key[11:]] = _num(value)
                lines["tolerances"] = lineno
            else:
                raise ConfigError(f"unknown key {key!r}", lineno)
        except ValueError as exc:
            raise ConfigError(f"{key}: {exc}", lineno) from None

    dim = values.get("dimension", 1)
    defaults = _DIMENSION_DEFAULTS.get(dim, _DIMENSION_DEFAULTS[1])
    values.setdefault("L", defaults["L"])
    values.setdefault("N", defaults["N"])
    values.setdefault("scale_t0", defaults["t0"])
    values.setdefault("farfield_probes", defaults["probes"])
    if params:
        values["kernel_params"] = tuple(sorted(params.items()))
    if tols:
        values["tolerances"] = Tolerances(**tols)
    cfg = RunConfig(**values)
    try:
        _validate(cfg)
    except _Invalid as exc:
        related = _RELATED.get(exc.attr, (exc.attr,))
        line = next((lines[a] for a in related if a in lines), None)
        raise ConfigError(str(exc), line) from None
    return cfg


def parse_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror or exc}") from None
    except UnicodeDecodeError:
        raise ConfigError(f"config {path} is not valid UTF-8") from None
    return parse_config_text(text)


def default_config(dimension: int = 1, **overrides) -> RunConfig:
    d = _DIMENSION_DEFAULTS[dimension]
    cfg = RunConfig(dimension=dimension, L=d["L"], N=d["N"], scale_t0=d["t0"],
                    farfield_probes=d["probes"])
    return replace(cfg, **overrides).validate()


class _Invalid(Exception):
    def __init__(self, attr: str, message: str):
        self.attr = attr
        super().__init__(message)


def _require(cond: bool, attr: str, message: str) -> None:
    if not cond:
        key = _ATTR_KEYS.get(attr, attr)
        raise _Invalid(attr, f"{key}: {message}")


def _validate(cfg: RunConfig) -> None:
    n = cfg.dimension
    _require(n in (1, 2), "dimension", f"dimension must be 1 or 2, got {n}")
    for attr, builder in (("N", cfg.grid), ("kernel", cfg.kernel_spec), ("scale_t0", cfg.scales)):
        try:
            builder()
        except VarJumpError as exc:
            if attr == "scale_t0" and cfg.scale_values:
                attr = "scale_values"
            _require(False, attr, str(exc))
    tmax = max(cfg.scales())
    _require(tmax <= TAIL_FRACTION * cfg.L, "scale_t0",
             f"largest scale {tmax:g} exceeds L/8 = {TAIL_FRACTION * cfg.L:g}")
    try:
        Grid(n, cfg.L, 2 * cfg.N)
    except VarJumpError as exc:
        _require(False, "N", f"refined grid (2N) invalid: {exc}")
    # atom radii start at 8 grid spacings and need 4r <= L/2
    _require(cfg.N >= 128, "N", f"atom ensembles need N >= 128, got {cfg.N}")

    lo = n / (n + 1.0)
    _require(len(cfg.p_values) > 0, "p_values", "at least one p value is required")
    for p in cfg.p_values:
        _require(lo < p <= 1.0, "p_values",
                 f"p = {p:g} outside the admissible range (n/(n+1), 1] = ({lo:g}, 1]")
    _require(len(cfg.lambdas) > 0, "lambdas", "at least one lambda is required")
    for lam in cfg.lambdas:
        _require(math.isfinite(lam) and lam > 0, "lambdas", f"lambda must be > 0, got {lam:g}")
    for attr in ("rhos", "jump_rhos"):
        vals = getattr(cfg, attr)
        _require(len(vals) > 0, attr, "at least one rho is required")
        for rho in vals:
            _require(math.isfinite(rho) and rho >= 1, attr, f"rho must be >= 1, got {rho:g}")
    for rho in cfg.rhos:
        _require(rho >= 2, "rhos", f"the variation chain needs rho >= 2, got {rho:g}")
    _require(len(cfg.profiles) > 0, "profiles", "at least one atom profile is required")
    for prof in cfg.profiles:
        _require(prof in PROFILES, "profiles", f"unknown profile {prof!r}; choose from {PROFILES}")

    for attr in ("sequence_count", "oracle_count", "field_count", "atom_count",
                 "uniform_atom_count", "combination_count"):
        _require(getattr(cfg, attr) >= 1, attr, "count must be at least 1")
    _require(2 <= cfg.sequence_max_length <= 4096, "sequence_max_length", "must lie in [2, 4096]")
    _require(2 <= cfg.oracle_max_length <= 12, "oracle_max_length", "must lie in [2, 12]")
    _require(cfg.atom_count <= 256 and cfg.uniform_atom_count <= 256, "atom_count",
             "ensembles are limited to 256 atoms")
    _require(0 < cfg.band_fraction <= 1, "band_fraction", "must lie in (0, 1]")

    try:
        cfg.farfield_scales()
    except VarJumpError as exc:
        _require(False, "farfield_t0", str(exc))
    _require(cfg.farfield_half_side > 0, "farfield_half_side", "must be positive")
    _require(2 <= cfg.farfield_probes <= 32, "farfield_probes", "must lie in [2, 32]")
    reach = 4 * cfg.farfield_half_side * 2.0 ** (cfg.farfield_probes - 1)
    _require(reach < cfg.L, "farfield_probes",
             f"outermost probe at distance {reach:g} leaves the domain of halfwidth {cfg.L:g}")
    for name in _TOLERANCE_NAMES:
        value = getattr(cfg.tolerances, name)
        _require(math.isfinite(value) and value >= 0, "tolerances",
                 f"tolerance {name} must be a non-negative real")
