"""Exact sequence-level operators: rho-variation, lambda-jump count, square sum.

Every operator exists in two flavours: a scalar form taking one sequence and a
batched form (``*_along``) working along axis 0 of an array, which is what the
field operators use. Exhaustive oracles enumerate all index subsets and share
no code with the fast paths beyond input validation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, OracleRefusal

RHO_ORACLE_MAX_LENGTH = 20
JUMP_ORACLE_MAX_LENGTH = 12
_ORACLE_MASK_BLOCK = 1 << 14


@dataclass(frozen=True)
class RealSequence:
    """Finite family ``t -> a_t`` over a strictly increasing index set."""

    indices: tuple
    values: tuple

    def __post_init__(self):
        if len(self.indices) != len(self.values):
            raise DomainError("indices and values must have equal length")
        idx = np.asarray(self.indices, dtype=float)
        if idx.size and (not np.all(np.isfinite(idx)) or np.any(np.diff(idx) <= 0)):
            raise DomainError("indices must be finite and strictly increasing")
        if not np.all(np.isfinite(np.asarray(self.values, dtype=float))):
            raise DomainError("sequence values must be finite")

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "RealSequence":
        values = tuple(float(v) for v in values)
        return cls(tuple(float(i) for i in range(1, len(values) + 1)), values)

    def __len__(self):
        return len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


SequenceLike = Union[RealSequence, Sequence[float], np.ndarray]


def _as_values(seq: SequenceLike) -> np.ndarray:
    if isinstance(seq, RealSequence):
        return seq.as_array()
    arr = np.asarray(seq, dtype=float)
    if arr.ndim != 1:
        raise DomainError(f"expected a one-dimensional sequence, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("sequence values must be finite")
    return arr


def check_rho(rho: float) -> float:
    rho = float(rho)
    if not math.isfinite(rho) or rho < 1:
        raise DomainError(f"variation exponent must be a finite real >= 1, got {rho}")
    return rho


def check_lambda(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0:
        raise DomainError(f"jump threshold must be a finite real > 0, got {lam}")
    return lam


def _pow(d: np.ndarray, rho: float) -> np.ndarray:
    # |d|^rho with exact fast paths for the common exponents
    if rho == 1.0:
        return d
    if rho == 2.0:
        return d * d
    return d ** rho


# -- rho-variation -----------------------------------------------------------

def variation_power_along(values: np.ndarray, rho: float) -> np.ndarray:
    """Return ``max over index subsequences of sum |a_{i_{k+1}} - a_{i_k}|^rho``.

    The sequence runs along axis 0; all other axes are independent problems.
    Uses the O(m^2) recurrence ``V(j) = max_{i<j} |a_j - a_i|^rho + V(i)``.
    """
    rho = check_rho(rho)
    values = np.asarray(values, dtype=float)
    m = values.shape[0]
    best = np.zeros_like(values)
    for j in range(1, m):
        step = _pow(np.abs(values[j] - values[:j]), rho)
        best[j] = np.max(step + best[:j], axis=0)
    if m == 0:
        return np.zeros(values.shape[1:])
    return np.max(best, axis=0)


def rho_variation_along(values: np.ndarray, rho: float) -> np.ndarray:
    rho = check_rho(rho)
    power = variation_power_along(values, rho)
    return power if rho == 1.0 else power ** (1.0 / rho)


def rho_variation(seq: SequenceLike, rho: float, return_witness: bool = False):
    """rho-variation of a finite sequence.

    Sequences of length 0 or 1 have variation 0. With ``return_witness`` the
    maximizing index subsequence is returned too (first found when scanning
    left to right).
    """
    rho = check_rho(rho)
    a = _as_values(seq)
    if not return_witness:
        return float(rho_variation_along(a, rho))
    m = a.size
    best = np.zeros(m)
    link = np.full(m, -1)
    for j in range(1, m):
        cand = _pow(np.abs(a[j] - a[:j]), rho) + best[:j]
        i = int(np.argmax(cand))
        best[j], link[j] = cand[i], i
    if m < 2:
        return 0.0, list(range(m))
    end = int(np.argmax(best))
    path = [end]
    while link[path[-1]] >= 0:
        path.append(int(link[path[-1]]))
    path.reverse()
    value = best[end] if rho == 1.0 else best[end] ** (1.0 / rho)
    return float(value), path if len(path) > 1 else []


# -- exhaustive subset enumeration (oracles) ---------------------------------

def _links_for_masks(masks: np.ndarray, m: int) -> np.ndarray:
    """For each subset mask, the previous selected index of each selected position.

    Positions that are unselected, or selected but first, link to themselves so
    they contribute a zero difference.
    """
    pos = np.arange(m)
    bits = ((masks[:, None] >> pos) & 1).astype(bool)
    marked = np.where(bits, pos, -1)
    running = np.maximum.accumulate(marked, axis=1)
    prev = np.empty_like(running)
    prev[:, 0] = -1
    prev[:, 1:] = running[:, :-1]
    return np.where(bits & (prev >= 0), prev, pos)


@lru_cache(maxsize=None)
def _small_links(m: int) -> np.ndarray:
    links = _links_for_masks(np.arange(1 << m, dtype=np.int64), m)
    links.setflags(write=False)
    return links


def _mask_blocks(m: int):
    if m <= JUMP_ORACLE_MAX_LENGTH:
        yield _small_links(m)
        return
    total = 1 << m
    for start in range(0, total, _ORACLE_MASK_BLOCK):
        masks = np.arange(start, min(start + _ORACLE_MASK_BLOCK, total), dtype=np.int64)
        yield _links_for_masks(masks, m)


def _enumerate_max(values: np.ndarray, score, seq_block: int = 32) -> np.ndarray:
    """Max over all index subsets of ``score(consecutive differences)``.

    ``values`` has shape (S, m); returns shape (S,).
    """
    S, m = values.shape
    out = np.zeros(S)
    if m < 2:
        return out
    for lo in range(0, S, seq_block):
        block = values[lo:lo + seq_block]
        best = np.zeros(block.shape[0])
        for links in _mask_blocks(m):
            diffs = np.abs(block[:, None, :] - block[:, links])
            best = np.maximum(best, score(diffs).max(axis=1))
        out[lo:lo + seq_block] = best
    return out


def rho_variation_oracle_batch(values: np.ndarray, rho: float) -> np.ndarray:
    """Exhaustive rho-variation for each row of an (S, m) array."""
    rho = check_rho(rho)
    values = np.asarray(values, dtype=float)
    if values.shape[1] > RHO_ORACLE_MAX_LENGTH:
        raise OracleRefusal(f"oracle limited to length {RHO_ORACLE_MAX_LENGTH}")
    power = _enumerate_max(values, lambda d: np.sum(d ** rho, axis=-1))
    return power ** (1.0 / rho)


def rho_variation_oracle(seq: SequenceLike, rho: float) -> float:
    a = _as_values(seq)
    if a.size > RHO_ORACLE_MAX_LENGTH:
        raise OracleRefusal(
            f"sequence of length {a.size} exceeds oracle limit {RHO_ORACLE_MAX_LENGTH}")
    return float(rho_variation_oracle_batch(a[None, :], rho)[0])


# -- lambda-jumps ------------------------------------------------------------

def jump_count_along(values: np.ndarray, lam: float) -> np.ndarray:
    """Maximal number of strict lambda-jumps along axis 0.

    Greedy scan closing each jump at the earliest possible right end: the
    window since the last closed jump is summarized by its min and max, and a
    jump closes at t as soon as some s in the window has ``|a_t - a_s| > lam``.
    """
    lam = check_lambda(lam)
    values = np.asarray(values, dtype=float)
    count = np.zeros(values.shape[1:], dtype=np.int64)
    if values.shape[0] == 0:
        return count
    lo = values[0].copy()
    hi = values[0].copy()
    for row in values[1:]:
        hit = (row - lo > lam) | (hi - row > lam)
        count += hit
        lo = np.where(hit, row, np.minimum(lo, row))
        hi = np.where(hit, row, np.maximum(hi, row))
    return count


def lambda_jump_count(seq: SequenceLike, lam: float) -> int:
    a = _as_values(seq)
    return int(jump_count_along(a, lam))


def lambda_jump_oracle_batch(values: np.ndarray, lam: float) -> np.ndarray:
    """Exhaustive jump count for each row of an (S, m) array.

    An admissible system ``s_1 < t_1 <= s_2 < ... < t_N`` is the same thing as
    a subset of indices whose consecutive pairs include the N jumps, so the
    maximum is taken over all 2^m subsets.
    """
    lam = check_lambda(lam)
    values = np.asarray(values, dtype=float)
    if values.shape[1] > JUMP_ORACLE_MAX_LENGTH:
        raise OracleRefusal(f"oracle limited to length {JUMP_ORACLE_MAX_LENGTH}")
    return _enumerate_max(values, lambda d: np.sum(d > lam, axis=-1)).astype(np.int64)


def lambda_jump_oracle(seq: SequenceLike, lam: float) -> int:
    a = _as_values(seq)
    if a.size > JUMP_ORACLE_MAX_LENGTH:
        raise OracleRefusal(
            f"sequence of length {a.size} exceeds oracle limit {JUMP_ORACLE_MAX_LENGTH}")
    return int(lambda_jump_oracle_batch(a[None, :], lam)[0])


# -- square function ---------------------------------------------------------

def square_sum_along(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return np.sqrt(np.sum(values * values, axis=0))


def square_sum(seq: SequenceLike) -> float:
    return float(square_sum_along(_as_values(seq)))
