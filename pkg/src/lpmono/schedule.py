"""Acceptably-paired step/regularization sequences.

The solver consumes two sequences in (0,1): steps alpha_n and
regularization weights theta_n with theta_n decreasing to 0, tied by
alpha_n <= gamma * theta_n.  "Acceptably paired" additionally asks, over
the blocks [n(i), n(i+1)] cut by n(i) = i^i, that

    S1(i) = sum alpha_j^2                    -> 0,
    S2(i) = theta_{n(i)} * sum alpha_j       stays bounded away from 0,
    S3(i) = (theta_{n(i)} - theta_{n(i+1)}) * sum alpha_j -> 0.

:func:`check_acceptably_paired` reports these statistics on a finite
prefix together with pass/fail flags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

_BLOCK_I_MAX = 12  # i^i beyond this exceeds any practical prefix sum

# chunk length for prefix sums over large blocks
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ParamSchedule:
    """Parameter sequences for the one-step iteration.

    ``alpha`` and ``theta`` map an iteration index n >= 1 (scalar or
    integer array) to values in (0,1); ``theta`` must be non-increasing
    with limit 0, and alpha_n <= gamma * theta_n must hold.  ``block``
    maps i >= 1 to the strictly increasing block index n(i).
    """

    alpha: Callable
    theta: Callable
    gamma: float
    block: Callable[[int], int]
    meta: dict = field(default_factory=dict)


def default_schedule(
    gamma: float = 1.0,
    theta_offset: int = 16,
    theta_log_base: float = math.e,
) -> ParamSchedule:
    """The reference pairing: alpha_n = 1/(n+1), theta_n = 1/log(log(n + n0)).

    The bare double logarithm is nonpositive for small arguments, so the
    argument is shifted by ``theta_offset`` (default 16, the smallest
    integer with ln ln of it above 1) to keep theta in (0, 1) and
    decreasing from n = 1.  ``alpha`` is clipped to gamma * theta_n so the
    pairing hypothesis holds mechanically for any gamma.  Blocks are
    n(i) = i^i.  Offset and base are recorded in ``meta`` and may be
    varied for sensitivity studies.
    """
    if gamma <= 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if theta_log_base <= 1.0:
        raise ValueError(f"log base must exceed 1, got {theta_log_base}")
    ln_b = math.log(theta_log_base)

    def theta(n):
        arg = np.asarray(n, dtype=float) + float(theta_offset)
        inner = np.log(arg) / ln_b
        vals = ln_b / np.log(inner)
        return float(vals) if vals.ndim == 0 else vals

    t1 = theta(1)
    if not 0.0 < t1 < 1.0:
        raise ValueError(
            f"theta_offset {theta_offset} leaves theta_1 = {t1:.4g} outside (0,1) "
            f"for log base {theta_log_base}"
        )

    def alpha(n):
        base = 1.0 / (np.asarray(n, dtype=float) + 1.0)
        vals = np.minimum(base, gamma * theta(n))
        return float(vals) if vals.ndim == 0 else vals

    def block(i: int) -> int:
        if i < 1:
            raise ValueError(f"block index must be >= 1, got {i}")
        return i**i

    meta = {
        "alpha": "min(1/(n+1), gamma*theta(n))",
        "theta": "1/log_b(log_b(n + n0))",
        "n0": int(theta_offset),
        "log_base": float(theta_log_base),
        "gamma": float(gamma),
        "block": "i^i",
    }
    return ParamSchedule(alpha=alpha, theta=theta, gamma=float(gamma), block=block, meta=meta)


@dataclass(frozen=True)
class PairingReport:
    """Block statistics S1, S2, S3 for i in [i_min, i_max] plus flags.

    ``s1_decreasing_to_zero`` requires strict decrease across the sampled
    blocks; ``s2_bounded_away`` requires min(S2) >= the threshold passed
    to the check; ``s3_decreasing_to_zero`` is a trend flag: the final
    value must be the sample minimum and lie below the first (blocks at
    the start of the prefix are transient under a shifted theta).
    """

    i_values: tuple
    s1: tuple
    s2: tuple
    s3: tuple
    s1_decreasing_to_zero: bool
    s2_bounded_away: bool
    s3_decreasing_to_zero: bool


def _block_alpha_sums(schedule: ParamSchedule, a: int, b: int) -> tuple[float, float]:
    """(sum alpha_j^2, sum alpha_j) over the inclusive range j = a..b."""
    total_sq = 0.0
    total = 0.0
    for start in range(a, b + 1, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, b + 1), dtype=np.int64)
        al = np.asarray(schedule.alpha(j), dtype=float)
        total_sq += float(np.dot(al, al))
        total += float(np.sum(al))
    return total_sq, total


def check_acceptably_paired(
    schedule: ParamSchedule,
    i_max: int,
    i_min: int = 2,
    s2_min: float = 0.1,
) -> PairingReport:
    """Evaluate the block statistics of the pairing over i = i_min..i_max.

    The first block is skipped by default: with a shifted theta it is not
    representative of the limiting behavior.  ``i_max`` is capped at 12;
    beyond that the block end i^i exceeds any prefix one could sum over.
    """
    if i_max < 2:
        raise ValueError(f"i_max must be >= 2, got {i_max}")
    if i_max > _BLOCK_I_MAX:
        raise OverflowError(
            f"i_max = {i_max} exceeds the supported block range (<= {_BLOCK_I_MAX})"
        )
    if not 1 <= i_min <= i_max:
        raise ValueError(f"need 1 <= i_min <= i_max, got i_min = {i_min}")

    i_values = []
    s1 = []
    s2 = []
    s3 = []
    for i in range(i_min, i_max + 1):
        a = int(schedule.block(i))
        b = int(schedule.block(i + 1))
        if b <= a:
            raise ValueError(f"block sequence is not strictly increasing at i = {i}")
        sum_sq, sum_a = _block_alpha_sums(schedule, a, b)
        th_a = float(schedule.theta(a))
        th_b = float(schedule.theta(b))
        i_values.append(i)
        s1.append(sum_sq)
        s2.append(th_a * sum_a)
        s3.append((th_a - th_b) * sum_a)

    s1_flag = all(x > y for x, y in zip(s1, s1[1:])) and s1[-1] > 0.0
    s2_flag = min(s2) >= s2_min
    s3_flag = s3[-1] < s3[0] and s3[-1] <= min(s3)
    return PairingReport(
        i_values=tuple(i_values),
        s1=tuple(s1),
        s2=tuple(s2),
        s3=tuple(s3),
        s1_decreasing_to_zero=s1_flag,
        s2_bounded_away=s2_flag,
        s3_decreasing_to_zero=s3_flag,
    )
