"""Shared numeric helpers: seed splitting and threshold arithmetic."""

import math
from fractions import Fraction

MASK64 = (1 << 64) - 1

# SplitMix64 increment and mixing constants.
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def spawn_seed(master: int, index: int) -> int:
    """Derive child seed number `index` from a 64-bit master seed.

    SplitMix64 output function; stable across Python versions (unlike hash()),
    so serial and parallel replicate schedules draw identical streams.
    """
    z = (master + (index + 1) * _GOLDEN) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return (z ^ (z >> 31)) & MASK64


def ceil_recip(eps: float) -> int:
    """Least integer not less than 1/eps, exact on the binary value of eps.

    Uses rational arithmetic so the result is consistent with strict
    comparisons like k*eps < 1 evaluated exactly; float division alone can
    land on the wrong side of an integer for thresholds near 1/k.
    """
    if eps <= 0:
        raise ValueError("ceil_recip requires eps > 0")
    return math.ceil(Fraction(1) / Fraction(eps))
