"""Exact integer/rational primitives: binomials, k-subset patterns,
rising factorials and terminating hypergeometric series.

Everything here is pure and exact (ints and Fractions); floats never
enter.  Anomaly patterns are sorted tuples of 1-based positions, kept in
lexicographic order throughout the package so that matrix rows have a
deterministic meaning.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Rational = int | Fraction

__all__ = [
    "binomial",
    "enumerate_patterns",
    "normalize_pattern",
    "pattern_rank",
    "pattern_unrank",
    "pattern_distance",
    "pochhammer_rising",
    "hypergeometric_terminating",
]


def binomial(n: int, r: int) -> int:
    """C(n, r), extended with C(n, r) = 0 for r < 0 or r > n.

    The r = -1 case matters: eigenvalue multiplicities are binomial
    differences C(n, j) - C(n, j-1) and must give 1 at j = 0.
    """
    if n < 0:
        raise ValueError(f"binomial: n must be non-negative, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def normalize_pattern(positions: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate and canonicalize a pattern: sorted, distinct, within [1, n]."""
    pat = tuple(sorted(positions))
    if len(set(pat)) != len(pat):
        raise ValueError(f"pattern has repeated positions: {pat}")
    if pat and (pat[0] < 1 or pat[-1] > n):
        raise ValueError(f"pattern {pat} out of range [1, {n}]")
    return pat


def enumerate_patterns(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of {1..n} in lexicographic order (C(n, k) of them)."""
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"enumerate_patterns: need 0 <= k <= n, got n={n}, k={k}")
    return list(combinations(range(1, n + 1), k))


def pattern_rank(pattern: Sequence[int], n: int) -> int:
    """Index of a pattern in lexicographic order (combinatorial number system)."""
    pat = normalize_pattern(pattern, n)
    k = len(pat)
    rank = 0
    prev = 0
    for idx, p in enumerate(pat):
        for v in range(prev + 1, p):
            rank += binomial(n - v, k - idx - 1)
        prev = p
    return rank


def pattern_unrank(rank: int, n: int, k: int) -> tuple[int, ...]:
    """Inverse of pattern_rank: the rank-th k-subset of {1..n} in lex order."""
    if not 0 <= rank < binomial(n, k):
        raise ValueError(f"rank {rank} out of range for C({n},{k})")
    out = []
    v = 1
    remaining = k
    while remaining > 0:
        block = binomial(n - v, remaining - 1)
        if rank < block:
            out.append(v)
            remaining -= 1
        else:
            rank -= block
        v += 1
    return tuple(out)


def pattern_distance(r: Sequence[int], s: Sequence[int]) -> int:
    """Subset distance k - |r ∩ s| (half the Hamming distance of indicators)."""
    if len(r) != len(s):
        raise ValueError(f"patterns have different cardinalities: {len(r)} vs {len(s)}")
    return len(r) - len(set(r) & set(s))


def pochhammer_rising(a: Rational, m: int) -> Fraction:
    """Rising factorial (a)_m = a (a+1) ... (a+m-1), with (a)_0 = 1.

    This is the standard m-factor product; it hits zero (and truncates
    hypergeometric series) when a is a non-positive integer and m > -a.
    """
    if m < 0:
        raise ValueError(f"pochhammer_rising: m must be >= 0, got {m}")
    prod = Fraction(1)
    a = Fraction(a)
    for t in range(m):
        prod *= a + t
    return prod


def _termination_index(numerators: Sequence[Rational]) -> int:
    cutoffs = [
        int(-a)
        for a in (Fraction(a) for a in numerators)
        if a <= 0 and a.denominator == 1
    ]
    if not cutoffs:
        raise ValueError(
            "hypergeometric_terminating: no non-positive-integer numerator "
            "parameter, series does not terminate"
        )
    return min(cutoffs)


def hypergeometric_terminating(
    numerators: Sequence[Rational],
    denominators: Sequence[Rational],
    z: Rational,
) -> Fraction:
    """Exact pFq(a_1..a_p; b_1..b_q; z) for a terminating series.

    Some numerator parameter must be a non-positive integer -m; the sum
    then runs over 0..m.  Denominator parameters that would produce a
    zero Pochhammer factor before the cut-off are rejected.
    """
    cutoff = _termination_index(numerators)
    for b in (Fraction(b) for b in denominators):
        if b <= 0 and b.denominator == 1 and -int(b) < cutoff:
            raise ValueError(
                f"hypergeometric_terminating: denominator parameter {b} "
                f"vanishes before termination at m={cutoff}"
            )
    z = Fraction(z)
    total = Fraction(0)
    term = Fraction(1)
    nums = [Fraction(a) for a in numerators]
    dens = [Fraction(b) for b in denominators]
    for m in range(cutoff + 1):
        total += term
        if m == cutoff:
            break
        # ratio of term m+1 to term m
        for a in nums:
            term *= a + m
        for b in dens:
            term /= b + m
        term *= z
        term /= m + 1
    return total
