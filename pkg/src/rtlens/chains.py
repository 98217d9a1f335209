"""Framed chain links: lens-space data, continued fractions, linking-matrix inertia."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InvalidInputError


@dataclass(frozen=True)
class LensSpec:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 2:
            raise InvalidInputError(f"lens space needs m >= 2, got m={self.m}")
        if not 0 < self.n < self.m:
            raise InvalidInputError(f"lens space needs 0 < n < m, got ({self.m}, {self.n})")
        if math.gcd(self.m, self.n) != 1:
            raise InvalidInputError(f"m and n must be coprime, got ({self.m}, {self.n})")


@dataclass(frozen=True)
class ChainLink:
    framings: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(a) for a in self.framings))


@dataclass(frozen=True)
class HJExpansion:
    terms: tuple[int, ...]

    def value(self) -> Fraction:
        return evaluate_hj(self.terms)


def evaluate_hj(terms: Sequence[int]) -> Fraction:
    """a_1 - 1/(a_2 - 1/(... - 1/a_s))."""
    acc = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        acc = a - 1 / acc
    return acc


def hj_expand(spec: LensSpec) -> HJExpansion:
    """Hirzebruch-Jung expansion of m/n with every term >= 2."""
    m, n = spec.m, spec.n
    terms = []
    while n:
        a = -(-m // n)
        terms.append(a)
        m, n = n, a * n - m
    assert all(a >= 2 for a in terms)
    assert evaluate_hj(terms) == Fraction(spec.m, spec.n)
    return HJExpansion(tuple(terms))


def linking_matrix(framings: Sequence[int]) -> list[list[int]]:
    s = len(framings)
    mat = [[0] * s for _ in range(s)]
    for i, a in enumerate(framings):
        mat[i][i] = a
        if i + 1 < s:
            mat[i][i + 1] = mat[i + 1][i] = 1
    return mat


def _minor_polys(framings: Sequence[int]) -> list[list[int]]:
    # leading principal minors p_k(x) of (A - x I), coefficients lowest degree first:
    # p_k = (a_k - x) p_{k-1} - p_{k-2}
    polys = [[1]]
    prev = [0]
    for a in framings:
        cur = polys[-1]
        nxt = [0] * (len(cur) + 1)
        for i, c in enumerate(cur):
            nxt[i] += a * c
            nxt[i + 1] -= c
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev = cur
        polys.append(nxt)
    return polys


def _sign_near_zero(poly: Sequence[int], side: int) -> int:
    """Sign of poly(x) for x infinitesimally close to 0 on the given side (+1 / -1)."""
    for deg, c in enumerate(poly):
        if c:
            s = 1 if c > 0 else -1
            return s * (side ** deg)
    raise AssertionError("identically zero minor")


@dataclass(frozen=True)
class Inertia:
    negative: int
    zero: int
    positive: int

    @property
    def nonpositive(self) -> int:
        return self.negative + self.zero


def inertia(framings: Sequence[int]) -> Inertia:
    """Exact inertia of the tridiagonal linking matrix.

    The LDL pivots of A - xI are p_k(x) / p_{k-1}(x), and the number of
    eigenvalues below x is the number of negative pivots.  Evaluating at
    x = -0 and x = +0 (signs of the minors' lowest nonzero coefficients)
    handles zero pivots symbolically: the -0 count gives the negative
    eigenvalues, the +0 count the nonpositive ones.
    """
    polys = _minor_polys(framings)

    def below(side: int) -> int:
        signs = [_sign_near_zero(p, side) for p in polys]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    neg = below(-1)
    nonpos = below(+1)
    s = len(framings)
    return Inertia(neg, nonpos - neg, s - nonpos)


def signature_count(chain: ChainLink | Sequence[int]) -> int:
    """Number of nonpositive eigenvalues of the chain's linking matrix."""
    framings = chain.framings if isinstance(chain, ChainLink) else chain
    return inertia(framings).nonpositive


def ldl_pivots(framings: Sequence[int]) -> list[Fraction | None]:
    """Rational LDL pivots p_k(0) / p_{k-1}(0); None where a previous minor vanishes."""
    minors = [p[0] for p in _minor_polys(framings)]
    return [Fraction(b, a) if a else None for a, b in zip(minors, minors[1:])]


def coprime_pairs(m_max: int) -> list[tuple[int, int]]:
    return [(m, n) for m in range(2, m_max + 1) for n in range(1, m) if math.gcd(m, n) == 1]
