"""Exact arithmetic in the cyclotomic field Q(zeta_N), N odd.

An element is stored as a length-N integer vector ``num`` over a common
positive denominator ``den``, read as ``sum(num[j] * q**j) / den`` with
``q**N == 1``.  This representation is redundant (the vector is only
determined modulo the N-th cyclotomic polynomial), so arithmetic works on
the raw vectors and equality, hashing and serialization go through the
canonical remainder modulo Phi_N.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InvalidAutomorphismError, OrderMismatchError


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first.

    Built as (x^n - 1) divided by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _exact_div(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic; the division is exact by construction
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert not any(num), "inexact cyclotomic division"
    return quot


def _reduce(vec: Sequence[int], n: int) -> tuple[int, ...]:
    """Remainder of sum(vec[j] x^j) modulo Phi_n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    v = list(vec)
    for i in range(len(v) - 1, deg - 1, -1):
        c = v[i]
        if c:
            base = i - deg
            for j in range(deg):
                v[base + j] -= c * phi[j]
            v[i] = 0
    return tuple(v[:deg])


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if g == 1:
            break
        g = math.gcd(g, c)
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycNum:
    """An element of Q(zeta_N).  Immutable."""

    __slots__ = ("order", "num", "den", "_canon")

    def __init__(self, order: int, num: Iterable[int], den: int = 1):
        num = [int(c) for c in num]
        if len(num) != order:
            raise ValueError(f"expected {order} coefficients, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        self.order = order
        self.num, self.den = _normalize(num, int(den))
        self._canon = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> CycNum:
        return cls(order, [0] * order)

    @classmethod
    def one(cls, order: int) -> CycNum:
        return cls.from_rational(order, 1)

    @classmethod
    def from_rational(cls, order: int, value) -> CycNum:
        value = Fraction(int(value)) if isinstance(value, numbers.Integral) else Fraction(value)
        num = [0] * order
        num[0] = value.numerator
        return cls(order, num, value.denominator)

    @classmethod
    def from_coeffs(cls, order: int, coeffs: Sequence) -> CycNum:
        """Build from rational coefficients of q^0 .. q^(len-1), reduced mod N."""
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num = [0] * order
        for j, c in enumerate(fr):
            num[j % order] += c.numerator * (den // c.denominator)
        return cls(order, num, den)

    # -- canonical form -----------------------------------------------

    def canonical(self) -> tuple[tuple[int, ...], int]:
        """(numerators, denominator) of the remainder modulo Phi_N, in lowest terms."""
        if self._canon is None:
            red = _reduce(self.num, self.order)
            self._canon = _normalize(list(red), self.den)
        return self._canon

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        """Canonical rational coefficients (length phi(N))."""
        num, den = self.canonical()
        return tuple(Fraction(c, den) for c in num)

    def is_zero(self) -> bool:
        return not any(self.canonical()[0])

    def is_rational(self) -> bool:
        return not any(self.canonical()[0][1:])

    def is_real(self) -> bool:
        return self == self.galois(-1)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, numbers.Rational):
            other = CycNum.from_rational(self.order, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((self.order, self.canonical()))

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> CycNum:
        if isinstance(other, CycNum):
            if other.order != self.order:
                raise OrderMismatchError(f"orders {self.order} and {other.order} differ")
            return other
        if isinstance(other, numbers.Rational):
            return CycNum.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other) -> CycNum:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.den, other.den
        if a == b:
            return CycNum(self.order, [x + y for x, y in zip(self.num, other.num)], a)
        return CycNum(self.order, [x * b + y * a for x, y in zip(self.num, other.num)], a * b)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(self.order, [-x for x in self.num], self.den)

    def __sub__(self, other) -> CycNum:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> CycNum:
        return (-self) + other

    def __mul__(self, other) -> CycNum:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.order
        out = [0] * n
        b_nz = [(j, c) for j, c in enumerate(other.num) if c]
        for i, a in enumerate(self.num):
            if a:
                for j, c in b_nz:
                    out[(i + j) % n] += a * c
        return CycNum(n, out, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> CycNum:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other) -> CycNum:
        return self.inv() * other

    def __pow__(self, e: int) -> CycNum:
        if e < 0:
            return self.inv() ** (-e)
        result = CycNum.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def shift(self, e: int) -> CycNum:
        """Multiply by q^e (a cyclic rotation of the raw vector)."""
        n = self.order
        e %= n
        return CycNum(n, self.num[-e:] + self.num[:-e] if e else self.num, self.den)

    def galois(self, k: int) -> CycNum:
        """Image under the automorphism q -> q^k."""
        n = self.order
        if math.gcd(k, n) != 1:
            raise InvalidAutomorphismError(f"gcd({k}, {n}) != 1")
        out = [0] * n
        for j, c in enumerate(self.num):
            out[(j * k) % n] += c
        return CycNum(n, out, self.den)

    def conj(self) -> CycNum:
        return self.galois(-1)

    def norm(self) -> Fraction:
        """Field norm down to Q: the product of all Galois conjugates."""
        n = self.order
        prod = CycNum.one(n)
        for k in range(1, n):
            if math.gcd(k, n) == 1:
                prod = prod * self.galois(k)
        num, den = prod.canonical()
        assert not any(num[1:]), "norm is not rational"
        return Fraction(num[0], den)

    def inv(self) -> CycNum:
        """Exact inverse: the product of the non-identity conjugates over the norm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        n = self.order
        # work with the canonical representative to keep the conjugate product small
        cnum, cden = self.canonical()
        x = CycNum(n, list(cnum) + [0] * (n - len(cnum)), cden)
        rest = CycNum.one(n)
        for k in range(2, n):
            if math.gcd(k, n) == 1:
                rest = rest * x.galois(k)
        rnum, rden = rest.canonical()
        rest = CycNum(n, list(rnum) + [0] * (n - len(rnum)), rden)
        nm, nd = (x * rest).canonical()
        assert not any(nm[1:]), "norm is not rational"
        return rest * Fraction(nd, nm[0])

    # -- views ----------------------------------------------------------

    def embed(self, c: int = 1) -> complex:
        """Numeric value at q = exp(2 pi i c / N)."""
        n = self.order
        if math.gcd(c, n) != 1:
            raise InvalidAutomorphismError(f"embedding index {c} not coprime to {n}")
        num, den = self.canonical()
        re = math.fsum(Fraction(a, den) * math.cos(2 * math.pi * c * j / n) for j, a in enumerate(num) if a)
        im = math.fsum(Fraction(a, den) * math.sin(2 * math.pi * c * j / n) for j, a in enumerate(num) if a)
        return complex(re, im)

    def to_json(self) -> dict:
        num, den = self.canonical()
        coeffs = []
        for a in num:
            f = Fraction(a, den)
            coeffs.append(f"{f.numerator}/{f.denominator}")
        return {"order": self.order, "coeffs": coeffs}

    @classmethod
    def from_json(cls, obj: dict) -> CycNum:
        return cls.from_coeffs(obj["order"], [Fraction(s) for s in obj["coeffs"]])

    def __repr__(self) -> str:
        num, den = self.canonical()
        terms = [f"{Fraction(a, den)}*q^{j}" for j, a in enumerate(num) if a]
        return f"CycNum<{self.order}>({' + '.join(terms) or '0'})"


@dataclass(frozen=True)
class RootOfUnitySpec:
    order: int
    embedding_index: int = 1

    def __post_init__(self):
        if math.gcd(self.embedding_index, self.order) != 1:
            raise InvalidAutomorphismError(
                f"embedding index {self.embedding_index} not coprime to {self.order}"
            )


def q_power(order: int, e: int) -> CycNum:
    num = [0] * order
    num[e % order] = 1
    return CycNum(order, num)


def galois(x: CycNum, k: int) -> CycNum:
    return x.galois(k)


def inv(x: CycNum) -> CycNum:
    return x.inv()


def embed(x: CycNum, spec: RootOfUnitySpec | None = None) -> complex:
    if spec is None:
        return x.embed(1)
    if spec.order != x.order:
        raise OrderMismatchError(f"orders {x.order} and {spec.order} differ")
    return x.embed(spec.embedding_index)

