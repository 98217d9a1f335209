"""The finite space X_N = X / N X and the alcove of dominant representatives."""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import CapacityError, InvalidOrderError
from .rootsys import LieType, RootDatum

DEFAULT_BUDGET = 2_000_000


def default_budget() -> int:
    """State budget, overridable through RT_LENS_BUDGET."""
    env = os.environ.get("RT_LENS_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def validate_order(datum: RootDatum, N: int) -> None:
    """Reject orders outside the admissible range for the algebra.

    N must be odd, exceed the dual Coxeter number, and (for G2) be prime
    to 3.  Invertibility of the Gram matrix mod N is re-checked.
    """
    if not isinstance(N, int) or N < 1:
        raise InvalidOrderError(f"order must be a positive integer, got {N!r}")
    if N % 2 == 0:
        raise InvalidOrderError(f"order {N} is even; an odd order is required")
    if N <= datum.dual_coxeter:
        raise InvalidOrderError(
            f"order {N} must exceed the dual Coxeter number {datum.dual_coxeter} "
            f"of {datum.lie_type.value}"
        )
    if datum.lie_type is LieType.G2 and N % 3 == 0:
        raise InvalidOrderError(f"order {N} divisible by 3 forbidden for G2")
    if math.gcd(datum.det_gram, N) != 1:
        raise InvalidOrderError(f"Gram determinant {datum.det_gram} not invertible mod {N}")


def state_count(datum: RootDatum, N: int) -> int:
    return N ** datum.rank


def check_budget(count: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if count > budget:
        raise CapacityError(f"state space too large: {what} needs {count} states, budget is {budget}")


def xn_coords(datum: RootDatum, N: int, budget: int | None = None) -> np.ndarray:
    """All classes of X_N as an (N^r, r) array of residues, lexicographic order."""
    r = datum.rank
    check_budget(N ** r, budget, f"X_{N} for {datum.lie_type.value} ({N}^{r})")
    grids = np.indices((N,) * r, dtype=np.int64).reshape(r, -1)
    return grids.T.copy()


def flat_index(coords: np.ndarray, N: int) -> np.ndarray:
    """Lexicographic index of residue vectors (last coordinate fastest)."""
    coords = np.asarray(coords, dtype=np.int64) % N
    idx = np.zeros(coords.shape[:-1], dtype=np.int64)
    for i in range(coords.shape[-1]):
        idx = idx * N + coords[..., i]
    return idx


@dataclass(frozen=True)
class WeightClass:
    datum: RootDatum
    order: int
    coords: tuple[int, ...]

    @classmethod
    def of(cls, datum: RootDatum, N: int, lift: Sequence[int]) -> WeightClass:
        return cls(datum, N, tuple(int(c) % N for c in lift))

    def pair(self, other: WeightClass) -> int:
        return self.datum.pairing(self.coords, other.coords) % self.order

    def quad_forms(self) -> tuple[int, int]:
        return quad_forms(self)


def enumerate_xn(datum: RootDatum, N: int, budget: int | None = None) -> Iterator[WeightClass]:
    check_budget(N ** datum.rank, budget, f"X_{N} for {datum.lie_type.value} ({N}^{datum.rank})")
    for coords in itertools.product(range(N), repeat=datum.rank):
        yield WeightClass(datum, N, coords)


def quad_forms(lam: WeightClass) -> tuple[int, int]:
    """((lam, lam) mod N, (lam + 2 rho, lam) mod N)."""
    d, N, x = lam.datum, lam.order, lam.coords
    norm = d.pairing(x, x)
    shifted = norm + 2 * d.pairing(d.rho, x)
    return norm % N, shifted % N


@dataclass(frozen=True)
class AlcoveSet:
    datum: RootDatum
    order: int
    members: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, lift) -> bool:
        return tuple(lift) in set(self.members)


def in_alcove(datum: RootDatum, N: int, lift: Sequence[int]) -> bool:
    """0 < 2(lift + rho, alpha)/(alpha, alpha) < N for every positive root alpha."""
    x = [int(a) + b for a, b in zip(lift, datum.rho)]
    return all(0 < datum.coroot_pairing(x, alpha) < N for alpha in datum.positive_roots)


def _coroot_coefficients(datum: RootDatum) -> list[tuple[Fraction, ...]]:
    # alpha^vee = sum_i c_i alpha_i^vee with c_i = k_i (alpha_i, alpha_i) / (alpha, alpha)
    out = []
    for alpha in datum.positive_roots:
        na = datum.pairing(alpha, alpha)
        out.append(tuple(Fraction(k * datum.norms[i], na) for i, k in enumerate(alpha)))
    return out


def alcove(datum: RootDatum, N: int, budget: int | None = None) -> AlcoveSet:
    """Lifts lambda in X with lambda + rho strictly inside the N-scaled alcove.

    Enumerates fundamental-weight coordinates n_i = <lambda + rho, alpha_i^vee> >= 1
    under the constraint from the highest coroot, then maps back to root
    coordinates (weight and root lattices coincide for these algebras).
    """
    r = datum.rank
    coefs = _coroot_coefficients(datum)
    top = max(coefs, key=sum)
    # every coroot coefficient vector is dominated by the highest coroot's
    assert all(all(c <= t for c, t in zip(cv, top)) for cv in coefs)
    if all(t >= 1 for t in top) and N - 1 < sum(top):
        return AlcoveSet(datum, N, ())
    cartan_inv = np.linalg.inv(datum.cartan_array.astype(float))
    det = round(np.linalg.det(datum.cartan_array.astype(float)))
    adj = np.rint(cartan_inv * det).astype(np.int64)

    members = []
    visited = 0

    def rec(i: int, prefix: list[int], used: Fraction) -> None:
        nonlocal visited
        if i == r:
            visited += 1
            check_budget(visited, budget, f"alcove of {datum.lie_type.value} at N={N}")
            n = np.array(prefix, dtype=np.int64)
            num = adj @ n
            assert np.all(num % det == 0)
            lift = tuple(int(v) - p for v, p in zip(num // det, datum.rho))
            if in_alcove(datum, N, lift):
                members.append(lift)
            return
        rest = sum(top[i + 1:])
        k = 1
        while used + top[i] * k + rest < N:
            rec(i + 1, prefix + [k], used + top[i] * k)
            k += 1

    rec(0, [], Fraction(0))
    members.sort()
    return AlcoveSet(datum, N, tuple(members))
