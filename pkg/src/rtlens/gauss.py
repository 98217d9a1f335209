"""Quadratic Gauss sums over (Z/N)^r.

``gauss_brute`` sums q^(x^T A x + b.x) over all N^r vectors.
``gauss_closed`` splits N into prime powers by CRT, congruence-diagonalizes
the form over each Z/p^e and multiplies one-dimensional sums, so its cost
is polynomial in r and N.  It is the only route that reaches E8.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import sympy

from .cyclo import CycNum
from .lattice import check_budget
from .rootsys import RootDatum


@dataclass(frozen=True)
class QuadGaussSpec:
    order: int
    form: tuple[tuple[int, ...], ...]
    linear: tuple[int, ...]

    @classmethod
    def make(cls, order: int, form, linear=None) -> QuadGaussSpec:
        form = np.asarray(form, dtype=object) % order
        r = form.shape[0]
        if form.shape != (r, r) or np.any((form - form.T) % order != 0):
            raise ValueError("form must be a symmetric square matrix mod N")
        linear = np.zeros(r, dtype=object) if linear is None else np.asarray(linear, dtype=object) % order
        if linear.shape != (r,):
            raise ValueError("linear term has the wrong length")
        return cls(order, tuple(tuple(int(v) for v in row) for row in form), tuple(int(v) for v in linear))

    @property
    def rank(self) -> int:
        return len(self.linear)


def _from_counts(N: int, counts: Sequence[int]) -> CycNum:
    return CycNum(N, [int(c) for c in counts])


def gauss_brute(spec: QuadGaussSpec, budget: int | None = None) -> CycNum:
    N, r = spec.order, spec.rank
    check_budget(N ** r, budget, f"brute-force Gauss sum ({N}^{r})")
    if r == 0:
        return CycNum.one(N)
    x = np.indices((N,) * r, dtype=np.int64).reshape(r, -1)
    A = np.array(spec.form, dtype=np.int64)
    b = np.array(spec.linear, dtype=np.int64)
    expo = (np.einsum("ik,ij,jk->k", x, A, x) + b @ x) % N
    return _from_counts(N, np.bincount(expo, minlength=N))


def _valuation(v: int, p: int, cap: int) -> int:
    if v == 0:
        return cap
    k = 0
    while v % p == 0:
        v //= p
        k += 1
    return k


def diagonalize_mod(form: Sequence[Sequence[int]], p: int, e: int):
    """Congruence-diagonalize a symmetric matrix over Z/p^e, p odd.

    Returns (diag, P) with P^T A P == diag(diag) mod p^e and P invertible mod p.
    Pivots are chosen with minimal p-adic valuation; when only an
    off-diagonal entry attains it, adding one basis vector to another
    produces a diagonal pivot of that valuation (2 is a unit).
    """
    assert p % 2 == 1
    m = p ** e
    r = len(form)
    A = [[int(v) % m for v in row] for row in form]
    P = [[int(i == j) for j in range(r)] for i in range(r)]

    def add_col(dst, src, t):
        # basis change v_dst += t v_src applied on both sides
        for i in range(r):
            A[i][dst] = (A[i][dst] + t * A[i][src]) % m
        for j in range(r):
            A[dst][j] = (A[dst][j] + t * A[src][j]) % m
        for i in range(r):
            P[i][dst] = (P[i][dst] + t * P[i][src]) % m

    def swap(i, j):
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in P:
            row[i], row[j] = row[j], row[i]

    for k in range(r):
        best = None
        for i in range(k, r):
            for j in range(i, r):
                v = _valuation(A[i][j], p, e)
                if v < e and (best is None or v < best[0] or (v == best[0] and i == j and best[1] != best[2])):
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        if i != j:
            vii = _valuation(A[i][i], p, e)
            if vii > v:
                add_col(i, j, 1)
        swap(k, i)
        piv = A[k][k]
        vk = _valuation(piv, p, e)
        assert vk == v
        unit_inv = pow(piv // p ** vk, -1, m)
        for j in range(k + 1, r):
            if A[k][j]:
                t = (A[k][j] // p ** vk) * unit_inv % m
                add_col(j, k, -t)
    diag = [A[i][i] for i in range(r)]
    check = (np.array(P, dtype=object).T.dot(np.array(form, dtype=object)).dot(np.array(P, dtype=object))) % m
    assert all(check[i][j] == (diag[i] if i == j else 0) for i in range(r) for j in range(r))
    return diag, P


def _one_dim(N: int, mult: int, modulus: int, a: int, b: int) -> list[int]:
    """Coefficients of sum_{y mod modulus} q^(mult * (a y^2 + b y))."""
    counts = [0] * N
    for y in range(modulus):
        counts[(mult * ((a * y * y + b * y) % modulus)) % N] += 1
    return counts


def gauss_closed(spec: QuadGaussSpec) -> CycNum:
    N, r = spec.order, spec.rank
    result = CycNum.one(N)
    if N == 1:
        return result
    for p, e in sorted(sympy.factorint(N).items()):
        m = p ** e
        rest = N // m
        # CRT idempotent: 1 mod p^e, 0 mod N/p^e
        idem = rest * pow(rest, -1, m) % N
        diag, P = diagonalize_mod([[v % m for v in row] for row in spec.form], p, e)
        lin = [sum(P[i][j] * spec.linear[i] for i in range(r)) % m for j in range(r)]
        for a, b in zip(diag, lin):
            result = result * _from_counts(N, _one_dim(N, idem, m, a, b))
    return result


def gram_spec(datum: RootDatum, N: int, k: int, linear=None) -> QuadGaussSpec:
    return QuadGaussSpec.make(N, (k * datum.gram_array) % N, linear)


def g_k(datum: RootDatum, N: int, k: int) -> CycNum:
    """G_k = sum over X_N of q^(k (lambda, lambda)), via the closed form."""
    return gauss_closed(gram_spec(datum, N, k))
