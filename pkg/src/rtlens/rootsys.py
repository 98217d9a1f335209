"""Root data for G2, F4 and E8.

Simple roots follow Bourbaki numbering:

* G2: alpha_1 short, alpha_2 long.
* F4: alpha_1, alpha_2 long; alpha_3, alpha_4 short (1 - 2 => 3 - 4).
* E8: chain 1 - 3 - 4 - 5 - 6 - 7 - 8 with 2 attached to 4.

The inner product is normalized so the highest root has squared length
6 (G2), 4 (F4) or 2 (E8); short simple roots then have squared length 2.
Lattice vectors are integer coordinate tuples in the simple-root basis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DimensionError, GroupTooLargeError


class LieType(str, enum.Enum):
    G2 = "G2"
    F4 = "F4"
    E8 = "E8"

    @classmethod
    def parse(cls, text: str) -> LieType:
        try:
            return cls(text.upper())
        except ValueError:
            raise ValueError(f"unknown algebra {text!r}; expected one of g2, f4, e8") from None


# simple-root squared lengths and Dynkin edges (0-based)
_DYNKIN = {
    LieType.G2: ((2, 6), ((0, 1),)),
    LieType.F4: ((4, 4, 2, 2), ((0, 1), (1, 2), (2, 3))),
    LieType.E8: ((2,) * 8, ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))),
}

_EXPECTED = {
    # |positive roots|, (theta, theta), det(Gram)
    LieType.G2: (6, 6, 3),
    LieType.F4: (24, 4, 4),
    LieType.E8: (120, 2, 1),
}

WEYL_ENUMERATION_LIMIT = 10_000


@dataclass(frozen=True)
class RootDatum:
    lie_type: LieType
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    norms: tuple[int, ...]
    gram: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]
    highest_root: tuple[int, ...]
    rho: tuple[int, ...]
    dual_coxeter: int

    @cached_property
    def gram_array(self) -> np.ndarray:
        return np.array(self.gram, dtype=np.int64)

    @cached_property
    def cartan_array(self) -> np.ndarray:
        return np.array(self.cartan, dtype=np.int64)

    @cached_property
    def roots_array(self) -> np.ndarray:
        return np.array(self.positive_roots, dtype=np.int64)

    @property
    def rho_array(self) -> np.ndarray:
        return np.array(self.rho, dtype=np.int64)

    @cached_property
    def det_gram(self) -> int:
        return _int_det(self.gram)

    @cached_property
    def coxeter_number(self) -> int:
        """One more than the largest <rho, alpha^vee> over positive roots."""
        return 1 + max(self.coroot_pairing(self.rho, a) for a in self.positive_roots)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return pairing(self, x, y)

    def coroot_pairing(self, x: Sequence[int], alpha: Sequence[int]) -> int:
        """<x, alpha^vee> = 2 (x, alpha) / (alpha, alpha); integral on the root lattice."""
        num = 2 * pairing(self, x, alpha)
        den = pairing(self, alpha, alpha)
        assert num % den == 0
        return num // den

    def dump(self) -> str:
        lines = [f"{self.lie_type.value}  rank {self.rank}"]
        lines.append("cartan: " + "; ".join(" ".join(f"{v:2d}" for v in row) for row in self.cartan))
        lines.append("gram:   " + "; ".join(" ".join(f"{v:2d}" for v in row) for row in self.gram))
        lines.append(f"det gram: {self.det_gram}")
        lines.append(f"rho: {self.rho}  (rho, rho) = {self.pairing(self.rho, self.rho)}")
        lines.append(f"theta: {self.highest_root}  (theta, theta) = "
                     f"{self.pairing(self.highest_root, self.highest_root)}")
        lines.append(f"dual coxeter: {self.dual_coxeter}  coxeter: {self.coxeter_number}")
        lines.append(f"positive roots ({len(self.positive_roots)}):")
        for root in self.positive_roots:
            lines.append(f"  {root}  norm {self.pairing(root, root)}")
        return "\n".join(lines)


def pairing(datum: RootDatum, x: Sequence[int], y: Sequence[int]) -> int:
    r = datum.rank
    if len(x) != r or len(y) != r:
        raise DimensionError(f"expected vectors of length {r}, got {len(x)} and {len(y)}")
    g = datum.gram
    return sum(int(x[i]) * g[i][j] * int(y[j]) for i in range(r) for j in range(r))


def _int_det(m: Sequence[Sequence[int]]) -> int:
    # Bareiss fraction-free elimination
    a = [list(row) for row in m]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def _gram(norms: Sequence[int], edges) -> list[list[int]]:
    r = len(norms)
    g = [[0] * r for _ in range(r)]
    for i, d in enumerate(norms):
        g[i][i] = d
    for i, j in edges:
        g[i][j] = g[j][i] = -max(norms[i], norms[j]) // 2
    return g


def _positive_roots(cartan: list[list[int]]) -> list[tuple[int, ...]]:
    """Breadth-first closure by height using alpha-strings.

    For a positive root beta and simple alpha_i (beta != alpha_i), the
    alpha_i-string through beta is beta - p alpha_i .. beta + q alpha_i with
    p - q = <beta, alpha_i^vee>; beta + alpha_i is a root iff q > 0.
    """
    r = len(cartan)
    simple = [tuple(int(i == j) for j in range(r)) for i in range(r)]
    roots = set(simple)
    layer = list(simple)
    ordered = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(r):
                if beta == simple[i]:
                    continue
                c = sum(beta[j] * cartan[i][j] for j in range(r))
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in roots:
                        p += 1
                    else:
                        break
                if p - c > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        nxt.sort(key=lambda v: (sum(v), v))
        ordered.extend(nxt)
        layer = nxt
    return ordered


@lru_cache(maxsize=None)
def build_root_datum(lie_type: LieType | str) -> RootDatum:
    lie_type = LieType.parse(lie_type) if isinstance(lie_type, str) else lie_type
    norms, edges = _DYNKIN[lie_type]
    r = len(norms)
    gram = _gram(norms, edges)
    cartan = [[2 * gram[i][j] // gram[i][i] for j in range(r)] for i in range(r)]
    roots = _positive_roots(cartan)
    n_pos, theta_norm, det = _EXPECTED[lie_type]
    if len(roots) != n_pos:
        raise AssertionError(f"{lie_type.value}: generated {len(roots)} positive roots, expected {n_pos}")

    sums = [sum(root[i] for root in roots) for i in range(r)]
    assert all(s % 2 == 0 for s in sums)
    rho = tuple(s // 2 for s in sums)
    theta = max(roots, key=sum)
    assert sum(1 for root in roots if sum(root) == sum(theta)) == 1

    def ip(x, y):
        return sum(x[i] * gram[i][j] * y[j] for i in range(r) for j in range(r))

    tt = ip(theta, theta)
    assert tt == theta_norm, (lie_type, tt)
    num = 2 * ip(rho, theta)
    assert num % tt == 0
    h_dual = 1 + num // tt

    datum = RootDatum(
        lie_type=lie_type,
        rank=r,
        cartan=tuple(map(tuple, cartan)),
        norms=tuple(norms),
        gram=tuple(map(tuple, gram)),
        positive_roots=tuple(roots),
        highest_root=tuple(theta),
        rho=rho,
        dual_coxeter=h_dual,
    )
    assert datum.det_gram == det
    return datum


class WeylElement(NamedTuple):
    matrix: np.ndarray
    det: int


def simple_reflections(datum: RootDatum) -> list[np.ndarray]:
    """s_i acting on simple-root coordinates: x -> x - <x, alpha_i^vee> alpha_i."""
    r = datum.rank
    a = datum.cartan_array
    mats = []
    for i in range(r):
        s = np.eye(r, dtype=np.int64)
        s[i, :] -= a[i, :]
        mats.append(s)
    return mats


def weyl_group(datum: RootDatum) -> list[WeylElement]:
    """All Weyl group elements, closed under simple reflections (G2, F4 only)."""
    if datum.lie_type is LieType.E8:
        raise GroupTooLargeError(
            "Weyl group of E8 has order 696729600; group too large, use the denominator product"
        )
    return list(_weyl_group_cached(datum.lie_type))


@lru_cache(maxsize=None)
def _weyl_group_cached(lie_type: LieType) -> tuple[WeylElement, ...]:
    datum = build_root_datum(lie_type)
    gens = simple_reflections(datum)
    ident = np.eye(datum.rank, dtype=np.int64)
    seen = {ident.tobytes(): WeylElement(ident, 1)}
    frontier = [seen[ident.tobytes()]]
    while frontier:
        nxt = []
        for w in frontier:
            for s in gens:
                m = s @ w.matrix
                key = m.tobytes()
                if key not in seen:
                    el = WeylElement(m, -w.det)
                    seen[key] = el
                    nxt.append(el)
            if len(seen) > WEYL_ENUMERATION_LIMIT:
                raise GroupTooLargeError("Weyl group enumeration limit exceeded")
        frontier = nxt
    for el in seen.values():
        el.matrix.setflags(write=False)
    return tuple(seen.values())


def longest_element(datum: RootDatum) -> WeylElement:
    """The unique element sending rho to -rho."""
    rho = datum.rho_array
    for w in weyl_group(datum):
        if np.array_equal(w.matrix @ rho, -rho):
            return w
    raise AssertionError("no longest element found")
