"""Weyl sums, normalization constants, h-tables and the lens-space invariants.

Every table over X_N is an integer array of shape (N^r, N): row ``i`` holds
the raw q-power coefficients of the entry at the i-th class (lexicographic
order, see ``lattice.xn_coords``).  A table at recursion depth k stores
h^(k) / Omega^k, which keeps the whole recursion in integer arithmetic;
the Omega^k factor is applied only when an entry is read out as a CycNum.

Rows are int64 while a cheap a-priori bound guarantees no overflow, and
switch to Python integers (object arrays) beyond that.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .chains import ChainLink, LensSpec, hj_expand, inertia, signature_count
from .cyclo import CycNum, q_power
from .errors import CapacityError, DegenerateOrderError, InvalidInputError
from .gauss import g_k
from .lattice import alcove, check_budget, default_budget, flat_index, validate_order, xn_coords
from .rootsys import RootDatum, weyl_group

DIRECT = "direct-multisum"
DENSE = "recursion-dense"
FACTORED = "recursion-factored"
STRATEGIES = (DIRECT, DENSE, FACTORED)

_INT64_SAFE = 2 ** 62


# -- helpers on raw coefficient rows -------------------------------------------


def _roll_rows(table: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """Multiply row i by q^shifts[i]."""
    N = table.shape[-1]
    idx = (np.arange(N)[None, :] - np.asarray(shifts, dtype=np.int64)[:, None]) % N
    return np.take_along_axis(table, idx, axis=1)


def _maxabs(table: np.ndarray) -> int:
    if table.size == 0:
        return 0
    return int(max(abs(int(table.max())), abs(int(table.min()))))


def _widen_if_needed(table: np.ndarray, growth: int) -> np.ndarray:
    if table.dtype != object and _maxabs(table) * growth >= _INT64_SAFE:
        return table.astype(object)
    return table


def _row_to_cyc(row: np.ndarray) -> CycNum:
    return CycNum(len(row), [int(c) for c in row])


# -- Weyl sums ---------------------------------------------------------------


def weyl_q(datum: RootDatum, N: int, mu: Sequence[int]) -> CycNum:
    """Q(mu) as the Weyl denominator product prod_alpha (q^(alpha, mu+rho) - q^-(alpha, mu+rho))."""
    x = [int(a) + b for a, b in zip(mu, datum.rho)]
    num = [0] * N
    num[0] = 1
    for alpha in datum.positive_roots:
        e = datum.pairing(alpha, x) % N
        num = [num[(c - e) % N] - num[(c + e) % N] for c in range(N)]
    return CycNum(N, num)


def weyl_s(datum: RootDatum, N: int, lam: Sequence[int], mu: Sequence[int]) -> CycNum:
    """S_{lam mu} = sum_sigma det(sigma) q^(2 (sigma(lam + rho), mu + rho)), by Weyl group enumeration."""
    rho = datum.rho_array
    lr = np.asarray(lam, dtype=np.int64) + rho
    g_mr = datum.gram_array @ (np.asarray(mu, dtype=np.int64) + rho)
    num = [0] * N
    for w in weyl_group(datum):
        num[int(2 * (w.matrix @ lr) @ g_mr) % N] += w.det
    return CycNum(N, num)


def weyl_q_alternating(datum: RootDatum, N: int, mu: Sequence[int]) -> CycNum:
    return weyl_s(datum, N, (0,) * datum.rank, mu)


def q_table(datum: RootDatum, N: int, budget: int | None = None) -> np.ndarray:
    """Q over all of X_N by the denominator product, vectorized over classes."""
    coords = xn_coords(datum, N, budget)
    shifted = coords + datum.rho_array
    dtype = np.int64 if len(datum.positive_roots) < 62 else object
    table = np.zeros((len(coords), N), dtype=dtype)
    table[:, 0] = 1
    expo = (shifted @ datum.gram_array @ datum.roots_array.T) % N
    for k in range(expo.shape[1]):
        table = _roll_rows(table, expo[:, k]) - _roll_rows(table, -expo[:, k])
    return table


def q_table_alternating(datum: RootDatum, N: int, budget: int | None = None) -> np.ndarray:
    """Q over X_N by the alternating Weyl sum (independent of ``q_table``)."""
    coords = xn_coords(datum, N, budget)
    g_mr = (coords + datum.rho_array) @ datum.gram_array
    rho = datum.rho_array
    table = np.zeros((len(coords), N), dtype=np.int64)
    rows = np.arange(len(coords))
    for w in weyl_group(datum):
        expo = (2 * g_mr @ (w.matrix @ rho)) % N
        np.add.at(table, (rows, expo), w.det)
    return table


def wall_root(datum: RootDatum, N: int) -> tuple[int, ...] | None:
    """A positive root with (alpha, rho) = 0 mod N, if any."""
    for alpha in datum.positive_roots:
        if datum.pairing(alpha, datum.rho) % N == 0:
            return alpha
    return None


def check_nondegenerate(datum: RootDatum, N: int) -> None:
    """Raise unless Q(0) != 0, i.e. unless the zero weight lies in the alcove."""
    alpha = wall_root(datum, N)
    if alpha is not None:
        raise DegenerateOrderError(
            f"{datum.lie_type.value} at N={N}: (rho, alpha) = {datum.pairing(alpha, datum.rho)} "
            f"is divisible by N for the root alpha = {alpha}, so Q(0) = 0 and the alcove "
            f"excludes the zero weight; quantities normalized by Q(0) are undefined "
            f"(N must be at least the Coxeter number {datum.coxeter_number})"
        )


# -- normalization constants ----------------------------------------------------


def omega(datum: RootDatum, N: int) -> CycNum:
    """(-1)^|Phi+| q^(3 (rho, rho)) / G_1."""
    validate_order(datum, N)
    sign = -1 if len(datum.positive_roots) % 2 else 1
    g1 = g_k(datum, N, 1)
    assert not g1.is_zero(), "G_1 vanished for an admissible order"
    return q_power(N, 3 * datum.pairing(datum.rho, datum.rho)) * sign * g1.inv()


def z_closed(datum: RootDatum, N: int) -> CycNum:
    """(-1)^|Phi+| q^(6 (rho, rho)) G_{N-1} / G_1."""
    validate_order(datum, N)
    sign = -1 if len(datum.positive_roots) % 2 else 1
    rr = datum.pairing(datum.rho, datum.rho)
    return q_power(N, 6 * rr) * sign * g_k(datum, N, N - 1) * g_k(datum, N, 1).inv()


def quantum_dimension(datum: RootDatum, N: int, lam: Sequence[int]) -> CycNum:
    check_nondegenerate(datum, N)
    return weyl_q(datum, N, lam) / weyl_q(datum, N, (0,) * datum.rank)


def d_lambda(datum: RootDatum, N: int, lam: Sequence[int]) -> CycNum:
    return omega(datum, N) * weyl_q(datum, N, lam)


def z_brute(datum: RootDatum, N: int, budget: int | None = None) -> CycNum:
    """sum over the alcove of d_lam q^-(lam + 2 rho, lam) D_q(lam)."""
    validate_order(datum, N)
    check_nondegenerate(datum, N)
    om = omega(datum, N)
    q0_inv = weyl_q(datum, N, (0,) * datum.rank).inv()
    total = CycNum.zero(N)
    for lam in alcove(datum, N, budget):
        q_lam = weyl_q(datum, N, lam)
        shifted = datum.pairing(lam, lam) + 2 * datum.pairing(datum.rho, lam)
        total = total + (q_lam * q_lam).shift(-shifted)
    return total * om * q0_inv


@dataclass(frozen=True)
class ZValues:
    z_closed: CycNum
    z_brute: CycNum | None
    note: str = ""


def z_values(datum: RootDatum, N: int, budget: int | None = None) -> ZValues:
    zc = z_closed(datum, N)
    try:
        zb = z_brute(datum, N, budget)
        note = ""
    except (CapacityError, DegenerateOrderError) as exc:
        zb, note = None, str(exc)
    return ZValues(zc, zb, note)


# -- h-tables ------------------------------------------------------------------


@dataclass
class HTables:
    """h^(k) for k = 0..s, stored as integer tables of h^(k) / Omega^k."""

    datum: RootDatum
    order: int
    framings: tuple[int, ...]
    strategy: str
    tables: list[np.ndarray]
    coords: np.ndarray
    _omega: CycNum | None = field(default=None, repr=False)

    @property
    def omega(self) -> CycNum:
        if self._omega is None:
            self._omega = omega(self.datum, self.order)
        return self._omega

    def index(self, lam: Sequence[int]) -> int:
        return int(flat_index(np.asarray(lam), self.order))

    def raw(self, k: int, lam: Sequence[int]) -> CycNum:
        return _row_to_cyc(self.tables[k][self.index(lam)])

    def value(self, k: int, lam: Sequence[int]) -> CycNum:
        return self.omega ** k * self.raw(k, lam)


def _kernel_parts(datum: RootDatum, N: int, coords: np.ndarray):
    G = datum.gram_array
    rho = datum.rho_array
    quad = (np.einsum("ij,jk,ik->i", coords, G, coords) + 2 * coords @ G @ rho) % N
    return quad, G, rho


def _dense_step(table, coords, quad, a, datum, N, threads) -> np.ndarray:
    G, rho = datum.gram_array, datum.rho_array
    shifted = coords + rho
    M = len(coords)
    phase = (a * quad) % N
    out = np.zeros_like(table)

    def work(lo: int, hi: int) -> None:
        expo = (phase[None, :] + 2 * (shifted[lo:hi] @ G @ shifted.T)) % N
        acc = np.zeros((hi - lo, N), dtype=table.dtype)
        for j in range(N):
            mask = (expo == j).astype(table.dtype)
            part = mask @ table
            if j:
                part = np.roll(part, j, axis=1)
            acc = acc + part
        out[lo:hi] = acc

    chunk = max(1, min(M, 4_000_000 // max(M, 1)))
    blocks = [(lo, min(M, lo + chunk)) for lo in range(0, M, chunk)]
    _run(work, blocks, threads)
    return out


def _factored_step(table, coords, quad, a, datum, N, r, threads) -> np.ndarray:
    G, rho = datum.gram_array, datum.rho_array
    # pull out the diagonal phase q^(a (mu + 2 rho, mu) + 2 (mu, rho))
    pre = (a * quad + 2 * coords @ G @ rho) % N
    arr = _roll_rows(table, pre).reshape((N,) * r + (N,))
    for axis in range(r):
        arr = _axis_transform(arr, axis, N, threads)
    flat = arr.reshape(N ** r, N)
    # q^(2 (mu, lam)) summed over mu is the transform evaluated at nu = 2 G lam
    nu = flat_index((2 * coords @ G) % N, N)
    post = (2 * coords @ G @ rho + 2 * int(rho @ G @ rho)) % N
    return _roll_rows(flat[nu], post)


def _axis_transform(arr: np.ndarray, axis: int, N: int, threads: int) -> np.ndarray:
    """out[.., nu, ..] = sum_m q^(m nu) arr[.., m, ..] along one axis."""
    moved = np.moveaxis(arr, axis, 0)
    rolled = [[np.roll(moved[m], s, axis=-1) for s in range(N)] for m in range(N)]
    out = np.empty_like(moved)

    def work(lo: int, hi: int) -> None:
        for nu in range(lo, hi):
            acc = rolled[0][0].copy()
            for m in range(1, N):
                acc = acc + rolled[m][(m * nu) % N]
            out[nu] = acc

    _run(work, [(nu, nu + 1) for nu in range(N)], threads)
    return np.moveaxis(out, 0, axis)


def _run(work, blocks, threads: int) -> None:
    if threads <= 1 or len(blocks) == 1:
        for lo, hi in blocks:
            work(lo, hi)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for fut in [pool.submit(work, lo, hi) for lo, hi in blocks]:
            fut.result()


def h_tables(
    datum: RootDatum,
    N: int,
    framings: Sequence[int],
    strategy: str = FACTORED,
    budget: int | None = None,
    threads: int = 1,
) -> HTables:
    """Run the recursion h^(k)_lam = Omega sum_mu q^(a_k (mu+2rho, mu) + 2 (mu+rho, lam+rho)) h^(k-1)_mu.

    The base table h^(0) is Q itself, so h^(1) reproduces the stated base case.
    """
    if strategy not in (DENSE, FACTORED):
        raise InvalidInputError(f"h-tables support {DENSE!r} or {FACTORED!r}, got {strategy!r}")
    validate_order(datum, N)
    budget = default_budget() if budget is None else budget
    r = datum.rank
    coords = xn_coords(datum, N, budget)
    quad, _, _ = _kernel_parts(datum, N, coords)
    table = q_table(datum, N, budget)
    tables = [table]
    M = N ** r
    for a in framings:
        table = _widen_if_needed(table, M)
        if strategy == DENSE:
            table = _dense_step(table, coords, quad, int(a), datum, N, threads)
        else:
            table = _factored_step(table, coords, quad, int(a), datum, N, r, threads)
        tables.append(table)
    return HTables(datum, N, tuple(int(a) for a in framings), strategy, tables, coords)


def direct_multisum(
    datum: RootDatum, N: int, framings: Sequence[int], budget: int | None = None
) -> CycNum:
    """h_0^(s) by literal enumeration of (X_N)^s:

    Omega^s sum Q(mu_1) q^(sum_i a_i (mu_i + 2rho, mu_i) + 2 (mu_i + rho, mu_{i+1} + rho)),
    with mu_{s+1} = 0.  Q is taken from the alternating Weyl sum.
    """
    validate_order(datum, N)
    budget = default_budget() if budget is None else budget
    s = len(framings)
    M = N ** datum.rank
    check_budget(M ** s, budget, f"direct multisum over (X_{N})^{s}")
    coords = xn_coords(datum, N, budget)
    G, rho = datum.gram_array, datum.rho_array
    quad = np.array([(int(c @ G @ c) + 2 * int(rho @ G @ c)) % N for c in coords], dtype=np.int64)
    shifted = coords + rho
    q_alt = q_table_alternating(datum, N, budget)
    if s == 0:
        return _row_to_cyc(q_alt[0])
    zero = 0  # lexicographic index of the zero class
    pair = (2 * shifted @ G @ shifted.T) % N
    weights = np.zeros((M, N), dtype=np.int64)
    rows = np.arange(M)
    a = [int(x) for x in framings]
    for tail in itertools.product(range(M), repeat=s - 1):
        rest = list(tail) + [zero]  # mu_2 .. mu_s, mu_{s+1}
        base = sum(a[i + 1] * int(quad[rest[i]]) + int(pair[rest[i], rest[i + 1]]) for i in range(s - 1))
        expo = (a[0] * quad + pair[:, rest[0]] + base) % N
        np.add.at(weights, (rows, expo), 1)
    total = [0] * N
    for mu in range(M):
        qrow = [int(c) for c in q_alt[mu]]
        for j in np.nonzero(weights[mu])[0]:
            w = int(weights[mu, j])
            for c in range(N):
                total[(c + j) % N] += w * qrow[c]
    return omega(datum, N) ** s * CycNum(N, total)


# -- invariants ------------------------------------------------------------------


@dataclass
class InvariantResult:
    lie_type: str
    order: int
    framings: tuple[int, ...]
    sigma: CycNum
    f: CycNum
    nabla: CycNum
    sign_count: int
    strategy: str
    lens: tuple[int, int] | None = None
    timings: dict = field(default_factory=dict)

    def check(self) -> None:
        assert self.nabla == self.f * self.f.galois(-1)
        assert self.nabla.is_real()
        assert 0 <= self.sign_count <= len(self.framings)


def pick_strategy(datum: RootDatum, N: int, s: int, budget: int | None = None) -> str:
    budget = default_budget() if budget is None else budget
    M = N ** datum.rank
    if M > budget:
        raise CapacityError(
            f"state space too large: {datum.lie_type.value} at N={N} has {N}^{datum.rank} = {M} "
            f"classes, budget is {budget}"
        )
    if M ** s * 10 <= budget:
        return DIRECT
    if M * M <= budget:
        return DENSE
    return FACTORED


def chain_numerator(
    datum: RootDatum,
    N: int,
    framings: Sequence[int],
    strategy: str = FACTORED,
    budget: int | None = None,
    threads: int = 1,
) -> CycNum:
    """h_0^(s) for the chain, i.e. Q(0) times Sigma."""
    if strategy == DIRECT:
        return direct_multisum(datum, N, framings, budget)
    ht = h_tables(datum, N, framings, strategy, budget, threads)
    return ht.value(len(framings), (0,) * datum.rank)


def chain_sigma(
    datum: RootDatum,
    N: int,
    chain: ChainLink | Sequence[int],
    strategy: str = FACTORED,
    budget: int | None = None,
    threads: int = 1,
) -> CycNum:
    framings = chain.framings if isinstance(chain, ChainLink) else tuple(chain)
    validate_order(datum, N)
    check_nondegenerate(datum, N)
    num = chain_numerator(datum, N, framings, strategy, budget, threads)
    return num / weyl_q(datum, N, (0,) * datum.rank)


def chain_invariant(
    datum: RootDatum,
    N: int,
    chain: ChainLink | Sequence[int],
    strategy: str = "auto",
    budget: int | None = None,
    threads: int = 1,
) -> InvariantResult:
    """Sigma, F = z^(-sign) Sigma and nabla = |Sigma|^2 for a framed chain."""
    framings = chain.framings if isinstance(chain, ChainLink) else tuple(int(a) for a in chain)
    validate_order(datum, N)
    check_nondegenerate(datum, N)
    if strategy == "auto":
        strategy = pick_strategy(datum, N, len(framings), budget)
    elif N ** datum.rank > (default_budget() if budget is None else budget):
        pick_strategy(datum, N, len(framings), budget)  # raises the capacity error
    t0 = time.perf_counter()
    sigma = chain_sigma(datum, N, framings, strategy, budget, threads)
    t1 = time.perf_counter()
    sign = signature_count(framings)
    f = sigma if sign == 0 else sigma * z_closed(datum, N) ** (-sign)
    nabla = sigma * sigma.galois(-1)
    t2 = time.perf_counter()
    res = InvariantResult(
        lie_type=datum.lie_type.value,
        order=N,
        framings=framings,
        sigma=sigma,
        f=f,
        nabla=nabla,
        sign_count=sign,
        strategy=strategy,
        timings={"sigma_s": t1 - t0, "normalize_s": t2 - t1},
    )
    res.check()
    return res


def lens_invariant(
    datum: RootDatum,
    N: int,
    spec: LensSpec,
    strategy: str = "auto",
    budget: int | None = None,
    threads: int = 1,
) -> InvariantResult:
    """F(L(m, n)) = h_0^(s) / Q(0) along the Hirzebruch-Jung chain of m/n."""
    terms = hj_expand(spec).terms
    assert inertia(terms).nonpositive == 0, "Hirzebruch-Jung chain is not positive definite"
    res = chain_invariant(datum, N, terms, strategy, budget, threads)
    assert res.f == res.sigma
    res.lens = (spec.m, spec.n)
    return res


def s3_invariant(datum: RootDatum, N: int) -> CycNum:
    validate_order(datum, N)
    return CycNum.one(N)


def s2xs1_invariant(datum: RootDatum, N: int) -> CycNum:
    """The closed value 1 / (Omega Q(0))."""
    validate_order(datum, N)
    check_nondegenerate(datum, N)
    return (omega(datum, N) * weyl_q(datum, N, (0,) * datum.rank)).inv()


def s2xs1_discrepancy(datum: RootDatum, N: int, strategy: str = FACTORED) -> int | None:
    """Exponent k with F(chain [0]) = z^k / (Omega Q(0)); None if no small k fits."""
    chain_f = chain_invariant(datum, N, [0], strategy).f
    target = s2xs1_invariant(datum, N)
    z = z_closed(datum, N)
    for k in (0, 1, -1, 2, -2):
        if chain_f == target * z ** k:
            return k
    return None
