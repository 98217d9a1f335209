"""Property suites behind ``rtlens verify``.

Each suite returns a list of ``Check`` records; a failing check carries an
exact witness (canonical JSON of the values that disagreed, or the error
message that prevented the computation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chains import LensSpec, coprime_pairs, hj_expand, inertia
from .cyclo import CycNum
from .errors import CapacityError, DegenerateOrderError
from .gauss import QuadGaussSpec, g_k, gauss_brute, gauss_closed, gram_spec
from .invariant import (
    DENSE,
    DIRECT,
    FACTORED,
    chain_invariant,
    chain_numerator,
    check_nondegenerate,
    d_lambda,
    h_tables,
    lens_invariant,
    s2xs1_discrepancy,
    weyl_q,
    weyl_q_alternating,
    z_brute,
    z_closed,
)
from .lattice import alcove, default_budget, flat_index, in_alcove, validate_order
from .rootsys import LieType, RootDatum, longest_element, weyl_group

SUITES = ("root", "gauss", "weyl", "z", "lens", "kirby", "homeo")


@dataclass
class Check:
    name: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"property": self.name, "pass": self.passed}
        if self.witness:
            out["witness"] = self.witness
        return out


def _guard(name: str, fn: Callable[[], tuple[bool, dict] | bool]) -> Check:
    """Run one property; degenerate orders count as failures, capacity errors propagate."""
    try:
        res = fn()
    except DegenerateOrderError as exc:
        return Check(name, False, {"error": str(exc)})
    if isinstance(res, tuple):
        return Check(name, res[0], res[1] if not res[0] else {})
    return Check(name, bool(res))


def _pair(a: CycNum, b: CycNum) -> dict:
    return {"left": a.to_json(), "right": b.to_json()}


# -- root ---------------------------------------------------------------------


def root_suite(datum: RootDatum) -> list[Check]:
    G = datum.gram_array
    A = datum.cartan_array
    r = datum.rank
    expected = {LieType.G2: (6, 6, 3, 3), LieType.F4: (24, 4, 4, 2), LieType.E8: (120, 2, 1, 1)}
    n_pos, theta_norm, det, ratio = expected[datum.lie_type]
    checks = [
        Check("cartan = 2 G_ij / G_ii", all(A[i, j] * G[i, i] == 2 * G[i, j] for i in range(r) for j in range(r))),
        Check("gram symmetric with even diagonal", bool(np.array_equal(G, G.T) and np.all(np.diag(G) % 2 == 0))),
        Check("(theta, theta)", datum.pairing(datum.highest_root, datum.highest_root) == theta_norm),
        Check("positive root count", len(datum.positive_roots) == n_pos),
        Check("2 rho = sum of positive roots",
              tuple(2 * x for x in datum.rho) == tuple(datum.roots_array.sum(axis=0).tolist())
              and all(x > 0 for x in datum.rho)),
        Check("dual coxeter = 1 + 2 (rho, theta) / (theta, theta)",
              datum.dual_coxeter * theta_norm == theta_norm + 2 * datum.pairing(datum.rho, datum.highest_root)),
        Check("det gram", datum.det_gram == det),
        Check("simple root norm ratio", max(datum.norms) == ratio * min(datum.norms)),
    ]
    if datum.lie_type is LieType.E8:
        checks.append(Check("dual coxeter of E8 is 30", datum.dual_coxeter == 30))
        return checks
    W = weyl_group(datum)
    rng = np.random.default_rng(0)
    xs = rng.integers(-5, 6, size=(6, r))
    invariant = all(
        int((w.matrix @ x) @ G @ (w.matrix @ y)) == int(x @ G @ y) for w in W for x in xs for y in xs
    )
    checks.append(Check("Weyl group order", len(W) == {LieType.G2: 12, LieType.F4: 1152}[datum.lie_type]))
    checks.append(Check("Weyl group preserves the pairing", invariant))
    w0 = longest_element(datum)
    checks.append(Check("longest element is -1", bool(np.array_equal(w0.matrix, -np.eye(r, dtype=np.int64)))))
    return checks


# -- gauss ----------------------------------------------------------------------


def random_gauss_specs(N: int, r: int, count: int, seed: int = 0) -> list[QuadGaussSpec]:
    rng = np.random.default_rng(seed)
    specs = []
    for _ in range(count):
        upper = rng.integers(0, N, size=(r, r))
        form = np.triu(upper) + np.triu(upper, 1).T
        specs.append(QuadGaussSpec.make(N, form.tolist(), rng.integers(0, N, size=r).tolist()))
    return specs


def gauss_suite(datum: RootDatum, N: int, budget: int | None = None, n_random: int = 50,
                seed: int = 0) -> list[Check]:
    validate_order(datum, N)
    budget = default_budget() if budget is None else budget
    r = datum.rank
    checks = []
    brute_ok = N ** r <= budget
    if brute_ok:
        bad = [k for k in range(N) if gauss_closed(gram_spec(datum, N, k)) != gauss_brute(gram_spec(datum, N, k))]
        checks.append(Check("closed = brute for G_k, all k mod N", not bad, {"k": bad} if bad else {}))
        specs = random_gauss_specs(N, r, n_random, seed)
        bad = [i for i, sp in enumerate(specs) if gauss_closed(sp) != gauss_brute(sp)]
        checks.append(Check(f"closed = brute on {n_random} random quadratic+linear specs", not bad,
                            {"failing": bad} if bad else {}))
    g1 = g_k(datum, N, 1)
    gm = g_k(datum, N, N - 1)
    checks.append(Check("galois(G_1, -1) = G_{N-1}", g1.galois(-1) == gm, {} if g1.galois(-1) == gm else _pair(g1.galois(-1), gm)))
    checks.append(Check("G_1 G_{N-1} = N^r", g1 * gm == N ** r))
    checks.append(Check("G_0 = N^r", g_k(datum, N, 0) == N ** r))
    checks.append(Check("G_k periodic in k", g_k(datum, N, 2) == g_k(datum, N, 2 + N)))
    mags = []
    for k in range(1, N):
        if math.gcd(k * datum.det_gram, N) == 1:
            mags.append(abs(abs(g_k(datum, N, k).embed()) ** 2 / N ** r - 1))
    checks.append(Check("|G_k|^2 = N^r numerically", max(mags) < 1e-9, {"max_rel_err": max(mags)}))
    return checks


# -- weyl -----------------------------------------------------------------------


def weyl_suite(datum: RootDatum, N: int, n_random: int | None = None, seed: int = 0,
               budget: int | None = None) -> list[Check]:
    validate_order(datum, N)
    r = datum.rank
    checks = []
    if datum.lie_type is LieType.E8:
        q0 = weyl_q(datum, N, (0,) * r)
        checks.append(Check("Q(0) nonzero", not q0.is_zero()))
        return checks
    count = n_random if n_random is not None else (20 if datum.lie_type is LieType.G2 else 5)
    rng = np.random.default_rng(seed)
    mus = rng.integers(-3 * N, 3 * N, size=(count, r))
    bad = [mu.tolist() for mu in mus if weyl_q(datum, N, mu) != weyl_q_alternating(datum, N, mu)]
    checks.append(Check(f"denominator product = alternating sum at {count} random mu", not bad,
                        {"mu": bad} if bad else {}))
    mu = mus[0]
    shifted = mu + N * np.arange(1, r + 1)
    checks.append(Check("Q is lift independent", weyl_q(datum, N, mu) == weyl_q(datum, N, shifted)))
    wall = [a for a in datum.positive_roots if datum.pairing(a, datum.rho) % N == 0]
    q0 = weyl_q(datum, N, (0,) * r)
    checks.append(Check("Q(0) vanishes iff rho lies on a wall mod N", q0.is_zero() == bool(wall)))
    W = weyl_group(datum)
    G, rho = datum.gram_array, datum.rho_array
    sample = rng.integers(-2 * N, 2 * N, size=(8, r))
    ok = True
    for lam in sample:
        base = int((lam + 2 * rho) @ G @ lam)
        for w in W:
            img = w.matrix @ (lam + rho) - rho
            ok &= int((img + 2 * rho) @ G @ img) == base
    checks.append(Check("(w(l+rho)-rho + 2 rho, w(l+rho)-rho) = (l + 2 rho, l)", bool(ok)))
    w0 = longest_element(datum)
    try:
        lams = list(alcove(datum, N, budget))
        ok = True
        for lam in lams:
            star = tuple(int(v) for v in -(w0.matrix @ np.array(lam)))
            ok &= in_alcove(datum, N, star) and d_lambda(datum, N, lam) == d_lambda(datum, N, star)
        checks.append(Check("d_lambda = d_lambda* on the alcove", bool(ok)))
    except CapacityError:
        pass
    return checks


# -- z --------------------------------------------------------------------------


def z_suite(datum: RootDatum, N: int, budget: int | None = None) -> list[Check]:
    validate_order(datum, N)
    z = z_closed(datum, N)
    unit = z * z.galois(-1)
    checks = [Check("z conj(z) = 1", unit == 1, {} if unit == 1 else {"product": unit.to_json()})]
    if datum.lie_type is not LieType.E8:
        def closed_vs_brute():
            zb = z_brute(datum, N, budget)
            return zb == z, _pair(z, zb)
        checks.append(_guard("closed form of z = alcove sum", closed_vs_brute))
    return checks


# -- lens -----------------------------------------------------------------------


def lens_specs_up_to(max_terms: int, m_max: int) -> list[LensSpec]:
    out = []
    for m, n in coprime_pairs(m_max):
        spec = LensSpec(m, n)
        if len(hj_expand(spec).terms) <= max_terms:
            out.append(spec)
    return out


def oracle_equivalence(datum: RootDatum, N: int, spec: LensSpec, budget: int | None = None) -> Check:
    terms = hj_expand(spec).terms

    def run():
        check_nondegenerate(datum, N)
        vals = {st: chain_numerator(datum, N, terms, st, budget) for st in (DIRECT, DENSE, FACTORED)}
        q0 = weyl_q(datum, N, (0,) * datum.rank)
        fs = {st: v / q0 for st, v in vals.items()}
        ok = fs[DIRECT] == fs[DENSE] == fs[FACTORED]
        return ok, {st: v.to_json() for st, v in fs.items()}

    return _guard(f"L({spec.m},{spec.n}) {list(terms)}: direct = dense = factored", run)


def antisymmetry_check(datum: RootDatum, N: int, framings, budget: int | None = None,
                       sample: int | None = None, seed: int = 0) -> Check:
    """h_{w(l+rho)-rho} = det(w) h_l on every table of the recursion (dense strategy)."""
    ht = h_tables(datum, N, framings, DENSE, budget)
    coords = ht.coords
    rng = np.random.default_rng(seed)
    idx = np.arange(len(coords)) if sample is None else rng.choice(len(coords), size=sample, replace=False)
    rho = datum.rho_array
    bad = []
    for w in weyl_group(datum):
        img = flat_index((coords[idx] + rho) @ w.matrix.T - rho, N)
        for k, table in enumerate(ht.tables):
            lhs = table[img].astype(object)
            rhs = table[idx].astype(object) * w.det
            diff = [int(i) for i, a, b in zip(idx, lhs, rhs) if _row_to_cyc(a) != _row_to_cyc(b)]
            if diff:
                bad.append({"k": k, "det": w.det, "classes": diff[:5]})
    return Check(f"h-tables Weyl anti-symmetric for chain {list(framings)}", not bad,
                 {"violations": bad[:5]} if bad else {})


def _row_to_cyc(row) -> CycNum:
    return CycNum(len(row), [int(c) for c in row])


def lens_suite(datum: RootDatum, N: int, budget: int | None = None, seed: int = 0,
               max_terms: int = 3, m_max: int = 12) -> list[Check]:
    validate_order(datum, N)
    budget = default_budget() if budget is None else budget
    M = N ** datum.rank
    if M > budget:
        raise CapacityError(f"state space too large: {N}^{datum.rank} = {M} classes, budget is {budget}")
    checks = []
    specs = [sp for sp in lens_specs_up_to(max_terms, m_max) if M ** len(hj_expand(sp).terms) <= budget]
    for spec in specs:
        checks.append(oracle_equivalence(datum, N, spec, budget))
    rng = np.random.default_rng(seed)
    for _ in range(2):
        framings = rng.integers(-4, 6, size=2).tolist()
        sample = None if datum.lie_type is LieType.G2 else 200
        checks.append(antisymmetry_check(datum, N, framings, budget, sample, seed))
    return checks


# -- kirby ----------------------------------------------------------------------


def kirby_suite(datum: RootDatum, N: int, strategy: str = "auto", budget: int | None = None) -> list[Check]:
    validate_order(datum, N)
    checks = []

    def f_of(chain):
        return chain_invariant(datum, N, chain, strategy, budget).f

    def minus_one():
        res = chain_invariant(datum, N, [-1], strategy, budget)
        z = z_closed(datum, N)
        return res.sigma == z, _pair(res.sigma, z)

    checks.append(_guard("Sigma([-1]) = z", minus_one))
    for chain in ([1], [-1]):
        def s3(chain=chain):
            f = f_of(chain)
            return f == 1, {"f": f.to_json()}
        checks.append(_guard(f"F(S^3) = 1 from chain {chain}", s3))

    def s2s1():
        k = s2xs1_discrepancy(datum, N)
        return k == 0, {"z_exponent": k}
    checks.append(_guard("F(chain [0]) = 1 / (Omega Q(0))", s2s1))

    # blowing down a +-1 unknot in a chain shifts its neighbours' framings by -+1
    moves = [((3,), (4, 1)), ((3,), (2, -1)), ((4, 2), (5, 1, 3)), ((4, 2), (3, -1, 1)), ((2, 3), (2, 4, 1))]
    for small, big in moves:
        def blow(small=small, big=big):
            a, b = f_of(small), f_of(big)
            return a == b, _pair(a, b)
        checks.append(_guard(f"blow-up {list(small)} ~ {list(big)}", blow))
    return checks


# -- homeo ----------------------------------------------------------------------


def homeo_suite(datum: RootDatum, N: int, m_max: int = 9, strategy: str = "auto",
                budget: int | None = None) -> list[Check]:
    validate_order(datum, N)
    try:
        check_nondegenerate(datum, N)
    except DegenerateOrderError as exc:
        return [Check("lens invariants defined", False, {"error": str(exc)})]
    results = {}
    for m, n in coprime_pairs(m_max):
        results[(m, n)] = lens_invariant(datum, N, LensSpec(m, n), strategy, budget)
    checks = []
    for (m, n), res in results.items():
        n_inv = pow(n, -1, m)
        if n_inv > n:
            other = results[(m, n_inv)]
            checks.append(Check(f"F(L({m},{n})) = F(L({m},{n_inv}))", res.f == other.f,
                                {} if res.f == other.f else _pair(res.f, other.f)))
        if m - n > n:
            other = results[(m, m - n)]
            checks.append(Check(f"nabla(L({m},{n})) = nabla(L({m},{m - n}))", res.nabla == other.nabla,
                                {} if res.nabla == other.nabla else _pair(res.nabla, other.nabla)))
        assert inertia(hj_expand(LensSpec(m, n)).terms).nonpositive == 0
    return checks


def run_suite(suite: str, datum: RootDatum, N: int, budget: int | None = None, seed: int = 0,
              strategy: str = "auto", m_max: int = 9) -> list[Check]:
    if suite == "root":
        return root_suite(datum)
    if suite == "gauss":
        return gauss_suite(datum, N, budget, seed=seed)
    if suite == "weyl":
        return weyl_suite(datum, N, seed=seed, budget=budget)
    if suite == "z":
        return z_suite(datum, N, budget)
    if suite == "lens":
        return lens_suite(datum, N, budget, seed)
    if suite == "kirby":
        return kirby_suite(datum, N, strategy, budget)
    if suite == "homeo":
        return homeo_suite(datum, N, m_max, strategy, budget)
    raise ValueError(f"unknown suite {suite!r}")

