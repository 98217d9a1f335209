"""Acceptance criteria, one test each, at the stated configurations and limits.

Each test records its sub-cases; the terminal summary prints one PASS/FAIL
line per criterion.  Orders where rho lies on an alcove wall (G2 at N = 5,
F4 at N = 11) make Q(0) vanish, and every sub-case that divides by Q(0)
is reported as failing with the reason instead of being skipped.
"""

from __future__ import annotations

import subprocess
import sys
import time

import numpy as np
import pytest

from rtlens.chains import LensSpec, coprime_pairs, hj_expand
from rtlens.errors import RTLensError
from rtlens.gauss import gauss_brute, gauss_closed, gram_spec
from rtlens.invariant import (
    DENSE,
    DIRECT,
    FACTORED,
    chain_invariant,
    chain_numerator,
    lens_invariant,
    q_table,
    weyl_q,
    weyl_q_alternating,
    z_brute,
    z_closed,
)
from rtlens.rootsys import build_root_datum
from rtlens.verify import antisymmetry_check, lens_specs_up_to, random_gauss_specs

G2 = build_root_datum("G2")
F4 = build_root_datum("F4")
E8 = build_root_datum("E8")


class Cases:
    def __init__(self, request):
        self.node = request.node
        self.failures = []

    def record(self, ok: bool, text: str) -> None:
        self.node.user_properties.append(("case", (ok, text)))
        if not ok:
            self.failures.append(text)

    def attempt(self, text: str, fn) -> None:
        try:
            ok, detail = fn()
        except RTLensError as exc:
            ok, detail = False, f"undefined: {exc}"
        self.record(ok, text + (f" [{detail}]" if detail else ""))

    def finish(self) -> None:
        assert not self.failures, "\n".join(self.failures)


@pytest.fixture
def cases(request):
    return Cases(request)


def timed(limit: float):
    start = time.perf_counter()
    return lambda: time.perf_counter() - start <= limit


S3_CONFIGS = [(G2, 5, 1.0), (G2, 7, 1.0), (G2, 11, 1.0), (F4, 11, 300.0)]


@pytest.mark.criterion("F(S^3) = 1 from chains [+1] and [-1]")
def test_f_of_s3(cases):
    for datum, N, limit in S3_CONFIGS:
        for chain in ([1], [-1]):
            clock = timed(limit)

            def run():
                res = chain_invariant(datum, N, chain, FACTORED)
                return res.f == 1 and clock(), "" if res.f == 1 else f"F = {res.f!r}"
            cases.attempt(f"{datum.lie_type.value} N={N} chain {chain}", run)
    cases.finish()


@pytest.mark.criterion("Sigma([-1]) = z")
def test_kirby_minus(cases):
    for datum, N, limit in S3_CONFIGS:
        clock = timed(limit)

        def run():
            res = chain_invariant(datum, N, [-1], FACTORED)
            return res.sigma == z_closed(datum, N) and clock(), ""
        cases.attempt(f"{datum.lie_type.value} N={N}", run)
    cases.finish()


@pytest.mark.criterion("|z| = 1 from closed-form Gauss sums")
def test_z_unit_modulus(cases):
    configs = [(G2, 5), (G2, 7), (G2, 11), (G2, 13), (F4, 11), (F4, 13), (E8, 31)]
    for datum, N in configs:
        clock = timed(10.0)

        def run():
            z = z_closed(datum, N)
            return z * z.galois(-1) == 1 and clock(), ""
        cases.attempt(f"{datum.lie_type.value} N={N}", run)
    cases.finish()


@pytest.mark.criterion("z closed form = alcove-sum definition")
def test_z_closed_vs_definition(cases):
    clock = timed(10.0)
    for N in (5, 7):
        cases.attempt(f"G2 N={N}", lambda: (z_closed(G2, N) == z_brute(G2, N), ""))
    cases.record(clock(), "within 10 s")
    cases.finish()


@pytest.mark.criterion("direct multisum = recursion-dense = recursion-factored")
def test_oracle_equivalence(cases):
    clock = timed(30.0)
    N = 5
    specs = lens_specs_up_to(3, 12)
    assert (7, 2) in [(s.m, s.n) for s in specs] and (5, 3) in [(s.m, s.n) for s in specs]
    all_zero = True
    for spec in specs:
        terms = hj_expand(spec).terms

        def run():
            vals = [chain_numerator(G2, N, terms, st) for st in (DIRECT, DENSE, FACTORED)]
            nonlocal all_zero
            all_zero &= all(v.is_zero() for v in vals)
            return vals[0] == vals[1] == vals[2], ""
        cases.attempt(f"G2 N=5 L({spec.m},{spec.n}) {list(terms)}", run)
    cases.record(clock(), "within 30 s")
    if all_zero:
        # agreement of h_0^(s) holds, but trivially: Q vanishes on all of X_5
        cases.node.user_properties.append(("case", (True, "note: every h_0^(s) is 0 at G2 N=5")))
    cases.finish()


@pytest.mark.criterion("gauss_closed = gauss_brute")
def test_gauss_engine(cases):
    clock = timed(120.0)
    configs = [(G2, N) for N in (5, 7, 11, 13)] + [(F4, 11)]
    for datum, N in configs:
        bad = [k for k in range(N) if gauss_closed(gram_spec(datum, N, k)) != gauss_brute(gram_spec(datum, N, k))]
        cases.record(not bad, f"{datum.lie_type.value} N={N} all k" + (f" bad {bad}" if bad else ""))
        specs = random_gauss_specs(N, datum.rank, 50, seed=N)
        bad = [i for i, sp in enumerate(specs) if gauss_closed(sp) != gauss_brute(sp)]
        cases.record(not bad, f"{datum.lie_type.value} N={N} 50 random specs" + (f" bad {bad}" if bad else ""))
    cases.record(clock(), "within 2 min")
    cases.finish()


@pytest.mark.criterion("Weyl denominator: product = alternating sum")
def test_weyl_identity(cases):
    clock = timed(60.0)
    rng = np.random.default_rng(2024)
    for datum, N, count in [(G2, 11, 20), (F4, 13, 5)]:
        mus = rng.integers(-12, 13, size=(count, datum.rank))
        bad = [tuple(mu) for mu in mus if weyl_q(datum, N, mu) != weyl_q_alternating(datum, N, mu)]
        cases.record(not bad, f"{datum.lie_type.value} {count} random mu" + (f" bad {bad}" if bad else ""))
    cases.record(clock(), "within 1 min")
    cases.finish()


@pytest.mark.criterion("homeomorphism invariance for m <= 9")
def test_homeomorphism(cases):
    clock = timed(120.0)
    for N in (5, 7):
        def run():
            res = {(m, n): lens_invariant(G2, N, LensSpec(m, n)) for m, n in coprime_pairs(9)}
            bad = []
            for (m, n), r in res.items():
                if r.f != res[(m, pow(n, -1, m))].f:
                    bad.append(f"F L({m},{n})")
                if r.nabla != res[(m, m - n)].nabla:
                    bad.append(f"nabla L({m},{n})")
            return not bad, ", ".join(bad)
        cases.attempt(f"G2 N={N}", run)
    cases.record(clock(), "within 2 min")
    cases.finish()


@pytest.mark.criterion("Weyl anti-symmetry of h-tables on X_5")
def test_antisymmetry(cases):
    clock = timed(10.0)
    rng = np.random.default_rng(5)
    for _ in range(3):
        chain = rng.integers(-4, 6, size=2).tolist()
        check = antisymmetry_check(G2, 5, chain)
        cases.record(check.passed, f"G2 N=5 chain {chain}, all 12 elements, all 25 classes")
    if not q_table(G2, 5).any():
        cases.node.user_properties.append(("case", (True, "note: h^(0) = Q is 0 mod Phi_5 on X_5")))
    cases.record(clock(), "within 10 s")
    cases.finish()


@pytest.mark.criterion("E8 capacity honesty")
def test_e8_capacity(cases):
    proc = subprocess.run(
        [sys.executable, "-m", "rtlens", "invariant", "--algebra", "e8", "--order", "31", "--lens", "7", "2"],
        capture_output=True, text=True,
    )
    cases.record(proc.returncode == 3, f"exit code {proc.returncode}")
    cases.record(proc.stdout == "", "no value printed")
    cases.record("31^8" in proc.stderr, "message names 31^8")
    cases.record(len(E8.positive_roots) == 120, "120 positive roots")
    cases.record(E8.det_gram == 1, "det G = 1")
    cases.record(E8.dual_coxeter == 30, "dual Coxeter number 30")
    # the subprocess start-up is not part of the library budget; time the in-process refusal
    start = time.perf_counter()
    try:
        lens_invariant(E8, 31, LensSpec(7, 2))
        refused = False
    except RTLensError:
        refused = True
    cases.record(refused and time.perf_counter() - start < 1.0, "in-process refusal under 1 s")
    cases.finish()


@pytest.mark.criterion("table output byte-identical across thread counts")
def test_determinism(cases):
    def table(threads):
        return subprocess.run(
            [sys.executable, "-m", "rtlens", "table", "--algebra", "g2", "--order", "5", "--m-max", "8",
             "--threads", str(threads)],
            capture_output=True,
        )

    a, b = table(1), table(4)
    cases.record(a.returncode == 0 and b.returncode == 0,
                 f"exit codes {a.returncode}, {b.returncode}: {a.stderr.decode().strip()[:160]}")
    cases.record(a.stdout == b.stdout and a.stderr == b.stderr, "byte-identical output")
    cases.finish()


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
