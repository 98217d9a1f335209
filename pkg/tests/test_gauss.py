from __future__ import annotations

import numpy as np
import pytest

from rtlens.gauss import QuadGaussSpec, diagonalize_mod, g_k, gauss_brute, gauss_closed, gram_spec
from rtlens.rootsys import build_root_datum
from rtlens.verify import random_gauss_specs

G2 = build_root_datum("G2")
F4 = build_root_datum("F4")


@pytest.mark.parametrize("N", [5, 7, 11, 13, 25, 35, 49])
def test_closed_equals_brute_g2(N):
    for k in range(N):
        spec = gram_spec(G2, N, k)
        assert gauss_closed(spec) == gauss_brute(spec), k


@pytest.mark.parametrize("N", [9, 15, 27, 45, 63])
def test_random_specs_with_prime_powers(N):
    for spec in random_gauss_specs(N, 3, 15, seed=N):
        assert gauss_closed(spec) == gauss_brute(spec)


def test_one_dimensional_classics():
    # classical quadratic Gauss sum: |G|^2 = p and G^2 = (-1/p) p
    for p in (5, 7, 11, 13):
        g = gauss_closed(QuadGaussSpec.make(p, [[1]]))
        assert g * g.conj() == p
        assert g * g == (p if p % 4 == 1 else -p)


def test_degenerate_form_counts():
    # zero form: the sum counts every point
    assert gauss_closed(QuadGaussSpec.make(9, [[0, 0], [0, 0]])) == 81
    # nonzero linear term with zero form cancels
    assert gauss_closed(QuadGaussSpec.make(9, [[0]], [1])) == 0


@pytest.mark.parametrize("p,e", [(3, 2), (5, 1), (5, 2), (7, 1)])
def test_diagonalize_mod(p, e):
    rng = np.random.default_rng(p * e)
    m = p ** e
    for _ in range(20):
        a = rng.integers(0, m, size=(3, 3))
        form = (a + a.T) % m
        diag, P = diagonalize_mod(form.tolist(), p, e)
        P = np.array(P, dtype=object)
        D = (P.T @ np.array(form, dtype=object) @ P) % m
        assert all(D[i, j] == (diag[i] % m if i == j else 0) for i in range(3) for j in range(3))


def test_g1_modulus_f4():
    g = g_k(F4, 11, 1)
    assert g * g.conj() == 11 ** 4
    assert g == gauss_brute(gram_spec(F4, 11, 1))


def test_e8_closed_form_is_fast():
    e8 = build_root_datum("E8")
    g = g_k(e8, 31, 1)
    assert g * g.conj() == 31 ** 8
