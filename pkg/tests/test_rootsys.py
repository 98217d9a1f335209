from __future__ import annotations

import numpy as np
import pytest

from rtlens.errors import DimensionError, GroupTooLargeError
from rtlens.rootsys import (
    LieType,
    build_root_datum,
    longest_element,
    pairing,
    simple_reflections,
    weyl_group,
)

# (positive roots, det G, dual Coxeter, (rho, rho), rho in root coordinates, |W|)
KNOWN = {
    "G2": (6, 3, 4, 14, (5, 3), 12),
    "F4": (24, 4, 9, 78, (8, 15, 21, 11), 1152),
    "E8": (120, 1, 30, 620, (46, 68, 91, 135, 110, 84, 57, 29), 696729600),
}


@pytest.mark.parametrize("name", KNOWN)
def test_invariants(name):
    d = build_root_datum(name)
    n_pos, det, hv, rr, rho, _ = KNOWN[name]
    assert len(d.positive_roots) == n_pos
    assert d.det_gram == det == round(np.linalg.det(d.gram_array.astype(float)))
    assert d.dual_coxeter == hv
    assert d.pairing(d.rho, d.rho) == rr
    assert d.rho == rho
    assert d.pairing(d.highest_root, d.highest_root) == max(d.norms)


@pytest.mark.parametrize("name", KNOWN)
def test_roots_closed_under_simple_reflections(name):
    d = build_root_datum(name)
    roots = {tuple(a) for a in d.positive_roots}
    roots |= {tuple(-x for x in a) for a in roots}
    for s in simple_reflections(d):
        assert {tuple(int(v) for v in s @ np.array(a)) for a in roots} == roots
    # Coxeter number from the height of the highest root
    assert d.coxeter_number == sum(d.highest_root) + 1


@pytest.mark.parametrize("name", KNOWN)
def test_cartan_from_gram(name):
    d = build_root_datum(name)
    G, A = d.gram_array, d.cartan_array
    for i in range(d.rank):
        assert G[i, i] % 2 == 0
        for j in range(d.rank):
            assert A[i, j] * G[i, i] == 2 * G[i, j]


def test_g2_bourbaki_layout():
    d = build_root_datum(LieType.G2)
    assert d.norms == (2, 6)  # alpha_1 short
    assert d.gram == ((2, -3), (-3, 6))
    assert d.highest_root == (3, 2)


def test_f4_long_roots_first():
    assert build_root_datum("f4").norms == (4, 4, 2, 2)


@pytest.mark.parametrize("name", ["G2", "F4"])
def test_weyl_group_order_and_longest(name):
    d = build_root_datum(name)
    W = weyl_group(d)
    assert len(W) == KNOWN[name][5]
    assert sum(w.det for w in W) == 0
    w0 = longest_element(d)
    assert np.array_equal(w0.matrix, -np.eye(d.rank, dtype=w0.matrix.dtype))
    G = d.gram_array
    for w in W[:50]:
        assert np.array_equal(w.matrix.T @ G @ w.matrix, G)


def test_e8_weyl_group_refused():
    with pytest.raises(GroupTooLargeError, match="denominator product"):
        weyl_group(build_root_datum("E8"))


def test_pairing_dimension():
    d = build_root_datum("G2")
    assert pairing(d, (1, 0), (0, 1)) == -3
    with pytest.raises(DimensionError):
        pairing(d, (1, 0, 0), (0, 1))


def test_parse_rejects_unknown():
    with pytest.raises(ValueError):
        LieType.parse("A7")
