import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from octon import algebra as alg
from octon.algebra import XI, BasisUnit as U, Grade, Octon
from octon.errors import GradeError

EYE = np.eye(8, dtype=complex)

# Hand-expanded products of basis units: (u, v) -> (coefficient, unit).
HAND_TABLE = {
    ("i", "j"): (XI, "K"), ("j", "k"): (XI, "I"), ("k", "i"): (XI, "J"),
    ("j", "i"): (-XI, "K"), ("I", "J"): (XI, "K"), ("J", "I"): (-XI, "K"),
    ("i", "I"): (1, "E"), ("I", "i"): (1, "E"), ("E", "i"): (1, "I"), ("E", "I"): (1, "i"),
    ("i", "J"): (XI, "k"), ("I", "j"): (XI, "k"), ("J", "i"): (-XI, "k"),
    ("j", "I"): (-XI, "k"), ("E", "E"): (1, "1"), ("1", "E"): (1, "E"),
}


def O(**kw):
    c = np.zeros(8, complex)
    for name, v in kw.items():
        c[alg.BASIS_SYMBOLS.index("1" if name == "one" else name)] = v
    return Octon(c)


@pytest.mark.parametrize("pair,expected", HAND_TABLE.items())
def test_hand_table_entries(pair, expected):
    u, v = (U(alg.BASIS_SYMBOLS.index(s)) for s in pair)
    coeff, unit = alg.basis_product(u, v)
    assert coeff == expected[0]
    assert unit.symbol == expected[1]


def test_table_coefficients_are_units_of_xi():
    assert set(np.unique(alg.PRODUCT_COEFF)) <= {1, -1, 1j, -1j}


def test_known_product():
    a = O(i=1, j=2)
    b = O(k=3)
    assert a * b == O(I=6j, J=-3j)


def test_zero_annihilates():
    a = Octon(np.arange(8) + 1j)
    assert a * Octon.zero() == Octon.zero()
    assert Octon.zero() * a == Octon.zero()


def test_add_scale():
    assert alg.add(Octon.unit("i"), Octon.unit("i", -1)) == Octon.zero()
    assert alg.scale(XI, Octon.unit("K")) == O(K=1j)
    assert alg.scale(2, O(i=1, E=1)) == O(i=2, E=2)


def test_spatial_inversion_rule():
    assert alg.spatial_inversion(O(one=1, i=1, E=1, I=1)) == O(one=1, i=-1, E=-1, I=1)


def test_conjugate_of_cross_product():
    ij = Octon.unit("i") * Octon.unit("j")
    assert alg.complex_conjugate(O(K=1j)) == O(K=-1j)
    assert alg.complex_conjugate(ij) == -ij


def test_grade_split_example():
    parts = alg.grade_split(O(one=2, i=3, E=5, K=7))
    assert parts.scalar == 2
    assert list(parts.vector) == [3, 0, 0]
    assert parts.pseudoscalar == 5
    assert list(parts.pseudovector) == [0, 0, 7]


def test_scalar_and_vector_product_examples():
    assert alg.scalar_product(O(i=1, j=2), O(j=3)) == O(one=6)
    assert alg.vector_product(Octon.unit("i"), Octon.unit("j")) == O(K=1j)
    assert alg.scalar_product(Octon.unit("i"), Octon.unit("I")) == O(E=1)


def test_products_reject_scalar_content():
    with pytest.raises(GradeError):
        alg.scalar_product(O(one=1, i=1), Octon.unit("j"))
    with pytest.raises(GradeError):
        alg.vector_product(Octon.unit("i"), O(E=1))


def test_gibbs_examples():
    assert alg.gibbs_correspondence_check(O(i=1), O(j=1)) == 0
    v, p = O(i=1, j=2, k=3), O(I=4, J=5, K=6)
    assert alg.scalar_product(v, p) == O(E=32)
    assert alg.gibbs_correspondence_check(v, p) == 0


def test_matrix_pair_examples():
    E = alg.to_matrix_pair(Octon.unit("E"))
    one = alg.to_matrix_pair(Octon.unit("1"))
    sq = E @ E
    assert np.array_equal(sq.plus, one.plus) and np.array_equal(sq.minus, one.minus)
    ij = alg.to_matrix_pair(Octon.unit("i")) @ alg.to_matrix_pair(Octon.unit("j"))
    xk = alg.to_matrix_pair(O(K=1j))
    assert np.array_equal(ij.plus, xk.plus) and np.array_equal(ij.minus, xk.minus)


def test_matrix_images_are_independent():
    flat = alg.BASIS_IMAGES.reshape(8, -1)
    assert np.linalg.matrix_rank(flat) == 8


def test_swapped_slot_signs_are_not_multiplicative():
    # Polar units on (sigma, sigma) and axial units on (sigma, -sigma) give
    # ij = xi k instead of xi K; the working map swaps the slot signs.
    img = alg.BASIS_IMAGES.copy()
    for n in range(3):
        img[1 + n] = alg.SIGMA[n], alg.SIGMA[n]
        img[5 + n] = alg.SIGMA[n], -alg.SIGMA[n]
    bad = alg.table_oracle_mismatches(images=img)
    assert (U.I_POL, U.J_POL) in bad
    ij = np.stack([img[1, s] @ img[2, s] for s in range(2)])
    assert np.array_equal(ij, XI * img[3])


def test_text_forms_roundtrip():
    a = Octon(np.array([1, 2j, -3, 0.5 + 0.25j, 0, 7, -1j, 2]))
    assert Octon.from_json(a.to_json()) == a
    assert json.loads(a.to_json())[1] == [0.0, 2.0]
    assert alg.from_pairs(alg.to_pairs(a)) == a


def test_grade_select_by_name():
    a = O(one=1, i=2, E=3, J=4)
    assert alg.grade_select(a, "pseudovector") == O(J=4)
    assert alg.grade_select(a, Grade.VECTOR) == O(i=2)


# --- properties -----------------------------------------------------------

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
coeffs = arrays(np.float64, 16, elements=finite).map(lambda x: Octon(x[:8] + 1j * x[8:]))
real3 = arrays(np.float64, 3, elements=st.floats(-10, 10))


def _close(x, y, scale):
    return np.max(np.abs(x.coeffs - y.coeffs)) <= 1e-12 * max(scale, 1.0)


@settings(max_examples=200, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_associativity_property(a, b, c):
    scale = a.norm() * b.norm() * c.norm() * 8
    assert _close((a * b) * c, a * (b * c), scale)


@settings(max_examples=200, deadline=None)
@given(coeffs, coeffs)
def test_matrix_pair_is_multiplicative(a, b):
    lhs = alg.to_matrix_pair(a * b)
    rhs = alg.to_matrix_pair(a) @ alg.to_matrix_pair(b)
    scale = a.norm() * b.norm() * 8
    assert np.max(np.abs(lhs.plus - rhs.plus)) <= 1e-12 * max(scale, 1)
    assert np.max(np.abs(lhs.minus - rhs.minus)) <= 1e-12 * max(scale, 1)


@given(coeffs)
def test_grade_parts_reassemble(a):
    total = sum((alg.grade_select(a, g) for g in Grade), Octon.zero())
    assert total == a


@given(coeffs)
def test_involutions(a):
    assert alg.spatial_inversion(alg.spatial_inversion(a)) == a
    assert alg.complex_conjugate(alg.complex_conjugate(a)) == a


@settings(max_examples=100, deadline=None)
@given(coeffs, coeffs)
def test_inversion_is_automorphism(a, b):
    lhs = alg.spatial_inversion(a * b)
    rhs = alg.spatial_inversion(a) * alg.spatial_inversion(b)
    assert _close(lhs, rhs, a.norm() * b.norm() * 8)


@given(real3, real3)
def test_polar_times_polar_grades(v1, v2):
    p = Octon.from_parts(vector=v1) * Octon.from_parts(vector=v2)
    parts = alg.grade_split(p)
    assert not np.any(parts.vector) and parts.pseudoscalar == 0


@given(real3, real3)
def test_polar_times_axial_grades(v, w):
    p = Octon.from_parts(vector=v) * Octon.from_parts(pseudovector=w)
    parts = alg.grade_split(p)
    assert parts.scalar == 0 and not np.any(parts.pseudovector)


@given(real3, real3, st.sampled_from(["vector", "pseudovector"]), st.sampled_from(["vector", "pseudovector"]))
def test_gibbs_property(a, b, ka, kb):
    v1, v2 = Octon.from_parts(**{ka: a}), Octon.from_parts(**{kb: b})
    if not np.any(a) or not np.any(b):
        return
    assert alg.gibbs_correspondence_check(v1, v2) <= 1e-13 * max(1.0, np.abs(a).max() * np.abs(b).max())


@given(real3, real3)
def test_conjugation_flips_cross_keeps_dot(a, b):
    v1, v2 = Octon.from_parts(vector=a), Octon.from_parts(vector=b)
    assert alg.complex_conjugate(alg.vector_product(v1, v2)) == -alg.vector_product(v1, v2)
    assert alg.complex_conjugate(alg.scalar_product(v1, v2)) == alg.scalar_product(v1, v2)


def test_exhaustive_basis_rules():
    units = range(8)
    for u, v, w in itertools.product(units, repeat=3):
        assert np.array_equal(alg.multiply_arrays(alg.multiply_arrays(EYE[u], EYE[v]), EYE[w]),
                              alg.multiply_arrays(EYE[u], alg.multiply_arrays(EYE[v], EYE[w])))
    for u in range(1, 8):
        assert np.array_equal(alg.multiply_arrays(EYE[u], EYE[u]), EYE[0])
    ijk = Octon.unit("i") * Octon.unit("j") * Octon.unit("k")
    assert -XI * ijk == Octon.unit("E")
