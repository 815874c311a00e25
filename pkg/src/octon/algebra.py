"""Octon algebra: eight complex coefficients over the basis 1, i, j, k, E, I, J, K.

i, j, k are polar unit vectors, I, J, K axial unit vectors and E the
pseudoscalar unit.  Coefficients are always complex; ``XI`` (= 1j) is the
imaginary unit that appears in every cross-product structure constant.

Arrays of octons are handled with the component axis first, i.e. an array of
shape ``(8, ...)``.  The scalar :class:`Octon` type is a thin immutable wrapper
around one such 8-vector.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import GradeError

XI = 1j


class BasisUnit(enum.IntEnum):
    ONE = 0
    I_POL = 1
    J_POL = 2
    K_POL = 3
    E_PS = 4
    I_AX = 5
    J_AX = 6
    K_AX = 7

    @property
    def symbol(self) -> str:
        return BASIS_SYMBOLS[self]


BASIS_SYMBOLS = ("1", "i", "j", "k", "E", "I", "J", "K")
POLAR = (BasisUnit.I_POL, BasisUnit.J_POL, BasisUnit.K_POL)
AXIAL = (BasisUnit.I_AX, BasisUnit.J_AX, BasisUnit.K_AX)


class Grade(enum.Enum):
    SCALAR = "scalar"
    VECTOR = "vector"
    PSEUDOSCALAR = "pseudoscalar"
    PSEUDOVECTOR = "pseudovector"

    @property
    def indices(self) -> tuple[int, ...]:
        return _GRADE_INDICES[self]


_GRADE_INDICES = {
    Grade.SCALAR: (0,),
    Grade.VECTOR: (1, 2, 3),
    Grade.PSEUDOSCALAR: (4,),
    Grade.PSEUDOVECTOR: (5, 6, 7),
}


def _levi_civita(p: int, q: int) -> tuple[int, int]:
    """Return (sign, r) with e_p x e_q = sign * e_r for distinct p, q in {0,1,2}."""
    r = 3 - p - q
    sign = 1 if (p, q, r) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1
    return sign, r


def _rule_product(u: int, v: int) -> tuple[complex, int]:
    """Product of two basis units straight from the multiplication rules.

    polar . polar:    ii = 1,  ij = xi K      (cyclic), ji = -ij
    axial . axial:    II = 1,  IJ = xi K      (cyclic), JI = -IJ
    polar . axial:    iI = E,  iJ = xi k      (cyclic), Ji = -iJ
    axial . polar:    Ii = E,  Ij = xi k      (cyclic), jI = -Ij
    E . x = x . E:    Ei = I, EI = i, EE = 1
    """
    if u == BasisUnit.ONE:
        return 1, v
    if v == BasisUnit.ONE:
        return 1, u
    if u == BasisUnit.E_PS and v == BasisUnit.E_PS:
        return 1, BasisUnit.ONE
    if BasisUnit.E_PS in (u, v):
        w = v if u == BasisUnit.E_PS else u
        # E swaps a polar unit with its parallel axial unit.
        return 1, (w + 4) if w < 4 else (w - 4)

    u_axial, p = u >= 5, (u - 5 if u >= 5 else u - 1)
    v_axial, q = v >= 5, (v - 5 if v >= 5 else v - 1)
    if p == q:
        return 1, (BasisUnit.ONE if u_axial == v_axial else BasisUnit.E_PS)
    sign, r = _levi_civita(p, q)
    if u_axial == v_axial:
        return sign * XI, AXIAL[r]
    return sign * XI, POLAR[r]


def build_product_table() -> tuple[np.ndarray, np.ndarray]:
    """Generate the 8x8 table as (result index, complex coefficient) arrays."""
    index = np.zeros((8, 8), dtype=np.intp)
    coeff = np.zeros((8, 8), dtype=np.complex128)
    for u, v in itertools.product(range(8), repeat=2):
        lam, w = _rule_product(u, v)
        index[u, v] = int(w)
        coeff[u, v] = lam
    index.flags.writeable = False
    coeff.flags.writeable = False
    return index, coeff


PRODUCT_INDEX, PRODUCT_COEFF = build_product_table()


def basis_product(u: BasisUnit, v: BasisUnit) -> tuple[complex, BasisUnit]:
    """Return ``(coefficient, unit)`` with ``u * v == coefficient * unit``."""
    return complex(PRODUCT_COEFF[u, v]), BasisUnit(int(PRODUCT_INDEX[u, v]))


def multiply_arrays(a: np.ndarray, b: np.ndarray,
                    table: tuple[np.ndarray, np.ndarray] | None = None) -> np.ndarray:
    """Octon product of two component-first arrays of shape ``(8, ...)``.

    Broadcasting applies to the trailing axes.  Component pairs that are
    identically zero on either side are skipped, which matters for the sparse
    field octons used in electrodynamics.
    """
    index, coeff = (PRODUCT_INDEX, PRODUCT_COEFF) if table is None else table
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    shape = np.broadcast_shapes(a.shape[1:], b.shape[1:])
    out = np.zeros((8,) + shape, dtype=np.complex128)
    a_live = [bool(np.any(a[u])) for u in range(8)]
    b_live = [bool(np.any(b[v])) for v in range(8)]
    for u in range(8):
        if not a_live[u]:
            continue
        for v in range(8):
            if not b_live[v]:
                continue
            out[index[u, v]] += coeff[u, v] * (a[u] * b[v])
    return out


class GradedParts(NamedTuple):
    scalar: complex
    vector: np.ndarray
    pseudoscalar: complex
    pseudovector: np.ndarray


@dataclass(frozen=True, eq=False)
class Octon:
    """A single octon ``d + a i + b j + c k + D E + A I + B J + C K``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128).reshape(8)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zero(cls) -> Octon:
        return cls(np.zeros(8))

    @classmethod
    def unit(cls, u: BasisUnit | str, coefficient: complex = 1.0) -> Octon:
        if isinstance(u, str):
            u = BasisUnit(BASIS_SYMBOLS.index(u))
        c = np.zeros(8, dtype=np.complex128)
        c[u] = coefficient
        return cls(c)

    @classmethod
    def from_parts(cls, scalar=0.0, vector=(0, 0, 0), pseudoscalar=0.0,
                   pseudovector=(0, 0, 0)) -> Octon:
        c = np.zeros(8, dtype=np.complex128)
        c[0] = scalar
        c[1:4] = vector
        c[4] = pseudoscalar
        c[5:8] = pseudovector
        return cls(c)

    def __getitem__(self, u) -> complex:
        return complex(self.coeffs[u])

    def __add__(self, other):
        if not isinstance(other, Octon):
            return NotImplemented
        return add(self, other)

    def __sub__(self, other):
        if not isinstance(other, Octon):
            return NotImplemented
        return Octon(self.coeffs - other.coeffs)

    def __neg__(self):
        return Octon(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Octon):
            return multiply(self, other)
        if np.isscalar(other):
            return scale(other, self)
        return NotImplemented

    def __rmul__(self, other):
        if np.isscalar(other):
            return scale(other, self)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Octon):
            return NotImplemented
        return bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def isclose(self, other: Octon, atol: float = 1e-12) -> bool:
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= atol)

    def norm(self) -> float:
        """Max-norm of the coefficient vector."""
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self):
        terms = []
        for c, s in zip(self.coeffs, BASIS_SYMBOLS):
            if c == 0:
                continue
            if c.imag == 0:
                num = f"{c.real:g}"
            elif c.real == 0:
                num = f"{c.imag:g}ξ"
            else:
                num = f"({c.real:g}{c.imag:+g}ξ)"
            terms.append(num if s == "1" else f"{num}{s}")
        return "Octon(" + (" + ".join(terms) if terms else "0") + ")"

    def to_json(self) -> str:
        return json.dumps(to_pairs(self))

    @classmethod
    def from_json(cls, text: str) -> Octon:
        return from_pairs(json.loads(text))


def to_pairs(a: Octon) -> list[list[float]]:
    """JSON-ready form: 8 ``[re, im]`` pairs in canonical basis order."""
    return [[float(c.real), float(c.imag)] for c in a.coeffs]


def from_pairs(pairs: Iterable[Iterable[float]]) -> Octon:
    pairs = [list(p) for p in pairs]
    if len(pairs) != 8 or any(len(p) != 2 for p in pairs):
        raise ValueError("octon text form needs exactly 8 [re, im] pairs")
    return Octon([complex(re, im) for re, im in pairs])


def multiply(a: Octon, b: Octon) -> Octon:
    return Octon(multiply_arrays(a.coeffs, b.coeffs))


def add(a: Octon, b: Octon) -> Octon:
    return Octon(a.coeffs + b.coeffs)


def scale(lam: complex, a: Octon) -> Octon:
    return Octon(lam * a.coeffs)


_INVERSION_SIGNS = np.array([1, -1, -1, -1, -1, 1, 1, 1], dtype=np.float64)


def spatial_inversion(a):
    """Flip the sign of the polar vector and pseudoscalar parts.

    Accepts an :class:`Octon` or a component-first array.
    """
    if isinstance(a, Octon):
        return Octon(a.coeffs * _INVERSION_SIGNS)
    a = np.asarray(a)
    return a * _INVERSION_SIGNS.reshape((8,) + (1,) * (a.ndim - 1))


def complex_conjugate(a):
    if isinstance(a, Octon):
        return Octon(np.conj(a.coeffs))
    return np.conj(a)


def grade_split(a: Octon) -> GradedParts:
    c = a.coeffs
    return GradedParts(complex(c[0]), c[1:4].copy(), complex(c[4]), c[5:8].copy())


def grade_select(a, grade: Grade | str):
    """Project onto one grade subspace (octon or component-first array)."""
    grade = Grade(grade)
    mask = np.zeros(8, dtype=bool)
    mask[list(grade.indices)] = True
    if isinstance(a, Octon):
        return Octon(np.where(mask, a.coeffs, 0))
    a = np.asarray(a)
    return np.where(mask.reshape((8,) + (1,) * (a.ndim - 1)), a, 0)


def _require_vector_grades(*octons: Octon) -> None:
    for o in octons:
        if o.coeffs[0] != 0 or o.coeffs[4] != 0:
            raise GradeError(
                "scalar/vector products are defined for vector and pseudovector "
                f"octons only; got {o!r}")


def scalar_product(v1: Octon, v2: Octon) -> Octon:
    """Symmetric part of the product of two (pseudo)vector octons.

    ``(V1, V2)`` is a scalar and ``(V, P)`` a pseudoscalar.
    """
    _require_vector_grades(v1, v2)
    ab, ba = multiply_arrays(v1.coeffs, v2.coeffs), multiply_arrays(v2.coeffs, v1.coeffs)
    return Octon(0.5 * (ab + ba))


def vector_product(v1: Octon, v2: Octon) -> Octon:
    """Antisymmetric part of the product of two (pseudo)vector octons."""
    _require_vector_grades(v1, v2)
    ab, ba = multiply_arrays(v1.coeffs, v2.coeffs), multiply_arrays(v2.coeffs, v1.coeffs)
    return Octon(0.5 * (ab - ba))


def _pure_kind(o: Octon) -> str:
    c = o.coeffs
    has_v, has_p = bool(np.any(c[1:4])), bool(np.any(c[5:8]))
    if c[0] != 0 or c[4] != 0 or (has_v and has_p):
        raise GradeError(f"expected a pure vector or pseudovector octon, got {o!r}")
    return "pseudovector" if has_p else "vector"


def gibbs_correspondence_check(v1: Octon, v2: Octon) -> float:
    """Max discrepancy between octonic and Gibbs scalar/vector products.

    The Gibbs side is plain dot and cross products of the component triples;
    the result of each is placed on the unit that its behaviour under
    inversion demands (E for vector.pseudovector dots, xi E for same-kind
    crosses, which lands on the axial basis).
    """
    k1, k2 = _pure_kind(v1), _pure_kind(v2)
    a = v1.coeffs[1:4] if k1 == "vector" else v1.coeffs[5:8]
    b = v2.coeffs[1:4] if k2 == "vector" else v2.coeffs[5:8]
    dot = a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
    cross = np.array([a[1] * b[2] - a[2] * b[1],
                      a[2] * b[0] - a[0] * b[2],
                      a[0] * b[1] - a[1] * b[0]])
    expect_s = np.zeros(8, dtype=np.complex128)
    expect_v = np.zeros(8, dtype=np.complex128)
    if k1 == k2:
        expect_s[0] = dot
        expect_v[5:8] = XI * cross
    else:
        expect_s[4] = dot
        expect_v[1:4] = XI * cross
    err_s = np.max(np.abs(scalar_product(v1, v2).coeffs - expect_s))
    err_v = np.max(np.abs(vector_product(v1, v2).coeffs - expect_v))
    return float(max(err_s, err_v))


# --- matrix-pair representation -------------------------------------------

SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=np.complex128),
    np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    np.array([[1, 0], [0, -1]], dtype=np.complex128),
)
_ID2 = np.eye(2, dtype=np.complex128)


def _basis_images() -> np.ndarray:
    """Images of the 8 units, shape (8, 2, 2, 2): unit, slot, row, col.

    Polar units go to (sigma, -sigma), axial units to (sigma, sigma) and E to
    (1, -1).  With this assignment ij = xi K holds; the opposite choice would
    give ij = xi k.
    """
    img = np.zeros((8, 2, 2, 2), dtype=np.complex128)
    img[0] = _ID2, _ID2
    img[4] = _ID2, -_ID2
    for n in range(3):
        img[1 + n] = SIGMA[n], -SIGMA[n]
        img[5 + n] = SIGMA[n], SIGMA[n]
    return img


BASIS_IMAGES = _basis_images()


class MatrixPair(NamedTuple):
    plus: np.ndarray
    minus: np.ndarray

    def __matmul__(self, other: MatrixPair) -> MatrixPair:
        return MatrixPair(self.plus @ other.plus, self.minus @ other.minus)


def to_matrix_pair(a, images: np.ndarray | None = None) -> MatrixPair:
    """Linear extension of the basis images; vectorises over trailing axes."""
    images = BASIS_IMAGES if images is None else images
    c = a.coeffs if isinstance(a, Octon) else np.asarray(a)
    m = np.einsum("u...,usab->s...ab", c, images)
    return MatrixPair(m[0], m[1])


def table_oracle_mismatches(table: tuple[np.ndarray, np.ndarray] | None = None,
                            images: np.ndarray | None = None) -> list[tuple[BasisUnit, BasisUnit]]:
    """Basis pairs whose table entry disagrees with the matrix-pair product."""
    index, coeff = (PRODUCT_INDEX, PRODUCT_COEFF) if table is None else table
    images = BASIS_IMAGES if images is None else images
    bad = []
    for u, v in itertools.product(range(8), repeat=2):
        lhs = np.stack([images[u, s] @ images[v, s] for s in range(2)])
        rhs = coeff[u, v] * images[index[u, v]]
        if not np.array_equal(lhs, rhs):
            bad.append((BasisUnit(u), BasisUnit(v)))
    return bad


if table_oracle_mismatches():
    raise RuntimeError("octon product table disagrees with its matrix-pair representation")
