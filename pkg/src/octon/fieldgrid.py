"""Octon-valued fields on a periodic 3D lattice and the octonic differential operators.

Fields are stored component-first: ``data`` has shape ``(8, nx, ny, nz)`` and
is complex.  Derivatives are centred second-order differences with periodic
wrap-around; the Laplacian is the usual 7-point stencil.  None of the kernels
mutate their inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import PRODUCT_COEFF, PRODUCT_INDEX, POLAR, Grade, multiply_arrays
from .errors import GridMismatchError

AXES = {"x": 0, "y": 1, "z": 2}


def _triple(value, name) -> tuple:
    if np.isscalar(value):
        return (value,) * 3
    value = tuple(value)
    if len(value) != 3:
        raise ValueError(f"{name} needs 3 entries, got {len(value)}")
    return value


@dataclass(frozen=True)
class Grid3:
    """Uniform periodic lattice with ``n`` sites and spacing ``h`` per axis."""

    n: tuple[int, int, int]
    h: tuple[float, float, float]
    origin: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self):
        n = tuple(int(v) for v in _triple(self.n, "n"))
        h = tuple(float(v) for v in _triple(self.h, "h"))
        origin = tuple(float(v) for v in _triple(self.origin, "origin"))
        if min(n) < 4:
            raise ValueError(f"every axis needs at least 4 sites, got n={n}")
        if min(h) <= 0:
            raise ValueError(f"spacings must be positive, got h={h}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "origin", origin)

    @classmethod
    def box(cls, n, length=1.0, origin=(0.0, 0.0, 0.0)) -> Grid3:
        """Grid with ``n`` sites spanning a periodic box of side ``length``."""
        n = _triple(n, "n")
        length = _triple(length, "length")
        return cls(n, tuple(L / m for L, m in zip(length, n)), origin)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.n

    @property
    def lengths(self) -> tuple[float, float, float]:
        return tuple(m * d for m, d in zip(self.n, self.h))

    @property
    def cell_volume(self) -> float:
        return self.h[0] * self.h[1] * self.h[2]

    @property
    def volume(self) -> float:
        L = self.lengths
        return L[0] * L[1] * L[2]

    def coords(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        axes = [o + d * np.arange(m) for o, d, m in zip(self.origin, self.h, self.n)]
        return tuple(np.meshgrid(*axes, indexing="ij"))


@dataclass(frozen=True, eq=False)
class OctonField:
    grid: Grid3
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.complex128)
        if data.shape != (8,) + self.grid.shape:
            raise ValueError(f"field data must have shape {(8,) + self.grid.shape}, got {data.shape}")
        object.__setattr__(self, "data", data)

    @classmethod
    def zeros(cls, grid: Grid3) -> OctonField:
        return cls(grid, np.zeros((8,) + grid.shape, dtype=np.complex128))

    @classmethod
    def from_parts(cls, grid: Grid3, scalar=None, vector=None, pseudoscalar=None,
                   pseudovector=None) -> OctonField:
        data = np.zeros((8,) + grid.shape, dtype=np.complex128)
        if scalar is not None:
            data[0] = scalar
        if vector is not None:
            data[1:4] = vector
        if pseudoscalar is not None:
            data[4] = pseudoscalar
        if pseudovector is not None:
            data[5:8] = pseudovector
        return cls(grid, data)

    @property
    def scalar(self) -> np.ndarray:
        return self.data[0]

    @property
    def vector(self) -> np.ndarray:
        return self.data[1:4]

    @property
    def pseudoscalar(self) -> np.ndarray:
        return self.data[4]

    @property
    def pseudovector(self) -> np.ndarray:
        return self.data[5:8]

    def grade(self, grade: Grade | str) -> np.ndarray:
        idx = Grade(grade).indices
        return self.data[idx[0]] if len(idx) == 1 else self.data[idx[0]:idx[-1] + 1]

    def _check(self, other: OctonField) -> None:
        if not isinstance(other, OctonField):
            raise TypeError(f"expected OctonField, got {type(other).__name__}")
        if other.grid != self.grid:
            raise GridMismatchError(f"{self.grid} vs {other.grid}")

    def __add__(self, other):
        self._check(other)
        return OctonField(self.grid, self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return OctonField(self.grid, self.data - other.data)

    def __neg__(self):
        return OctonField(self.grid, -self.data)

    def __mul__(self, other):
        if isinstance(other, OctonField):
            self._check(other)
            return OctonField(self.grid, multiply_arrays(self.data, other.data))
        return OctonField(self.grid, self.data * other)

    def __rmul__(self, other):
        return OctonField(self.grid, other * self.data)

    def conj(self) -> OctonField:
        return OctonField(self.grid, np.conj(self.data))

    @property
    def real(self) -> OctonField:
        return OctonField(self.grid, self.data.real)


@dataclass(frozen=True, eq=False)
class TimeSlice:
    """A field together with its first (and optionally second) time derivative."""

    value: OctonField
    d_dt: OctonField
    d2_dt2: OctonField | None = None

    def __post_init__(self):
        for other in (self.d_dt, self.d2_dt2):
            if other is not None and other.grid != self.value.grid:
                raise GridMismatchError("value and time derivatives must share one grid")

    @property
    def grid(self) -> Grid3:
        return self.value.grid

    @classmethod
    def static(cls, value: OctonField) -> TimeSlice:
        z = OctonField.zeros(value.grid)
        return cls(value, z, z)


def _axis(axis) -> int:
    return AXES[axis] if isinstance(axis, str) else int(axis)


def diff_array(arr: np.ndarray, axis, h: float) -> np.ndarray:
    """Centred difference along spatial ``axis`` of an array whose last 3 axes are space."""
    ax = arr.ndim - 3 + _axis(axis)
    return (np.roll(arr, -1, axis=ax) - np.roll(arr, 1, axis=ax)) / (2.0 * h)


def laplacian_array(arr: np.ndarray, h) -> np.ndarray:
    out = np.zeros_like(arr)
    for a in range(3):
        ax = arr.ndim - 3 + a
        out += (np.roll(arr, -1, axis=ax) - 2.0 * arr + np.roll(arr, 1, axis=ax)) / h[a] ** 2
    return out


def partial(field: OctonField, axis) -> OctonField:
    a = _axis(axis)
    return OctonField(field.grid, diff_array(field.data, a, field.grid.h[a]))


def _left_unit_times(unit: int, data: np.ndarray, out: np.ndarray) -> None:
    # out += unit * data, using the product table row of `unit`.
    for v in range(8):
        out[PRODUCT_INDEX[unit, v]] += PRODUCT_COEFF[unit, v] * data[v]


def nabla_apply(field: OctonField) -> OctonField:
    """Left octonic multiplication by the nabla operator: sum_a e_a * d_a(field)."""
    out = np.zeros_like(field.data)
    for a in range(3):
        _left_unit_times(POLAR[a], diff_array(field.data, a, field.grid.h[a]), out)
    return OctonField(field.grid, out)


def nabla_nabla_cross(field: OctonField) -> OctonField:
    """The term sum_{a != b} e_a e_b d_a d_b (field) that vanishes for smooth fields.

    Computed from the discrete mixed differences, not assumed zero.
    """
    out = np.zeros_like(field.data)
    firsts = [diff_array(field.data, a, field.grid.h[a]) for a in range(3)]
    for a in range(3):
        for b in range(3):
            if a == b:
                continue
            second = diff_array(firsts[b], a, field.grid.h[a])
            coeff = PRODUCT_COEFF[POLAR[a], POLAR[b]]
            w = PRODUCT_INDEX[POLAR[a], POLAR[b]]
            tmp = np.zeros_like(out)
            _left_unit_times(w, second, tmp)
            out += coeff * tmp
    return OctonField(field.grid, out)


def p_apply(slice_: TimeSlice, c: float) -> OctonField:
    """(1/c) d/dt + nabla, acting from the left."""
    if c <= 0:
        raise ValueError("c must be positive")
    return OctonField(slice_.grid, slice_.d_dt.data / c + nabla_apply(slice_.value).data)


def p_conj_apply(slice_: TimeSlice, c: float) -> OctonField:
    """(1/c) d/dt - nabla, acting from the left."""
    if c <= 0:
        raise ValueError("c must be positive")
    return OctonField(slice_.grid, slice_.d_dt.data / c - nabla_apply(slice_.value).data)


def p_apply_slice(slice_: TimeSlice, c: float) -> TimeSlice:
    """Apply P to a slice that carries second derivatives, keeping d/dt of the result.

    The returned slice can be fed to :func:`p_conj_apply`, which is how the
    composed second-order operator is evaluated.
    """
    if slice_.d2_dt2 is None:
        raise ValueError("composing operators needs the second time derivative")
    value = p_apply(slice_, c)
    d_dt = OctonField(slice_.grid, slice_.d2_dt2.data / c + nabla_apply(slice_.d_dt).data)
    return TimeSlice(value, d_dt)


def laplacian(field: OctonField) -> OctonField:
    return OctonField(field.grid, laplacian_array(field.data, field.grid.h))


def field_norms(field, grid: Grid3 | None = None, h=None) -> tuple[float, float]:
    """Max-norm and grid-weighted L2 norm over all components and sites.

    ``field`` may be an :class:`OctonField` or a plain array whose last three
    axes are the lattice; then ``grid`` or the spacings ``h`` supply the cell
    volume.
    """
    if isinstance(field, OctonField):
        arr, dV = field.data, field.grid.cell_volume
    else:
        arr = np.asarray(field)
        if grid is not None:
            dV = grid.cell_volume
        elif h is not None:
            dV = float(np.prod(np.broadcast_to(np.asarray(h, float), 3)))
        else:
            raise ValueError("a grid or spacings are needed to weight a plain array")
    if arr.size == 0:
        return 0.0, 0.0
    mag2 = np.abs(arr) ** 2
    # fixed reduction order: flatten in C order, pairwise sum
    l2 = float(np.sqrt(np.sum(mag2.ravel()) * dV))
    return float(np.max(np.abs(arr))), l2


def interior(arr: np.ndarray, band: int = 1) -> np.ndarray:
    """Drop ``band`` sites from both ends of each spatial axis.

    Used when a non-periodic analytic probe (a linear or quadratic function)
    is evaluated on the lattice: sites whose stencil would wrap are excluded.
    """
    if band == 0:
        return arr
    sl = (slice(None),) * (arr.ndim - 3) + (slice(band, -band),) * 3
    return arr[sl]


def shift(field: OctonField, offset, axis) -> OctonField:
    """Periodic shift of a field by ``offset`` lattice sites along ``axis``."""
    return OctonField(field.grid, np.roll(field.data, offset, axis=1 + _axis(axis)))
