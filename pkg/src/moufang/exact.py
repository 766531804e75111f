"""Exact rational tensors.

Every array is stored as a dense block of Python integers sharing one
positive denominator, kept in lowest terms.  Scalars surface as
:class:`fractions.Fraction`.  Contractions drop to int64 only when an
a-priori magnitude bound proves the result cannot overflow.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import ClassVar, Iterable, Sequence

import numpy as np

__all__ = [
    "DimensionError",
    "RatTensor",
    "Vector",
    "Matrix",
    "Tensor3",
    "Tensor4",
    "to_fraction",
    "format_scalar",
    "vector",
    "matrix",
    "zeros",
    "identity",
    "basis_vector",
    "einsum",
    "stack",
    "mat_commutator",
    "contract_bilinear",
    "contract_trilinear",
    "combine",
    "rank",
    "solve",
    "inverse",
]

_INT64_SAFE = 2**62


class DimensionError(ValueError):
    """Operands have incompatible shapes."""


def to_fraction(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_int_array(num) -> np.ndarray:
    arr = np.asarray(num)
    if arr.dtype != object:
        if arr.dtype.kind not in "iub":
            raise TypeError(f"integer numerators required, got dtype {arr.dtype}")
        return arr.astype(object)
    return np.array(arr, dtype=object)


def _max_abs(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    return max(abs(int(v)) for v in arr.flat)


class RatTensor:
    """Immutable dense tensor over the rationals.

    ``num`` holds integer numerators, ``den`` the shared positive
    denominator.  After construction ``gcd(den, *num) == 1`` and a zero
    tensor has ``den == 1``, so equal tensors have identical storage.
    """

    __slots__ = ("_num", "_den")
    required_ndim: ClassVar[int | None] = None

    def __init__(self, num, den: int = 1):
        arr = _as_int_array(num)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            arr, den = -arr, -den
        if self.required_ndim is not None and arr.ndim != self.required_ndim:
            raise DimensionError(
                f"{type(self).__name__} needs rank {self.required_ndim}, got shape {arr.shape}"
            )
        g = math.gcd(den, *arr.flat) if arr.size else den
        if g > 1:
            arr = arr // g
            den //= g
        arr.setflags(write=False)
        self._num = arr
        self._den = den

    # construction ---------------------------------------------------------

    @classmethod
    def from_values(cls, values) -> "RatTensor":
        """Build from nested sequences of ints, Fractions or ``"p/q"`` strings."""
        raw = np.array(values, dtype=object)
        fracs = [to_fraction(v) for v in raw.flat]
        den = reduce(math.lcm, (f.denominator for f in fracs), 1)
        num = np.array(
            [f.numerator * (den // f.denominator) for f in fracs], dtype=object
        ).reshape(raw.shape)
        return cls(num, den)

    # accessors ------------------------------------------------------------

    @property
    def num(self) -> np.ndarray:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @property
    def shape(self) -> tuple[int, ...]:
        return self._num.shape

    @property
    def ndim(self) -> int:
        return self._num.ndim

    def __len__(self) -> int:
        return self.shape[0]

    def __getitem__(self, index):
        part = self._num[index]
        if isinstance(part, np.ndarray):
            return wrap(part, self._den)
        return Fraction(int(part), self._den)

    def tolist(self):
        """Nested lists of Fractions."""
        if self.ndim == 0:
            return Fraction(int(self._num[()]), self._den)
        return [self[i].tolist() if self.ndim > 1 else self[i] for i in range(len(self))]

    def to_strings(self):
        """Nested lists of canonical scalar strings."""
        if self.ndim == 0:
            return format_scalar(Fraction(int(self._num[()]), self._den))
        return [self[i].to_strings() if self.ndim > 1 else format_scalar(self[i])
                for i in range(self.shape[0])]

    def is_zero(self) -> bool:
        return not self._num.any()

    # arithmetic -----------------------------------------------------------

    def _check_same(self, other: "RatTensor") -> None:
        if not isinstance(other, RatTensor):
            raise TypeError(f"expected RatTensor, got {type(other).__name__}")
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: "RatTensor") -> "RatTensor":
        self._check_same(other)
        den = math.lcm(self._den, other._den)
        num = self._num * (den // self._den) + other._num * (den // other._den)
        return wrap(num, den)

    def __sub__(self, other: "RatTensor") -> "RatTensor":
        self._check_same(other)
        den = math.lcm(self._den, other._den)
        num = self._num * (den // self._den) - other._num * (den // other._den)
        return wrap(num, den)

    def __neg__(self) -> "RatTensor":
        return wrap(-self._num, self._den)

    def __mul__(self, scalar) -> "RatTensor":
        if isinstance(scalar, RatTensor):
            return NotImplemented
        s = to_fraction(scalar)
        return wrap(self._num * s.numerator, self._den * s.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "RatTensor":
        s = to_fraction(scalar)
        if s == 0:
            raise ZeroDivisionError("division of tensor by zero")
        return wrap(self._num * s.denominator, self._den * s.numerator)

    def __matmul__(self, other: "RatTensor") -> "RatTensor":
        if self.ndim != 2 or other.ndim not in (1, 2):
            raise DimensionError(f"cannot multiply shapes {self.shape} and {other.shape}")
        if self.shape[1] != other.shape[0]:
            raise DimensionError(f"inner dimensions differ: {self.shape} @ {other.shape}")
        subs = "ab,bc->ac" if other.ndim == 2 else "ab,b->a"
        return einsum(subs, self, other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatTensor):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._den == other._den
            and bool(np.array_equal(self._num, other._num))
        )

    def __hash__(self) -> int:
        return hash((self.shape, self._den, tuple(self._num.flat)))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_strings()!r})"

    def transpose(self, *axes: int) -> "RatTensor":
        return wrap(np.transpose(self._num, axes or None), self._den)


class Vector(RatTensor):
    __slots__ = ()
    required_ndim = 1


class Matrix(RatTensor):
    __slots__ = ()
    required_ndim = 2

    @property
    def T(self) -> "Matrix":
        return self.transpose()


class Tensor3(RatTensor):
    """Rank-3 tensor; axis 0 is the output (upper) index."""

    __slots__ = ()
    required_ndim = 3


class Tensor4(RatTensor):
    """Rank-4 tensor; axis 0 is the output (upper) index."""

    __slots__ = ()
    required_ndim = 4


_BY_RANK = {1: Vector, 2: Matrix, 3: Tensor3, 4: Tensor4}


def wrap(num, den: int = 1) -> RatTensor:
    """Build the tensor class matching the rank of ``num``."""
    arr = np.asarray(num, dtype=object) if not isinstance(num, np.ndarray) else num
    return _BY_RANK.get(arr.ndim, RatTensor)(arr, den)


# constructors -------------------------------------------------------------


def vector(entries: Iterable) -> Vector:
    return Vector.from_values(list(entries))


def matrix(rows: Sequence[Sequence]) -> Matrix:
    return Matrix.from_values([list(r) for r in rows])


def zeros(*shape: int) -> RatTensor:
    return wrap(np.zeros(shape, dtype=np.int64))


def identity(n: int) -> Matrix:
    return Matrix(np.eye(n, dtype=np.int64))


def basis_vector(n: int, i: int) -> Vector:
    if not 0 <= i < n:
        raise DimensionError(f"basis index {i} out of range for dimension {n}")
    e = np.zeros(n, dtype=np.int64)
    e[i] = 1
    return Vector(e)


def stack(items: Sequence[RatTensor]) -> RatTensor:
    """Stack equally shaped tensors along a new leading axis."""
    if not items:
        raise DimensionError("cannot stack an empty sequence")
    shape = items[0].shape
    for it in items:
        if it.shape != shape:
            raise DimensionError(f"shape mismatch in stack: {it.shape} vs {shape}")
    den = reduce(math.lcm, (it.den for it in items), 1)
    return wrap(np.stack([it.num * (den // it.den) for it in items]), den)


# contraction --------------------------------------------------------------


def einsum(subscripts: str, a: RatTensor, b: RatTensor | None = None) -> RatTensor:
    """Exact ``numpy.einsum`` over one or two operands."""
    operands = [a] if b is None else [a, b]
    inputs, output = subscripts.replace(" ", "").split("->")
    subs_list = inputs.split(",")
    if len(subs_list) != len(operands):
        raise ValueError(f"{subscripts!r} does not match {len(operands)} operands")
    sizes: dict[str, int] = {}
    for subs, op in zip(subs_list, operands):
        if len(subs) != op.ndim:
            raise DimensionError(f"subscript {subs!r} vs shape {op.shape}")
        for label, size in zip(subs, op.shape):
            if sizes.setdefault(label, size) != size:
                raise DimensionError(f"index {label!r} has sizes {sizes[label]} and {size}")
    summed = math.prod(sizes[c] for c in set("".join(subs_list)) - set(output))
    bound = summed * math.prod(_max_abs(op.num) for op in operands)
    den = math.prod(op.den for op in operands)
    if bound < _INT64_SAFE:
        nums = [op.num.astype(np.int64) for op in operands]
        result = np.einsum(subscripts, *nums).astype(object)
    else:
        result = np.einsum(subscripts, *[op.num for op in operands])
    return wrap(np.asarray(result, dtype=object), den)


def combine(coeffs: Vector, items: RatTensor) -> RatTensor:
    """Sum ``coeffs[i] * items[i]`` over the leading axis of ``items``."""
    if coeffs.ndim != 1 or items.shape[0] != coeffs.shape[0]:
        raise DimensionError(f"cannot combine {coeffs.shape} with stack {items.shape}")
    rest = "abcdefgh"[: items.ndim - 1]
    return einsum(f"i,i{rest}->{rest}", coeffs, items)


def mat_commutator(a: Matrix, b: Matrix) -> Matrix:
    """``ab - ba``."""
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"commutator needs square matrices, got {a.shape}")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def contract_bilinear(t: Tensor3, x: Vector, y: Vector) -> Vector:
    """``result[k] = sum_ij t[k, i, j] x[i] y[j]``."""
    if t.ndim != 3 or x.ndim != 1 or y.ndim != 1:
        raise DimensionError("contract_bilinear expects a rank-3 tensor and two vectors")
    if t.shape[1:] != (x.shape[0], y.shape[0]):
        raise DimensionError(f"tensor {t.shape} vs vectors {x.shape}, {y.shape}")
    return einsum("kj,j->k", einsum("kij,i->kj", t, x), y)


def contract_trilinear(t: Tensor4, x: Vector, y: Vector, z: Vector) -> Vector:
    """``result[i] = sum_jkl t[i, j, k, l] x[j] y[k] z[l]``."""
    if t.ndim != 4 or any(v.ndim != 1 for v in (x, y, z)):
        raise DimensionError("contract_trilinear expects a rank-4 tensor and three vectors")
    if t.shape[1:] != (x.shape[0], y.shape[0], z.shape[0]):
        raise DimensionError(f"tensor {t.shape} vs vectors {x.shape}, {y.shape}, {z.shape}")
    partial = einsum("ijkl,j->ikl", t, x)
    return einsum("il,l->i", einsum("ikl,k->il", partial, y), z)


# exact elimination --------------------------------------------------------


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(a: Matrix) -> int:
    if a.ndim != 2:
        raise DimensionError(f"rank needs a matrix, got shape {a.shape}")
    _, pivots = _rref(a.tolist(), a.shape[1])
    return len(pivots)


def solve(a: Matrix, b: Vector) -> Vector | None:
    """Return one exact solution of ``a x = b`` or ``None`` if inconsistent."""
    if a.ndim != 2 or b.ndim != 1 or a.shape[0] != b.shape[0]:
        raise DimensionError(f"cannot solve {a.shape} against {b.shape}")
    n = a.shape[1]
    aug = [row + [rhs] for row, rhs in zip(a.tolist(), b.tolist())]
    reduced, pivots = _rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, c in zip(reduced, pivots):
        x[c] = row[n]
    return vector(x)


def inverse(a: Matrix) -> Matrix:
    n = a.shape[0]
    if a.ndim != 2 or a.shape[1] != n:
        raise DimensionError(f"inverse needs a square matrix, got {a.shape}")
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    aug = [row + e for row, e in zip(a.tolist(), eye)]
    reduced, pivots = _rref(aug, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return matrix([row[n:] for row in reduced])
