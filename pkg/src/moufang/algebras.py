"""Concrete finite-dimensional algebras and their axiom checkers.

Structure tensors put the output index first: ``mult[k, i, j]`` is the
coefficient of ``e_k`` in ``e_i e_j``, and ``c[i, j, k]`` the coefficient
of ``e_i`` in ``[e_j, e_k]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .exact import (
    DimensionError,
    Matrix,
    RatTensor,
    Tensor3,
    Vector,
    basis_vector,
    contract_bilinear,
    einsum,
    identity,
    inverse,
    to_fraction,
    wrap,
)
from .reports import AxiomReport, Identity, run_identities


class ConstructionError(ValueError):
    """An algebra cannot be built from the given data."""


class ClosureError(ValueError):
    """A commutator of non-unit basis elements leaves their span."""

    def __init__(self, message: str, indices: tuple[int, int], value: Vector):
        super().__init__(message)
        self.indices = indices
        self.value = value


class AnticommutativityError(ValueError):
    def __init__(self, message: str, indices: tuple[int, int, int]):
        super().__init__(message)
        self.indices = indices


def _default_names(dim: int, start: int = 0) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(start, start + dim))


@dataclass(frozen=True)
class BinaryAlgebra:
    mult: Tensor3
    basis_names: tuple[str, ...] = ()
    unit_index: int | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.mult, Tensor3):
            object.__setattr__(self, "mult", Tensor3.from_values(self.mult))
        n = self.mult.shape[0]
        if self.mult.shape != (n, n, n):
            raise DimensionError(f"multiplication tensor must be cubic, got {self.mult.shape}")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", _default_names(n))
        if len(self.basis_names) != n:
            raise DimensionError("basis_names length differs from dimension")
        if self.unit_index is not None:
            u = self.unit_index
            if not 0 <= u < n:
                raise ConstructionError(f"unit index {u} out of range")
            eye = identity(n)
            if self.mult[:, u, :] != eye or self.mult[:, :, u] != eye:
                raise ConstructionError(f"e{u} is not a two-sided unit")

    @property
    def dim(self) -> int:
        return self.mult.shape[0]

    @property
    def structure(self) -> Tensor3:
        return self.mult

    def basis(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def product(self, x: Vector, y: Vector) -> Vector:
        return contract_bilinear(self.mult, x, y)

    def conjugate(self, x: Vector) -> Vector:
        """Fix the unit, negate every other basis direction."""
        if self.unit_index is None:
            raise ConstructionError("conjugation needs a unit")
        return 2 * x[self.unit_index] * self.basis(self.unit_index) - x

    def imaginary_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.dim) if i != self.unit_index)


@dataclass(frozen=True)
class AnticommAlgebra:
    c: Tensor3
    basis_names: tuple[str, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if not isinstance(self.c, Tensor3):
            object.__setattr__(self, "c", Tensor3.from_values(self.c))
        m = self.c.shape[0]
        if self.c.shape != (m, m, m):
            raise DimensionError(f"structure constants must be cubic, got {self.c.shape}")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", _default_names(m, 1))
        if len(self.basis_names) != m:
            raise DimensionError("basis_names length differs from dimension")
        bad = np.argwhere(self.c.num != -np.transpose(self.c.num, (0, 2, 1)))
        if len(bad):
            i, j, k = (int(v) for v in bad[0])
            raise AnticommutativityError(
                f"C[{i},{j},{k}] = {self.c[i, j, k]} but C[{i},{k},{j}] = {self.c[i, k, j]}",
                (i, j, k),
            )

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    @property
    def structure(self) -> Tensor3:
        return self.c

    def basis(self, i: int) -> Vector:
        return basis_vector(self.dim, i)

    def bracket(self, x: Vector, y: Vector) -> Vector:
        return contract_bilinear(self.c, x, y)

    product = bracket

    def change_basis(self, q: Matrix) -> "AnticommAlgebra":
        """Structure constants in the basis ``f_j = sum_i q[i, j] e_i``."""
        qi = inverse(q)
        ck = einsum("iab,aj->ijb", self.c, q)
        ck = einsum("ijb,bk->ijk", ck, q)
        return AnticommAlgebra(einsum("ai,ijk->ajk", qi, ck), name=self.name)


Algebra = Union[BinaryAlgebra, AnticommAlgebra]


# constructions ------------------------------------------------------------


def reals() -> BinaryAlgebra:
    return BinaryAlgebra(Tensor3([[[1]]]), unit_index=0, name="reals")


def cd_double(a: BinaryAlgebra, gamma=1, name: str = "") -> BinaryAlgebra:
    """Cayley-Dickson double of ``a``.

    Pairs multiply as ``(a, b)(c, d) = (ac - gamma * conj(d) b, d a + b conj(c))``
    and conjugate as ``conj(a, b) = (conj(a), -b)``.
    """
    if a.unit_index is None:
        raise ConstructionError("Cayley-Dickson doubling needs a unital algebra")
    g = to_fraction(gamma)
    n = a.dim
    m = a.mult
    conj = np.full(n, -1, dtype=np.int64)
    conj[a.unit_index] = 1
    k = Matrix(np.diag(conj))
    # conj(d) b  with d = e_j, b = e_i  ->  sum_p k[p, j] m[o, p, i]
    dbar_b = einsum("opi,pj->oij", m, k)
    # b conj(c)  with b = e_i, c = e_j
    b_cbar = einsum("oiq,qj->oij", m, k)
    den = m.den * dbar_b.den * b_cbar.den * g.denominator
    blocks = np.zeros((2 * n, 2 * n, 2 * n), dtype=object)
    blocks[:n, :n, :n] = m.num * (den // m.den)
    blocks[:n, n:, n:] = -g.numerator * dbar_b.num * (den // (dbar_b.den * g.denominator))
    blocks[n:, :n, n:] = np.transpose(m.num, (0, 2, 1)) * (den // m.den)
    blocks[n:, n:, :n] = b_cbar.num * (den // b_cbar.den)
    return BinaryAlgebra(Tensor3(blocks, den), unit_index=a.unit_index, name=name)


def complexes() -> BinaryAlgebra:
    return cd_double(reals(), 1, name="complexes")


def quaternions() -> BinaryAlgebra:
    return cd_double(complexes(), 1, name="quaternions")


def octonions() -> BinaryAlgebra:
    return cd_double(quaternions(), 1, name="octonions")


def split_octonions() -> BinaryAlgebra:
    return cd_double(quaternions(), -1, name="split-octonions")


def sedenions() -> BinaryAlgebra:
    return cd_double(octonions(), 1, name="sedenions")


def lie_cross() -> AnticommAlgebra:
    """The cross-product Lie algebra: ``[e1,e2]=e3`` and cyclic."""
    c = np.zeros((3, 3, 3), dtype=np.int64)
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        c[k, i, j] = 1
        c[k, j, i] = -1
    return AnticommAlgebra(Tensor3(c), name="lie-cross")


def left_mult(a: BinaryAlgebra, x: Vector) -> Matrix:
    """Matrix of ``v -> x v``."""
    if x.shape != (a.dim,):
        raise DimensionError(f"vector of shape {x.shape} for algebra of dim {a.dim}")
    return einsum("kij,i->kj", a.mult, x)


def right_mult(a: BinaryAlgebra, x: Vector) -> Matrix:
    """Matrix of ``v -> v x``."""
    if x.shape != (a.dim,):
        raise DimensionError(f"vector of shape {x.shape} for algebra of dim {a.dim}")
    return einsum("kij,j->ki", a.mult, x)


def commutator_algebra(a: BinaryAlgebra) -> AnticommAlgebra:
    """The algebra ``xy - yx`` on the span of the non-unit basis elements."""
    if a.unit_index is None:
        raise ConstructionError("commutator algebra needs a unital algebra")
    imag = list(a.imaginary_indices())
    comm = a.mult.num - np.transpose(a.mult.num, (0, 2, 1))
    leak = np.argwhere(comm[a.unit_index][np.ix_(imag, imag)] != 0)
    if len(leak):
        j, k = (imag[int(v)] for v in leak[0])
        value = wrap(comm[:, j, k], a.mult.den)
        raise ClosureError(
            f"[{a.basis_names[j]}, {a.basis_names[k]}] has a component on the unit",
            (j, k),
            value,
        )
    c = comm[np.ix_(imag, imag, imag)]
    names = tuple(a.basis_names[i] for i in imag)
    return AnticommAlgebra(
        Tensor3(c, a.mult.den), basis_names=names, name=f"{a.name}-commutator"
    )


def associator(a: BinaryAlgebra, x: Vector, y: Vector, z: Vector) -> Vector:
    """``(xy)z - x(yz)``."""
    return a.product(a.product(x, y), z) - a.product(x, a.product(y, z))


# axiom checkers -------------------------------------------------------------
#
# Bulk evaluation represents a multilinear expression in basis variables as a
# tensor with the output component first, followed by one axis per variable.


@dataclass(frozen=True)
class _Expr:
    t: RatTensor
    labels: str

    def __add__(self, other: "_Expr") -> "_Expr":
        return _Expr(self.t + other.aligned(self.labels), self.labels)

    def __sub__(self, other: "_Expr") -> "_Expr":
        return _Expr(self.t - other.aligned(self.labels), self.labels)

    def __mul__(self, scalar) -> "_Expr":
        return _Expr(self.t * scalar, self.labels)

    __rmul__ = __mul__

    def __neg__(self) -> "_Expr":
        return _Expr(-self.t, self.labels)

    def aligned(self, labels: str) -> RatTensor:
        if sorted(labels) != sorted(self.labels):
            raise ValueError(f"cannot align {self.labels!r} to {labels!r}")
        perm = [0] + [1 + self.labels.index(c) for c in labels]
        return self.t.transpose(*perm)

    def tuples_first(self, labels: str) -> RatTensor:
        """Tuple axes in ``labels`` order, output component last."""
        t = self.aligned(labels)
        return t.transpose(*range(1, t.ndim), 0)


def _var(dim: int, label: str) -> _Expr:
    return _Expr(identity(dim), label)


def _mul(structure: Tensor3, x: _Expr, y: _Expr) -> _Expr:
    partial = einsum(f"ost,s{x.labels}->ot{x.labels}", structure, x.t)
    return _Expr(
        einsum(f"ot{x.labels},t{y.labels}->o{x.labels}{y.labels}", partial, y.t),
        x.labels + y.labels,
    )


def _identity(name: str, alg: Algebra, labels: str, direct, symbolic) -> Identity:
    """Wire one identity through both evaluation routes.

    ``direct(p, *basis_vectors)`` and ``symbolic(p, *exprs)`` must compute the
    same pair of sides, with ``p`` the algebra product.
    """
    dim = alg.dim

    def evaluate(tup):
        return direct(alg.product, *(alg.basis(i) for i in tup))

    def bulk():
        s = alg.structure
        lhs, rhs = symbolic(lambda x, y: _mul(s, x, y), *(_var(dim, c) for c in labels))
        return lhs.tuples_first(labels), rhs.tuples_first(labels)

    return Identity(name, len(labels), evaluate, bulk)


def anticommutativity_identities(alg: Algebra) -> list[Identity]:
    def anti(p, a, b):
        return p(a, b), -p(b, a)

    return [_identity("xy = -yx", alg, "ab", anti, anti)]


def jacobi_identities(alg: Algebra) -> list[Identity]:
    def jac(p, x, y, z):
        total = p(p(x, y), z) + p(p(y, z), x) + p(p(z, x), y)
        return total, total * 0

    return [_identity("(xy)z + (yz)x + (zx)y = 0", alg, "xyz", jac, jac)]


def associativity_identities(alg: Algebra) -> list[Identity]:
    def assoc(p, x, y, z):
        return p(p(x, y), z), p(x, p(y, z))

    return [_identity("(xy)z = x(yz)", alg, "xyz", assoc, assoc)]


def alternativity_identities(alg: Algebra) -> list[Identity]:
    # (x,x,y) = 0 and (y,x,x) = 0 polarized in x -> a, b
    def left(p, a, b, y):
        return p(p(a, b), y) + p(p(b, a), y), p(a, p(b, y)) + p(b, p(a, y))

    def right(p, y, a, b):
        return p(p(y, a), b) + p(p(y, b), a), p(y, p(a, b)) + p(y, p(b, a))

    return [
        _identity("(ab)y + (ba)y = a(by) + b(ay)", alg, "aby", left, left),
        _identity("(ya)b + (yb)a = y(ab) + y(ba)", alg, "yab", right, right),
    ]


def maltsev_identities(alg: Algebra) -> list[Identity]:
    """Mal'tsev identity polarized in its repeated variable.

    The identity ``[[x,y],[x,z]] = [[[x,y],z],x] + [[[y,z],x],x] + [[[z,x],x],y]``
    is quadratic in ``x``; substituting ``x -> a, b`` and symmetrizing gives a
    4-linear identity that basis tuples ``(a, b, y, z)`` decide completely.
    For ``a == b`` both sides are twice the original identity at ``x = e_a``.
    """

    def maltsev(p, a, b, y, z):
        lhs = p(p(a, y), p(b, z)) + p(p(b, y), p(a, z))
        rhs = (
            p(p(p(a, y), z), b) + p(p(p(b, y), z), a)
            + p(p(p(y, z), a), b) + p(p(p(y, z), b), a)
            + p(p(p(z, a), b), y) + p(p(p(z, b), a), y)
        )
        return lhs, rhs

    return [_identity("Mal'tsev identity (polarized)", alg, "abyz", maltsev, maltsev)]


def check_anticommutative(alg: Algebra) -> AxiomReport:
    return run_identities("anticommutative", anticommutativity_identities(alg), alg.dim)


def check_jacobi(alg: Algebra) -> AxiomReport:
    return run_identities("jacobi", jacobi_identities(alg), alg.dim)


def check_maltsev(alg: Algebra) -> AxiomReport:
    return run_identities("maltsev", maltsev_identities(alg), alg.dim)


def check_alternative(alg: Algebra) -> AxiomReport:
    return run_identities("alternative", alternativity_identities(alg), alg.dim)


def check_associative(alg: Algebra) -> AxiomReport:
    return run_identities("associative", associativity_identities(alg), alg.dim)


AXIOMS = {
    "anticommutative": anticommutativity_identities,
    "jacobi": jacobi_identities,
    "maltsev": maltsev_identities,
    "alternative": alternativity_identities,
    "associative": associativity_identities,
}


def unit_identities(a: BinaryAlgebra) -> list[Identity]:
    if a.unit_index is None:
        raise ConstructionError("algebra has no declared unit")
    e = a.basis(a.unit_index)
    return [
        Identity("e_u x = x", 1, lambda tup: (a.product(e, a.basis(tup[0])), a.basis(tup[0]))),
        Identity("x e_u = x", 1, lambda tup: (a.product(a.basis(tup[0]), e), a.basis(tup[0]))),
    ]


def check_unit(a: BinaryAlgebra) -> AxiomReport:
    return run_identities("unit", unit_identities(a), a.dim)
