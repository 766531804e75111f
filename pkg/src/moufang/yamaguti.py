"""Ternary Yamaguti brackets and the constant-level associator relation."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebras import (
    AnticommAlgebra,
    check_maltsev,
    commutator_algebra,
    lie_cross,
    octonions,
    quaternions,
    sedenions,
    split_octonions,
)
from .exact import Tensor3, Tensor4, Vector, einsum
from .reports import AxiomReport, Identity, Report, run_identities

PERTURBATION_SEED = 1729


@dataclass(frozen=True)
class YamagutiTensor:
    """``y6[i, j, k, l]`` is the ``e_i`` component of ``[e_j, e_k, e_l]``.

    This is six times the Yamaguti constants; ``y`` divides it out.
    """

    y6: Tensor4
    source: AnticommAlgebra

    @property
    def dim(self) -> int:
        return self.y6.shape[0]

    @property
    def y(self) -> Tensor4:
        return self.y6 / 6


@dataclass(frozen=True)
class AssociatorTensor:
    l: Tensor4

    @property
    def dim(self) -> int:
        return self.l.shape[0]


def yamaguti_bracket(g: AnticommAlgebra, x: Vector, y: Vector, z: Vector) -> Vector:
    """``[x,[y,z]] - [y,[x,z]] + [[x,y],z]``."""
    b = g.bracket
    return b(x, b(y, z)) - b(y, b(x, z)) + b(b(x, y), z)


def nested_bracket_tensor(g: AnticommAlgebra) -> Tensor4:
    """``C^s_{jk} C^i_{sl}``, the constants of ``[[x,y],z]``."""
    return einsum("isl,sjk->ijkl", g.c, g.c)


def yamaguti_tensor(g: AnticommAlgebra) -> YamagutiTensor:
    c = g.c
    inner_right = einsum("ijs,skl->ijkl", c, c)
    inner_swapped = einsum("iks,sjl->ijkl", c, c)
    return YamagutiTensor(inner_right - inner_swapped + nested_bracket_tensor(g), g)


def associator_tensor(g: AnticommAlgebra) -> AssociatorTensor:
    """Solve ``Y = l + (1/3) C.C`` for ``l``."""
    return AssociatorTensor(yamaguti_tensor(g).y - nested_bracket_tensor(g) / 3)


def sagle_yamaguti_identities(g: AnticommAlgebra) -> list[Identity]:
    b = g.bracket

    def evaluate(tup):
        x, y, z, w = (g.basis(i) for i in tup)
        lhs = yamaguti_bracket(g, x, y, b(z, w))
        rhs = b(yamaguti_bracket(g, x, y, z), w) + b(z, yamaguti_bracket(g, x, y, w))
        return lhs, rhs

    def bulk():
        y6 = yamaguti_tensor(g).y6
        lhs = einsum("ijks,slp->jklpi", y6, g.c)
        rhs = einsum("isp,sjkl->jklpi", g.c, y6) + einsum("ils,sjkp->jklpi", g.c, y6)
        return lhs, rhs

    return [Identity("[x,y,[z,w]] = [[x,y,z],w] + [z,[x,y,w]]", 4, evaluate, bulk)]


def check_sagle_yamaguti(g: AnticommAlgebra) -> AxiomReport:
    return run_identities("sagle-yamaguti", sagle_yamaguti_identities(g), g.dim)


@dataclass(frozen=True)
class EquivalenceEntry:
    name: str
    maltsev: Report
    sagle_yamaguti: Report

    @property
    def agree(self) -> bool:
        return self.maltsev.passed == self.sagle_yamaguti.passed


@dataclass(frozen=True)
class EquivalenceReport:
    entries: tuple[EquivalenceEntry, ...]

    @property
    def all_agree(self) -> bool:
        return all(e.agree for e in self.entries)

    @property
    def disagreements(self) -> list[EquivalenceEntry]:
        return [e for e in self.entries if not e.agree]


def check_equivalence_corpus(algebras: Sequence[AnticommAlgebra]) -> EquivalenceReport:
    return EquivalenceReport(
        tuple(
            EquivalenceEntry(g.name, check_maltsev(g), check_sagle_yamaguti(g))
            for g in algebras
        )
    )


def perturb(g: AnticommAlgebra, rng: random.Random) -> AnticommAlgebra:
    """Add 1 to one structure constant ``C[i,j,k]`` (j < k), keeping antisymmetry."""
    m = g.dim
    i = rng.randrange(m)
    j, k = sorted(rng.sample(range(m), 2))
    num = g.c.num.copy()
    num[i, j, k] += g.c.den
    num[i, k, j] -= g.c.den
    return AnticommAlgebra(
        Tensor3(num, g.c.den),
        basis_names=g.basis_names,
        name=f"{g.name}+C[{i},{j},{k}]",
    )


def imaginary_octonions() -> AnticommAlgebra:
    return commutator_algebra(octonions())


def octonion_perturbations(
    count: int = 100, seed: int = PERTURBATION_SEED
) -> list[AnticommAlgebra]:
    rng = random.Random(seed)
    base = imaginary_octonions()
    return [perturb(base, rng) for _ in range(count)]


def equivalence_corpus(
    count: int = 100, seed: int = PERTURBATION_SEED
) -> list[AnticommAlgebra]:
    return [
        lie_cross(),
        commutator_algebra(quaternions()),
        imaginary_octonions(),
        commutator_algebra(split_octonions()),
        commutator_algebra(sedenions()),
        *octonion_perturbations(count, seed),
    ]
