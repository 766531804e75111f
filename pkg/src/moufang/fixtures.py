"""Named fixture generators."""

from __future__ import annotations

import random

from .algebras import (
    AnticommAlgebra,
    lie_cross,
    octonions,
    quaternions,
    sedenions,
    split_octonions,
)
from .yamaguti import imaginary_octonions, perturb

FIXTURES = (
    "quaternions",
    "octonions",
    "split-octonions",
    "sedenions",
    "lie-cross",
    "random-anticomm",
)


def generate_fixture(name: str, seed: int = 0):
    """Build the named algebra; only ``random-anticomm`` depends on ``seed``.

    ``random-anticomm`` is the imaginary-octonion algebra with one structure
    constant bumped by 1 (and its antisymmetric partner by -1), chosen by a
    ``random.Random(seed)`` draw.
    """
    builders = {
        "quaternions": quaternions,
        "octonions": octonions,
        "split-octonions": split_octonions,
        "sedenions": sedenions,
        "lie-cross": lie_cross,
    }
    if name in builders:
        return builders[name]()
    if name == "random-anticomm":
        g = perturb(imaginary_octonions(), random.Random(seed))
        return AnticommAlgebra(g.c, g.basis_names, f"random-anticomm-{seed}")
    raise ValueError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURES)}")
