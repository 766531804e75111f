"""Identity checking over basis tuples, with exact witnesses."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .exact import RatTensor

Evaluator = Callable[[tuple[int, ...]], tuple[RatTensor, RatTensor]]
BulkEvaluator = Callable[[], tuple[RatTensor, RatTensor]]


@dataclass(frozen=True)
class Identity:
    """One multilinear identity ``lhs(e_i, e_j, ...) == rhs(e_i, e_j, ...)``.

    ``evaluate`` computes both sides at a single basis tuple.  ``bulk``, when
    given, returns both sides for every tuple at once as tensors whose leading
    ``arity`` axes are the tuple indices; it must agree with ``evaluate``.
    """

    name: str
    arity: int
    evaluate: Evaluator
    bulk: BulkEvaluator | None = None


@dataclass(frozen=True)
class Witness:
    identity: str
    indices: tuple[int, ...]
    lhs: RatTensor
    rhs: RatTensor


@dataclass(frozen=True)
class Report:
    """Verdict of a named check; it fails exactly when it carries witnesses."""

    name: str
    identities: tuple[str, ...]
    checked: int
    witnesses: tuple[Witness, ...] = ()
    sampled: bool = False
    notes: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.witnesses

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        extra = " (sampled)" if self.sampled else ""
        return f"{self.name}: {verdict} over {self.checked} tuples{extra}"


# the algebra-level and operator-level checks share one report shape
AxiomReport = Report
IdentityReport = Report


def _mismatch_mask(lhs: RatTensor, rhs: RatTensor, arity: int) -> np.ndarray:
    if lhs.shape != rhs.shape:
        raise ValueError(f"bulk sides disagree in shape: {lhs.shape} vs {rhs.shape}")
    diff = lhs.num * rhs.den != rhs.num * lhs.den
    if diff.ndim > arity:
        diff = diff.reshape(diff.shape[:arity] + (-1,)).any(axis=-1)
    return diff


def run_identities(
    name: str,
    identities: Sequence[Identity],
    dim: int,
    tuples: Iterable[tuple[int, ...]] | None = None,
    notes: Sequence[str] = (),
) -> Report:
    """Check every identity on all basis tuples, or on ``tuples`` if given.

    For each identity the witness is its first failing tuple in
    lexicographic order, with both sides recomputed by ``evaluate``.
    """
    witnesses: list[Witness] = []
    checked = 0
    sampled = tuples is not None
    sample = sorted(set(tuples)) if tuples is not None else None
    for ident in identities:
        first: tuple[int, ...] | None = None
        if sample is not None:
            checked = len(sample)
            for tup in sample:
                lhs, rhs = ident.evaluate(tup)
                if lhs != rhs:
                    first = tup
                    break
        elif ident.bulk is not None:
            checked = dim**ident.arity
            mask = _mismatch_mask(*ident.bulk(), ident.arity)
            bad = np.argwhere(mask)
            if len(bad):
                first = tuple(int(i) for i in bad[0])
        else:
            checked = dim**ident.arity
            for tup in itertools.product(range(dim), repeat=ident.arity):
                lhs, rhs = ident.evaluate(tup)
                if lhs != rhs:
                    first = tup
                    break
        if first is not None:
            lhs, rhs = ident.evaluate(first)
            if lhs == rhs:
                raise RuntimeError(
                    f"{ident.name}: bulk and direct evaluation disagree at {first}"
                )
            witnesses.append(Witness(ident.name, first, lhs, rhs))
    return Report(
        name=name,
        identities=tuple(i.name for i in identities),
        checked=checked,
        witnesses=tuple(witnesses),
        sampled=sampled,
        notes=tuple(notes),
    )
