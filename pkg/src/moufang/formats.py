"""Canonical text serialization of algebras and operator pairs.

Documents are JSON objects with sorted keys.  Scalars are strings ``"p"`` or
``"p/q"`` in lowest terms with ``q > 1``.  Structure tensors are stored
sparsely as ``[i, j, k, "p/q"]`` entries in the tensor's own index order
(output index first), sorted lexicographically, zeros omitted.  Operator
families are dense row-major matrices of scalar strings.
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from fractions import Fraction
from pathlib import Path
from typing import Union

import numpy as np

from .algebras import (
    AnticommAlgebra,
    AnticommutativityError,
    BinaryAlgebra,
    ConstructionError,
)
from .exact import DimensionError, Matrix, Tensor3, format_scalar, stack
from .triality import MoufangMaltsevPair

Document = Union[BinaryAlgebra, AnticommAlgebra, MoufangMaltsevPair]

KINDS = ("binary-algebra", "anticomm-algebra", "pair")

_SCALAR = re.compile(r"(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?")


class FormatError(ValueError):
    """An input document is malformed, non-canonical or shape-inconsistent."""


def digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def parse_scalar(text, where: str = "") -> Fraction:
    """Parse a normalized rational string; anything else is rejected."""
    loc = f" at {where}" if where else ""
    if not isinstance(text, str):
        raise FormatError(f"scalar{loc} must be a string, got {text!r}")
    m = _SCALAR.fullmatch(text)
    if m is None:
        raise FormatError(f"malformed scalar {text!r}{loc}")
    sign, p, q = m.groups()
    p = int(p)
    if q is None:
        if sign and p == 0:
            raise FormatError(f"non-normalized rational {text!r}{loc}: negative zero")
        return Fraction(-p if sign else p)
    q = int(q)
    if q == 1 or math.gcd(p, q) != 1:
        raise FormatError(f"non-normalized rational {text!r}{loc}: write it in lowest terms")
    return Fraction(-p if sign else p, q)


# writing ---------------------------------------------------------------------


def _entries(t: Tensor3) -> list[list]:
    """Nonzero entries in lexicographic index order."""
    return [
        [int(i), int(j), int(k), format_scalar(t[int(i), int(j), int(k)])]
        for i, j, k in np.argwhere(t.num != 0)
    ]


def to_document(obj: Document) -> dict:
    if isinstance(obj, BinaryAlgebra):
        return {
            "kind": "binary-algebra",
            "dim": obj.dim,
            "name": obj.name,
            "basis": list(obj.basis_names),
            "unit": obj.unit_index,
            "mult": _entries(obj.mult),
        }
    if isinstance(obj, AnticommAlgebra):
        return {
            "kind": "anticomm-algebra",
            "dim": obj.dim,
            "name": obj.name,
            "basis": list(obj.basis_names),
            "c": _entries(obj.c),
        }
    if isinstance(obj, MoufangMaltsevPair):
        return {
            "kind": "pair",
            "dim": obj.dim,
            "rep_dim": obj.rep_dim,
            "name": obj.name,
            "basis": list(obj.gamma.basis_names),
            "c": _entries(obj.gamma.c),
            "s_ops": [obj.s_ops[j].to_strings() for j in range(obj.dim)],
            "t_ops": [obj.t_ops[j].to_strings() for j in range(obj.dim)],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _compact(value) -> str:
    return json.dumps(value, separators=(", ", ": "))


def dumps(obj: Document) -> str:
    """Canonical text: sorted keys, one sparse entry or matrix per line."""
    doc = to_document(obj)
    lines = ["{"]
    keys = sorted(doc)
    for n, key in enumerate(keys):
        value = doc[key]
        comma = "," if n < len(keys) - 1 else ""
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"  {json.dumps(key)}: [")
            for m, item in enumerate(value):
                sep = "," if m < len(value) - 1 else ""
                lines.append(f"    {_compact(item)}{sep}")
            lines.append(f"  ]{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {_compact(value)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dump(obj: Document, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# reading ---------------------------------------------------------------------


def _require(doc: dict, key: str, kind: type):
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    value = doc[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise FormatError(f"field {key!r} must be {kind.__name__}, got {value!r}")
    return value


def _sparse(doc: dict, key: str, dim: int) -> Tensor3:
    entries = _require(doc, key, list)
    values: dict[tuple[int, int, int], Fraction] = {}
    previous = None
    for n, entry in enumerate(entries):
        where = f"{key}[{n}]"
        if not (isinstance(entry, list) and len(entry) == 4):
            raise FormatError(f"{where}: expected [i, j, k, \"p/q\"], got {entry!r}")
        idx = entry[:3]
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in idx):
            raise FormatError(f"{where}: indices must be integers, got {idx!r}")
        if not all(0 <= i < dim for i in idx):
            raise FormatError(f"{where}: index {idx} out of range for dim {dim}")
        key_idx = tuple(idx)
        if previous is not None and key_idx <= previous:
            raise FormatError(f"{where}: entries must be strictly sorted, {key_idx} follows {previous}")
        previous = key_idx
        values[key_idx] = parse_scalar(entry[3], where)
    den = math.lcm(1, *(v.denominator for v in values.values()))
    num = np.zeros((dim, dim, dim), dtype=object)
    for (i, j, k), v in values.items():
        num[i, j, k] = v.numerator * (den // v.denominator)
    return Tensor3(num, den)


def _matrices(doc: dict, key: str, count: int, size: int):
    mats = _require(doc, key, list)
    if len(mats) != count:
        raise FormatError(f"{key}: expected {count} matrices, got {len(mats)}")
    out = []
    for n, rows in enumerate(mats):
        where = f"{key}[{n}]"
        if not (isinstance(rows, list) and len(rows) == size
                and all(isinstance(r, list) and len(r) == size for r in rows)):
            raise FormatError(f"{where}: expected a {size}x{size} matrix")
        out.append(Matrix.from_values(
            [[parse_scalar(v, f"{where}[{r}][{c}]") for c, v in enumerate(row)]
             for r, row in enumerate(rows)]
        ))
    return stack(out)


def _basis(doc: dict, dim: int) -> tuple[str, ...]:
    names = doc.get("basis") or []
    if names and (len(names) != dim or not all(isinstance(s, str) for s in names)):
        raise FormatError(f"basis: expected {dim} names")
    return tuple(names)


def from_document(doc) -> Document:
    if not isinstance(doc, dict):
        raise FormatError("top level must be an object")
    kind = _require(doc, "kind", str)
    if kind not in KINDS:
        raise FormatError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    dim = _require(doc, "dim", int)
    if dim < 1:
        raise FormatError(f"dim must be positive, got {dim}")
    name = doc.get("name") or ""
    try:
        if kind == "binary-algebra":
            unit = doc.get("unit")
            if unit is not None and (not isinstance(unit, int) or isinstance(unit, bool)):
                raise FormatError(f"unit must be an integer or null, got {unit!r}")
            return BinaryAlgebra(_sparse(doc, "mult", dim), _basis(doc, dim), unit, name)
        if kind == "anticomm-algebra":
            return AnticommAlgebra(_sparse(doc, "c", dim), _basis(doc, dim), name)
        rep_dim = _require(doc, "rep_dim", int)
        if rep_dim < 1:
            raise FormatError(f"rep_dim must be positive, got {rep_dim}")
        gamma = AnticommAlgebra(_sparse(doc, "c", dim), _basis(doc, dim), name)
        return MoufangMaltsevPair(
            gamma,
            _matrices(doc, "s_ops", dim, rep_dim),
            _matrices(doc, "t_ops", dim, rep_dim),
            name=name,
        )
    except AnticommutativityError as exc:
        raise FormatError(f"anticommutativity violated: {exc}") from exc
    except (ConstructionError, DimensionError) as exc:
        raise FormatError(f"shape error: {exc}") from exc


def loads(text: str, source: str = "<string>") -> Document:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return from_document(doc)
    except FormatError as exc:
        raise FormatError(f"{source}: {exc}") from exc


def read_input(path: str | Path) -> tuple[Document, bytes]:
    """Load a document and return it with the exact bytes it came from."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path}: not UTF-8 text at byte {exc.start}") from exc
    return loads(text, str(path)), data


def load_algebra(path: str | Path) -> Document:
    return read_input(path)[0]
