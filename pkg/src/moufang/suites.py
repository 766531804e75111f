"""Named check suites over loaded inputs, and their reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import __version__
from .algebras import (
    AXIOMS,
    AnticommAlgebra,
    BinaryAlgebra,
    ClosureError,
    check_alternative,
    check_anticommutative,
    check_associative,
    check_jacobi,
    check_maltsev,
    check_unit,
    commutator_algebra,
    unit_identities,
)
from .formats import Document, FormatError, digest, loads, read_input
from .reports import Identity, Report
from .triality import (
    DEFAULT_SAMPLE_CAP,
    MoufangMaltsevPair,
    check_conjugate_reductivity,
    check_conjugate_yamagutian,
    check_constraint,
    check_generalized_representation,
    check_hidden_associativity,
    check_maurer_cartan,
    check_reductivity,
    check_triality_decomposition,
    conjugate_reductivity_identities,
    conjugate_yamagutian_identities,
    constraint_identities,
    decomposition_identities,
    hidden_associativity_identities,
    maurer_cartan_identities,
    pair_from_alternative,
    reductivity_identities,
)
from .yamaguti import check_sagle_yamaguti, sagle_yamaguti_identities

TOOL = "moufang"

SUITES = (
    "axioms",
    "maurer-cartan",
    "decomposition",
    "conjugate-yamagutian",
    "reductivity",
    "conjugate-reductivity",
    "hidden-associativity",
    "sagle-yamaguti",
    "maltsev",
    "equivalence",
    "generalized-representation",
)

OPERATOR_SUITES = frozenset({
    "maurer-cartan",
    "decomposition",
    "conjugate-yamagutian",
    "reductivity",
    "conjugate-reductivity",
    "hidden-associativity",
    "generalized-representation",
})

FORMATS = ("text", "machine")


class UsageError(ValueError):
    """The requested suites cannot run on the given inputs."""


@dataclass(frozen=True)
class SuiteConfig:
    inputs: tuple[str, ...]
    suites: tuple[str, ...]
    seed: int = 0
    cap: int = DEFAULT_SAMPLE_CAP
    output_format: str = "text"

    def __post_init__(self):
        unknown = [s for s in self.suites if s not in SUITES]
        if unknown:
            raise UsageError(
                f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}"
            )
        if not self.suites:
            raise UsageError("no suites requested")
        if self.seed < 0:
            raise UsageError("seed must be a non-negative integer")
        if self.cap < 1:
            raise UsageError("cap must be a positive integer")
        if self.output_format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")


@dataclass(frozen=True)
class Checked:
    """A report plus where it was evaluated and whether it decides the suite."""

    report: Report
    target: str  # "input", "gamma" or "pair"
    counts: bool = True


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    passed: bool
    checks: tuple[Checked, ...] = ()
    error: str | None = None
    seconds: float = field(default=0.0, compare=False)


@dataclass(frozen=True)
class InputResult:
    path: str
    kind: str
    input_text: str
    input_digest: str
    suites: tuple[SuiteResult, ...]
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class RunReport:
    config: SuiteConfig
    inputs: tuple[InputResult, ...]
    version: str = __version__

    @property
    def failed_suites(self) -> int:
        return sum(not s.passed for r in self.inputs for s in r.suites)

    @property
    def exit_code(self) -> int:
        return min(self.failed_suites, 63)

    def to_machine(self) -> str:
        return render_machine(self)

    def to_text(self) -> str:
        return render_text(self)


# context -------------------------------------------------------------------------


def _kind(doc: Document) -> str:
    if isinstance(doc, BinaryAlgebra):
        return "binary-algebra"
    if isinstance(doc, AnticommAlgebra):
        return "anticomm-algebra"
    return "pair"


class _Context:
    """Lazily derived objects for one input."""

    def __init__(self, doc: Document):
        self.doc = doc
        self._gamma = None
        self._pair = None

    def gamma(self) -> AnticommAlgebra:
        if self._gamma is None:
            if isinstance(self.doc, AnticommAlgebra):
                self._gamma = self.doc
            elif isinstance(self.doc, MoufangMaltsevPair):
                self._gamma = self.doc.gamma
            else:
                self._gamma = commutator_algebra(self.doc)
        return self._gamma

    def pair(self) -> MoufangMaltsevPair:
        if self._pair is None:
            if isinstance(self.doc, MoufangMaltsevPair):
                self._pair = self.doc
            else:
                self._pair = pair_from_alternative(self.doc)
        return self._pair

    def target(self, name: str):
        return {"input": lambda: self.doc, "gamma": self.gamma, "pair": self.pair}[name]()


def _precheck(doc: Document, suites: Sequence[str], path: str) -> None:
    if isinstance(doc, AnticommAlgebra):
        ops = sorted(set(suites) & OPERATOR_SUITES)
        if ops:
            raise UsageError(
                f"{path}: operator suites ({', '.join(ops)}) need a pair file or a "
                "unital binary algebra, not an anticommutative algebra"
            )
    if isinstance(doc, BinaryAlgebra) and doc.unit_index is None:
        needs_unit = [s for s in suites if s != "axioms"]
        if needs_unit:
            raise UsageError(
                f"{path}: suites {', '.join(needs_unit)} need a declared unit to form "
                "the commutator algebra"
            )


# suites ---------------------------------------------------------------------------


def _axioms(ctx: _Context, config: SuiteConfig) -> tuple[bool, list[Checked]]:
    doc = ctx.doc
    if isinstance(doc, BinaryAlgebra):
        checks = []
        if doc.unit_index is not None:
            checks.append(Checked(check_unit(doc), "input"))
        checks += [
            Checked(check_alternative(doc), "input"),
            Checked(check_associative(doc), "input", counts=False),
        ]
    elif isinstance(doc, AnticommAlgebra):
        checks = [
            Checked(check_anticommutative(doc), "input"),
            Checked(check_jacobi(doc), "input", counts=False),
        ]
    else:
        checks = [
            Checked(check_constraint(doc), "pair"),
            Checked(check_anticommutative(doc.gamma), "gamma"),
        ]
    return all(c.report.passed for c in checks if c.counts), checks


def _single(check: Callable, target: str):
    def run(ctx: _Context, config: SuiteConfig):
        report = check(ctx.target(target))
        return report.passed, [Checked(report, target)]
    return run


def _hidden(ctx: _Context, config: SuiteConfig):
    report = check_hidden_associativity(ctx.pair(), config.seed, config.cap)
    return report.passed, [Checked(report, "pair")]


def _genrep(ctx: _Context, config: SuiteConfig):
    report = check_generalized_representation(ctx.pair(), config.seed, config.cap)
    return report.passed, [Checked(report, "pair")]


def _equivalence(ctx: _Context, config: SuiteConfig):
    g = ctx.gamma()
    maltsev = check_maltsev(g)
    sy = check_sagle_yamaguti(g)
    return maltsev.passed == sy.passed, [
        Checked(maltsev, "gamma", counts=False),
        Checked(sy, "gamma", counts=False),
    ]


_RUNNERS = {
    "axioms": _axioms,
    "maurer-cartan": _single(check_maurer_cartan, "pair"),
    "decomposition": _single(check_triality_decomposition, "pair"),
    "conjugate-yamagutian": _single(check_conjugate_yamagutian, "pair"),
    "reductivity": _single(check_reductivity, "pair"),
    "conjugate-reductivity": _single(check_conjugate_reductivity, "pair"),
    "hidden-associativity": _hidden,
    "sagle-yamaguti": _single(check_sagle_yamaguti, "gamma"),
    "maltsev": _single(check_maltsev, "gamma"),
    "equivalence": _equivalence,
    "generalized-representation": _genrep,
}

# identity builders by report name, for witness re-verification
_BUILDERS: dict[str, Callable[[object], list[Identity]]] = {
    **AXIOMS,
    "unit": unit_identities,
    "translation-constraint": constraint_identities,
    "maurer-cartan": maurer_cartan_identities,
    "decomposition": decomposition_identities,
    "conjugate-yamagutian": conjugate_yamagutian_identities,
    "reductivity": reductivity_identities,
    "conjugate-reductivity": conjugate_reductivity_identities,
    "hidden-associativity": hidden_associativity_identities,
    "generalized-representation": lambda p: (
        reductivity_identities(p) + hidden_associativity_identities(p)
    ),
    "sagle-yamaguti": sagle_yamaguti_identities,
}


def _run_input(path: str, doc: Document, data: bytes, config: SuiteConfig) -> InputResult:
    ctx = _Context(doc)
    results = []
    for suite in config.suites:
        start = time.perf_counter()
        try:
            passed, checks = _RUNNERS[suite](ctx, config)
            result = SuiteResult(suite, passed, tuple(checks))
        except ClosureError as exc:
            result = SuiteResult(suite, False, error=f"closure error: {exc}")
        result = SuiteResult(
            result.suite, result.passed, result.checks, result.error,
            time.perf_counter() - start,
        )
        results.append(result)
    notes = []
    if ctx._pair is not None and not isinstance(doc, MoufangMaltsevPair):
        notes.append("operator suites used the left/right multiplication pair")
        if not ctx._pair.verified_model:
            notes.append("unverified model: input algebra is not alternative")
    return InputResult(
        path=path,
        kind=_kind(doc),
        input_text=data.decode("utf-8"),
        input_digest=digest(data),
        suites=tuple(results),
        notes=tuple(notes),
    )


def run_suites(config: SuiteConfig) -> RunReport:
    """Load every input, reject incompatible suites up front, then run."""
    loaded = []
    for path in config.inputs:
        doc, data = read_input(path)
        _precheck(doc, config.suites, str(path))
        loaded.append((str(path), doc, data))
    return RunReport(
        config,
        tuple(_run_input(path, doc, data, config) for path, doc, data in loaded),
    )


# rendering ------------------------------------------------------------------------


def to_machine_dict(report: RunReport) -> dict:
    index = 0
    inputs = []
    for inp in report.inputs:
        suites = []
        for suite in inp.suites:
            checks = []
            for checked in suite.checks:
                r = checked.report
                witnesses = []
                for w in r.witnesses:
                    witnesses.append({
                        "index": index,
                        "identity": w.identity,
                        "indices": list(w.indices),
                        "lhs": w.lhs.to_strings(),
                        "rhs": w.rhs.to_strings(),
                    })
                    index += 1
                checks.append({
                    "name": r.name,
                    "target": checked.target,
                    "counts": checked.counts,
                    "verdict": "pass" if r.passed else "fail",
                    "identities": list(r.identities),
                    "tuples_checked": r.checked,
                    "sampled": r.sampled,
                    "notes": list(r.notes),
                    "witnesses": witnesses,
                })
            suites.append({
                "suite": suite.suite,
                "verdict": "pass" if suite.passed else "fail",
                "error": suite.error,
                "checks": checks,
            })
        inputs.append({
            "path": inp.path,
            "kind": inp.kind,
            "input_digest": inp.input_digest,
            "input_text": inp.input_text,
            "notes": list(inp.notes),
            "suites": suites,
        })
    return {
        "tool": TOOL,
        "version": report.version,
        "seed": report.config.seed,
        "cap": report.config.cap,
        "failures": report.failed_suites,
        "inputs": inputs,
    }


def render_machine(report: RunReport) -> str:
    return json.dumps(to_machine_dict(report), sort_keys=True, indent=1) + "\n"


def _format_value(value) -> list[str]:
    strings = value.to_strings()
    if value.ndim == 1:
        return ["[" + ", ".join(strings) + "]"]
    width = max(len(s) for row in strings for s in row)
    return ["[" + " ".join(s.rjust(width) for s in row) + "]" for row in strings]


def render_text(report: RunReport) -> str:
    lines = [f"{TOOL} {report.version}  seed={report.config.seed}  cap={report.config.cap}"]
    n = 0
    for inp in report.inputs:
        lines.append("")
        lines.append(f"input {inp.path} ({inp.kind})")
        lines.append(f"  sha256 {inp.input_digest}")
        for note in inp.notes:
            lines.append(f"  note: {note}")
        for suite in inp.suites:
            verdict = "PASS" if suite.passed else "FAIL"
            lines.append(f"  [{verdict}] {suite.suite}  ({suite.seconds:.2f} s)")
            if suite.error:
                lines.append(f"      error: {suite.error}")
            for checked in suite.checks:
                r = checked.report
                tag = "" if checked.counts else "  (informational)"
                sampled = ", sampled" if r.sampled else ""
                lines.append(
                    f"    {r.name} on {checked.target}: {'pass' if r.passed else 'fail'}"
                    f"  ({r.checked} tuples{sampled}){tag}"
                )
                for note in r.notes:
                    lines.append(f"      note: {note}")
                for w in r.witnesses:
                    lines.append(f"      witness #{n}: {w.identity} at basis indices {list(w.indices)}")
                    lines.append("        lhs:")
                    lines.extend("          " + s for s in _format_value(w.lhs))
                    lines.append("        rhs:")
                    lines.extend("          " + s for s in _format_value(w.rhs))
                    n += 1
    lines.append("")
    failed = report.failed_suites
    total = sum(len(i.suites) for i in report.inputs)
    lines.append(f"{total - failed}/{total} suites passed")
    return "\n".join(lines) + "\n"


# witness re-verification ---------------------------------------------------------


@dataclass(frozen=True)
class WitnessCheck:
    index: int
    identity: str
    indices: tuple[int, ...]
    reproduced: bool
    message: str


def verify_witness(machine_text: str, index: int) -> WitnessCheck:
    """Recompute witness ``index`` of a machine report from its embedded input."""
    try:
        doc = json.loads(machine_text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"report is not valid JSON: {exc}") from exc
    for inp in doc.get("inputs", []):
        for suite in inp["suites"]:
            for check in suite["checks"]:
                for w in check["witnesses"]:
                    if w["index"] != index:
                        continue
                    return _reverify(inp, check, w)
    raise FormatError(f"report has no witness with index {index}")


def _reverify(inp: dict, check: dict, w: dict) -> WitnessCheck:
    data = inp["input_text"].encode("utf-8")
    indices = tuple(w["indices"])
    if digest(data) != inp["input_digest"]:
        return WitnessCheck(w["index"], w["identity"], indices, False,
                            "embedded input does not match its digest")
    ctx = _Context(loads(inp["input_text"], inp["path"]))
    identities = _BUILDERS[check["name"]](ctx.target(check["target"]))
    ident = next((i for i in identities if i.name == w["identity"]), None)
    if ident is None:
        return WitnessCheck(w["index"], w["identity"], indices, False,
                            f"unknown identity {w['identity']!r}")
    lhs, rhs = ident.evaluate(indices)
    same = lhs.to_strings() == w["lhs"] and rhs.to_strings() == w["rhs"]
    if same and lhs != rhs:
        msg = "reproduced: both sides match the report and differ from each other"
    elif same:
        msg = "sides match the report but are equal, so this is not a counterexample"
    else:
        msg = "recomputed sides differ from the report"
    return WitnessCheck(w["index"], w["identity"], indices, same and lhs != rhs, msg)

