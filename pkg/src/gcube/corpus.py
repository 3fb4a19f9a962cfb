"""Golden-test corpus harness.

The manifest lists one case per line: a module path, its expectation
(checks, fails with a named code, or parse error), the language features
it exercises, and optional normalization goals.  The harness runs every
case in a fresh environment, compares outcomes, and renders a TAP-style
report plus JSON.  A required-feature table makes missing coverage a
failure of the harness itself.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from .typecheck import Definitions
from .cli import LoadError, load_module
from .errors import USER_ERROR_CODES
from .evaluator import normalize
from .parser import parse_expression
from .pretty import pretty
from .syntax import Context, numeral_value

DEFAULT_ROOT = Path(__file__).resolve().parents[2] / "corpus"

# every theorem, program, and rule family of the calculus must be
# witnessed by at least one corpus case
REQUIRED_FEATURES = (
    "path-types",
    "path-equations",
    "funext",
    "composition",
    "transport",
    "systems",
    "delayed-substitution-formation",
    "later-typing",
    "later-type-equalities",
    "later-term-equalities",
    "later-extensionality",
    "later-applicative",
    "dfix-typing",
    "dfix-unfold-at-one",
    "canonical-unfold-lemma",
    "unique-guarded-fixed-point",
    "loeb-induction",
    "streams",
    "zipwith-commutativity",
    "negative-recursive-type",
    "y-combinator",
    "naturals-canonicity",
)


@dataclass
class CorpusCase:
    path: str
    expect: str  # "checks" | "fails:<Code>" | "parse-error"
    features: tuple[str, ...] = ()
    normalize: tuple[dict, ...] = ()
    reconstructed: bool = False


@dataclass
class CaseResult:
    case: CorpusCase
    ok: bool
    detail: str
    seconds: float


@dataclass
class CorpusReport:
    results: list[CaseResult] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def tap(self) -> str:
        lines = [f"1..{len(self.results)}"]
        for k, r in enumerate(self.results, 1):
            status = "ok" if r.ok else "not ok"
            lines.append(f"{status} {k} - {r.case.path} # {r.detail}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "cases": [
                {
                    "path": r.case.path,
                    "expect": r.case.expect,
                    "ok": r.ok,
                    "detail": r.detail,
                    "seconds": round(r.seconds, 3),
                    "features": list(r.case.features),
                    "reconstructed": r.case.reconstructed,
                }
                for r in self.results
            ],
        }


def load_manifest(root: Path | None = None) -> list[CorpusCase]:
    root = root or DEFAULT_ROOT
    cases = []
    with open(root / "manifest.jsonl", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            raw = json.loads(line)
            cases.append(CorpusCase(
                path=raw["path"],
                expect=raw["expect"],
                features=tuple(raw.get("features", ())),
                normalize=tuple(raw.get("normalize", ())),
                reconstructed=raw.get("reconstructed", False),
            ))
    return cases


def check_feature_coverage(cases: list[CorpusCase]) -> list[str]:
    """Required features with no corpus case; empty means full coverage."""
    have = {f for c in cases for f in c.features}
    return [f for f in REQUIRED_FEATURES if f not in have]


def check_negative_coverage(cases: list[CorpusCase]) -> list[str]:
    """User-facing error codes not hit by any failing case."""
    hit = {c.expect.split(":", 1)[1] for c in cases if c.expect.startswith("fails:")}
    return [code for code in USER_ERROR_CODES if code not in hit]


def run_case(case: CorpusCase, root: Path) -> CaseResult:
    t0 = time.perf_counter()
    defs = Definitions()
    outcome: str
    code: str | None = None
    try:
        load_module(root / case.path, defs)
        outcome = "checks"
    except LoadError as exc:
        code = exc.diagnostic.code
        outcome = "parse-error" if exc.exit_code == 2 else f"fails:{code}"

    if case.expect != outcome:
        return CaseResult(case, False,
                          f"expected {case.expect}, got {outcome}",
                          time.perf_counter() - t0)
    if outcome == "checks":
        for goal in case.normalize:
            expr = defs.resolve(parse_expression(goal["expr"]))
            from .typecheck import infer
            _, elaborated = infer(Context(), expr)
            value = normalize(Context(), elaborated)
            if "numeral" in goal:
                got = numeral_value(value)
                if got != goal["numeral"]:
                    return CaseResult(
                        case, False,
                        f"{goal['expr']} normalized to {got}, "
                        f"expected {goal['numeral']}",
                        time.perf_counter() - t0)
            elif "rendered" in goal:
                got_str = pretty(value)
                if got_str != goal["rendered"]:
                    return CaseResult(
                        case, False,
                        f"{goal['expr']} rendered as {got_str!r}, "
                        f"expected {goal['rendered']!r}",
                        time.perf_counter() - t0)
    detail = outcome + (" [reconstructed]" if case.reconstructed else "")
    return CaseResult(case, True, detail, time.perf_counter() - t0)


def run_corpus(root: Path | None = None) -> CorpusReport:
    root = root or DEFAULT_ROOT
    cases = load_manifest(root)
    report = CorpusReport()
    t0 = time.perf_counter()
    missing = check_feature_coverage(cases)
    if missing:
        report.results.append(CaseResult(
            CorpusCase("manifest.jsonl", "coverage"), False,
            f"features without a corpus case: {', '.join(missing)}", 0.0))
    uncovered = check_negative_coverage(cases)
    if uncovered:
        report.results.append(CaseResult(
            CorpusCase("manifest.jsonl", "coverage"), False,
            f"error codes without a negative case: {', '.join(uncovered)}", 0.0))
    for case in cases:
        report.results.append(run_case(case, root))
    report.seconds = time.perf_counter() - t0
    return report
