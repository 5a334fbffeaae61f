"""Built-in instance corpus with expected reports.

Each entry names a field, a generator expression, and the exact report
fragment a run must reproduce.  The entries cover every classification
verdict on both sides (equal characteristic and p-adic), the improvement
chains, the defect-evidence loops over dense value groups, and the trivial
gates; the suite runners in the CLI and the tests compare reports against
these frozen expectations.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .as_extension import ASExtension
from .best_f import OutcomeKind, classical_swan, invariants, normalize
from .errors import UsageError
from .hahn_series import SeriesField, format_series
from .kummer import CycloField, format_cyclo, kummer_invariants, normalize_h
from .residue_field import GF, RatFunc
from .value_group import GroupKind, ValueGroup, ge


@dataclass(frozen=True)
class FieldSpec:
    """Serializable description of a coefficient field.

    kind 'series' builds a generalized power-series field from a residue
    descriptor ('gf:q' or 'ratfunc:q') and a value-group name; kind 'cyclo'
    builds the p-adic cyclotomic field from (p, m, with_y).
    """

    kind: str
    residue: str = "gf:2"
    group: str = "int"
    precision: int = 24
    p: int = 2
    m: int = 1
    with_y: bool = False

    _GROUPS = {
        "int": GroupKind.INT,
        "int-inv-p": GroupKind.INT_INV_P,
        "rat": GroupKind.RAT,
        "lex2": GroupKind.LEX2,
    }

    def build(self):
        if self.kind == "cyclo":
            return CycloField(self.p, self.m, self.with_y, self.precision)
        if self.kind != "series":
            raise UsageError(f"unknown field kind {self.kind!r}")
        residue = self._residue_field()
        group = ValueGroup(self._GROUPS[self.group], residue.p)
        if group.rank == 2:
            prec = ge(self.precision, 0)
        else:
            prec = ge(self.precision)
        return SeriesField(residue, group, prec)

    def _residue_field(self):
        tag, _, q_text = self.residue.partition(":")
        q = int(q_text or "0")
        if tag == "gf":
            p, m = _prime_power(q)
            return GF(p, m)
        if tag == "ratfunc":
            p, m = _prime_power(q)
            return RatFunc(GF(p, m))
        raise UsageError(f"unknown residue descriptor {self.residue!r}")

    def descriptor(self) -> dict:
        if self.kind == "cyclo":
            return {"kind": "cyclo", "p": self.p, "m": self.m,
                    "with_y": self.with_y, "precision": self.precision}
        return {"kind": "series", "residue": self.residue, "group": self.group,
                "precision": self.precision}


def _prime_power(q: int):
    for p in (2, 3, 5, 7, 11, 13):
        if q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                break
            return p, m
    raise UsageError(f"{q} is not a prime power")


# named presets shared by the CLI
FIELD_PRESETS = {
    "gf2-laurent": FieldSpec("series", "gf:2", "int"),
    "gf3-laurent": FieldSpec("series", "gf:3", "int"),
    "gf4-laurent": FieldSpec("series", "gf:4", "int"),
    "gf2y-laurent": FieldSpec("series", "ratfunc:2", "int"),
    "gf3y-laurent": FieldSpec("series", "ratfunc:3", "int"),
    "gf2-half-powers": FieldSpec("series", "gf:2", "int-inv-p"),
    "gf2-rationals": FieldSpec("series", "gf:2", "rat"),
    "gf2-lex2": FieldSpec("series", "gf:2", "lex2"),
}


@dataclass(frozen=True)
class CorpusEntry:
    """One regression instance: input plus the report fragment it must yield."""

    name: str
    kind: str                       # "as" | "kummer"
    field: FieldSpec
    expr: str
    expected: dict
    budget: int = 16
    annotation: dict = dc_field(default_factory=dict)


def _as(name, spec, expr, expected, budget=16, annotation=None):
    return CorpusEntry(name, "as", spec, expr, expected, budget, annotation or {})


def _ku(name, spec, expr, expected, budget=8, annotation=None):
    return CorpusEntry(name, "kummer", spec, expr, expected, budget, annotation or {})


_GF2 = FIELD_PRESETS["gf2-laurent"]
_GF3 = FIELD_PRESETS["gf3-laurent"]
_GF4 = FIELD_PRESETS["gf4-laurent"]
_GF2Y = FIELD_PRESETS["gf2y-laurent"]
_GF3Y = FIELD_PRESETS["gf3y-laurent"]
_HALF = FIELD_PRESETS["gf2-half-powers"]
_LEX2 = FIELD_PRESETS["gf2-lex2"]


ENTRIES: tuple[CorpusEntry, ...] = (
    # equal characteristic: wild shapes, pole order coprime to p
    _as("wild-cubic-pole-p2", _GF2, "X^(-3)",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "f_star": "X^(-3)",
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "3"}}),
    _as("wild-quintic-pole-p2", _GF2, "X^(-5)",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "5"}}),
    _as("wild-simple-pole-p3", _GF3, "X^(-1)",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "invariants": {"e": 3, "f_res": 1, "d": 1, "type": "wild", "swan": "1"}}),
    _as("wild-double-pole-p3", _GF3, "X^(-2)",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "invariants": {"e": 3, "f_res": 1, "d": 1, "type": "wild", "swan": "2"}}),
    _as("wild-w-pole-gf4", _GF4, "w*X^(-1)",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "1"}}),
    # one improvement step folds the even pole in half
    _as("square-pole-collapse-p2", _GF2, "X^(-6)",
        {"outcome": "best-found", "verdict": "best-i", "steps": 1,
         "f_star": "X^(-3)", "trajectory": ["-6", "-3"],
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "3"}}),
    # ferocious shapes need an imperfect residue field
    _as("ferocious-y-pole-p2", _GF2Y, "y*X^(-2)",
        {"outcome": "best-found", "verdict": "best-ii", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "ferocious", "swan": "2"}}),
    _as("ferocious-y-deep-pole-p2", _GF2Y, "y*X^(-4)",
        {"outcome": "best-found", "verdict": "best-ii", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "ferocious", "swan": "4"}}),
    _as("ferocious-y-pole-p3", _GF3Y, "y*X^(-3)",
        {"outcome": "best-found", "verdict": "best-ii", "steps": 0,
         "invariants": {"e": 1, "f_res": 3, "d": 1, "type": "ferocious", "swan": "3"}}),
    # unramified shapes: unit with residue outside x^p - x
    _as("unramified-unit-p2", _GF2, "1",
        {"outcome": "best-found", "verdict": "best-iii", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "unramified", "swan": "0"}}),
    _as("unramified-unit-p3", _GF3, "1",
        {"outcome": "best-found", "verdict": "best-iii", "steps": 0,
         "invariants": {"e": 1, "f_res": 3, "d": 1, "type": "unramified", "swan": "0"}}),
    _as("unramified-w-gf4", _GF4, "w",
        {"outcome": "best-found", "verdict": "best-iii", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "unramified", "swan": "0"}}),
    # defect evidence over dense value groups: the pole halves forever
    _as("defect-half-powers-p2", _HALF, "X^(-1)",
        {"outcome": "defect-evidence", "steps": 12,
         "trajectory": ["-1", "-1/2", "-1/4", "-1/8", "-1/16", "-1/32",
                        "-1/64", "-1/128", "-1/256", "-1/512", "-1/1024",
                        "-1/2048", "-1/4096"],
         "invariants": {"e": 1, "f_res": 1, "d": 2, "type": "defect", "swan": None}},
        budget=12, annotation={"d": 2, "note": "value group dense at 0"}),
    _as("defect-rank2-p2", _LEX2, "X^((-1, 0))",
        {"outcome": "defect-evidence", "steps": 6,
         "invariants": {"e": 1, "f_res": 1, "d": 2, "type": "defect", "swan": None}},
        budget=6, annotation={"d": 2, "note": "rank-two value group"}),
    # trivial gates
    _as("trivial-positive-val-p2", _GF2, "X^(2)",
        {"outcome": "trivial", "steps": 0}),
    _as("trivial-split-unit-gf4", _GF4, "1 + X",
        {"outcome": "trivial", "steps": 1}),
    # p-adic side: square roots of small integers over the 2-adics
    _ku("kummer-q2-sqrt2", FieldSpec("cyclo", p=2, m=1, precision=48), "2",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "2"}}),
    _ku("kummer-q2-sqrt3", FieldSpec("cyclo", p=2, m=1, precision=48), "3",
        {"outcome": "best-found", "verdict": "best-iii", "steps": 0,
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "1"}}),
    _ku("kummer-q2-sqrt5", FieldSpec("cyclo", p=2, m=1, precision=48), "5",
        {"outcome": "best-found", "verdict": "best-v", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "unramified", "swan": "0"}}),
    _ku("kummer-q2-sqrt9-trivial", FieldSpec("cyclo", p=2, m=1, precision=48), "9",
        {"outcome": "trivial", "steps": 0}),
    # ramified base pi^2 = zeta - 1: one improvement reveals the best shape
    _ku("kummer-ramified-chain", FieldSpec("cyclo", p=2, m=2, precision=48),
        "1 + pi^(2)",
        {"outcome": "best-found", "verdict": "best-iii", "steps": 1,
         "trajectory": [2, 3],
         "invariants": {"e": 2, "f_res": 1, "d": 1, "type": "wild", "swan": "1"}}),
    # imperfect residue field: ferocious shapes
    _ku("kummer-ferocious-unit", FieldSpec("cyclo", p=2, m=2, with_y=True,
                                           precision=48), "y",
        {"outcome": "best-found", "verdict": "best-ii", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "ferocious", "swan": "4"}}),
    _ku("kummer-ferocious-deep", FieldSpec("cyclo", p=2, m=2, with_y=True,
                                           precision=48), "1 + y*pi^(2)",
        {"outcome": "best-found", "verdict": "best-iv", "steps": 0,
         "invariants": {"e": 1, "f_res": 2, "d": 1, "type": "ferocious", "swan": "2"}}),
    _ku("kummer-rescale-trivial", FieldSpec("cyclo", p=2, m=1, with_y=True,
                                            precision=48), "y^2",
        {"outcome": "trivial", "steps": 1}),
    _ku("kummer-p3-cbrt3", FieldSpec("cyclo", p=3, m=1, precision=36), "3",
        {"outcome": "best-found", "verdict": "best-i", "steps": 0,
         "invariants": {"e": 3, "f_res": 1, "d": 1, "type": "wild", "swan": "3"}}),
    _ku("kummer-p3-unramified", FieldSpec("cyclo", p=3, m=1, precision=36),
        "1 + pi^(3)",
        {"outcome": "best-found", "verdict": "best-v", "steps": 0,
         "invariants": {"e": 1, "f_res": 3, "d": 1, "type": "unramified", "swan": "0"}}),
)


def entry_by_name(name: str) -> CorpusEntry:
    for entry in ENTRIES:
        if entry.name == name:
            return entry
    raise UsageError(f"no corpus entry named {name!r}")


def run_entry(entry: CorpusEntry) -> dict:
    """Execute one corpus instance and return its report fragment."""
    from .dsl import parse_expr
    built = entry.field.build()
    value = parse_expr(entry.expr, built)
    if entry.kind == "as":
        outcome = normalize(value, entry.budget)
        report = _as_report(outcome, built)
    else:
        outcome = normalize_h(value, entry.budget)
        report = _kummer_report(outcome)
    return report


def _invariants_dict(inv) -> dict:
    return {"e": inv.e, "f_res": inv.f_res, "d": inv.d, "type": inv.type,
            "swan": None if inv.swan is None else str(inv.swan)}


def _as_report(outcome, base: SeriesField) -> dict:
    inv = invariants(outcome)
    report = {
        "outcome": outcome.kind.value,
        "steps": outcome.steps,
        "budget": outcome.budget,
        "trajectory": [str(v) for v in outcome.trajectory],
        "invariants": _invariants_dict(inv),
        "verdict": None,
        "f_star": None,
    }
    if outcome.classification is not None:
        report["verdict"] = outcome.classification.verdict.value
    if outcome.kind is OutcomeKind.BEST_FOUND:
        report["f_star"] = format_series(outcome.f_star)
        swan = classical_swan(outcome.f_star)
        report["swan_check"] = {"conductor": str(swan), "agree": True}
    return report


def _kummer_report(outcome) -> dict:
    inv = kummer_invariants(outcome)
    report = {
        "outcome": outcome.kind.value,
        "steps": outcome.steps,
        "budget": outcome.budget,
        "trajectory": list(outcome.trajectory),
        "invariants": _invariants_dict(inv),
        "verdict": None,
        "h_star": None,
    }
    if outcome.classification is not None:
        report["verdict"] = outcome.classification.verdict.value
    if outcome.kind is OutcomeKind.BEST_FOUND:
        report["h_star"] = format_cyclo(outcome.h_star)
    return report


def matches_expected(expected: dict, got: dict) -> bool:
    """Recursive subset comparison: every expected key must match."""
    for key, want in expected.items():
        if key not in got:
            return False
        have = got[key]
        if isinstance(want, dict):
            if not isinstance(have, dict) or not matches_expected(want, have):
                return False
        elif want != have:
            return False
    return True


def run_corpus() -> dict:
    """Run every entry; report name, pass flag, and both report fragments."""
    results = []
    for entry in ENTRIES:
        got = run_entry(entry)
        ok = matches_expected(entry.expected, got)
        results.append({"name": entry.name, "pass": ok,
                        "expected": entry.expected, "got": got,
                        "annotation": entry.annotation})
    return {
        "entries": results,
        "count": len(results),
        "failures": sum(1 for r in results if not r["pass"]),
        "aggregate_pass": all(r["pass"] for r in results),
    }
