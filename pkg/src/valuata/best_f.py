"""Classification and normalization of Artin-Schreier generators.

A defining element f of the equation alpha**p - alpha = f is "best" when no
substitution f -> i*(f + h**p - h) can raise its valuation.  Best elements
come in exactly three shapes, each certifying the ramification behaviour of
the extension:

* best-i: v(f) < 0 and v(f) is not divisible by p inside the value group.
  Totally wild: the value group index e is p.
* best-ii: v(f) < 0, v(f) = -p*b for b in the group, and the unit
  u = f * X**(p*b) has a residue that is not a p-th power.  Ferocious: the
  residue field grows by an inseparable degree p.
* best-iii: v(f) = 0 and the residue of f is not of the form x**p - x.
  The residue field grows by a separable degree p (unramified case).

When none of the three certificates holds the element is improvable and the
classifier returns the explicit improvement witness h.  Iterating
improvements either reaches a best element, proves the equation splits, or
keeps strictly raising the valuation toward 0 forever; a budget turns the
last behaviour into reportable defect evidence.  Over a discretely valued
base the loop always terminates, so unbounded trajectories only occur in
p-divisible value groups, which is where defect lives.

The Swan conductor of a best element is -v(f), checked here against the
independent route through norms: v(N(1/alpha)) computed in the extension.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .as_extension import ASExtension
from .errors import InsufficientPrecisionError, MismatchError, NoImprovementError, UsageError
from .hahn_series import SeriesElt, artin_schreier_shift
from .value_group import INFINITY, GroupElt


class Verdict(enum.Enum):
    BEST_I = "best-i"
    BEST_II = "best-ii"
    BEST_III = "best-iii"
    NOT_BEST = "not-best"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class ASClassification:
    """Verdict plus the witness that makes it checkable.

    Exactly the fields relevant to the verdict are set: valuation for every
    non-trivial verdict, unit and unit_residue for best-ii, residue for
    best-iii, improvement_h for not-best, preimage or the positive valuation
    note for trivial.
    """

    verdict: Verdict
    valuation: GroupElt | None = None
    unit: SeriesElt | None = None
    unit_residue: object = None
    residue: object = None
    improvement_h: SeriesElt | None = None
    preimage: object = None
    note: str | None = None

    @property
    def is_best(self) -> bool:
        return self.verdict in (Verdict.BEST_I, Verdict.BEST_II, Verdict.BEST_III)


class OutcomeKind(enum.Enum):
    BEST_FOUND = "best-found"
    DEFECT_EVIDENCE = "defect-evidence"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class NormalizeOutcome:
    kind: OutcomeKind
    f_star: SeriesElt | None
    classification: ASClassification | None
    steps: int
    budget: int
    trajectory: tuple


@dataclass(frozen=True)
class InvariantsReport:
    """Ramification data of the degree-p extension: index e, residue degree
    f_res, defect d, with p = d * e * f_res."""

    e: int
    f_res: int
    d: int
    type: str
    swan: GroupElt | None

    def product(self) -> int:
        return self.e * self.f_res * self.d


def classify(f: SeriesElt) -> ASClassification:
    """Decide which certificate f carries, or produce an improvement.

    The decision tree follows the three best shapes.  A positive valuation
    or an exactly zero f is already trivial.  At valuation zero the residue
    decides: no Artin-Schreier preimage means best-iii, otherwise the lift
    of the preimage improves f (and iterating leads to trivial).  At
    negative valuation indivisibility of v(f) by p means best-i; otherwise
    f factors through the canonical monomial g = X**(-v(f)/p) as a unit u
    times g**(-p), and the residue of u decides between best-ii and the
    improvement h = -lift(root) * g**(-1), which kills the leading term.
    """
    field = f.field
    group = field.group
    k = field.residue
    if f.is_exact_zero():
        return ASClassification(Verdict.TRIVIAL, note="f is exactly zero")
    try:
        v = f.valuation()
    except InsufficientPrecisionError as exc:
        raise InsufficientPrecisionError(
            "cannot classify: f is zero to working precision") from exc
    zero = group.zero()
    if v > zero:
        return ASClassification(Verdict.TRIVIAL, valuation=v,
                                note="positive valuation")
    if v == zero:
        fbar = f.residue_class()
        x = k.artin_schreier_preimage(fbar)
        if x is None:
            return ASClassification(Verdict.BEST_III, valuation=v, residue=fbar)
        h = field.from_residue(-x)
        return ASClassification(Verdict.NOT_BEST, valuation=v, improvement_h=h,
                                preimage=x)
    half = group.is_p_divisible(v)
    if half is None:
        return ASClassification(Verdict.BEST_I, valuation=v)
    u = f.shift(-v)
    ubar = u.residue_class()
    root = k.pth_root(ubar)
    if root is None:
        return ASClassification(Verdict.BEST_II, valuation=v, unit=u,
                                unit_residue=ubar)
    h = field.monomial(-root, half)
    return ASClassification(Verdict.NOT_BEST, valuation=v, improvement_h=h)


def improve(f: SeriesElt, h: SeriesElt) -> SeriesElt:
    """Apply f -> f + h**p - h and insist the valuation strictly rises."""
    old = f.valuation()
    out = artin_schreier_shift(f, h)
    if out.is_exact_zero():
        return out
    try:
        new = out.valuation()
    except InsufficientPrecisionError:
        # nothing visible below the bound; the rise is certified if the
        # bound itself clears the old valuation
        if out.precision > old:
            return out
        raise
    if not new > old:
        raise NoImprovementError(f"improvement left the valuation at {new} (was {old})")
    return out


def normalize(f: SeriesElt, budget: int = 32) -> NormalizeOutcome:
    """Iterate classify/improve until best, trivial, or the budget is spent.

    The trajectory records the valuation of every iterate, so a spent budget
    returns the strictly increasing, bounded evidence sequence that signals
    defect instead of silently looping.
    """
    if budget < 0:
        raise UsageError("budget must be nonnegative")
    current = f
    trajectory = []
    steps = 0
    while True:
        verdict = classify(current)
        if verdict.verdict is Verdict.TRIVIAL:
            return NormalizeOutcome(OutcomeKind.TRIVIAL, None, verdict, steps,
                                    budget, tuple(trajectory))
        trajectory = trajectory or [current.valuation()]
        if verdict.is_best:
            return NormalizeOutcome(OutcomeKind.BEST_FOUND, current, verdict,
                                    steps, budget, tuple(trajectory))
        if steps == budget:
            return NormalizeOutcome(OutcomeKind.DEFECT_EVIDENCE, current,
                                    verdict, steps, budget, tuple(trajectory))
        current = improve(current, verdict.improvement_h)
        steps += 1
        if not current.is_exact_zero():
            try:
                trajectory.append(current.valuation())
            except InsufficientPrecisionError:
                pass


def invariants(outcome: NormalizeOutcome) -> InvariantsReport:
    """Ramification invariants certified by a finished normalization."""
    if outcome.kind is OutcomeKind.TRIVIAL:
        return InvariantsReport(1, 1, 1, "trivial", None)
    p = _prime_of(outcome)
    if outcome.kind is OutcomeKind.DEFECT_EVIDENCE:
        return InvariantsReport(1, 1, p, "defect", None)
    c = outcome.classification
    swan = -c.valuation
    if c.verdict is Verdict.BEST_I:
        return InvariantsReport(p, 1, 1, "wild", swan)
    if c.verdict is Verdict.BEST_II:
        return InvariantsReport(1, p, 1, "ferocious", swan)
    return InvariantsReport(1, p, 1, "unramified", swan)


def _prime_of(outcome: NormalizeOutcome) -> int:
    if outcome.f_star is not None:
        return outcome.f_star.field.p
    return 0 if outcome.classification is None else _guess_p(outcome)


def _guess_p(outcome: NormalizeOutcome) -> int:
    c = outcome.classification
    for attr in ("improvement_h", "unit"):
        elt = getattr(c, attr)
        if elt is not None:
            return elt.field.p
    raise UsageError("outcome does not determine the prime")


def classical_swan(f_star: SeriesElt, ext: ASExtension | None = None) -> GroupElt:
    """Swan conductor of a best element, computed two ways.

    The direct value is -v(f_star).  The cross-check builds the extension,
    inverts the generator there, and reads v(N(1/alpha)); the two must agree
    exactly, and a disagreement raises rather than returning either value.
    """
    direct = -f_star.valuation()
    ext = ext or ASExtension(f_star.field, f_star)
    ext.require_nontrivial()
    alpha = ext.alpha()
    via_norm = alpha.invert().norm().valuation()
    if via_norm != direct:
        raise MismatchError(
            f"swan via norms {via_norm} disagrees with -v(f) = {direct}")
    return direct


def bestness_probe(f_star: SeriesElt, probes) -> list:
    """Check sup-attainment on given probe elements h: for every h and every
    i = 1..p-1, the valuation of i*(f + h**p - h) must not exceed v(f).

    Returns the list of violations (empty on success) so callers can decide
    whether a nonempty answer is a test failure or a counterexample report.
    """
    v_star = f_star.valuation()
    p = f_star.field.p
    violations = []
    for h in probes:
        shifted = artin_schreier_shift(f_star, h)
        for i in range(1, p):
            cand = shifted.scale_int(i)
            v = INFINITY if cand.is_exact_zero() else cand.valuation()
            if v > v_star:
                violations.append((h, i, v))
    return violations
