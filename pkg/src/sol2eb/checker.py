"""Bounded exhaustive discharge of proof obligations.

A proof obligation is checked by enumerating every valuation of its free
names within the given bounds, skipping valuations where a hypothesis is
false or ill-defined, and testing the goal on the rest. Exhausting the space
yields DischargedWithinBounds — validity within bounds, deliberately never
reported as "proved". The first failing valuation yields Violated, and the
counterexample is replayed (all hypotheses true, goal false) before the
verdict is emitted.

To keep the search tractable the checker first splits the hypothesis graph
into connected components: names sharing no hypothesis chain with the goal
are solved once for a least satisfying assignment and merged back into any
counterexample. Dropping them is sound — their hypotheses constrain nothing
the goal mentions — and exact: if they admit no assignment at all, every
hypothesis set is unsatisfiable and the obligation holds vacuously.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import ebast as eb
from .domains import Budget, BudgetExceeded, UnsupportedDomain, first_solution, solve
from .ebeval import Bounds, WdError, UnsupportedEval, atoms_for, eval_pred, value_to_json
from .ebtype import TypedProject
from .pogen import KIND_WD, ProofObligation, gen_project_pos
from .translate import TranslationReport

DISCHARGED = "discharged"
VIOLATED = "violated"
UNSUPPORTED = "unsupported"

DEFAULT_BUDGET = 10**8


@dataclass
class Verdict:
    po: ProofObligation
    status: str
    counterexample: dict | None = None
    cases: int = 0
    elapsed: float = 0.0
    detail: str | None = None


class ReplayMismatch(AssertionError):
    """A counterexample failed replay; the enumerator and evaluator disagree."""


def base_environment(typed: TypedProject, bounds: Bounds) -> dict:
    return {
        carrier: frozenset(atoms_for(carrier, bounds.addr_count))
        for carrier in typed.carriers
    }


def _goal_fails(goal: eb.EbPred, env: dict, bounds: Bounds) -> str | None:
    """None if the goal holds, else a short failure description."""
    try:
        return None if eval_pred(goal, env, bounds) else "goal is false"
    except WdError as exc:
        return f"goal is ill-defined ({exc.site})"


def _replay(po: ProofObligation, env: dict, bounds: Bounds):
    for h in po.hypotheses:
        try:
            ok = eval_pred(h.pred, env, bounds)
        except WdError:
            raise ReplayMismatch(f"{po.name}: hypothesis {h.label} ill-defined on replay")
        if not ok:
            raise ReplayMismatch(f"{po.name}: hypothesis {h.label} false on replay")
    if _goal_fails(po.goal, env, bounds) is None:
        raise ReplayMismatch(f"{po.name}: goal holds on replay")


def check_po(po: ProofObligation, typed: TypedProject, bounds: Bounds,
             budget: int | None = DEFAULT_BUDGET) -> Verdict:
    """Check one obligation over all valuations of its free names."""
    started = time.perf_counter()
    base_env = base_environment(typed, bounds)

    def done(status, **kw) -> Verdict:
        return Verdict(po=po, status=status,
                       elapsed=time.perf_counter() - started, **kw)

    # connected components of the name/hypothesis graph, seeded by the goal
    hyp_names = [eb.free_names(h.pred) - set(base_env) for h in po.hypotheses]
    relevant = set(eb.free_names(po.goal)) - set(base_env)
    changed = True
    while changed:
        changed = False
        for names in hyp_names:
            if names & relevant and not names <= relevant:
                relevant |= names
                changed = True

    names_main = [(n, t) for n, t, _ in po.free_names if n in relevant]
    names_rest = [(n, t) for n, t, _ in po.free_names if n not in relevant]
    hyps_main = [h.pred for h, ns in zip(po.hypotheses, hyp_names) if ns & relevant or not ns]
    hyps_rest = [h.pred for h, ns in zip(po.hypotheses, hyp_names) if ns and not ns & relevant]

    shared_budget = Budget(budget)
    cases = 0
    try:
        extension: dict = {}
        if names_rest or hyps_rest:
            found = first_solution(names_rest, hyps_rest, base_env, bounds, shared_budget)
            if found is None:
                return done(DISCHARGED, cases=cases,
                            detail="vacuous: side hypotheses unsatisfiable within bounds")
            extension = {n: found[n] for n, _ in names_rest}

        for env in solve(names_main, hyps_main, base_env, bounds, shared_budget):
            cases += 1
            failure = _goal_fails(po.goal, env, bounds)
            if failure is not None:
                full = dict(env)
                full.update(extension)
                witness = {n: full[n] for n, _, _ in po.free_names}
                _replay(po, {**base_env, **witness}, bounds)
                return done(VIOLATED, counterexample=witness, cases=cases, detail=failure)
        return done(DISCHARGED, cases=cases)
    except BudgetExceeded as exc:
        return done(UNSUPPORTED, cases=cases, detail=f"BudgetExceeded: {exc}")
    except (UnsupportedDomain, UnsupportedEval) as exc:
        return done(UNSUPPORTED, cases=cases, detail=str(exc))


@dataclass
class CheckReport:
    project: str
    bounds: Bounds
    verdicts: list[Verdict] = field(default_factory=list)
    translation: TranslationReport | None = None

    @property
    def violated(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == VIOLATED]

    @property
    def unsupported(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == UNSUPPORTED]

    def ok(self) -> bool:
        return not self.violated and not self.unsupported

    def source_span(self, po: ProofObligation) -> dict | None:
        if self.translation is None:
            return None
        for key in po.source_keys():
            span = self.translation.label_table.get(key)
            if span is not None:
                return {
                    "file": self.translation.source_file,
                    "line": span.line,
                    "col": span.col,
                }
        return None

    def to_json(self) -> dict:
        return {
            "project": self.project,
            "bounds": {
                "addr": self.bounds.addr_count,
                "int_lo": self.bounds.int_lo,
                "int_hi": self.bounds.int_hi,
            },
            "pos": [
                {
                    "name": v.po.name,
                    "machine": v.po.machine,
                    "kind": v.po.kind,
                    "status": v.status,
                    "cases": v.cases,
                    "counterexample": (
                        None if v.counterexample is None
                        else {n: value_to_json(x) for n, x in v.counterexample.items()}
                    ),
                    "source_span": self.source_span(v.po),
                }
                for v in self.verdicts
            ],
        }


def check_all(typed: TypedProject, bounds: Bounds, include_trivial: bool = False,
              budget: int | None = DEFAULT_BUDGET,
              translation: TranslationReport | None = None) -> CheckReport:
    """Generate and check every obligation of the project."""
    report = CheckReport(project=typed.project.name, bounds=bounds,
                         translation=translation)
    for po in gen_project_pos(typed):
        if po.trivial:
            if include_trivial:
                report.verdicts.append(Verdict(
                    po=po, status=DISCHARGED, detail="trivially discharged"))
            continue
        report.verdicts.append(check_po(po, typed, bounds, budget))
    return report
