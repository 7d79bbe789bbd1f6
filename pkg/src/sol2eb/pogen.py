"""Proof-obligation generation.

Machine POs:
  - INV: one per (event, invariant) pair where the event assigns a variable
    free in the invariant; the goal is the invariant with assigned variables
    replaced by their action expressions (pre-state everywhere else)
  - WD: one per guard or action whose expression contains a partial
    operation (function application, division, conditional map); a guard's
    WD may assume the guards before it, an action's WD all of them

Refinement POs (identity gluing, same variable names):
  - GRD: each abstract guard under axioms, invariants and concrete guards
  - SIM: each abstract action must equal the concrete action on the same
    variable (the variable itself when the concrete event leaves it alone)

Obligations whose goal is syntactically a stated hypothesis, a reflexive
equation, or a membership in a maximal type (ℤ, BOOL, a carrier set) are
marked auto-discharged and hidden from the default report; the remaining
inventory on the translated honeypot machine is the expected eleven.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ebast as eb
from .ebtype import TypedProject

KIND_INV = "INV"
KIND_WD = "WD"
KIND_GRD = "GRD"
KIND_SIM = "SIM"


class RefinementShapeError(Exception):
    pass


@dataclass
class ProofObligation:
    """Named sequent: hypotheses ⊢ goal over the listed free names."""

    name: str  # <Event>/<label>/<KIND>
    kind: str
    machine: str
    event: str
    label: str
    hypotheses: list[eb.Labeled]
    goal: eb.EbPred
    free_names: list[tuple[str, object, str]]  # (name, type, constant|variable|parameter)
    trivial: bool = False

    def source_keys(self) -> list[str]:
        return [f"{self.event}/{self.label}", self.label, self.event]


# ---------------------------------------------------------------------------
# well-definedness conditions


def wd_sites(node) -> list[eb.EbPred]:
    """Definedness conditions of every partial operation, left to right."""
    out: list[eb.EbPred] = []
    match node:
        case eb.Apply(fn, arg):
            out += wd_sites(fn) + wd_sites(arg)
            out.append(eb.Member(arg, eb.Dom(fn)))
        case eb.Arith("÷", l, r):
            out += wd_sites(l) + wd_sites(r)
            out.append(eb.Compare("≠", r, eb.IntLit(0)))
        case eb.CondMap(t, f, c):
            out += wd_sites(t) + wd_sites(f) + wd_sites(c)
            out.append(eb.Member(c, eb.SetLit((eb.TRUE, eb.FALSE))))
        case eb.IntLit() | eb.BoolLit() | eb.Ref() | eb.TypeAtom() | eb.BTrue() | eb.BFalse():
            pass
        case _:
            for child in eb.children(node):
                out += wd_sites(child)
    return out


# ---------------------------------------------------------------------------
# triviality filter


_MAXIMAL_TYPES = ("INT", "BOOL")


def _is_maximal_type(expr, carriers: set[str]) -> bool:
    match expr:
        case eb.TypeAtom(name):
            return name in _MAXIMAL_TYPES
        case eb.Ref(name):
            return name in carriers
        case _:
            return False


def is_trivial(goal: eb.EbPred, hypotheses: list[eb.Labeled], carriers: set[str]) -> bool:
    for h in hypotheses:
        if h.pred == goal:
            return True
    match goal:
        case eb.Compare("=", l, r) if l == r:
            return True
        case eb.Member(_, container) | eb.Subset(_, container):
            # type-correct by construction, so membership in a full type holds
            return _is_maximal_type(container, carriers)
        case eb.And(l, r):
            return is_trivial(l, hypotheses, carriers) and is_trivial(r, hypotheses, carriers)
    return False


# ---------------------------------------------------------------------------
# machine POs


def _free_name_table(typed: TypedProject, machine: eb.EbMachine,
                     event: eb.EbEvent, include_vars: bool) -> list[tuple[str, object, str]]:
    ctx = typed.project.context
    out: list[tuple[str, object, str]] = [
        (c, typed.const_types[c], "constant") for c in ctx.constants
    ]
    if include_vars:
        var_types = typed.var_types[machine.name]
        out += [(v, var_types[v], "variable") for v in machine.variables]
    ptypes = typed.param_types[(machine.name, event.name)]
    out += [(p, ptypes[p], "parameter") for p in event.params]
    return out


def gen_machine_pos(typed: TypedProject, machine: eb.EbMachine) -> list[ProofObligation]:
    """INV and WD obligations of one machine (new invariants only when refining)."""
    ctx = typed.project.context
    carriers = set(ctx.sets)
    axioms = list(ctx.axioms)
    chain_invs = typed.chain_invariants(machine)
    own_invs = machine.invariants
    pos: list[ProofObligation] = []

    for ev in machine.events:
        is_init = ev.name == eb.INITIALISATION
        state_hyps = axioms + ([] if is_init else chain_invs)
        names = _free_name_table(typed, machine, ev, include_vars=not is_init)

        def make(kind: str, label: str, hyps: list[eb.Labeled], goal: eb.EbPred):
            pos.append(ProofObligation(
                name=f"{ev.name}/{label}/{kind}", kind=kind, machine=machine.name,
                event=ev.name, label=label, hypotheses=hyps, goal=goal,
                free_names=names, trivial=is_trivial(goal, hyps, carriers),
            ))

        for i, g in enumerate(ev.guards):
            sites = wd_sites(g.pred)
            if sites:
                make(KIND_WD, g.label, state_hyps + list(ev.guards[:i]), eb.conjoin(sites))

        assigned = {a.target: a.expr for a in ev.actions}
        hyps_full = state_hyps + list(ev.guards)
        for inv in own_invs:
            if set(assigned) & eb.free_names(inv.pred):
                make(KIND_INV, inv.label, hyps_full, eb.subst(inv.pred, assigned))

        for a in ev.actions:
            sites = wd_sites(a.expr)
            if sites:
                make(KIND_WD, a.label, hyps_full, eb.conjoin(sites))

    return pos


# ---------------------------------------------------------------------------
# refinement POs


def gen_refinement_pos(typed: TypedProject, abstract: eb.EbMachine,
                       concrete: eb.EbMachine) -> list[ProofObligation]:
    """GRD and SIM obligations for one refines edge (identity gluing)."""
    if concrete.refines != abstract.name:
        raise RefinementShapeError(
            f"{concrete.name} does not refine {abstract.name}")
    if set(concrete.variables) != set(abstract.variables):
        raise RefinementShapeError(
            f"{concrete.name} must keep the variable set of {abstract.name} "
            "(identity gluing)")

    ctx = typed.project.context
    carriers = set(ctx.sets)
    axioms = list(ctx.axioms)
    chain_invs = typed.chain_invariants(concrete)
    pos: list[ProofObligation] = []

    for ev in concrete.events:
        is_init = ev.name == eb.INITIALISATION
        if is_init:
            abs_name = eb.INITIALISATION
        elif ev.refines is not None:
            abs_name = ev.refines
        else:
            continue  # new concrete event: no refinement obligations in scope
        try:
            abs_ev = abstract.event(abs_name)
        except KeyError:
            raise RefinementShapeError(
                f"{concrete.name}/{ev.name} refines missing event {abs_name}") from None
        missing = [p for p in abs_ev.params if p not in ev.params]
        if missing:
            raise RefinementShapeError(
                f"{concrete.name}/{ev.name} drops abstract parameter {missing[0]}")

        hyps = axioms + ([] if is_init else chain_invs) + list(ev.guards)
        names = _free_name_table(typed, concrete, ev, include_vars=not is_init)

        def make(kind: str, label: str, goal: eb.EbPred):
            pos.append(ProofObligation(
                name=f"{ev.name}/{label}/{kind}", kind=kind, machine=concrete.name,
                event=ev.name, label=label, hypotheses=hyps, goal=goal,
                free_names=names, trivial=is_trivial(goal, hyps, carriers),
            ))

        for g in abs_ev.guards:
            make(KIND_GRD, g.label, g.pred)

        con_actions = {a.target: a.expr for a in ev.actions}
        for a in abs_ev.actions:
            if a.target in con_actions:
                e_con = con_actions[a.target]
            elif is_init:
                raise RefinementShapeError(
                    f"{concrete.name}/INITIALISATION must assign {a.target}")
            else:
                e_con = eb.Ref(a.target)
            make(KIND_SIM, a.label, eb.Compare("=", e_con, a.expr))

    return pos


def gen_project_pos(typed: TypedProject) -> list[ProofObligation]:
    """All obligations of a project: per machine, then per refines edge."""
    pos: list[ProofObligation] = []
    for machine in typed.project.machines:
        pos += gen_machine_pos(typed, machine)
        if machine.refines is not None:
            abstract = typed.project.machine(machine.refines)
            pos += gen_refinement_pos(typed, abstract, machine)
    return pos
