"""Machine animation: sessions, event offers, firing, undo and traces.

A session fixes an axiom-satisfying constant binding (the lexicographically
least one within bounds unless overridden), runs INITIALISATION, and then
steps through events the way ProB animates a machine: enabled events are
offered with concrete parameter valuations, firing re-evaluates every
invariant, and the step history supports undo/reset/export.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ebast as eb
from .domains import Budget, first_solution, solve
from .ebeval import (
    Atom, Bounds, GuardFailed, Pair, WdError, apply_event, atoms_for,
    eval_expr, eval_pred, value_to_json,
)
from .ebtype import TBool, TCarrier, TInt, TPair, TSet, TypedProject

DEFAULT_OFFER_CAP = 50


class SimError(Exception):
    pass


class NoConstantModel(SimError):
    pass


class InitInvariantViolation(SimError):
    pass


class NothingToUndo(SimError):
    pass


class UnknownEvent(SimError):
    pass


def decode_value(data, ty, bounds: Bounds):
    """JSON (or CLI string) back to a value, directed by the expected type."""
    if isinstance(data, str) and not isinstance(ty, TCarrier):
        text = data.strip()
        if isinstance(ty, TBool):
            if text.upper() in ("TRUE", "FALSE"):
                return text.upper() == "TRUE"
            raise SimError(f"not a boolean: {data!r}")
        if isinstance(ty, TInt):
            try:
                return int(text)
            except ValueError:
                raise SimError(f"not an integer: {data!r}") from None
    match ty:
        case TInt():
            if isinstance(data, bool) or not isinstance(data, int):
                raise SimError(f"not an integer: {data!r}")
            return data
        case TBool():
            if not isinstance(data, bool):
                raise SimError(f"not a boolean: {data!r}")
            return data
        case TCarrier(name):
            for atom in atoms_for(name, bounds.addr_count):
                if atom.name == str(data):
                    return atom
            raise SimError(f"unknown {name} element {data!r} within bounds")
        case TSet(TPair(k, v)):
            if not isinstance(data, list):
                raise SimError(f"not a map: {data!r}")
            return frozenset(
                Pair(decode_value(entry[0], k, bounds), decode_value(entry[1], v, bounds))
                for entry in data
            )
        case TSet(elem):
            if not isinstance(data, list):
                raise SimError(f"not a set: {data!r}")
            return frozenset(decode_value(x, elem, bounds) for x in data)
    raise SimError(f"cannot decode value of type {ty}")


@dataclass
class EventOffer:
    event: str
    valuations: list[dict]
    overflow: bool = False

    def to_json(self) -> dict:
        return {
            "event": self.event,
            "params": [
                {name: value_to_json(v) for name, v in val.items()}
                for val in self.valuations
            ],
            "overflow": self.overflow,
        }


@dataclass
class StepResult:
    event: str | None
    params: dict
    state: dict
    previous: dict | None
    invariants: list[tuple[str, bool]]
    step: int

    def to_json(self) -> dict:
        return {
            "event": self.event,
            "params": {n: value_to_json(v) for n, v in self.params.items()},
            "variables": {n: value_to_json(v) for n, v in sorted(self.state.items())},
            "previous": (
                None if self.previous is None
                else {n: value_to_json(v) for n, v in sorted(self.previous.items())}
            ),
            "invariants": [{"label": l, "holds": h} for l, h in self.invariants],
            "step": self.step,
        }


@dataclass
class _Step:
    event: str
    params: dict
    state: dict


def enumerate_offers(typed: TypedProject, machine: eb.EbMachine, env: dict,
                     bounds: Bounds, cap: int | None) -> list[EventOffer]:
    """Guard-satisfying parameter valuations per event, capped per event.

    `env` must bind carriers, constants and the current machine variables.
    """
    offers = []
    for ev in machine.events:
        if ev.name == eb.INITIALISATION:
            continue
        ptypes = typed.param_types[(machine.name, ev.name)]
        names = [(p, ptypes[p]) for p in ev.params]
        valuations: list[dict] = []
        overflow = False
        for sol_env in solve(names, [g.pred for g in ev.guards], env, bounds):
            if cap is not None and len(valuations) >= cap:
                overflow = True
                break
            valuations.append({p: sol_env[p] for p in ev.params})
        if valuations:
            offers.append(EventOffer(ev.name, valuations, overflow))
    return offers


class SimSession:
    """Single-machine animation session; one writer at a time."""

    def __init__(self, typed: TypedProject, machine: str | None = None,
                 constants: dict | None = None, bounds: Bounds = Bounds(),
                 offer_cap: int = DEFAULT_OFFER_CAP):
        self.typed = typed
        self.bounds = bounds
        self.offer_cap = offer_cap
        project = typed.project
        self.machine = project.machine(machine) if machine else project.machines[0]
        self.invariants = typed.chain_invariants(self.machine)
        self.base_env = {
            c: frozenset(atoms_for(c, bounds.addr_count)) for c in typed.carriers
        }
        self.constants = self._bind_constants(constants or {})
        init_state = self._run_initialisation()
        self._states: list[dict] = [init_state]
        self._trace: list[_Step] = []
        status = self.invariant_status()
        if not all(h for _, h in status):
            bad = ", ".join(l for l, h in status if not h)
            raise InitInvariantViolation(
                f"INITIALISATION violates invariant(s) {bad}")

    # -- setup ------------------------------------------------------------

    def _bind_constants(self, overrides: dict) -> dict:
        ctx = self.typed.project.context
        unknown = set(overrides) - set(ctx.constants)
        if unknown:
            raise SimError(f"not a constant: {sorted(unknown)[0]}")
        names = [(c, self.typed.const_types[c]) for c in ctx.constants
                 if c not in overrides]
        env = dict(self.base_env)
        env.update(overrides)
        found = first_solution(names, [a.pred for a in ctx.axioms], env, self.bounds)
        if found is None:
            raise NoConstantModel(
                "no constant binding satisfies the axioms within bounds")
        return {c: found[c] for c in ctx.constants}

    def _run_initialisation(self) -> dict:
        init = self.machine.initialisation()
        env = {**self.base_env, **self.constants}
        state: dict = {}
        try:
            for action in init.actions:
                state[action.target] = eval_expr(action.expr, env, self.bounds)
        except WdError as exc:
            raise InitInvariantViolation(f"INITIALISATION is ill-defined: {exc.site}")
        missing = [v for v in self.machine.variables if v not in state]
        if missing:
            raise InitInvariantViolation(
                f"INITIALISATION leaves {missing[0]} unassigned")
        return state

    # -- observers ------------------------------------------------------

    @property
    def state(self) -> dict:
        return self._states[-1]

    @property
    def prev_state(self) -> dict | None:
        return self._states[-2] if len(self._states) > 1 else None

    @property
    def step(self) -> int:
        return len(self._trace)

    @property
    def trace(self) -> list[_Step]:
        return list(self._trace)

    def _env(self) -> dict:
        return {**self.base_env, **self.constants, **self.state}

    def invariant_status(self) -> list[tuple[str, bool]]:
        env = self._env()
        out = []
        for inv in self.invariants:
            try:
                holds = eval_pred(inv.pred, env, self.bounds)
            except WdError:
                holds = False
            out.append((inv.label, holds))
        return out

    def step_result(self, event: str | None = None, params: dict | None = None) -> StepResult:
        return StepResult(
            event=event, params=params or {}, state=dict(self.state),
            previous=None if self.prev_state is None else dict(self.prev_state),
            invariants=self.invariant_status(), step=self.step,
        )

    def enabled_events(self, cap: int | None = None) -> list[EventOffer]:
        """Events with at least one guard-satisfying parameter valuation."""
        cap = self.offer_cap if cap is None else cap
        return enumerate_offers(self.typed, self.machine, self._env(), self.bounds, cap)

    # -- mutations ------------------------------------------------------

    def fire(self, event: str, params: dict) -> StepResult:
        try:
            ev = self.machine.event(event)
        except KeyError:
            raise UnknownEvent(f"no event named {event}") from None
        if ev.name == eb.INITIALISATION:
            raise UnknownEvent("INITIALISATION cannot be fired; use reset")
        missing = [p for p in ev.params if p not in params]
        if missing:
            raise SimError(f"missing parameter {missing[0]}")
        post = apply_event(ev, self.state, params, self.bounds, constants={
            **self.base_env, **self.constants})
        post = {v: post[v] for v in self.machine.variables}
        self._states.append(post)
        self._trace.append(_Step(event=event, params=dict(params), state=dict(post)))
        return self.step_result(event, params)

    def undo(self) -> StepResult:
        if not self._trace:
            raise NothingToUndo("nothing to undo")
        self._trace.pop()
        self._states.pop()
        return self.step_result()

    def reset(self) -> StepResult:
        self._states = self._states[:1]
        self._trace = []
        return self.step_result()

    def export_trace(self) -> dict:
        return {
            "machine": self.machine.name,
            "bounds": {
                "addr": self.bounds.addr_count,
                "int_lo": self.bounds.int_lo,
                "int_hi": self.bounds.int_hi,
            },
            "constants": {n: value_to_json(v) for n, v in sorted(self.constants.items())},
            "steps": [
                {
                    "event": st.event,
                    "params": {n: value_to_json(v) for n, v in st.params.items()},
                    "state": {n: value_to_json(v) for n, v in sorted(st.state.items())},
                }
                for st in self._trace
            ],
        }
