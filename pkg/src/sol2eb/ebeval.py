"""Evaluation of Event-B expressions over finite valuations.

Values are plain Python objects:
  - mathematical integers -> int
  - BOOL                  -> bool
  - carrier-set elements  -> Atom
  - sets                  -> frozenset
  - maplets / map entries -> Pair
Finite functions are frozensets of Pair; applying one outside its domain (or
at an ambiguous key) raises WdError, the semantic basis of WD obligations.

Quantifiers and the built-in type sets enumerate over `Bounds`: carrier sets
get `addr_count` atoms, integer sorts the window [int_lo, int_hi].
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .ebast import (
    And, Apply, Arith, BFalse, BoolLit, BoolOf, BTrue, Compare, CondMap, Dom,
    EbEvent, Exists, ForAll, Implies, IntLit, Maplet, Member, Not, Or,
    Override, Ref, SetLit, SetMinus, Subset, TotalFn, TypeAtom, Union,
)


class EvalError(Exception):
    pass


class WdError(EvalError):
    """Well-definedness failure: application outside domain, division by zero."""

    def __init__(self, site: str):
        super().__init__(site)
        self.site = site


class MissingBinding(EvalError):
    def __init__(self, name: str):
        super().__init__(f"no binding for {name}")
        self.name = name


class UnsupportedEval(EvalError):
    """Construct outside the finitely-evaluable fragment (e.g. INT as a value)."""


class GuardFailed(Exception):
    def __init__(self, label: str):
        super().__init__(label)
        self.label = label


@dataclass(frozen=True)
class Bounds:
    """Finite-domain configuration for bounded evaluation."""

    addr_count: int = 3
    int_lo: int = 0
    int_hi: int = 4

    def __post_init__(self):
        if self.addr_count < 1:
            raise ValueError("addr_count must be >= 1")
        if self.int_lo > self.int_hi:
            raise ValueError("int_lo must be <= int_hi")

    def window(self, lo_floor: int | None = None) -> range:
        lo = self.int_lo if lo_floor is None else max(lo_floor, self.int_lo)
        return range(lo, self.int_hi + 1)


@dataclass(frozen=True, order=True)
class Atom:
    """Element of a carrier set; ADDRESS atoms display as this, ADDRESS1, ..."""

    carrier: str
    index: int

    @property
    def name(self) -> str:
        if self.carrier == "ADDRESS":
            return "this" if self.index == 0 else f"ADDRESS{self.index}"
        return f"{self.carrier}{self.index + 1}"

    def __repr__(self):
        return self.name


@dataclass(frozen=True)
class Pair:
    key: object
    value: object

    def __repr__(self):
        return f"{self.key!r}↦{self.value!r}"


# a Valuation is a plain dict: name -> value
Valuation = dict


@functools.lru_cache(maxsize=None)
def atoms_for(carrier: str, count: int) -> tuple[Atom, ...]:
    return tuple(Atom(carrier, i) for i in range(count))


def value_key(v):
    """Canonical total order over values, for deterministic output."""
    if isinstance(v, bool):
        return (0, v)
    if isinstance(v, int):
        return (1, v)
    if isinstance(v, Atom):
        return (2, v.carrier, v.index)
    if isinstance(v, Pair):
        return (3, value_key(v.key), value_key(v.value))
    if isinstance(v, frozenset):
        return (4, tuple(sorted(map(value_key, v))))
    raise TypeError(f"not a value: {v!r}")


def sorted_values(vs) -> list:
    return sorted(vs, key=value_key)


def map_entries(fs: frozenset) -> list[Pair]:
    """Entries of a finite function, key-sorted; raises if not all pairs."""
    entries = []
    for p in fs:
        if not isinstance(p, Pair):
            raise UnsupportedEval(f"not a set of maplets: {fs!r}")
        entries.append(p)
    return sorted(entries, key=lambda p: value_key(p.key))


def is_functional(fs: frozenset) -> bool:
    keys = [p.key for p in map_entries(fs)]
    return len(keys) == len(set(map(value_key, keys)))


# ---------------------------------------------------------------------------
# expression evaluation


def eval_expr(e, env: Valuation, bounds: Bounds):
    match e:
        case IntLit(v):
            return v
        case BoolLit(v):
            return v
        case Ref(name):
            try:
                return env[name]
            except KeyError:
                raise MissingBinding(name) from None
        case TypeAtom(name):
            if name == "BOOL":
                return frozenset([False, True])
            raise UnsupportedEval(f"{name} is not a finite value")
        case Arith(op, l, r):
            a = eval_expr(l, env, bounds)
            b = eval_expr(r, env, bounds)
            if op == "+":
                return a + b
            if op == "-":
                return a - b
            if op == "*":
                return a * b
            if op == "÷":
                if b == 0:
                    raise WdError("division by zero")
                # integer division floors toward negative infinity
                return a // b
            raise UnsupportedEval(f"operator {op}")
        case SetLit(elems):
            return frozenset(eval_expr(x, env, bounds) for x in elems)
        case Maplet(l, r):
            return Pair(eval_expr(l, env, bounds), eval_expr(r, env, bounds))
        case Union(l, r):
            return eval_expr(l, env, bounds) | eval_expr(r, env, bounds)
        case SetMinus(l, r):
            return eval_expr(l, env, bounds) - eval_expr(r, env, bounds)
        case Override(base, over):
            f = eval_expr(base, env, bounds)
            g = eval_expr(over, env, bounds)
            gkeys = {value_key(p.key) for p in map_entries(g)}
            kept = frozenset(p for p in map_entries(f) if value_key(p.key) not in gkeys)
            return kept | g
        case Apply(fn, arg):
            f = eval_expr(fn, env, bounds)
            x = eval_expr(arg, env, bounds)
            hits = [p.value for p in map_entries(f) if value_key(p.key) == value_key(x)]
            if not hits:
                raise WdError(f"applied outside domain at {x!r}")
            if len(hits) > 1:
                raise WdError(f"not functional at {x!r}")
            return hits[0]
        case Dom(fn):
            f = eval_expr(fn, env, bounds)
            return frozenset(p.key for p in map_entries(f))
        case BoolOf(p):
            return eval_pred(p, env, bounds)
        case CondMap(on_true, on_false, cond):
            # strict in both branches: the WD of either arm is a real obligation
            t = eval_expr(on_true, env, bounds)
            f = eval_expr(on_false, env, bounds)
            c = eval_expr(cond, env, bounds)
            return t if c else f
        case TotalFn():
            raise UnsupportedEval("function space is not a finite value")
    raise TypeError(f"not an expression: {e!r}")


def extent(set_expr, env: Valuation, bounds: Bounds) -> list:
    """Members of a set expression within bounds, canonically ordered.

    Built-in type sets enumerate their windows: INT over [int_lo, int_hi],
    NAT over [max(0,int_lo), int_hi], NAT1 over [max(1,int_lo), int_hi],
    BOOL over {FALSE, TRUE}.
    """
    match set_expr:
        case TypeAtom("INT"):
            return list(bounds.window())
        case TypeAtom("NAT"):
            return list(bounds.window(0))
        case TypeAtom("NAT1"):
            return list(bounds.window(1))
        case TypeAtom("BOOL"):
            return [False, True]
        case _:
            return sorted_values(eval_expr(set_expr, env, bounds))


def _member_value(v, container, env, bounds) -> bool:
    match container:
        case TypeAtom("INT"):
            return isinstance(v, int) and not isinstance(v, bool)
        case TypeAtom("NAT"):
            return isinstance(v, int) and not isinstance(v, bool) and v >= 0
        case TypeAtom("NAT1"):
            return isinstance(v, int) and not isinstance(v, bool) and v >= 1
        case TypeAtom("BOOL"):
            return isinstance(v, bool)
        case TotalFn(dom_e, cod_e):
            if not isinstance(v, frozenset):
                return False
            try:
                entries = map_entries(v)
            except UnsupportedEval:
                return False
            if not is_functional(v):
                return False
            if not all(_member_value(p.value, cod_e, env, bounds) for p in entries):
                return False
            match dom_e:
                case TypeAtom():
                    # a finite map is never total over an infinite sort
                    return False
                case _:
                    want = frozenset(eval_expr(dom_e, env, bounds))
                    return frozenset(p.key for p in entries) == want
        case _:
            return v in eval_expr(container, env, bounds)


def eval_pred(p, env: Valuation, bounds: Bounds) -> bool:
    match p:
        case BTrue():
            return True
        case BFalse():
            return False
        case Compare(op, l, r):
            a = eval_expr(l, env, bounds)
            b = eval_expr(r, env, bounds)
            if op == "=":
                return value_key(a) == value_key(b)
            if op == "≠":
                return value_key(a) != value_key(b)
            if op == "≤":
                return a <= b
            if op == "≥":
                return a >= b
            if op == "<":
                return a < b
            if op == ">":
                return a > b
            raise UnsupportedEval(f"comparison {op}")
        case Member(item, container):
            return _member_value(eval_expr(item, env, bounds), container, env, bounds)
        case Subset(item, container):
            vs = eval_expr(item, env, bounds)
            if not isinstance(vs, frozenset):
                return False
            return all(_member_value(v, container, env, bounds) for v in vs)
        case And(l, r):
            # left-to-right, non-strict: WD(P ∧ Q) = WD(P) ∧ (P ⇒ WD(Q))
            return eval_pred(l, env, bounds) and eval_pred(r, env, bounds)
        case Or(l, r):
            return eval_pred(l, env, bounds) or eval_pred(r, env, bounds)
        case Implies(l, r):
            return (not eval_pred(l, env, bounds)) or eval_pred(r, env, bounds)
        case Not(body):
            return not eval_pred(body, env, bounds)
        case ForAll(var, dom, body):
            return all(
                eval_pred(body, {**env, var: v}, bounds)
                for v in extent(dom, env, bounds)
            )
        case Exists(var, dom, body):
            return any(
                eval_pred(body, {**env, var: v}, bounds)
                for v in extent(dom, env, bounds)
            )
    raise TypeError(f"not a predicate: {p!r}")


# ---------------------------------------------------------------------------
# events


def apply_event(
    ev: EbEvent,
    state: Valuation,
    params: Valuation,
    bounds: Bounds,
    constants: Valuation | None = None,
) -> Valuation:
    """Fire an event: check guards, then assign all actions simultaneously.

    `state` must bind every machine variable (carrier sets included when the
    guards mention them); the first false guard raises GuardFailed, and WD
    failures in guards or actions propagate as WdError.
    """
    env = dict(constants or {})
    env.update(state)
    env.update(params)
    for g in ev.guards:
        if not eval_pred(g.pred, env, bounds):
            raise GuardFailed(g.label)
    # all action expressions read the pre-state
    updates = {a.target: eval_expr(a.expr, env, bounds) for a in ev.actions}
    post = dict(state)
    post.update(updates)
    return post


# ---------------------------------------------------------------------------
# JSON value encoding (shared by the checker report and the HTTP API)


def value_to_json(v):
    """ints, bools, atom names; sorted arrays for sets, [k, v] pairs for maps."""
    if isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Atom):
        return v.name
    if isinstance(v, Pair):
        return [value_to_json(v.key), value_to_json(v.value)]
    if isinstance(v, frozenset):
        items = sorted_values(v)
        return [value_to_json(x) for x in items]
    raise TypeError(f"not a value: {v!r}")


def valuation_to_json(env: Valuation) -> dict:
    return {name: value_to_json(env[name]) for name in sorted(env)}
