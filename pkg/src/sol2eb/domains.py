"""Bounded enumeration of valuations.

`solve` walks a list of (name, type) pairs depth-first, binding candidate
values in a documented lexicographic order and pruning on the first false
(or ill-defined) hypothesis, so the first solution — and hence the first
counterexample upstream — is deterministic.

Candidate values for a name come from the first hypothesis that types it
(`x ∈ S` enumerates S, `x ⊆ S` the subsets of S, `x ∈ A → B` the total maps
from A into B's window) and otherwise fall back to the name's type: integer
window, both booleans, the carrier atoms, subsets, finite maps.

Orders: integers ascending, FALSE before TRUE, atoms by index, subsets in
bitmask order over the sorted base (so {this} precedes {this, ADDRESS1}),
maps in odometer order with the last key varying fastest.
"""

from __future__ import annotations

import itertools

from . import ebast as eb
from .ebeval import (
    Bounds, Pair, WdError, UnsupportedEval, atoms_for, eval_pred, extent,
    sorted_values,
)
from .ebtype import TBool, TCarrier, TInt, TPair, TSet


class BudgetExceeded(Exception):
    pass


class UnsupportedDomain(Exception):
    pass


class Budget:
    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self, n: int = 1):
        self.used += n
        if self.limit is not None and self.used > self.limit:
            raise BudgetExceeded(f"case budget of {self.limit} exceeded")


def subsets_in_order(elems: list):
    """All subsets of the (canonically sorted) base, bitmask order."""
    base = sorted_values(elems)
    for mask in range(1 << len(base)):
        yield frozenset(base[i] for i in range(len(base)) if mask >> i & 1)


def total_maps(keys: list, values: list):
    """All total maps keys→values; last key varies fastest."""
    base = sorted_values(keys)
    for combo in itertools.product(values, repeat=len(base)):
        yield frozenset(Pair(k, v) for k, v in zip(base, combo))


def type_domain(ty, bounds: Bounds) -> list:
    """Fallback enumeration for a name with no usable typing hypothesis."""
    match ty:
        case TInt():
            return list(bounds.window())
        case TBool():
            return [False, True]
        case TCarrier(name):
            return list(atoms_for(name, bounds.addr_count))
        case TSet(TPair(k, v)):
            key_dom = type_domain(k, bounds)
            val_dom = type_domain(v, bounds)
            out = []
            for keys in subsets_in_order(key_dom):
                out.extend(total_maps(list(keys), val_dom))
            return out
        case TSet(elem) if elem is not None:
            return list(subsets_in_order(type_domain(elem, bounds)))
    raise UnsupportedDomain(f"cannot enumerate values of type {ty}")


def _generator_candidates(name: str, hyp: eb.EbPred, bound: set[str]):
    """(kind, set-expr) when `hyp` can generate values for `name`."""
    match hyp:
        case eb.Member(eb.Ref(n), eb.TotalFn(dom_e, cod_e)) if n == name:
            if eb.free_names(dom_e) <= bound and eb.free_names(cod_e) <= bound:
                return ("totalfn", (dom_e, cod_e))
        case eb.Member(eb.Ref(n), container) if n == name:
            if eb.free_names(container) <= bound:
                return ("member", container)
        case eb.Subset(eb.Ref(n), container) if n == name:
            if eb.free_names(container) <= bound:
                return ("subset", container)
    return None


def solve(names: list[tuple[str, object]], hypotheses: list[eb.EbPred],
          base_env: dict, bounds: Bounds, budget: Budget | None = None):
    """Yield every valuation of `names` satisfying all hypotheses.

    The yielded dict is the live working environment (including base_env);
    copy it before the next iteration step if it must be kept.
    """
    budget = budget or Budget(None)
    order = [n for n, _ in names]
    types = dict(names)
    positions = {n: i for i, n in enumerate(order)}

    # choose, per name, the first hypothesis usable as its candidate source
    generators: dict[int, tuple[str, object]] = {}
    consumed: set[int] = set()
    for i, name in enumerate(order):
        bound = set(base_env) | set(order[:i])
        for h_idx, hyp in enumerate(hypotheses):
            if h_idx in consumed:
                continue
            gen = _generator_candidates(name, hyp, bound)
            if gen is not None:
                generators[i] = gen
                consumed.add(h_idx)
                break

    # schedule every remaining hypothesis at the first depth it is closed
    checks_at: dict[int, list[eb.EbPred]] = {i: [] for i in range(-1, len(order))}
    for h_idx, hyp in enumerate(hypotheses):
        if h_idx in consumed:
            continue
        free = eb.free_names(hyp) - set(base_env)
        unknown = free - set(order)
        if unknown:
            raise UnsupportedDomain(
                f"hypothesis mentions unbindable name {sorted(unknown)[0]}")
        depth = max((positions[n] for n in free), default=-1)
        checks_at[depth].append(hyp)

    env = dict(base_env)

    def holds(pred: eb.EbPred) -> bool:
        try:
            return eval_pred(pred, env, bounds)
        except WdError:
            return False  # ill-defined hypothesis: skip the valuation

    for pred in checks_at[-1]:
        if not holds(pred):
            return

    def candidates(i: int):
        gen = generators.get(i)
        if gen is None:
            return type_domain(types[order[i]], bounds)
        kind, payload = gen
        if kind == "member":
            return extent(payload, env, bounds)
        if kind == "subset":
            return subsets_in_order(extent(payload, env, bounds))
        dom_e, cod_e = payload
        keys = extent(dom_e, env, bounds)
        values = extent(cod_e, env, bounds)
        return total_maps(keys, values)

    def walk(i: int):
        if i == len(order):
            yield env
            return
        name = order[i]
        for value in candidates(i):
            budget.spend()
            env[name] = value
            if all(holds(pred) for pred in checks_at[i]):
                yield from walk(i + 1)
        env.pop(name, None)

    yield from walk(0)


def first_solution(names, hypotheses, base_env, bounds: Bounds,
                   budget: Budget | None = None) -> dict | None:
    for env in solve(names, hypotheses, base_env, bounds, budget):
        return dict(env)
    return None
