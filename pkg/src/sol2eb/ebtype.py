"""Type checking for Event-B projects.

Names get their types from declarations and typing predicates: constants from
axioms, machine variables from invariants, event parameters from guards, each
scanned in declaration order (`x ∈ S` or `x ⊆ S` fixes the type of x). The
full pass then checks every axiom, invariant, guard and action.

Types: TInt, TBool, TCarrier(name), TSet(elem); finite functions are
TSet(TPair(key, value)).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ebast as eb


class EbTypeError(Exception):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


@dataclass(frozen=True)
class TInt:
    def __str__(self):
        return "ℤ"


@dataclass(frozen=True)
class TBool:
    def __str__(self):
        return "BOOL"


@dataclass(frozen=True)
class TCarrier:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class TPair:
    key: object
    value: object

    def __str__(self):
        return f"({self.key}×{self.value})"


@dataclass(frozen=True)
class TSet:
    elem: object  # None = unknown element type (empty set literal)

    def __str__(self):
        return f"ℙ({self.elem})" if self.elem is not None else "ℙ(?)"


def tmap(key, value) -> TSet:
    return TSet(TPair(key, value))


def compatible(a, b) -> bool:
    """Structural equality, with None as the unknown-element wildcard."""
    if a is None or b is None:
        return True
    if isinstance(a, TSet) and isinstance(b, TSet):
        return compatible(a.elem, b.elem)
    if isinstance(a, TPair) and isinstance(b, TPair):
        return compatible(a.key, b.key) and compatible(a.value, b.value)
    return a == b


def merge(a, b):
    """Most specific of two compatible types."""
    if a is None:
        return b
    if b is None:
        return a
    if isinstance(a, TSet) and isinstance(b, TSet):
        return TSet(merge(a.elem, b.elem))
    if isinstance(a, TPair) and isinstance(b, TPair):
        return TPair(merge(a.key, b.key), merge(a.value, b.value))
    return a


@dataclass
class TypedProject:
    """A typechecked project plus the name→type tables the tools need."""

    project: eb.EbProject
    carriers: list[str]
    const_types: dict[str, object]
    var_types: dict[str, dict[str, object]] = field(default_factory=dict)  # per machine
    param_types: dict[tuple[str, str], dict[str, object]] = field(default_factory=dict)

    def machine_env_types(self, machine: eb.EbMachine) -> dict[str, object]:
        out = dict(self.const_types)
        out.update(self.var_types[machine.name])
        return out

    def chain_invariants(self, machine: eb.EbMachine) -> list[eb.Labeled]:
        """Invariants of the whole refinement chain, abstract first."""
        out: list[eb.Labeled] = []
        for m in self.project.abstraction_chain(machine):
            out.extend(m.invariants)
        return out


class _Env:
    """Name → type with the carrier sets always visible."""

    def __init__(self, carriers: list[str]):
        self.carriers = set(carriers)
        self.scopes: list[dict[str, object]] = [{}]

    def push(self) -> dict[str, object]:
        scope: dict[str, object] = {}
        self.scopes.append(scope)
        return scope

    def pop(self):
        self.scopes.pop()

    def lookup(self, name: str):
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    def declared(self, name: str) -> bool:
        return name in self.carriers or self.lookup(name) is not None


def _elem_of_set(t, where: str):
    if isinstance(t, TSet):
        return t.elem
    raise EbTypeError(where, f"expected a set, got {t}")


class _Checker:
    def __init__(self, project: eb.EbProject):
        self.project = project
        self.env = _Env(project.context.sets)

    def fail(self, where: str, msg: str):
        raise EbTypeError(where, msg)

    # -- expressions ------------------------------------------------------

    def type_expr(self, e, where: str):
        match e:
            case eb.IntLit():
                return TInt()
            case eb.BoolLit():
                return TBool()
            case eb.Ref(name):
                if name in self.env.carriers:
                    return TSet(TCarrier(name))
                t = self.env.lookup(name)
                if t is None:
                    self.fail(where, f"undeclared name {name}")
                return t
            case eb.TypeAtom(name):
                return TSet(TBool()) if name == "BOOL" else TSet(TInt())
            case eb.Arith(op, l, r):
                for side in (l, r):
                    t = self.type_expr(side, where)
                    if not compatible(t, TInt()):
                        self.fail(where, f"arithmetic {op} over {t}, expected ℤ")
                return TInt()
            case eb.SetLit(elems):
                t = None
                for x in elems:
                    tx = self.type_expr(x, where)
                    if not compatible(t, tx):
                        self.fail(where, f"mixed set literal: {t} vs {tx}")
                    t = merge(t, tx)
                return TSet(t)
            case eb.Maplet(l, r):
                return TPair(self.type_expr(l, where), self.type_expr(r, where))
            case eb.Union(l, r) | eb.SetMinus(l, r) | eb.Override(l, r):
                tl = self.type_expr(l, where)
                tr = self.type_expr(r, where)
                if not (isinstance(tl, TSet) and isinstance(tr, TSet)):
                    self.fail(where, f"set operator over {tl} and {tr}")
                if not compatible(tl, tr):
                    self.fail(where, f"set operands disagree: {tl} vs {tr}")
                if isinstance(e, eb.Override) and not isinstance(
                    merge(tl, tr).elem, (TPair, type(None))
                ):
                    self.fail(where, f"override of non-function {merge(tl, tr)}")
                return merge(tl, tr)
            case eb.Apply(fn, arg):
                tf = self.type_expr(fn, where)
                ta = self.type_expr(arg, where)
                if not (isinstance(tf, TSet) and isinstance(tf.elem, TPair)):
                    self.fail(where, f"application of non-function {tf}")
                if not compatible(tf.elem.key, ta):
                    self.fail(where, f"argument {ta} vs domain {tf.elem.key}")
                return tf.elem.value
            case eb.Dom(fn):
                tf = self.type_expr(fn, where)
                if not (isinstance(tf, TSet) and isinstance(tf.elem, (TPair, type(None)))):
                    self.fail(where, f"dom of non-function {tf}")
                return TSet(tf.elem.key if isinstance(tf.elem, TPair) else None)
            case eb.TotalFn(dom_e, cod_e):
                td = self.type_expr(dom_e, where)
                tc = self.type_expr(cod_e, where)
                kd = _elem_of_set(td, where)
                kc = _elem_of_set(tc, where)
                return TSet(tmap(kd, kc))
            case eb.BoolOf(p):
                self.check_pred(p, where)
                return TBool()
            case eb.CondMap(t_, f_, c_):
                tt = self.type_expr(t_, where)
                tf = self.type_expr(f_, where)
                tc = self.type_expr(c_, where)
                if not compatible(tt, tf):
                    self.fail(where, f"conditional branches disagree: {tt} vs {tf}")
                if not compatible(tc, TBool()):
                    self.fail(where, f"conditional over {tc}, expected BOOL")
                return merge(tt, tf)
        raise TypeError(f"not an expression: {e!r}")

    # -- predicates -------------------------------------------------------

    def check_pred(self, p, where: str):
        match p:
            case eb.BTrue() | eb.BFalse():
                return
            case eb.Compare(op, l, r):
                tl = self.type_expr(l, where)
                tr = self.type_expr(r, where)
                if not compatible(tl, tr):
                    self.fail(where, f"comparison {op} between {tl} and {tr}")
                if op in ("≤", "≥", "<", ">") and not compatible(tl, TInt()):
                    self.fail(where, f"order comparison over {tl}, expected ℤ")
                return
            case eb.Member(item, container):
                ti = self.type_expr(item, where)
                tc = self.type_expr(container, where)
                te = _elem_of_set(tc, where)
                if not compatible(ti, te):
                    self.fail(where, f"member {ti} vs element type {te}")
                return
            case eb.Subset(item, container):
                ti = self.type_expr(item, where)
                tc = self.type_expr(container, where)
                if not isinstance(ti, TSet):
                    self.fail(where, f"subset of non-set {ti}")
                if not compatible(ti, tc):
                    self.fail(where, f"subset {ti} vs {tc}")
                return
            case eb.And(l, r) | eb.Or(l, r) | eb.Implies(l, r):
                self.check_pred(l, where)
                self.check_pred(r, where)
                return
            case eb.Not(body):
                self.check_pred(body, where)
                return
            case eb.ForAll(var, dom, body) | eb.Exists(var, dom, body):
                if self.env.declared(var):
                    self.fail(where, f"bound variable {var} shadows a declaration")
                td = self.type_expr(dom, where)
                scope = self.env.push()
                scope[var] = _elem_of_set(td, where)
                try:
                    self.check_pred(body, where)
                finally:
                    self.env.pop()
                return
        raise TypeError(f"not a predicate: {p!r}")

    # -- typing-predicate inference ---------------------------------------

    def _type_from_typing_pred(self, pred, name: str):
        """Type for `name` if pred is `name ∈ S` / `name ⊆ S`, else None."""
        container = None
        subset = False
        match pred:
            case eb.Member(eb.Ref(n), c) if n == name:
                container = c
            case eb.Subset(eb.Ref(n), c) if n == name:
                container = c
                subset = True
        if container is None:
            return None
        try:
            tc = self.type_expr(container, name)
        except EbTypeError:
            return None  # container mentions names not typed yet
        if not isinstance(tc, TSet):
            return None
        return tc if subset else tc.elem

    def _infer_names(self, names: list[str], labeled: list[eb.Labeled],
                     scope: dict[str, object], where: str, kind: str):
        pending = [n for n in names if n not in scope]
        # iterate: later typing predicates may depend on earlier inferences
        progress = True
        while pending and progress:
            progress = False
            for lp in labeled:
                for name in list(pending):
                    t = self._type_from_typing_pred(lp.pred, name)
                    if t is not None:
                        scope[name] = t
                        pending.remove(name)
                        progress = True
        if pending:
            self.fail(where, f"no typing predicate fixes the {kind} {pending[0]}")

    # -- components --------------------------------------------------------

    def check_labels_unique(self, labeled: list[eb.Labeled] | list[eb.Action], where: str):
        seen = set()
        for lp in labeled:
            if lp.label in seen:
                self.fail(where, f"duplicate label {lp.label}")
            seen.add(lp.label)

    def run(self) -> TypedProject:
        ctx = self.project.context
        self.check_labels_unique(ctx.axioms, ctx.name)
        consts = self.env.push()
        self._infer_names(ctx.constants, ctx.axioms, consts, ctx.name, "constant")
        for ax in ctx.axioms:
            self.check_pred(ax.pred, f"{ctx.name}/{ax.label}")

        typed = TypedProject(
            project=self.project,
            carriers=list(ctx.sets),
            const_types=dict(consts),
        )

        for machine in self.project.machines:
            self._check_machine(machine, typed)
        return typed

    def _check_machine(self, m: eb.EbMachine, typed: TypedProject):
        where = m.name
        if m.sees != self.project.context.name:
            self.fail(where, f"sees unknown context {m.sees}")
        inherited: dict[str, object] = {}
        if m.refines is not None:
            if m.refines not in typed.var_types:
                self.fail(where, f"refines unknown machine {m.refines}")
            inherited = typed.var_types[m.refines]
        self.check_labels_unique(m.invariants, where)

        vars_scope = self.env.push()
        vars_scope.update({v: t for v, t in inherited.items() if v in m.variables})
        self._infer_names(m.variables, m.invariants, vars_scope, where, "variable")
        for inv in m.invariants:
            self.check_pred(inv.pred, f"{where}/{inv.label}")
        typed.var_types[m.name] = dict(vars_scope)

        names = set()
        has_init = False
        for ev in m.events:
            if ev.name in names:
                self.fail(where, f"duplicate event {ev.name}")
            names.add(ev.name)
            if ev.name == eb.INITIALISATION:
                has_init = True
                if ev.params or ev.guards:
                    self.fail(where, "INITIALISATION takes no parameters or guards")
            self._check_event(m, ev, typed)
        if not has_init:
            self.fail(where, "machine has no INITIALISATION event")
        self.env.pop()

    def _check_event(self, m: eb.EbMachine, ev: eb.EbEvent, typed: TypedProject):
        where = f"{m.name}/{ev.name}"
        self.check_labels_unique(ev.guards, where)
        self.check_labels_unique(ev.actions, where)
        if len(set(ev.params)) != len(ev.params):
            self.fail(where, "duplicate event parameter")

        params_scope = self.env.push()
        try:
            self._infer_names(ev.params, ev.guards, params_scope, where, "parameter")
            for g in ev.guards:
                self.check_pred(g.pred, f"{where}/{g.label}")
            targets = set()
            for act in ev.actions:
                loc = f"{where}/{act.label}"
                if act.target in targets:
                    self.fail(loc, f"variable {act.target} assigned twice")
                targets.add(act.target)
                tv = typed.var_types[m.name].get(act.target)
                if tv is None:
                    self.fail(loc, f"assignment to non-variable {act.target}")
                te = self.type_expr(act.expr, loc)
                if not compatible(tv, te):
                    self.fail(loc, f"assigning {te} to {act.target} of type {tv}")
            typed.param_types[(m.name, ev.name)] = dict(params_scope)
        finally:
            self.env.pop()


def typecheck(project: eb.EbProject) -> TypedProject:
    """Check the whole project; raises EbTypeError on the first conflict."""
    return _Checker(project).run()
