"""Event-B intermediate representation.

Contexts, machines, events, and the set-theoretic expression/predicate trees
they carry. Expression and predicate nodes are frozen (immutable, hashable);
the container types stay plain so builders can assemble them incrementally.

Conventions baked into the IR:
  - a single `Ref` node covers constants, variables, parameters and carrier
    sets; the typechecker resolves which is which from the declarations
  - `{TRUE |-> e1, FALSE |-> e2}(b)` is its own node (`CondMap`) rather than a
    generic function application, so well-definedness reduces to the argument
  - finite functions are finite sets of maplets; `Override`, `Apply`, `Dom`
    operate on them
"""

from __future__ import annotations

from dataclasses import dataclass, field


# ---------------------------------------------------------------------------
# expressions


class EbExpr:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class IntLit(EbExpr):
    value: int


@dataclass(frozen=True)
class BoolLit(EbExpr):
    value: bool


@dataclass(frozen=True)
class Ref(EbExpr):
    """Named reference: constant, variable, parameter, or carrier set."""

    name: str


@dataclass(frozen=True)
class TypeAtom(EbExpr):
    """One of the built-in type sets: INT, NAT, NAT1, BOOL."""

    name: str  # "INT" | "NAT" | "NAT1" | "BOOL"


@dataclass(frozen=True)
class Arith(EbExpr):
    op: str  # one of + - * ÷
    left: EbExpr
    right: EbExpr


@dataclass(frozen=True)
class SetLit(EbExpr):
    elements: tuple[EbExpr, ...]


@dataclass(frozen=True)
class Maplet(EbExpr):
    left: EbExpr
    right: EbExpr


@dataclass(frozen=True)
class Union(EbExpr):
    left: EbExpr
    right: EbExpr


@dataclass(frozen=True)
class SetMinus(EbExpr):
    left: EbExpr
    right: EbExpr


@dataclass(frozen=True)
class Override(EbExpr):
    """f <+ g : agrees with g on dom(g), with f elsewhere."""

    base: EbExpr
    over: EbExpr


@dataclass(frozen=True)
class Apply(EbExpr):
    """Function application f(x); partial, hence a well-definedness site."""

    fn: EbExpr
    arg: EbExpr


@dataclass(frozen=True)
class Dom(EbExpr):
    fn: EbExpr


@dataclass(frozen=True)
class TotalFn(EbExpr):
    """The set of total functions  domain → codomain."""

    domain: EbExpr
    codomain: EbExpr


@dataclass(frozen=True)
class BoolOf(EbExpr):
    """bool(P): the BOOL value of a predicate."""

    pred: "EbPred"


@dataclass(frozen=True)
class CondMap(EbExpr):
    """{TRUE ↦ on_true, FALSE ↦ on_false}(cond) with cond of type BOOL."""

    on_true: EbExpr
    on_false: EbExpr
    cond: EbExpr


# ---------------------------------------------------------------------------
# predicates


class EbPred:
    """Base class for predicate nodes."""


@dataclass(frozen=True)
class BTrue(EbPred):
    pass


@dataclass(frozen=True)
class BFalse(EbPred):
    pass


@dataclass(frozen=True)
class Compare(EbPred):
    op: str  # one of = ≠ ≤ ≥ < >
    left: EbExpr
    right: EbExpr


@dataclass(frozen=True)
class Member(EbPred):
    item: EbExpr
    container: EbExpr


@dataclass(frozen=True)
class Subset(EbPred):
    item: EbExpr
    container: EbExpr


@dataclass(frozen=True)
class And(EbPred):
    left: EbPred
    right: EbPred


@dataclass(frozen=True)
class Or(EbPred):
    left: EbPred
    right: EbPred


@dataclass(frozen=True)
class Implies(EbPred):
    left: EbPred
    right: EbPred


@dataclass(frozen=True)
class Not(EbPred):
    body: EbPred


@dataclass(frozen=True)
class ForAll(EbPred):
    """∀ var · var ∈ domain ⇒ body   (domain gives the bounded extent)."""

    var: str
    domain: EbExpr
    body: EbPred


@dataclass(frozen=True)
class Exists(EbPred):
    """∃ var · var ∈ domain ∧ body."""

    var: str
    domain: EbExpr
    body: EbPred


# ---------------------------------------------------------------------------
# components


@dataclass(frozen=True)
class Labeled:
    label: str
    pred: EbPred


@dataclass(frozen=True)
class Action:
    """Deterministic assignment  target ≔ expr."""

    label: str
    target: str
    expr: EbExpr


@dataclass
class EbEvent:
    name: str
    refines: str | None = None
    params: list[str] = field(default_factory=list)
    guards: list[Labeled] = field(default_factory=list)
    actions: list[Action] = field(default_factory=list)

    def targets(self) -> list[str]:
        return [a.target for a in self.actions]


INITIALISATION = "INITIALISATION"


@dataclass
class EbContext:
    name: str
    sets: list[str] = field(default_factory=list)
    constants: list[str] = field(default_factory=list)
    axioms: list[Labeled] = field(default_factory=list)


@dataclass
class EbMachine:
    name: str
    sees: str = ""
    refines: str | None = None
    variables: list[str] = field(default_factory=list)
    invariants: list[Labeled] = field(default_factory=list)
    events: list[EbEvent] = field(default_factory=list)

    def event(self, name: str) -> EbEvent:
        for ev in self.events:
            if ev.name == name:
                return ev
        raise KeyError(name)

    def initialisation(self) -> EbEvent:
        return self.event(INITIALISATION)


@dataclass
class EbProject:
    """One context plus one or more machines, ordered abstract-first."""

    name: str
    context: EbContext
    machines: list[EbMachine] = field(default_factory=list)

    def machine(self, name: str) -> EbMachine:
        for m in self.machines:
            if m.name == name:
                return m
        raise KeyError(name)

    def abstraction_chain(self, machine: EbMachine) -> list[EbMachine]:
        """Machines from the chain root down to `machine`, inclusive."""
        chain = [machine]
        while chain[0].refines is not None:
            chain.insert(0, self.machine(chain[0].refines))
        return chain


# ---------------------------------------------------------------------------
# tree utilities


def children(node) -> tuple:
    """Immediate sub-expressions / sub-predicates of a node."""
    match node:
        case IntLit() | BoolLit() | Ref() | TypeAtom() | BTrue() | BFalse():
            return ()
        case Arith(_, l, r) | Compare(_, l, r):
            return (l, r)
        case Maplet(l, r) | Union(l, r) | SetMinus(l, r) | Override(l, r):
            return (l, r)
        case And(l, r) | Or(l, r) | Implies(l, r):
            return (l, r)
        case Member(i, c) | Subset(i, c):
            return (i, c)
        case Apply(f, a):
            return (f, a)
        case TotalFn(d, c):
            return (d, c)
        case SetLit(elems):
            return elems
        case Dom(f):
            return (f,)
        case BoolOf(p) | Not(p):
            return (p,)
        case CondMap(t, f, c):
            return (t, f, c)
        case ForAll(_, d, b) | Exists(_, d, b):
            return (d, b)
    raise TypeError(f"not an IR node: {node!r}")


def free_names(node) -> set[str]:
    """Free `Ref` names of an expression or predicate."""
    match node:
        case Ref(name):
            return {name}
        case ForAll(var, dom, body) | Exists(var, dom, body):
            return free_names(dom) | (free_names(body) - {var})
        case _:
            out: set[str] = set()
            for child in children(node):
                out |= free_names(child)
            return out


def subst(node, mapping: dict[str, EbExpr]):
    """Replace free `Ref(name)` occurrences by `mapping[name]`.

    Quantifiers drop shadowed keys; capture is not checked (generated proof
    obligations never substitute capture-prone terms).
    """
    if not mapping:
        return node
    match node:
        case Ref(name):
            return mapping.get(name, node)
        case ForAll(var, dom, body):
            inner = {k: v for k, v in mapping.items() if k != var}
            return ForAll(var, subst(dom, mapping), subst(body, inner))
        case Exists(var, dom, body):
            inner = {k: v for k, v in mapping.items() if k != var}
            return Exists(var, subst(dom, mapping), subst(body, inner))
        case IntLit() | BoolLit() | TypeAtom() | BTrue() | BFalse():
            return node
        case Arith(op, l, r):
            return Arith(op, subst(l, mapping), subst(r, mapping))
        case Compare(op, l, r):
            return Compare(op, subst(l, mapping), subst(r, mapping))
        case Member(i, c):
            return Member(subst(i, mapping), subst(c, mapping))
        case Subset(i, c):
            return Subset(subst(i, mapping), subst(c, mapping))
        case SetLit(elems):
            return SetLit(tuple(subst(e, mapping) for e in elems))
        case Maplet(l, r):
            return Maplet(subst(l, mapping), subst(r, mapping))
        case Union(l, r):
            return Union(subst(l, mapping), subst(r, mapping))
        case SetMinus(l, r):
            return SetMinus(subst(l, mapping), subst(r, mapping))
        case Override(b, o):
            return Override(subst(b, mapping), subst(o, mapping))
        case Apply(f, a):
            return Apply(subst(f, mapping), subst(a, mapping))
        case Dom(f):
            return Dom(subst(f, mapping))
        case TotalFn(d, c):
            return TotalFn(subst(d, mapping), subst(c, mapping))
        case BoolOf(p):
            return BoolOf(subst(p, mapping))
        case CondMap(t, f, c):
            return CondMap(subst(t, mapping), subst(f, mapping), subst(c, mapping))
        case And(l, r):
            return And(subst(l, mapping), subst(r, mapping))
        case Or(l, r):
            return Or(subst(l, mapping), subst(r, mapping))
        case Implies(l, r):
            return Implies(subst(l, mapping), subst(r, mapping))
        case Not(p):
            return Not(subst(p, mapping))
    raise TypeError(f"not an IR node: {node!r}")


def conjoin(preds: list[EbPred]) -> EbPred:
    """Left-associated conjunction; BTrue for the empty list."""
    if not preds:
        return BTrue()
    out = preds[0]
    for p in preds[1:]:
        out = And(out, p)
    return out


# convenience constructors used all over the translator and tests

INT = TypeAtom("INT")
NAT = TypeAtom("NAT")
NAT1 = TypeAtom("NAT1")
BOOL = TypeAtom("BOOL")
TRUE = BoolLit(True)
FALSE = BoolLit(False)


def fn_lit(*pairs: tuple[EbExpr, EbExpr]) -> SetLit:
    """Finite-function literal {k1 ↦ v1, …}."""
    return SetLit(tuple(Maplet(k, v) for k, v in pairs))
