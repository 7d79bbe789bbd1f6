"""Lowering of checked contracts to Event-B projects.

A contract becomes a context `<name>_c` plus an abstract machine `<name>_m1`:

  - types map onto set expressions (integers and bytes to ℤ, bool to BOOL,
    address to the carrier set ADDRESS, mappings to total-function sets)
  - every state variable becomes a machine variable with a typing invariant
    and an INITIALISATION action (declared literal, a synthesized context
    constant for password-like secrets, else the type default)
  - every machine carries the caller scaffold: `address_tem` (addresses seen
    so far), `balanceof : address_tem → ℕ`, the `NewAccount` event, and the
    `initial_balance` constant
  - functions become events; `require` lowers to guards, `if` to the
    conditional-map pattern, `payable` adds msg_sender/msg_value parameters,
    deposit guards, and the balance-override action emitted last
  - `N ether` literals denote N times the minimum transfer, so they lower to
    the `TRANSFER_VALUE` constant (times N when N > 1)
  - sha3 is the identity abstraction: events receive already-hashed values
    and compare integers, which keeps bounded enumeration possible

Refinement machines are not produced here; they are written by hand in the
`.eb` syntax and checked against the translated machine.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ebast as eb
from . import solidity as sol
from .ebtext import RESERVED_IDENTIFIERS
from .solcheck import BALANCE, CheckedContract, FunctionMeta, UnsupportedConstruct

SCAFFOLD_NAMES = frozenset({
    "ADDRESS", "this", "address_tem", "balanceof", "initial_balance",
    "TRANSFER_VALUE", "NewAccount", "msg_sender", "msg_value",
})

_ADDRESS = eb.Ref("ADDRESS")
_THIS = eb.Ref("this")
_ADDRESS_TEM = eb.Ref("address_tem")
_BALANCEOF = eb.Ref("balanceof")
_TRANSFER_VALUE = eb.Ref("TRANSFER_VALUE")
_MSG_SENDER = eb.Ref("msg_sender")
_MSG_VALUE = eb.Ref("msg_value")


@dataclass
class TranslationReport:
    """Traceability: what was skipped, what was invented, where labels point."""

    contract: str
    skipped: list[tuple[sol.Span, str]] = field(default_factory=list)
    synthesized_names: dict[str, str] = field(default_factory=dict)
    label_table: dict[str, sol.Span] = field(default_factory=dict)
    source_file: str | None = None

    def to_json(self) -> dict:
        def span_json(s: sol.Span) -> dict:
            return {"line": s.line, "col": s.col,
                    "end_line": s.end_line, "end_col": s.end_col}

        return {
            "contract": self.contract,
            "source_file": self.source_file,
            "skipped": [{"span": span_json(s), "reason": r} for s, r in self.skipped],
            "synthesized": dict(self.synthesized_names),
            "labels": {k: span_json(s) for k, s in sorted(self.label_table.items())},
        }

    @classmethod
    def from_json(cls, data: dict) -> "TranslationReport":
        def span(d: dict) -> sol.Span:
            return sol.Span(d["line"], d["col"], d["end_line"], d["end_col"])

        return cls(
            contract=data["contract"],
            source_file=data.get("source_file"),
            skipped=[(span(e["span"]), e["reason"]) for e in data.get("skipped", [])],
            synthesized_names=dict(data.get("synthesized", {})),
            label_table={k: span(v) for k, v in data.get("labels", {}).items()},
        )


def translate_type(ty: sol.SolType) -> eb.EbExpr:
    """Set expression a value of this Solidity type belongs to."""
    match ty:
        case sol.TyInt() | sol.TyBytes():
            return eb.INT
        case sol.TyBool():
            return eb.BOOL
        case sol.TyAddress():
            return _ADDRESS
        case sol.TyMapping(key, value):
            return eb.TotalFn(translate_type(key), translate_type(value))
    raise TypeError(f"not a subset type: {ty!r}")


def synth_new_account() -> eb.EbEvent:
    """NewAccount: a fresh address with an arbitrary balance joins the pool."""
    return eb.EbEvent(
        name="NewAccount",
        params=["a", "b"],
        guards=[
            eb.Labeled("grd1", eb.Member(eb.Ref("a"), eb.SetMinus(_ADDRESS, _ADDRESS_TEM))),
            eb.Labeled("grd2", eb.Member(eb.Ref("b"), eb.NAT)),
        ],
        actions=[
            eb.Action("act1", "address_tem", eb.Union(_ADDRESS_TEM, eb.SetLit((eb.Ref("a"),)))),
            eb.Action("act2", "balanceof", eb.Union(
                _BALANCEOF, eb.SetLit((eb.Maplet(eb.Ref("a"), eb.Ref("b")),)))),
        ],
    )


class _Translator:
    def __init__(self, checked: CheckedContract):
        self.checked = checked
        self.ast = checked.ast
        self.report = TranslationReport(contract=self.ast.name)
        self.needs_transfer_value = False
        self.secret_seeds: dict[str, str] = {}  # state var -> constant name

    # -- static analysis ----------------------------------------------------

    def _declared_names(self) -> set[str]:
        names = {self.ast.name}
        names.update(sv.name for sv in self.ast.state_vars)
        for fn in self.ast.functions:
            if fn.name is not None:
                names.add(fn.name)
            names.update(p.name for p in fn.params)
        return names

    def _check_identifiers(self):
        for name in sorted(self._declared_names()):
            if name in SCAFFOLD_NAMES or name in RESERVED_IDENTIFIERS:
                raise UnsupportedConstruct(
                    self.ast.span,
                    f"identifier {name} collides with a generated Event-B name")

    def _scan_ether(self, e: sol.Expr) -> bool:
        match e:
            case sol.IntLit(_, ether):
                return ether
            case sol.Arith(_, l, r) | sol.Cmp(_, l, r) | sol.BoolOp(_, l, r):
                return self._scan_ether(l) or self._scan_ether(r)
            case sol.Not(b) | sol.Sha3(b) | sol.BalanceOf(b):
                return self._scan_ether(b)
            case _:
                return False

    def _stmt_exprs(self, st: sol.Stmt):
        match st:
            case sol.Assign(_, value):
                yield value
            case sol.Require(cond) | sol.Return(cond):
                yield cond
            case sol.Transfer(to, amount):
                yield to
                yield amount
            case sol.If(cond, then, orelse):
                yield cond
                for b in (then, orelse or ()):
                    for inner in b:
                        yield from self._stmt_exprs(inner)

    def _detect_needs(self):
        for fm in self._translated_functions():
            if fm.payable:
                self.needs_transfer_value = True
            for st in fm.decl.body:
                for e in self._stmt_exprs(st):
                    if self._scan_ether(e):
                        self.needs_transfer_value = True
        for sv in self.ast.state_vars:
            if sv.init is not None and self._scan_ether(sv.init):
                self.needs_transfer_value = True

    def _translated_functions(self) -> list[FunctionMeta]:
        out = []
        for fm in self.checked.functions:
            if fm.constant or (fm.is_fallback and not fm.decl.body):
                continue
            out.append(fm)
        return out

    def _assigned_from_param(self, var: str) -> bool:
        for fm in self._translated_functions():
            params = {p.name for p in fm.decl.params}

            def assigns_with_param(st: sol.Stmt) -> bool:
                match st:
                    case sol.Assign(target, value):
                        return target == var and bool(
                            self.checked.functions and params & _reads(value))
                    case sol.If(_, then, orelse):
                        return any(assigns_with_param(s) for s in then) or any(
                            assigns_with_param(s) for s in (orelse or ()))
                    case _:
                        return False

            if any(assigns_with_param(st) for st in fm.decl.body):
                return True
        return False

    def _pick_secrets(self):
        taken = self._declared_names() | set(SCAFFOLD_NAMES)
        for sv in self.ast.state_vars:
            if sv.init is not None:
                continue
            if not isinstance(sv.ty, (sol.TyInt, sol.TyBytes)):
                continue
            if not self._assigned_from_param(sv.name):
                continue
            name = "password" if "password" not in taken else f"{sv.name}_init"
            taken.add(name)
            self.secret_seeds[sv.name] = name

    # -- expressions ------------------------------------------------------

    def _ether(self, n: int) -> eb.EbExpr:
        return _TRANSFER_VALUE if n == 1 else eb.Arith("*", eb.IntLit(n), _TRANSFER_VALUE)

    def expr(self, e: sol.Expr, fm: FunctionMeta) -> eb.EbExpr:
        match e:
            case sol.IntLit(value, ether):
                return self._ether(value) if ether else eb.IntLit(value)
            case sol.BoolLit(value):
                return eb.BoolLit(value)
            case sol.ByteLit():
                return eb.IntLit(e.value)
            case sol.AddrLit():
                raise UnsupportedConstruct(
                    e.span, "address literals have no Event-B counterpart")
            case sol.Var(name):
                return eb.Ref(name)
            case sol.MsgSender():
                return _MSG_SENDER
            case sol.MsgValue():
                if not fm.payable:
                    raise UnsupportedConstruct(
                        e.span, "msg.value outside a payable function")
                return _MSG_VALUE
            case sol.ThisBalance():
                return eb.Apply(_BALANCEOF, _THIS)
            case sol.BalanceOf(addr):
                return eb.Apply(_BALANCEOF, self.expr(addr, fm))
            case sol.Sha3(arg):
                return self.expr(arg, fm)  # Sha3Identity policy
            case sol.Arith(op, l, r):
                return eb.Arith("÷" if op == "/" else op,
                                self.expr(l, fm), self.expr(r, fm))
        raise UnsupportedConstruct(e.span, "expression outside the subset")

    def pred(self, b: sol.Expr, fm: FunctionMeta) -> eb.EbPred:
        match b:
            case sol.BoolLit(value):
                return eb.BTrue() if value else eb.BFalse()
            case sol.Var(name):
                return eb.Compare("=", eb.Ref(name), eb.TRUE)
            case sol.Not(sol.Var(name)):
                return eb.Compare("=", eb.Ref(name), eb.FALSE)
            case sol.Not(body):
                return eb.Not(self.pred(body, fm))
            case sol.Cmp(op, l, r):
                eb_op = {"==": "=", "!=": "≠", "<=": "≤", ">=": "≥"}[op]
                return eb.Compare(eb_op, self.expr(l, fm), self.expr(r, fm))
            case sol.BoolOp(op, l, r):
                node = eb.And if op == "&&" else eb.Or
                return node(self.pred(l, fm), self.pred(r, fm))
        raise UnsupportedConstruct(b.span, "boolean expression outside the subset")

    # -- statements ------------------------------------------------------

    def _transfer_override(self, st: sol.Transfer, fm: FunctionMeta) -> eb.EbExpr:
        to = self.expr(st.to, fm)
        if isinstance(st.amount, sol.ThisBalance):
            # draining transfer: the whole balance moves, this drops to zero
            pairs = (
                (to, eb.Arith("+", eb.Apply(_BALANCEOF, to), eb.Apply(_BALANCEOF, _THIS))),
                (_THIS, eb.IntLit(0)),
            )
        else:
            amount = self.expr(st.amount, fm)
            pairs = (
                (to, eb.Arith("+", eb.Apply(_BALANCEOF, to), amount)),
                (_THIS, eb.Arith("-", eb.Apply(_BALANCEOF, _THIS), amount)),
            )
        return eb.Override(_BALANCEOF, eb.fn_lit(*pairs))

    def _rhs_value(self, value: sol.Expr, fm: FunctionMeta) -> eb.EbExpr:
        """Assignment right-hand side; compound booleans go through bool(·)."""
        if self._is_bool_expr(value, fm) and not isinstance(value, (sol.BoolLit, sol.Var)):
            return eb.BoolOf(self.pred(value, fm))
        return self.expr(value, fm)

    def _branch_value(self, branch: tuple[sol.Stmt, ...] | None,
                      target: str, fm: FunctionMeta) -> eb.EbExpr:
        """Value `target` takes when this if-branch runs (identity if absent)."""
        if not branch:
            return eb.Ref(target) if target != BALANCE else _BALANCEOF
        st = branch[0]
        if isinstance(st, sol.Assign):
            return self._rhs_value(st.value, fm)
        return self._transfer_override(st, fm)

    def stmt(self, st: sol.Stmt, fm: FunctionMeta,
             guards: list[tuple[eb.EbPred, sol.Span]],
             actions: list[tuple[str, eb.EbExpr, sol.Span]]):
        match st:
            case sol.Require(cond):
                guards.append((self.pred(cond, fm), st.span))
            case sol.Assign(target, value):
                actions.append((target, self._rhs_value(value, fm), st.span))
            case sol.Transfer():
                actions.append((BALANCE, self._transfer_override(st, fm), st.span))
            case sol.Return():
                self.report.skipped.append(
                    (st.span, "return value not modeled (events have no result)"))
            case sol.If(cond, then, orelse):
                cond_e = eb.BoolOf(self.pred(cond, fm))
                first = then[0]
                target = first.target if isinstance(first, sol.Assign) else BALANCE
                on_true = self._branch_value(then, target, fm)
                on_false = self._branch_value(orelse, target, fm)
                actions.append((target, eb.CondMap(on_true, on_false, cond_e), st.span))
            case _:
                raise TypeError(f"not a statement: {st!r}")

    def _is_bool_expr(self, e: sol.Expr, fm: FunctionMeta) -> bool:
        match e:
            case sol.BoolLit() | sol.Cmp() | sol.BoolOp() | sol.Not():
                return True
            case sol.Var(name):
                ty = self.checked.var_types.get(name)
                if ty is None:
                    ty = {p.name: p.ty for p in fm.decl.params}.get(name)
                return isinstance(ty, sol.TyBool)
            case _:
                return False

    # -- functions ------------------------------------------------------

    def translate_function(self, fm: FunctionMeta) -> eb.EbEvent | None:
        fn = fm.decl
        if fm.constant:
            self.report.skipped.append((fn.span, f"constant function {fn.name} "
                                        "reads no state worth modeling"))
            return None
        if fm.is_fallback:
            if fn.body:
                raise UnsupportedConstruct(fn.span, "non-empty fallback function")
            self.report.skipped.append((fn.span, "empty payable fallback"))
            return None

        event = eb.EbEvent(name=fn.name)
        typing_guards: list[tuple[eb.EbPred, sol.Span]] = []
        for p in fn.params:
            event.params.append(p.name)
            typing_guards.append((eb.Member(eb.Ref(p.name), translate_type(p.ty)), p.span))
        needs_sender = fm.payable or fm.uses_msg_sender
        if needs_sender:
            event.params.append("msg_sender")
        if not fm.payable and needs_sender:
            typing_guards.append((
                eb.Member(_MSG_SENDER, eb.SetMinus(_ADDRESS_TEM, eb.SetLit((_THIS,)))),
                fn.span))

        require_guards: list[tuple[eb.EbPred, sol.Span]] = []
        actions: list[tuple[str, eb.EbExpr, sol.Span]] = []
        for st in fn.body:
            self.stmt(st, fm, require_guards, actions)

        payable_guards: list[tuple[eb.EbPred, sol.Span]] = []
        if fm.payable:
            event.params.append("msg_value")
            payable_guards = [
                (eb.Member(_MSG_SENDER, eb.SetMinus(_ADDRESS_TEM, eb.SetLit((_THIS,)))), fn.span),
                (eb.Member(_MSG_VALUE, eb.NAT1), fn.span),
                (eb.Compare("≤", _MSG_VALUE, eb.Apply(_BALANCEOF, _MSG_SENDER)), fn.span),
                (eb.Compare("≥", _MSG_VALUE, _TRANSFER_VALUE), fn.span),
            ]
            deposit = eb.Override(_BALANCEOF, eb.fn_lit(
                (_THIS, eb.Arith("+", eb.Apply(_BALANCEOF, _THIS), _MSG_VALUE)),
                (_MSG_SENDER, eb.Arith("-", eb.Apply(_BALANCEOF, _MSG_SENDER), _MSG_VALUE)),
            ))
            actions.append((BALANCE, deposit, fn.span))

        for i, (pred, span) in enumerate(typing_guards + require_guards + payable_guards, 1):
            label = f"grd{i}"
            event.guards.append(eb.Labeled(label, pred))
            self.report.label_table[f"{fn.name}/{label}"] = span
        for i, (target, expr, span) in enumerate(actions, 1):
            label = f"act{i}"
            real_target = "balanceof" if target == BALANCE else target
            event.actions.append(eb.Action(label, real_target, expr))
            self.report.label_table[f"{fn.name}/{label}"] = span
        return event

    # -- project ------------------------------------------------------

    def run(self) -> tuple[eb.EbProject, TranslationReport]:
        self._check_identifiers()
        for sv in self.ast.state_vars:
            if isinstance(sv.ty, sol.TyMapping):
                raise UnsupportedConstruct(
                    sv.span, "mapping state variables have no faithful "
                             "initialization in the target")
        self._detect_needs()
        self._pick_secrets()
        synth = self.report.synthesized_names
        synth["ADDRESS"] = "carrier set of account addresses"
        synth["this"] = "address of the contract itself"

        ctx = eb.EbContext(name=f"{self.ast.name}_c")
        ctx.sets.append("ADDRESS")
        ctx.constants.append("this")
        axioms: list[eb.EbPred] = [eb.Member(_THIS, _ADDRESS)]
        for sv in self.ast.state_vars:
            seed = self.secret_seeds.get(sv.name)
            if seed is not None:
                ctx.constants.append(seed)
                axioms.append(eb.Member(eb.Ref(seed), eb.INT))
                synth[seed] = f"initial value of {sv.name}"
            elif sv.init is None and isinstance(sv.ty, sol.TyAddress):
                seed = f"{sv.name}_init"
                ctx.constants.append(seed)
                axioms.append(eb.Member(eb.Ref(seed), _ADDRESS))
                synth[seed] = f"initial value of {sv.name}"
                self.secret_seeds[sv.name] = seed
        ctx.constants.append("initial_balance")
        axioms.append(eb.Member(eb.Ref("initial_balance"), eb.NAT1))
        synth["initial_balance"] = "initial balance of the contract address"
        if self.needs_transfer_value:
            ctx.constants.append("TRANSFER_VALUE")
            axioms.append(eb.Member(_TRANSFER_VALUE, eb.NAT1))
            synth["TRANSFER_VALUE"] = "minimum transaction value of a payable call"
        ctx.axioms = [eb.Labeled(f"axm{i}", p) for i, p in enumerate(axioms, 1)]

        machine = eb.EbMachine(name=f"{self.ast.name}_m1", sees=ctx.name)
        machine.variables = [sv.name for sv in self.ast.state_vars]
        machine.variables += ["address_tem", "balanceof"]
        synth["address_tem"] = "addresses that have interacted with the contract"
        synth["balanceof"] = "balance of each known address"
        if any(fm.payable for fm in self._translated_functions()):
            synth["msg_sender"] = "calling address of a payable function"
            synth["msg_value"] = "value transferred by a payable call"
        elif any(fm.uses_msg_sender for fm in self._translated_functions()):
            synth["msg_sender"] = "calling address of a function"

        invs: list[eb.EbPred] = [
            eb.Member(eb.Ref(sv.name), translate_type(sv.ty))
            for sv in self.ast.state_vars
        ]
        invs.append(eb.Subset(_ADDRESS_TEM, _ADDRESS))
        invs.append(eb.Member(_BALANCEOF, eb.TotalFn(_ADDRESS_TEM, eb.NAT)))
        invs.append(eb.Member(_THIS, _ADDRESS_TEM))
        machine.invariants = [eb.Labeled(f"inv{i}", p) for i, p in enumerate(invs, 1)]
        for inv, sv in zip(machine.invariants, self.ast.state_vars):
            self.report.label_table[inv.label] = sv.span

        init = eb.EbEvent(name=eb.INITIALISATION)
        init_actions: list[tuple[str, eb.EbExpr, sol.Span]] = []
        for sv in self.ast.state_vars:
            init_actions.append((sv.name, self._initial_value(sv), sv.span))
        init_actions.append(("address_tem", eb.SetLit((_THIS,)), self.ast.span))
        init_actions.append((
            "balanceof", eb.fn_lit((_THIS, eb.Ref("initial_balance"))), self.ast.span))
        for i, (target, expr, span) in enumerate(init_actions, 1):
            label = f"act{i}"
            init.actions.append(eb.Action(label, target, expr))
            self.report.label_table[f"{eb.INITIALISATION}/{label}"] = span
        machine.events.append(init)

        machine.events.append(synth_new_account())
        synth["NewAccount"] = "a new address starts interacting with the contract"
        self.report.label_table["NewAccount"] = self.ast.span

        for fm in self.checked.functions:
            event = self.translate_function(fm)
            if event is not None:
                machine.events.append(event)
                self.report.label_table[event.name] = fm.decl.span

        project = eb.EbProject(name=self.ast.name, context=ctx, machines=[machine])
        return project, self.report

    def _initial_value(self, sv: sol.StateVarDecl) -> eb.EbExpr:
        seed = self.secret_seeds.get(sv.name)
        if seed is not None:
            return eb.Ref(seed)
        if sv.init is not None:
            match sv.init:
                case sol.IntLit(value, ether):
                    return self._ether(value) if ether else eb.IntLit(value)
                case sol.BoolLit(value):
                    return eb.BoolLit(value)
                case sol.ByteLit():
                    return eb.IntLit(sv.init.value)
            raise UnsupportedConstruct(sv.span, "unsupported initializer")
        if isinstance(sv.ty, sol.TyBool):
            return eb.FALSE
        return eb.IntLit(0)


def _reads(e: sol.Expr) -> set[str]:
    from .solcheck import _Check

    return _Check.reads(e)


def translate(checked: CheckedContract) -> tuple[eb.EbProject, TranslationReport]:
    """Lower a checked contract to its Event-B project, with traceability."""
    return _Translator(checked).run()
