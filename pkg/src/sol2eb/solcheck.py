"""Name resolution, subset typing, and translatable-shape checks.

`validate_contract` resolves every variable reference, types every expression
(bytes count as integers), and rejects constructs the Event-B lowering cannot
express faithfully:

  - a second write to the same variable within one body (events assign
    simultaneously, so data-dependent sequencing would silently reorder)
  - a read of a variable written earlier in the same body, for the same reason
  - `if` branches that are not a single assignment or transfer
  - `require` anywhere but a body's top level
  - mapping-typed variables used in expressions (the grammar has no indexing)
"""

from __future__ import annotations

from dataclasses import dataclass

from .solidity import (
    AddrLit, Arith, Assign, BalanceOf, BoolLit, BoolOp, ByteLit, Cmp,
    ContractAst, Expr, FunctionDecl, If, IntLit, MsgSender, MsgValue, Not,
    Require, Return, Sha3, Span, StateVarDecl, Stmt, Transfer, TyAddress,
    TyBool, TyBytes, TyInt, TyMapping, ThisBalance, Var,
)

BALANCE = "<contract balance>"  # pseudo-variable written by transfer


class SolCheckError(Exception):
    def __init__(self, span: Span, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message

    def diagnostic(self, filename: str) -> str:
        return f"{filename}:{self.span.line}:{self.span.col}: error: {self.message}"


class UnresolvedName(SolCheckError):
    pass


class TypeMismatch(SolCheckError):
    pass


class UnsupportedConstruct(SolCheckError):
    pass


def type_class(ty) -> str:
    """The subset's three value classes; bytes are integers downstream."""
    if isinstance(ty, (TyInt, TyBytes)):
        return "int"
    if isinstance(ty, TyBool):
        return "bool"
    if isinstance(ty, TyAddress):
        return "address"
    if isinstance(ty, TyMapping):
        return "mapping"
    raise TypeError(f"not a subset type: {ty!r}")


@dataclass(frozen=True)
class FunctionMeta:
    decl: FunctionDecl
    payable: bool
    constant: bool
    is_fallback: bool
    uses_msg_sender: bool
    has_transfer: bool
    return_spans: tuple[Span, ...]


@dataclass(frozen=True)
class CheckedContract:
    ast: ContractAst
    var_types: dict  # state variable name -> SolType
    functions: tuple[FunctionMeta, ...]

    def meta(self, name: str | None) -> FunctionMeta:
        for fm in self.functions:
            if fm.decl.name == name:
                return fm
        raise KeyError(name)


class _Check:
    def __init__(self, ast: ContractAst):
        self.ast = ast
        self.var_types = {sv.name: sv.ty for sv in ast.state_vars}

    # -- expressions ------------------------------------------------------

    def type_expr(self, e: Expr, params: dict) -> str:
        match e:
            case IntLit() | ByteLit() | MsgValue() | ThisBalance():
                return "int"
            case BoolLit():
                return "bool"
            case AddrLit() | MsgSender():
                return "address"
            case Var(name):
                if name in params:
                    ty = params[name]
                elif name in self.var_types:
                    ty = self.var_types[name]
                else:
                    raise UnresolvedName(e.span, f"unknown name {name}")
                cls = type_class(ty)
                if cls == "mapping":
                    raise UnsupportedConstruct(
                        e.span, f"mapping variable {name} used in an expression")
                return cls
            case BalanceOf(addr):
                if self.type_expr(addr, params) != "address":
                    raise TypeMismatch(e.span, ".balance of a non-address expression")
                return "int"
            case Sha3(arg):
                if self.type_expr(arg, params) != "int":
                    raise TypeMismatch(e.span, "sha3 argument must be bytes or integer")
                return "int"
            case Arith(op, l, r):
                for side in (l, r):
                    if self.type_expr(side, params) != "int":
                        raise TypeMismatch(e.span, f"arithmetic {op} over non-integer")
                return "int"
            case Cmp(op, l, r):
                tl = self.type_expr(l, params)
                tr = self.type_expr(r, params)
                if tl != tr:
                    raise TypeMismatch(e.span, f"comparison {op} between {tl} and {tr}")
                if op in ("<=", ">=") and tl != "int":
                    raise TypeMismatch(e.span, f"order comparison over {tl}")
                return "bool"
            case BoolOp(op, l, r):
                for side in (l, r):
                    if self.type_expr(side, params) != "bool":
                        raise TypeMismatch(e.span, f"{op} over non-boolean operand")
                return "bool"
            case Not(body):
                if self.type_expr(body, params) != "bool":
                    raise TypeMismatch(e.span, "! over non-boolean operand")
                return "bool"
        raise TypeError(f"not an expression: {e!r}")

    @staticmethod
    def reads(e: Expr) -> set[str]:
        """Names an expression reads; the contract balance is a pseudo-name."""
        match e:
            case Var(name):
                return {name}
            case ThisBalance():
                return {BALANCE}
            case BalanceOf(addr):
                return {BALANCE} | _Check.reads(addr)
            case Sha3(arg) | Not(arg):
                return _Check.reads(arg)
            case Arith(_, l, r) | Cmp(_, l, r) | BoolOp(_, l, r):
                return _Check.reads(l) | _Check.reads(r)
            case _:
                return set()

    # -- statements ------------------------------------------------------

    def _check_reads(self, e: Expr, written: dict, span: Span):
        stale = self.reads(e) & set(written)
        if stale:
            name = sorted(stale)[0]
            label = "the contract balance" if name == BALANCE else name
            raise UnsupportedConstruct(
                span, f"expression reads {label}, which an earlier statement "
                      "in the same body assigns (events assign simultaneously)")

    def _check_assign(self, st: Assign, params: dict) -> str:
        if st.target in params:
            raise UnsupportedConstruct(st.span, f"assignment to parameter {st.target}")
        if st.target not in self.var_types:
            raise UnresolvedName(st.span, f"unknown assignment target {st.target}")
        cls = type_class(self.var_types[st.target])
        if cls == "mapping":
            raise UnsupportedConstruct(st.span, "assignment to mapping variable")
        value_cls = self.type_expr(st.value, params)
        if value_cls != cls:
            raise TypeMismatch(st.span, f"assigning {value_cls} to {cls} variable {st.target}")
        return st.target

    def _check_transfer(self, st: Transfer, params: dict):
        if self.type_expr(st.to, params) != "address":
            raise TypeMismatch(st.span, "transfer target is not an address")
        if self.type_expr(st.amount, params) != "int":
            raise TypeMismatch(st.span, "transfer amount is not an integer")

    def _branch_effect(self, branch: tuple[Stmt, ...], params: dict,
                       written: dict, span: Span) -> tuple[str, str]:
        """Validate one if-branch; returns (kind, target)."""
        if len(branch) != 1:
            raise UnsupportedConstruct(
                span, "if-branch must be a single assignment or transfer")
        st = branch[0]
        if isinstance(st, Assign):
            self._check_reads(st.value, written, st.span)
            return ("assign", self._check_assign(st, params))
        if isinstance(st, Transfer):
            self._check_reads(st.to, written, st.span)
            self._check_reads(st.amount, written, st.span)
            self._check_transfer(st, params)
            return ("transfer", BALANCE)
        raise UnsupportedConstruct(
            span, "if-branch must be a single assignment or transfer")

    def _record_write(self, name: str, written: dict, span: Span):
        if name in written:
            what = "the contract balance" if name == BALANCE else name
            raise UnsupportedConstruct(
                span, f"{what} assigned twice within one statement sequence")
        written[name] = span

    def check_body(self, fn: FunctionDecl) -> tuple[bool, bool, tuple[Span, ...]]:
        params = {p.name: p.ty for p in fn.params}
        for p in fn.params:
            if p.name in self.var_types:
                raise UnsupportedConstruct(
                    p.span, f"parameter {p.name} shadows a state variable")
            if type_class(p.ty) == "mapping":
                raise UnsupportedConstruct(p.span, "mapping-typed parameter")

        written: dict[str, Span] = {}
        uses_sender = False
        has_transfer = False
        return_spans: list[Span] = []

        def scan_sender(e: Expr) -> bool:
            if isinstance(e, MsgSender):
                return True
            match e:
                case Arith(_, l, r) | Cmp(_, l, r) | BoolOp(_, l, r):
                    return scan_sender(l) or scan_sender(r)
                case Not(b) | Sha3(b) | BalanceOf(b):
                    return scan_sender(b)
                case _:
                    return False

        for st in fn.body:
            match st:
                case Assign():
                    self._check_reads(st.value, written, st.span)
                    target = self._check_assign(st, params)
                    self._record_write(target, written, st.span)
                    uses_sender |= scan_sender(st.value)
                case Require(cond):
                    self._check_reads(cond, written, st.span)
                    if self.type_expr(cond, params) != "bool":
                        raise TypeMismatch(st.span, "require condition is not boolean")
                    uses_sender |= scan_sender(cond)
                case Transfer():
                    self._check_reads(st.to, written, st.span)
                    self._check_reads(st.amount, written, st.span)
                    self._check_transfer(st, params)
                    self._record_write(BALANCE, written, st.span)
                    has_transfer = True
                    uses_sender |= scan_sender(st.to) or scan_sender(st.amount)
                case Return(value):
                    self._check_reads(value, written, st.span)
                    self.type_expr(value, params)
                    return_spans.append(st.span)
                    uses_sender |= scan_sender(value)
                case If(cond, then, orelse):
                    self._check_reads(cond, written, st.span)
                    if self.type_expr(cond, params) != "bool":
                        raise TypeMismatch(st.span, "if condition is not boolean")
                    uses_sender |= scan_sender(cond)
                    then_kind, then_target = self._branch_effect(
                        then, params, written, st.span)
                    if orelse is not None:
                        else_kind, else_target = self._branch_effect(
                            orelse, params, written, st.span)
                        if then_kind != else_kind or then_target != else_target:
                            raise UnsupportedConstruct(
                                st.span, "if-branches must assign the same variable "
                                         "(or both transfer)")
                    self._record_write(then_target, written, st.span)
                    has_transfer |= then_kind == "transfer"
                    for branch in (then, orelse or ()):
                        for bst in branch:
                            if isinstance(bst, Assign):
                                uses_sender |= scan_sender(bst.value)
                            elif isinstance(bst, Transfer):
                                has_transfer = True
                                uses_sender |= scan_sender(bst.to) or scan_sender(bst.amount)
                case _:
                    raise TypeError(f"not a statement: {st!r}")

        return uses_sender, has_transfer, tuple(return_spans)

    def run(self) -> CheckedContract:
        for sv in self.ast.state_vars:
            if sv.init is not None:
                if not isinstance(sv.init, (IntLit, BoolLit, ByteLit, AddrLit)):
                    raise UnsupportedConstruct(
                        sv.span, "state variable initializer must be a literal")
                cls = type_class(sv.ty)
                if cls == "mapping":
                    raise UnsupportedConstruct(sv.span, "mapping variable initializer")
                init_cls = self.type_expr(sv.init, {})
                if init_cls != cls:
                    raise TypeMismatch(
                        sv.span, f"{cls} variable {sv.name} initialized with {init_cls}")

        metas = []
        for fn in self.ast.functions:
            uses_sender, has_transfer, return_spans = self.check_body(fn)
            metas.append(FunctionMeta(
                decl=fn,
                payable="payable" in fn.qualifiers,
                constant="constant" in fn.qualifiers,
                is_fallback=fn.name is None,
                uses_msg_sender=uses_sender or has_transfer,
                has_transfer=has_transfer,
                return_spans=return_spans,
            ))
        return CheckedContract(
            ast=self.ast, var_types=dict(self.var_types), functions=tuple(metas))


def validate_contract(ast: ContractAst) -> CheckedContract:
    """Resolve, type, and shape-check a parsed contract."""
    return _Check(ast).run()
