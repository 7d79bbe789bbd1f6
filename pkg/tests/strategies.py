"""Hypothesis strategies over the Event-B IR and the Solidity subset AST."""

from __future__ import annotations

from hypothesis import strategies as st

from sol2eb import ebast as eb
from sol2eb import solidity as sol
from sol2eb.ebtext import RESERVED_IDENTIFIERS

_ident_alphabet = "abcdefgxyz"

identifiers = st.text(_ident_alphabet, min_size=1, max_size=6).filter(
    lambda s: s not in RESERVED_IDENTIFIERS
)


# ---------------------------------------------------------------------------
# Event-B expressions / predicates (syntactic: for print/parse round-trips)


def _exprs(names: st.SearchStrategy[str]) -> st.SearchStrategy[eb.EbExpr]:
    atoms = st.one_of(
        st.integers(-20, 20).map(eb.IntLit),
        st.booleans().map(eb.BoolLit),
        names.map(eb.Ref),
        st.sampled_from(["INT", "NAT", "NAT1", "BOOL"]).map(eb.TypeAtom),
    )

    def extend(children: st.SearchStrategy[eb.EbExpr]) -> st.SearchStrategy[eb.EbExpr]:
        return st.one_of(
            st.tuples(st.sampled_from("+-*÷"), children, children).map(
                lambda t: eb.Arith(*t)),
            st.lists(children, max_size=3).map(lambda xs: eb.SetLit(tuple(xs))),
            st.tuples(children, children).map(lambda t: eb.Maplet(*t)),
            st.tuples(children, children).map(lambda t: eb.Union(*t)),
            st.tuples(children, children).map(lambda t: eb.SetMinus(*t)),
            st.tuples(children, children).map(lambda t: eb.Override(*t)),
            st.tuples(names.map(eb.Ref), children).map(lambda t: eb.Apply(*t)),
            children.map(eb.Dom),
            st.tuples(children, children).map(lambda t: eb.TotalFn(*t)),
            st.tuples(children, children, children).map(lambda t: eb.CondMap(*t)),
            _preds_over(children).map(eb.BoolOf),
        )

    return st.recursive(atoms, extend, max_leaves=8)


def _preds_over(exprs: st.SearchStrategy[eb.EbExpr]) -> st.SearchStrategy[eb.EbPred]:
    comparisons = st.one_of(
        st.tuples(st.sampled_from(["=", "≠", "≤", "≥", "<", ">"]), exprs, exprs).map(
            lambda t: eb.Compare(*t)),
        st.tuples(exprs, exprs).map(lambda t: eb.Member(*t)),
        st.tuples(exprs, exprs).map(lambda t: eb.Subset(*t)),
        st.just(eb.BTrue()),
        st.just(eb.BFalse()),
    )

    def extend(children: st.SearchStrategy[eb.EbPred]) -> st.SearchStrategy[eb.EbPred]:
        return st.one_of(
            st.tuples(children, children).map(lambda t: eb.And(*t)),
            st.tuples(children, children).map(lambda t: eb.Or(*t)),
            st.tuples(children, children).map(lambda t: eb.Implies(*t)),
            children.map(eb.Not),
            st.tuples(identifiers, exprs, children).map(lambda t: eb.ForAll(*t)),
            st.tuples(identifiers, exprs, children).map(lambda t: eb.Exists(*t)),
        )

    return st.recursive(comparisons, extend, max_leaves=6)


eb_exprs = _exprs(identifiers)
eb_preds = _preds_over(eb_exprs)


def _labeled(prefix: str, preds) -> st.SearchStrategy[list[eb.Labeled]]:
    return st.lists(preds, max_size=3).map(
        lambda ps: [eb.Labeled(f"{prefix}{i}", p) for i, p in enumerate(ps, 1)]
    )


_events = st.builds(
    lambda name, refines, params, guards, actions: eb.EbEvent(
        name=name, refines=refines, params=params, guards=guards,
        actions=[eb.Action(f"act{i}", target, expr)
                 for i, (target, expr) in enumerate(actions, 1)],
    ),
    name=identifiers,
    refines=st.none() | identifiers,
    params=st.lists(identifiers, max_size=3, unique=True),
    guards=_labeled("grd", eb_preds),
    actions=st.lists(st.tuples(identifiers, eb_exprs), max_size=3,
                     unique_by=lambda t: t[0]),
)


@st.composite
def eb_projects(draw) -> eb.EbProject:
    """Syntactically well-formed projects (not necessarily typecheckable)."""
    ctx_name = draw(identifiers) + "_c"
    context = eb.EbContext(
        name=ctx_name,
        sets=draw(st.lists(identifiers, max_size=2, unique=True)),
        constants=draw(st.lists(identifiers, max_size=3, unique=True)),
        axioms=draw(_labeled("axm", eb_preds)),
    )
    machines = []
    n_machines = draw(st.integers(1, 2))
    for i in range(n_machines):
        init = eb.EbEvent(name=eb.INITIALISATION, actions=[
            eb.Action(f"act{j}", target, expr)
            for j, (target, expr) in enumerate(
                draw(st.lists(st.tuples(identifiers, eb_exprs), max_size=2,
                              unique_by=lambda t: t[0])), 1)
        ])
        extra = draw(st.lists(_events, max_size=2, unique_by=lambda e: e.name))
        machine = eb.EbMachine(
            name=f"m{i}_{draw(identifiers)}",
            sees=ctx_name,
            refines=machines[i - 1].name if i > 0 and draw(st.booleans()) else None,
            variables=draw(st.lists(identifiers, max_size=3, unique=True)),
            invariants=draw(_labeled("inv", eb_preds)),
            events=[init] + [e for e in extra if e.name != eb.INITIALISATION],
        )
        machines.append(machine)
    name = ctx_name[:-2]
    return eb.EbProject(name=name, context=context, machines=machines)


# ---------------------------------------------------------------------------
# quantifier-free integer predicates for the truth-table oracle


_int_vars = st.sampled_from(["x", "y", "z"])

_int_exprs = st.recursive(
    st.one_of(st.integers(0, 3).map(eb.IntLit), _int_vars.map(eb.Ref)),
    lambda kids: st.tuples(st.sampled_from("+-*"), kids, kids).map(
        lambda t: eb.Arith(*t)),
    max_leaves=6,
)

int_predicates = st.recursive(
    st.tuples(st.sampled_from(["=", "≠", "≤", "≥", "<", ">"]), _int_exprs, _int_exprs).map(
        lambda t: eb.Compare(*t)),
    lambda kids: st.one_of(
        st.tuples(kids, kids).map(lambda t: eb.And(*t)),
        st.tuples(kids, kids).map(lambda t: eb.Or(*t)),
        st.tuples(kids, kids).map(lambda t: eb.Implies(*t)),
        kids.map(eb.Not),
    ),
    max_leaves=6,
)


# ---------------------------------------------------------------------------
# Solidity subset ASTs (syntactic: for print/parse round-trips)

_SOL_KEYWORDS = sol._KEYWORDS | {"sha3", "transfer", "balance", "sender", "value"}

sol_identifiers = st.text("abcdefgh", min_size=1, max_size=6).filter(
    lambda s: s not in _SOL_KEYWORDS and not sol._INT_TYPE_RE.match(s)
    and not sol._BYTES_TYPE_RE.match(s)
)

_scalar_types = st.one_of(
    st.just(sol.TyInt()),
    st.just(sol.TyBool()),
    st.just(sol.TyAddress()),
    st.just(sol.TyBytes(None)),
    st.integers(1, 32).map(sol.TyBytes),
)

sol_types = st.one_of(
    _scalar_types,
    st.tuples(_scalar_types, _scalar_types).map(lambda t: sol.TyMapping(*t)),
)

_aexp = st.recursive(
    st.one_of(
        st.integers(0, 99).map(lambda n: sol.IntLit(n)),
        st.integers(1, 9).map(lambda n: sol.IntLit(n, ether=True)),
        sol_identifiers.map(sol.Var),
        st.just(sol.MsgValue()),
        st.just(sol.ThisBalance()),
        st.just(sol.BalanceOf(sol.MsgSender())),
    ),
    lambda kids: st.one_of(
        st.tuples(st.sampled_from("+-*/"), kids, kids).map(lambda t: sol.Arith(*t)),
        kids.map(sol.Sha3),
    ),
    max_leaves=5,
)

_bexp = st.recursive(
    st.one_of(
        st.booleans().map(sol.BoolLit),
        sol_identifiers.map(sol.Var),
        st.tuples(st.sampled_from(["<=", ">=", "==", "!="]), _aexp, _aexp).map(
            lambda t: sol.Cmp(*t)),
    ),
    lambda kids: st.one_of(
        st.tuples(st.sampled_from(["&&", "||"]), kids, kids).map(
            lambda t: sol.BoolOp(*t)),
        kids.map(sol.Not),
    ),
    max_leaves=5,
)

_assign = st.tuples(sol_identifiers, st.one_of(_aexp, _bexp)).map(
    lambda t: sol.Assign(*t))
_transfer = _aexp.map(lambda amt: sol.Transfer(sol.MsgSender(), amt))
_branch_stmt = st.one_of(_assign, _transfer)

_statements = st.one_of(
    _assign,
    _bexp.map(sol.Require),
    st.one_of(_aexp, _bexp).map(sol.Return),
    _transfer,
    st.tuples(_bexp, _branch_stmt, st.none() | _branch_stmt).map(
        lambda t: sol.If(t[0], (t[1],), None if t[2] is None else (t[2],))),
)

_sol_functions = st.builds(
    lambda name, params, quals, returns, body: sol.FunctionDecl(
        name=name, params=tuple(sol.Param(n, t) for n, t in params),
        qualifiers=quals, returns=returns, body=tuple(body)),
    name=sol_identifiers,
    params=st.lists(st.tuples(sol_identifiers, _scalar_types), max_size=3,
                    unique_by=lambda t: t[0]),
    quals=st.sets(st.sampled_from(
        ["public", "private", "internal", "external", "payable", "constant"]),
        max_size=2).map(frozenset),
    returns=st.none() | _scalar_types,
    body=st.lists(_statements, max_size=4),
)

_literal_for = {
    "int": st.integers(0, 99).map(lambda n: sol.IntLit(n)),
    "bool": st.booleans().map(sol.BoolLit),
}


@st.composite
def sol_contracts(draw) -> sol.ContractAst:
    state_vars = []
    for name in draw(st.lists(sol_identifiers, max_size=3, unique=True)):
        ty = draw(sol_types)
        init = None
        if isinstance(ty, sol.TyInt) and draw(st.booleans()):
            init = draw(_literal_for["int"])
        elif isinstance(ty, sol.TyBool) and draw(st.booleans()):
            init = draw(_literal_for["bool"])
        quals = draw(st.sets(st.sampled_from(["public", "private", "constant"]),
                             max_size=2).map(frozenset))
        state_vars.append(sol.StateVarDecl(name=name, ty=ty, qualifiers=quals, init=init))
    functions = draw(st.lists(_sol_functions, max_size=3,
                              unique_by=lambda f: f.name))
    return sol.ContractAst(
        name=draw(sol_identifiers).capitalize() or "C",
        pragma=draw(st.none() | st.just("solidity ^0.4.17")),
        state_vars=tuple(state_vars),
        functions=tuple(functions),
    )
