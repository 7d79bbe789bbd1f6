"""Canonical text form of Event-B projects (`.eb` files) and its parser.

One context or machine per file. Output always uses the Unicode operators;
the parser additionally accepts the ASCII aliases:

    ∈ `:`   ≤ `<=`   ≥ `>=`   ≠ `/=`   ∧ `&`   ∨ `or`   ¬ `not`   ⇒ `=>`
    ≔ `:=`  ↦ `|->`  ∖ `\\`   ∪ `\\/`  ⊆ `<:`  → `-->`  ÷ `/`    <+ literal
    ℕ `NAT`  ℕ1 `NAT1`  ℤ `INT`  ⊤ `btrue`  ⊥ `bfalse`  ∀ `!`  ∃ `#`  · `.`

In action position `=` is also read as the assignment token (hand-written
refinements sometimes carry it), but printing always emits `≔`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import ebast as eb


class EbParseError(Exception):
    def __init__(self, filename: str, line: int, col: int, message: str):
        super().__init__(f"{filename}:{line}:{col}: {message}")
        self.filename = filename
        self.line = line
        self.col = col
        self.message = message


class DanglingReference(Exception):
    pass


KEYWORDS = {
    "context", "machine", "sees", "refines", "sets", "constants", "axioms",
    "variables", "invariants", "events", "event", "any", "where", "then",
    "end", "dom", "bool", "or", "not", "btrue", "bfalse",
    "INT", "NAT", "NAT1", "BOOL", "TRUE", "FALSE",
}

RESERVED_IDENTIFIERS = KEYWORDS


# ---------------------------------------------------------------------------
# printing


_EXPR_LEVEL = {
    "tfun": 1,     # →
    "maplet": 2,   # ↦
    "setop": 3,    # ∪ ∖ <+
    "addsub": 4,   # + -
    "muldiv": 5,   # * ÷
    "atom": 9,
}


def _fmt_expr(e, level: int) -> str:
    def wrap(text: str, mine: int) -> str:
        return f"({text})" if mine < level else text

    match e:
        case eb.IntLit(v):
            return str(v) if v >= 0 else wrap(str(v), _EXPR_LEVEL["addsub"])
        case eb.BoolLit(v):
            return "TRUE" if v else "FALSE"
        case eb.Ref(name):
            return name
        case eb.TypeAtom(name):
            return {"INT": "ℤ", "NAT": "ℕ", "NAT1": "ℕ1", "BOOL": "BOOL"}[name]
        case eb.TotalFn(d, c):
            mine = _EXPR_LEVEL["tfun"]
            return wrap(f"{_fmt_expr(d, mine + 1)} → {_fmt_expr(c, mine + 1)}", mine)
        case eb.Maplet(l, r):
            mine = _EXPR_LEVEL["maplet"]
            return wrap(f"{_fmt_expr(l, mine)} ↦ {_fmt_expr(r, mine + 1)}", mine)
        case eb.Union(l, r):
            mine = _EXPR_LEVEL["setop"]
            return wrap(f"{_fmt_expr(l, mine)} ∪ {_fmt_expr(r, mine + 1)}", mine)
        case eb.SetMinus(l, r):
            mine = _EXPR_LEVEL["setop"]
            return wrap(f"{_fmt_expr(l, mine)} ∖ {_fmt_expr(r, mine + 1)}", mine)
        case eb.Override(l, r):
            mine = _EXPR_LEVEL["setop"]
            return wrap(f"{_fmt_expr(l, mine)} <+ {_fmt_expr(r, mine + 1)}", mine)
        case eb.Arith(op, l, r):
            mine = _EXPR_LEVEL["muldiv"] if op in "*÷" else _EXPR_LEVEL["addsub"]
            return wrap(f"{_fmt_expr(l, mine)} {op} {_fmt_expr(r, mine + 1)}", mine)
        case eb.SetLit(elems):
            if not elems:
                return "∅"
            inner = ", ".join(_fmt_expr(x, _EXPR_LEVEL["maplet"]) for x in elems)
            return "{" + inner + "}"
        case eb.Apply(fn, arg):
            return f"{_fmt_expr(fn, _EXPR_LEVEL['atom'])}({_fmt_expr(arg, 0)})"
        case eb.CondMap(t, f, c):
            lit = eb.SetLit((eb.Maplet(eb.TRUE, t), eb.Maplet(eb.FALSE, f)))
            return f"{_fmt_expr(lit, _EXPR_LEVEL['atom'])}({_fmt_expr(c, 0)})"
        case eb.Dom(fn):
            return f"dom({_fmt_expr(fn, 0)})"
        case eb.BoolOf(p):
            return f"bool({_fmt_pred(p, 0)})"
    raise TypeError(f"not an expression: {e!r}")


_PRED_LEVEL = {"quant": 0, "imp": 1, "or": 2, "and": 3, "not": 4, "atom": 9}


def _fmt_pred(p, level: int) -> str:
    def wrap(text: str, mine: int) -> str:
        return f"({text})" if mine < level else text

    match p:
        case eb.BTrue():
            return "⊤"
        case eb.BFalse():
            return "⊥"
        case eb.Compare(op, l, r):
            return f"{_fmt_expr(l, 0)} {op} {_fmt_expr(r, 0)}"
        case eb.Member(i, c):
            return f"{_fmt_expr(i, 0)} ∈ {_fmt_expr(c, 0)}"
        case eb.Subset(i, c):
            return f"{_fmt_expr(i, 0)} ⊆ {_fmt_expr(c, 0)}"
        case eb.Implies(l, r):
            mine = _PRED_LEVEL["imp"]
            return wrap(f"{_fmt_pred(l, mine + 1)} ⇒ {_fmt_pred(r, mine)}", mine)
        case eb.Or(l, r):
            mine = _PRED_LEVEL["or"]
            return wrap(f"{_fmt_pred(l, mine)} ∨ {_fmt_pred(r, mine + 1)}", mine)
        case eb.And(l, r):
            mine = _PRED_LEVEL["and"]
            return wrap(f"{_fmt_pred(l, mine)} ∧ {_fmt_pred(r, mine + 1)}", mine)
        case eb.Not(body):
            mine = _PRED_LEVEL["not"]
            return wrap(f"¬{_fmt_pred(body, mine)}", mine)
        case eb.ForAll(var, dom, body):
            # a quantifier extends maximally rightward: parenthesize whenever embedded
            inner = f"∀{var}·{var} ∈ {_fmt_expr(dom, 0)} ⇒ {_fmt_pred(body, _PRED_LEVEL['imp'])}"
            return wrap(inner, _PRED_LEVEL["quant"])
        case eb.Exists(var, dom, body):
            # body one level above ∧ so an ∧-body reparses into the same split
            inner = f"∃{var}·{var} ∈ {_fmt_expr(dom, 0)} ∧ {_fmt_pred(body, _PRED_LEVEL['and'] + 1)}"
            return wrap(inner, _PRED_LEVEL["quant"])
    raise TypeError(f"not a predicate: {p!r}")


def format_expr(e) -> str:
    return _fmt_expr(e, 0)


def format_pred(p) -> str:
    return _fmt_pred(p, 0)


def print_context(ctx: eb.EbContext) -> str:
    lines = [f"context {ctx.name}"]
    if ctx.sets:
        lines.append("sets " + " ".join(ctx.sets))
    if ctx.constants:
        lines.append("constants " + " ".join(ctx.constants))
    if ctx.axioms:
        lines.append("axioms")
        for ax in ctx.axioms:
            lines.append(f"  @{ax.label} {format_pred(ax.pred)}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def print_machine(m: eb.EbMachine) -> str:
    lines = [f"machine {m.name}"]
    if m.refines:
        lines.append(f"refines {m.refines}")
    lines.append(f"sees {m.sees}")
    if m.variables:
        lines.append("variables " + " ".join(m.variables))
    if m.invariants:
        lines.append("invariants")
        for inv in m.invariants:
            lines.append(f"  @{inv.label} {format_pred(inv.pred)}")
    lines.append("events")
    for ev in m.events:
        head = f"  event {ev.name}"
        if ev.refines:
            head += f" refines {ev.refines}"
        lines.append(head)
        if ev.params:
            lines.append("    any " + " ".join(ev.params))
        if ev.guards:
            lines.append("    where")
            for g in ev.guards:
                lines.append(f"      @{g.label} {format_pred(g.pred)}")
        if ev.actions:
            lines.append("    then")
            for a in ev.actions:
                lines.append(f"      @{a.label} {a.target} ≔ {format_expr(a.expr)}")
        lines.append("  end")
    lines.append("end")
    return "\n".join(lines) + "\n"


def print_project(project: eb.EbProject) -> list[tuple[str, str]]:
    """Canonical (filename, text) pairs: the context first, machines in order."""
    out = [(f"{project.context.name}.eb", print_context(project.context))]
    for m in project.machines:
        out.append((f"{m.name}.eb", print_machine(m)))
    return out


# ---------------------------------------------------------------------------
# lexing


@dataclass(frozen=True)
class _Tok:
    kind: str  # 'name' | 'int' | 'label' | 'op' | 'kw' | 'eof'
    text: str
    line: int
    col: int


_MULTI_OPS = [
    (":=", "≔"), ("|->", "↦"), ("-->", "→"), ("\\/", "∪"), ("<+", "<+"),
    ("<=", "≤"), (">=", "≥"), ("/=", "≠"), ("=>", "⇒"), ("<:", "⊆"),
]

_SINGLE_OPS = {
    "∈": "∈", ":": "∈", "≤": "≤", "≥": "≥", "≠": "≠", "∧": "∧", "&": "∧",
    "∨": "∨", "¬": "¬", "⇒": "⇒", "≔": "≔", "↦": "↦", "∖": "∖", "\\": "∖",
    "∪": "∪", "⊆": "⊆", "→": "→", "÷": "÷", "/": "÷", "·": "·", ".": "·",
    "∀": "∀", "!": "∀", "∃": "∃", "#": "∃", "⊤": "⊤", "⊥": "⊥", "∅": "∅",
    "=": "=", "<": "<", ">": ">", "+": "+", "-": "-", "*": "*",
    "(": "(", ")": ")", "{": "{", "}": "}", ",": ",",
}

_TYPE_ALIASES = {"ℤ": "INT", "ℕ1": "NAT1", "ℕ": "ℕ"}  # ℕ needs lookahead for ℕ1

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _lex(text: str, filename: str) -> list[_Tok]:
    toks: list[_Tok] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "@":
            m = _NAME_RE.match(text, i + 1)
            if not m:
                raise EbParseError(filename, line, col, "label expected after '@'")
            toks.append(_Tok("label", m.group(0), line, col))
            col += m.end() - i
            i = m.end()
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == "ℕ":
            if text.startswith("ℕ1", i):
                toks.append(_Tok("kw", "NAT1", line, col))
                i += 2
                col += 2
            else:
                toks.append(_Tok("kw", "NAT", line, col))
                i += 1
                col += 1
            continue
        if ch == "ℤ":
            toks.append(_Tok("kw", "INT", line, col))
            i += 1
            col += 1
            continue
        m = _NAME_RE.match(text, i)
        if m:
            word = m.group(0)
            kind = "kw" if word in KEYWORDS else "name"
            toks.append(_Tok(kind, word, line, col))
            col += len(word)
            i = m.end()
            continue
        matched = False
        for src, canon in _MULTI_OPS:
            if text.startswith(src, i):
                toks.append(_Tok("op", canon, line, col))
                i += len(src)
                col += len(src)
                matched = True
                break
        if matched:
            continue
        if ch in _SINGLE_OPS:
            toks.append(_Tok("op", _SINGLE_OPS[ch], line, col))
            i += 1
            col += 1
            continue
        raise EbParseError(filename, line, col, f"unexpected character {ch!r}")
    toks.append(_Tok("eof", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# parsing


class _Parser:
    def __init__(self, text: str, filename: str):
        self.filename = filename
        self.toks = _lex(text, filename)
        self.pos = 0

    # -- token plumbing -----------------------------------------------------

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def next(self) -> _Tok:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        t = self.peek()
        return t.kind == "op" and t.text in ops

    def at_kw(self, *kws: str) -> bool:
        t = self.peek()
        return t.kind == "kw" and t.text in kws

    def eat_op(self, op: str) -> _Tok:
        if not self.at_op(op):
            self.err(f"expected {op!r}")
        return self.next()

    def eat_kw(self, kw: str) -> _Tok:
        if not self.at_kw(kw):
            self.err(f"expected keyword {kw!r}, got {self.peek().text!r}")
        return self.next()

    def eat_name(self, what: str = "identifier") -> str:
        t = self.peek()
        if t.kind != "name":
            self.err(f"expected {what}, got {t.text!r}")
        return self.next().text

    def err(self, message: str):
        t = self.peek()
        raise EbParseError(self.filename, t.line, t.col, message)

    # -- components ----------------------------------------------------------

    def parse_component(self):
        if self.at_kw("context"):
            comp = self.parse_context()
        elif self.at_kw("machine"):
            comp = self.parse_machine()
        else:
            self.err("expected 'context' or 'machine'")
        if self.peek().kind != "eof":
            self.err("trailing input after component")
        return comp

    def parse_context(self) -> eb.EbContext:
        self.eat_kw("context")
        ctx = eb.EbContext(name=self.eat_name("context name"))
        if self.at_kw("sets"):
            self.next()
            while self.peek().kind == "name":
                ctx.sets.append(self.next().text)
        if self.at_kw("constants"):
            self.next()
            while self.peek().kind == "name":
                ctx.constants.append(self.next().text)
        if self.at_kw("axioms"):
            self.next()
            ctx.axioms = self.parse_labeled_preds()
        self.eat_kw("end")
        return ctx

    def parse_machine(self) -> eb.EbMachine:
        self.eat_kw("machine")
        m = eb.EbMachine(name=self.eat_name("machine name"))
        if self.at_kw("refines"):
            self.next()
            m.refines = self.eat_name("machine name")
        self.eat_kw("sees")
        m.sees = self.eat_name("context name")
        if self.at_kw("variables"):
            self.next()
            while self.peek().kind == "name":
                m.variables.append(self.next().text)
        if self.at_kw("invariants"):
            self.next()
            m.invariants = self.parse_labeled_preds()
        self.eat_kw("events")
        while self.at_kw("event"):
            m.events.append(self.parse_event())
        self.eat_kw("end")
        return m

    def parse_event(self) -> eb.EbEvent:
        self.eat_kw("event")
        ev = eb.EbEvent(name=self.eat_name("event name"))
        if self.at_kw("refines"):
            self.next()
            ev.refines = self.eat_name("event name")
        if self.at_kw("any"):
            self.next()
            while self.peek().kind == "name":
                ev.params.append(self.next().text)
        if self.at_kw("where"):
            self.next()
            ev.guards = self.parse_labeled_preds()
        if self.at_kw("then"):
            self.next()
            while self.peek().kind == "label":
                label = self.next().text
                target = self.eat_name("assignment target")
                # `=` tolerated in action position (hand-written refinements)
                if self.at_op("≔") or self.at_op("="):
                    self.next()
                else:
                    self.err("expected '≔'")
                ev.actions.append(eb.Action(label, target, self.parse_expr()))
        self.eat_kw("end")
        return ev

    def parse_labeled_preds(self) -> list[eb.Labeled]:
        out = []
        while self.peek().kind == "label":
            label = self.next().text
            out.append(eb.Labeled(label, self.parse_pred()))
        return out

    # -- predicates ------------------------------------------------------

    def parse_pred(self):
        left = self.parse_or()
        if self.at_op("⇒"):
            self.next()
            return eb.Implies(left, self.parse_pred())
        return left

    def parse_or(self):
        left = self.parse_and()
        while self.at_op("∨") or self.at_kw("or"):
            self.next()
            left = eb.Or(left, self.parse_and())
        return left

    def parse_and(self):
        left = self.parse_not()
        while self.at_op("∧"):
            self.next()
            left = eb.And(left, self.parse_not())
        return left

    def parse_not(self):
        if self.at_op("¬") or self.at_kw("not"):
            self.next()
            return eb.Not(self.parse_not())
        return self.parse_pred_atom()

    def parse_quantifier(self):
        quant = self.next().text
        var = self.eat_name("bound variable")
        self.eat_op("·")
        body = self.parse_pred()
        # canonical bodies: ∀x·x ∈ D ⇒ P and ∃x·x ∈ D ∧ P
        if quant == "∀":
            match body:
                case eb.Implies(eb.Member(eb.Ref(n), dom), inner) if n == var:
                    return eb.ForAll(var, dom, inner)
            self.err(f"∀{var} needs the shape {var} ∈ D ⇒ P")
        match body:
            case eb.And(eb.Member(eb.Ref(n), dom), inner) if n == var:
                return eb.Exists(var, dom, inner)
        self.err(f"∃{var} needs the shape {var} ∈ D ∧ P")

    _EXPR_CONTINUATIONS = frozenset({
        "=", "≠", "≤", "≥", "<", ">", "∈", "⊆",
        "+", "-", "*", "÷", "∪", "∖", "<+", "↦", "→", "(",
    })

    def _paren_opens_expression(self) -> bool:
        """At '(': does the matching ')' continue as an expression?"""
        depth = 0
        for idx in range(self.pos, len(self.toks)):
            tok = self.toks[idx]
            if tok.kind == "op" and tok.text == "(":
                depth += 1
            elif tok.kind == "op" and tok.text == ")":
                depth -= 1
                if depth == 0:
                    nxt = self.toks[idx + 1]
                    return nxt.kind == "op" and nxt.text in self._EXPR_CONTINUATIONS
            elif tok.kind == "eof":
                break
        self.err("unbalanced parenthesis")

    def parse_pred_atom(self):
        if self.at_op("⊤") or self.at_kw("btrue"):
            self.next()
            return eb.BTrue()
        if self.at_op("⊥") or self.at_kw("bfalse"):
            self.next()
            return eb.BFalse()
        if self.at_op("∀", "∃"):
            return self.parse_quantifier()
        if self.at_op("(") and not self._paren_opens_expression():
            self.eat_op("(")
            inner = self.parse_pred()
            self.eat_op(")")
            return inner
        return self.parse_relation()

    def parse_relation(self):
        left = self.parse_expr()
        t = self.peek()
        if t.kind == "op" and t.text in ("=", "≠", "≤", "≥", "<", ">"):
            self.next()
            return eb.Compare(t.text, left, self.parse_expr())
        if self.at_op("∈"):
            self.next()
            return eb.Member(left, self.parse_expr())
        if self.at_op("⊆"):
            self.next()
            return eb.Subset(left, self.parse_expr())
        self.err("expected a relation operator")

    # -- expressions ------------------------------------------------------

    def parse_expr(self):
        left = self.parse_maplet()
        if self.at_op("→"):
            self.next()
            return eb.TotalFn(left, self.parse_expr())
        return left

    def parse_maplet(self):
        left = self.parse_setop()
        while self.at_op("↦"):
            self.next()
            left = eb.Maplet(left, self.parse_setop())
        return left

    def parse_setop(self):
        left = self.parse_addsub()
        while self.at_op("∪", "∖", "<+"):
            op = self.next().text
            right = self.parse_addsub()
            if op == "∪":
                left = eb.Union(left, right)
            elif op == "∖":
                left = eb.SetMinus(left, right)
            else:
                left = eb.Override(left, right)
        return left

    def parse_addsub(self):
        left = self.parse_muldiv()
        while self.at_op("+", "-"):
            op = self.next().text
            left = eb.Arith(op, left, self.parse_muldiv())
        return left

    def parse_muldiv(self):
        left = self.parse_unary()
        while self.at_op("*", "÷"):
            op = self.next().text
            left = eb.Arith(op, left, self.parse_unary())
        return left

    def parse_unary(self):
        if self.at_op("-"):
            tok = self.next()
            if self.peek().kind == "int":
                return self.parse_postfix(eb.IntLit(-int(self.next().text)))
            raise EbParseError(
                self.filename, tok.line, tok.col,
                "unary minus is only supported on integer literals",
            )
        return self.parse_postfix(None)

    def parse_postfix(self, pre):
        e = pre if pre is not None else self.parse_atom()
        while self.at_op("("):
            self.next()
            arg = self.parse_expr()
            self.eat_op(")")
            e = self._make_application(e, arg)
        return e

    @staticmethod
    def _make_application(fn, arg):
        # {TRUE ↦ a, FALSE ↦ b}(c) is the conditional-map node
        match fn:
            case eb.SetLit((eb.Maplet(eb.BoolLit(True), t), eb.Maplet(eb.BoolLit(False), f))):
                return eb.CondMap(t, f, arg)
        return eb.Apply(fn, arg)

    def parse_atom(self):
        t = self.peek()
        if t.kind == "int":
            self.next()
            return eb.IntLit(int(t.text))
        if t.kind == "kw":
            if t.text in ("INT", "NAT", "NAT1", "BOOL"):
                self.next()
                return eb.TypeAtom(t.text)
            if t.text == "TRUE":
                self.next()
                return eb.TRUE
            if t.text == "FALSE":
                self.next()
                return eb.FALSE
            if t.text == "dom":
                self.next()
                self.eat_op("(")
                inner = self.parse_expr()
                self.eat_op(")")
                return eb.Dom(inner)
            if t.text == "bool":
                self.next()
                self.eat_op("(")
                inner = self.parse_pred()
                self.eat_op(")")
                return eb.BoolOf(inner)
            self.err(f"unexpected keyword {t.text!r} in expression")
        if t.kind == "name":
            self.next()
            return eb.Ref(t.text)
        if self.at_op("∅"):
            self.next()
            return eb.SetLit(())
        if self.at_op("{"):
            self.next()
            elems = []
            if not self.at_op("}"):
                elems.append(self.parse_expr())
                while self.at_op(","):
                    self.next()
                    elems.append(self.parse_expr())
            self.eat_op("}")
            return eb.SetLit(tuple(elems))
        if self.at_op("("):
            self.next()
            inner = self.parse_expr()
            self.eat_op(")")
            return inner
        self.err(f"unexpected token {t.text!r} in expression")


def parse_component(text: str, filename: str = "<eb>"):
    """Parse a single `.eb` component (context or machine)."""
    return _Parser(text, filename).parse_component()


def parse_pred(text: str, filename: str = "<pred>") -> eb.EbPred:
    p = _Parser(text, filename)
    out = p.parse_pred()
    if p.peek().kind != "eof":
        p.err("trailing input after predicate")
    return out


def parse_expr(text: str, filename: str = "<expr>") -> eb.EbExpr:
    p = _Parser(text, filename)
    out = p.parse_expr()
    if p.peek().kind != "eof":
        p.err("trailing input after expression")
    return out


def parse_project(files: list[tuple[str, str]]) -> eb.EbProject:
    """Assemble a project from (filename, text) pairs.

    Exactly one context is expected; machines are ordered along the
    refinement chain, abstract first. Unresolved `sees`/`refines` names raise
    DanglingReference.
    """
    contexts: list[eb.EbContext] = []
    machines: list[eb.EbMachine] = []
    for filename, text in files:
        comp = parse_component(text, filename)
        if isinstance(comp, eb.EbContext):
            contexts.append(comp)
        else:
            machines.append(comp)
    if not contexts:
        raise DanglingReference("no context in project")
    if len(contexts) > 1:
        names = ", ".join(c.name for c in contexts)
        raise DanglingReference(f"expected one context per project, got: {names}")
    context = contexts[0]

    by_name = {m.name: m for m in machines}
    for m in machines:
        if m.sees != context.name:
            raise DanglingReference(f"{m.name} sees unknown context {m.sees}")
        if m.refines is not None and m.refines not in by_name:
            raise DanglingReference(f"{m.name} refines unknown machine {m.refines}")

    ordered: list[eb.EbMachine] = []
    placed: set[str] = set()
    pending = list(machines)
    while pending:
        progressed = False
        for m in list(pending):
            if m.refines is None or m.refines in placed:
                ordered.append(m)
                placed.add(m.name)
                pending.remove(m)
                progressed = True
        if not progressed:
            cycle = ", ".join(m.name for m in pending)
            raise DanglingReference(f"refinement cycle among: {cycle}")

    name = context.name[:-2] if context.name.endswith("_c") else context.name
    return eb.EbProject(name=name, context=context, machines=ordered)
