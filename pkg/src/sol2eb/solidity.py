"""Lexer, AST, parser and printer for the restricted Solidity subset.

The accepted language: one contract per file; state variable declarations
with optional literal initializers; functions over integer/bool/address/bytes
parameters with bodies built from assignment, `if`/`else`, `require`,
`<addr>.transfer(<amount>)` and `return`. Loops, inheritance, libraries,
structs, enums and arrays are outside the subset and rejected at parse time.

`N ether` literals keep their unit flag (the translator maps them onto the
minimum-transfer constant); `parse_contract(print_contract(ast))` is the
identity on spans-ignored ASTs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass(frozen=True)
class Span:
    line: int
    col: int
    end_line: int
    end_col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


NO_SPAN = Span(0, 0, 0, 0)


def _span_field():
    return field(default=NO_SPAN, compare=False, repr=False)


class SolParseError(Exception):
    def __init__(self, filename: str, line: int, col: int, message: str,
                 expected: frozenset[str] = frozenset()):
        detail = message
        if expected:
            detail += " (expected one of: " + ", ".join(sorted(expected)) + ")"
        super().__init__(f"{filename}:{line}:{col}: {detail}")
        self.filename = filename
        self.line = line
        self.col = col
        self.message = message
        self.expected = expected

    def diagnostic(self) -> str:
        return f"{self.filename}:{self.line}:{self.col}: error: {self.message}"


class SolLexError(SolParseError):
    pass


# ---------------------------------------------------------------------------
# types


class SolType:
    pass


@dataclass(frozen=True)
class TyInt(SolType):
    def __str__(self):
        return "uint"


@dataclass(frozen=True)
class TyBool(SolType):
    def __str__(self):
        return "bool"


@dataclass(frozen=True)
class TyAddress(SolType):
    def __str__(self):
        return "address"


@dataclass(frozen=True)
class TyBytes(SolType):
    width: int | None = None  # None = dynamic `bytes`

    def __str__(self):
        return "bytes" if self.width is None else f"bytes{self.width}"


@dataclass(frozen=True)
class TyMapping(SolType):
    key: SolType
    value: SolType

    def __post_init__(self):
        if isinstance(self.key, TyMapping) or isinstance(self.value, TyMapping):
            raise ValueError("nested mappings are outside the subset")

    def __str__(self):
        return f"mapping({self.key} => {self.value})"


# ---------------------------------------------------------------------------
# expressions


class Expr:
    pass


@dataclass(frozen=True)
class IntLit(Expr):
    value: int
    ether: bool = False  # `N ether`: unit recorded, value stays N
    span: Span = _span_field()


@dataclass(frozen=True)
class BoolLit(Expr):
    value: bool
    span: Span = _span_field()


@dataclass(frozen=True)
class ByteLit(Expr):
    text: str  # source form, e.g. 0xdeadbeef
    span: Span = _span_field()

    @property
    def value(self) -> int:
        return int(self.text, 16)


@dataclass(frozen=True)
class AddrLit(Expr):
    text: str  # 40 hex digits
    span: Span = _span_field()


@dataclass(frozen=True)
class Var(Expr):
    name: str
    span: Span = _span_field()


@dataclass(frozen=True)
class MsgSender(Expr):
    span: Span = _span_field()


@dataclass(frozen=True)
class MsgValue(Expr):
    span: Span = _span_field()


@dataclass(frozen=True)
class ThisBalance(Expr):
    span: Span = _span_field()


@dataclass(frozen=True)
class BalanceOf(Expr):
    addr: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Sha3(Expr):
    arg: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Arith(Expr):
    op: str  # + - * /
    left: Expr
    right: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Cmp(Expr):
    op: str  # <= >= == !=
    left: Expr
    right: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class BoolOp(Expr):
    op: str  # && ||
    left: Expr
    right: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Not(Expr):
    body: Expr
    span: Span = _span_field()


# ---------------------------------------------------------------------------
# statements (bodies and branches are source-ordered lists)


class Stmt:
    pass


@dataclass(frozen=True)
class Assign(Stmt):
    target: str
    value: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class If(Stmt):
    cond: Expr
    then: tuple[Stmt, ...]
    orelse: tuple[Stmt, ...] | None = None
    span: Span = _span_field()


@dataclass(frozen=True)
class Require(Stmt):
    """require(b): guards everything after it in the enclosing body."""

    cond: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Transfer(Stmt):
    to: Expr
    amount: Expr
    span: Span = _span_field()


@dataclass(frozen=True)
class Return(Stmt):
    value: Expr
    span: Span = _span_field()


# ---------------------------------------------------------------------------
# declarations


@dataclass(frozen=True)
class Param:
    name: str
    ty: SolType
    span: Span = _span_field()


@dataclass(frozen=True)
class StateVarDecl:
    name: str
    ty: SolType
    qualifiers: frozenset[str] = frozenset()
    init: Expr | None = None
    span: Span = _span_field()


@dataclass(frozen=True)
class FunctionDecl:
    name: str | None  # None = fallback function
    params: tuple[Param, ...] = ()
    qualifiers: frozenset[str] = frozenset()
    returns: SolType | None = None
    body: tuple[Stmt, ...] = ()
    span: Span = _span_field()


@dataclass(frozen=True)
class ContractAst:
    name: str
    pragma: str | None = None
    state_vars: tuple[StateVarDecl, ...] = ()
    functions: tuple[FunctionDecl, ...] = ()
    span: Span = _span_field()


# ---------------------------------------------------------------------------
# lexer

_LOOP_KEYWORDS = {"while", "for", "do"}
_KEYWORDS = {
    "pragma", "contract", "function", "returns", "return", "if", "else",
    "require", "mapping", "true", "false", "ether",
    "bool", "address", "bytes", "integer", "this", "msg",
    "public", "private", "internal", "external", "payable", "constant",
    "view", "pure",
} | _LOOP_KEYWORDS

_INT_TYPE_RE = re.compile(r"(u?int)([0-9]*)\Z")
_BYTES_TYPE_RE = re.compile(r"bytes([0-9]+)\Z")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPS = [
    "&&", "||", "==", "!=", "<=", ">=", "=>",
    "=", "!", "<", ">", "+", "-", "*", "/",
    "(", ")", "{", "}", ";", ",", ".", "^",
]


@dataclass(frozen=True)
class Token:
    kind: str  # name | kw | inttype | bytestype | int | hex | op | eof
    text: str
    line: int
    col: int


class Lexer:
    def __init__(self, source: str, filename: str = "<sol>"):
        self.source = source
        self.filename = filename

    def tokens(self) -> list[Token]:
        src, n = self.source, len(self.source)
        toks: list[Token] = []
        i, line, col = 0, 1, 1

        def err(msg):
            raise SolLexError(self.filename, line, col, msg)

        while i < n:
            ch = src[i]
            if ch == "\n":
                i, line, col = i + 1, line + 1, 1
                continue
            if ch in " \t\r":
                i, col = i + 1, col + 1
                continue
            if src.startswith("//", i):
                while i < n and src[i] != "\n":
                    i += 1
                continue
            if src.startswith("/*", i):
                end = src.find("*/", i + 2)
                if end < 0:
                    err("unterminated block comment")
                skipped = src[i:end + 2]
                line += skipped.count("\n")
                col = (len(skipped) - skipped.rfind("\n")) if "\n" in skipped else col + len(skipped)
                i = end + 2
                continue
            if src.startswith("0x", i) or src.startswith("0X", i):
                j = i + 2
                while j < n and src[j] in "0123456789abcdefABCDEF":
                    j += 1
                if j == i + 2:
                    err("hex literal needs digits")
                toks.append(Token("hex", src[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch.isdigit():
                j = i
                while j < n and src[j].isdigit():
                    j += 1
                toks.append(Token("int", src[i:j], line, col))
                col += j - i
                i = j
                continue
            m = _NAME_RE.match(src, i)
            if m:
                word = m.group(0)
                if word in _LOOP_KEYWORDS:
                    err(f"'{word}': loops are outside the Solidity subset")
                if word == "pragma":
                    # free-form directive: capture raw text up to the semicolon
                    toks.append(Token("kw", word, line, col))
                    j = m.end()
                    end = src.find(";", j)
                    if end < 0:
                        err("unterminated pragma")
                    toks.append(Token("pragmatext", src[j:end].strip(), line,
                                      col + (j - i)))
                    skipped = src[i:end + 1]
                    line += skipped.count("\n")
                    col = (len(skipped) - skipped.rfind("\n")) if "\n" in skipped \
                        else col + len(skipped)
                    i = end + 1
                    continue
                if word in _KEYWORDS:
                    kind = "kw"
                elif _INT_TYPE_RE.match(word):
                    kind = "inttype"
                elif _BYTES_TYPE_RE.match(word):
                    kind = "bytestype"
                else:
                    kind = "name"
                toks.append(Token(kind, word, line, col))
                col += len(word)
                i = m.end()
                continue
            for op in _OPS:
                if src.startswith(op, i):
                    toks.append(Token("op", op, line, col))
                    i += len(op)
                    col += len(op)
                    break
            else:
                err(f"unexpected character {ch!r}")
        toks.append(Token("eof", "", line, col))
        return toks


# ---------------------------------------------------------------------------
# parser


class Parser:
    def __init__(self, source: str, filename: str = "<sol>"):
        self.filename = filename
        self.toks = Lexer(source, filename).tokens()
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def err(self, message: str, expected: frozenset[str] = frozenset(), tok: Token | None = None):
        t = tok or self.peek()
        raise SolParseError(self.filename, t.line, t.col, message, expected)

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.peek()
        return t.kind == kind and (text is None or t.text == text)

    def eat(self, kind: str, text: str) -> Token:
        if not self.at(kind, text):
            self.err(f"got {self.peek().text!r}", expected=frozenset({text}))
        return self.next()

    def _span_from(self, start: Token) -> Span:
        last = self.toks[max(self.pos - 1, 0)]
        return Span(start.line, start.col, last.line, last.col + len(last.text))

    # -- top level -----------------------------------------------------------

    def parse_contract(self) -> ContractAst:
        pragma = None
        if self.at("kw", "pragma"):
            self.next()
            tok = self.peek()
            if tok.kind != "pragmatext":
                self.err("malformed pragma directive")
            pragma = self.next().text

        start = self.eat("kw", "contract")
        name = self._identifier("contract name")
        self.eat("op", "{")
        state_vars: list[StateVarDecl] = []
        functions: list[FunctionDecl] = []
        while not self.at("op", "}"):
            if self.peek().kind == "eof":
                self.err("unterminated contract body")
            if self.at("kw", "function"):
                functions.append(self.parse_function())
            else:
                state_vars.append(self.parse_state_var())
        self.eat("op", "}")
        if self.peek().kind != "eof":
            self.err("only one contract per file is supported")

        seen = set()
        for sv in state_vars:
            if sv.name in seen:
                self.err(f"duplicate state variable {sv.name}", tok=self._tok_at(sv.span))
            seen.add(sv.name)
        seen = set()
        fallbacks = 0
        for fn in functions:
            if fn.name is None:
                fallbacks += 1
                if fallbacks > 1:
                    self.err("more than one fallback function", tok=self._tok_at(fn.span))
                continue
            if fn.name in seen:
                self.err(f"duplicate function {fn.name}", tok=self._tok_at(fn.span))
            seen.add(fn.name)

        return ContractAst(
            name=name, pragma=pragma,
            state_vars=tuple(state_vars), functions=tuple(functions),
            span=self._span_from(start),
        )

    def _tok_at(self, span: Span) -> Token:
        return Token("name", "", span.line, span.col)

    def _identifier(self, what: str) -> str:
        t = self.peek()
        if t.kind != "name":
            self.err(f"expected {what}, got {t.text!r}")
        return self.next().text

    # -- types -----------------------------------------------------------

    def parse_type(self) -> SolType:
        t = self.peek()
        if t.kind == "inttype" or (t.kind == "kw" and t.text == "integer"):
            self.next()
            return TyInt()
        if t.kind == "kw" and t.text == "bool":
            self.next()
            return TyBool()
        if t.kind == "kw" and t.text == "address":
            self.next()
            return TyAddress()
        if t.kind == "kw" and t.text == "bytes":
            self.next()
            return TyBytes(None)
        if t.kind == "bytestype":
            self.next()
            return TyBytes(int(t.text[5:]))
        if t.kind == "kw" and t.text == "mapping":
            self.next()
            self.eat("op", "(")
            key = self.parse_type()
            self.eat("op", "=>")
            value = self.parse_type()
            self.eat("op", ")")
            if isinstance(key, TyMapping) or isinstance(value, TyMapping):
                self.err("nested mappings are outside the subset", tok=t)
            return TyMapping(key, value)
        self.err(f"expected a type, got {t.text!r}")

    _QUALIFIERS = {"public", "private", "internal", "external", "payable",
                   "constant", "view", "pure"}

    def parse_qualifiers(self) -> frozenset[str]:
        quals = set()
        while self.peek().kind == "kw" and self.peek().text in self._QUALIFIERS:
            word = self.next().text
            # view/pure are modern spellings of constant
            quals.add("constant" if word in ("view", "pure") else word)
        return frozenset(quals)

    # -- declarations -------------------------------------------------------

    def parse_state_var(self) -> StateVarDecl:
        start = self.peek()
        ty = self.parse_type()
        quals = self.parse_qualifiers()
        name = self._identifier("state variable name")
        init = None
        if self.at("op", "="):
            self.next()
            init = self.parse_expr()
        self.eat("op", ";")
        return StateVarDecl(name=name, ty=ty, qualifiers=quals, init=init,
                            span=self._span_from(start))

    def parse_function(self) -> FunctionDecl:
        start = self.eat("kw", "function")
        name = None
        if self.peek().kind == "name":
            name = self.next().text
        self.eat("op", "(")
        params: list[Param] = []
        if not self.at("op", ")"):
            while True:
                pstart = self.peek()
                ty = self.parse_type()
                pname = self._identifier("parameter name")
                params.append(Param(pname, ty, self._span_from(pstart)))
                if self.at("op", ","):
                    self.next()
                    continue
                break
        self.eat("op", ")")

        quals = set(self.parse_qualifiers())
        returns = None
        while True:
            if self.at("kw", "returns"):
                self.next()
                self.eat("op", "(")
                returns = self.parse_type()
                if self.peek().kind == "name":
                    self.next()  # optional return-value name
                self.eat("op", ")")
                quals |= self.parse_qualifiers()
                continue
            break

        self.eat("op", "{")
        body = self.parse_block_rest()

        pnames = [p.name for p in params]
        if len(set(pnames)) != len(pnames):
            self.err("duplicate parameter name", tok=start)
        return FunctionDecl(
            name=name, params=tuple(params), qualifiers=frozenset(quals),
            returns=returns, body=tuple(body), span=self._span_from(start),
        )

    # -- statements ------------------------------------------------------

    def parse_block_rest(self) -> list[Stmt]:
        """Statements up to and including the closing brace."""
        out: list[Stmt] = []
        while not self.at("op", "}"):
            if self.peek().kind == "eof":
                self.err("unterminated block")
            out.append(self.parse_stmt())
        self.next()
        return out

    def parse_branch(self) -> tuple[Stmt, ...]:
        if self.at("op", "{"):
            self.next()
            return tuple(self.parse_block_rest())
        return (self.parse_stmt(),)

    def parse_stmt(self) -> Stmt:
        t = self.peek()
        if self.at("kw", "if"):
            start = self.next()
            self.eat("op", "(")
            cond = self.parse_expr()
            self.eat("op", ")")
            then = self.parse_branch()
            orelse = None
            if self.at("kw", "else"):
                self.next()
                orelse = self.parse_branch()
            return If(cond, then, orelse, span=self._span_from(start))
        if self.at("kw", "require"):
            start = self.next()
            self.eat("op", "(")
            cond = self.parse_expr()
            self.eat("op", ")")
            self.eat("op", ";")
            return Require(cond, span=self._span_from(start))
        if self.at("kw", "return"):
            start = self.next()
            value = self.parse_expr()
            self.eat("op", ";")
            return Return(value, span=self._span_from(start))
        if t.kind == "name" and self.peek(1).kind == "op" and self.peek(1).text == "=":
            start = self.next()
            self.next()
            value = self.parse_expr()
            self.eat("op", ";")
            return Assign(start.text, value, span=self._span_from(start))
        # the remaining statement form is <address-expr>.transfer(<amount>);
        start = t
        target = self.parse_postfix()
        if self.at("op", "."):
            self.next()
            word = self._identifier("member name")
            if word == "transfer":
                self.eat("op", "(")
                amount = self.parse_expr()
                self.eat("op", ")")
                self.eat("op", ";")
                return Transfer(to=target, amount=amount, span=self._span_from(start))
            self.err(f".{word}: only .transfer(...) statements are in the subset", tok=start)
        self.err(
            "statement outside the subset "
            "(assignment, if, require, return, transfer)", tok=start,
        )

    # -- expressions ------------------------------------------------------

    def parse_expr(self) -> Expr:
        return self.parse_lor()

    def parse_lor(self) -> Expr:
        left = self.parse_land()
        while self.at("op", "||"):
            start = self.peek()
            self.next()
            left = BoolOp("||", left, self.parse_land(), span=self._span_from(start))
        return left

    def parse_land(self) -> Expr:
        left = self.parse_cmp()
        while self.at("op", "&&"):
            start = self.peek()
            self.next()
            left = BoolOp("&&", left, self.parse_cmp(), span=self._span_from(start))
        return left

    def parse_cmp(self) -> Expr:
        left = self.parse_add()
        t = self.peek()
        if t.kind == "op" and t.text in ("<", ">"):
            self.err(f"{t.text!r}: only <=, >=, ==, != comparisons are in the subset")
        if t.kind == "op" and t.text in ("<=", ">=", "==", "!="):
            self.next()
            right = self.parse_add()
            u = self.peek()
            if u.kind == "op" and u.text in ("<=", ">=", "==", "!=", "<", ">"):
                self.err("chained comparisons are outside the subset")
            return Cmp(t.text, left, right, span=Span(
                t.line, t.col, t.line, t.col + len(t.text)))
        return left

    def parse_add(self) -> Expr:
        left = self.parse_mul()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.next().text
            left = Arith(op, left, self.parse_mul())
        return left

    def parse_mul(self) -> Expr:
        left = self.parse_unary()
        while self.at("op", "*") or self.at("op", "/"):
            op = self.next().text
            left = Arith(op, left, self.parse_unary())
        return left

    def parse_unary(self) -> Expr:
        if self.at("op", "!"):
            start = self.next()
            return Not(self.parse_unary(), span=self._span_from(start))
        if self.at("op", "-"):
            self.err("unary minus is outside the subset")
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        e = self.parse_atom()
        while self.at("op", ".") :
            # postfix members other than .balance belong to statements
            nxt = self.peek(1)
            if nxt.kind == "name" and nxt.text == "balance":
                start = self.next()
                self.next()
                e = BalanceOf(e, span=self._span_from(start))
                continue
            break
        return e

    def parse_atom(self) -> Expr:
        t = self.peek()
        if t.kind == "int":
            self.next()
            ether = False
            if self.at("kw", "ether"):
                self.next()
                ether = True
            return IntLit(int(t.text), ether=ether,
                          span=Span(t.line, t.col, t.line, t.col + len(t.text)))
        if t.kind == "hex":
            self.next()
            digits = t.text[2:]
            span = Span(t.line, t.col, t.line, t.col + len(t.text))
            if len(digits) == 40:
                return AddrLit(t.text, span=span)
            return ByteLit(t.text, span=span)
        if self.at("kw", "true") or self.at("kw", "false"):
            tok = self.next()
            return BoolLit(tok.text == "true",
                           span=Span(tok.line, tok.col, tok.line, tok.col + len(tok.text)))
        if self.at("kw", "msg"):
            start = self.next()
            self.eat("op", ".")
            word = self._identifier("msg member")
            if word == "sender":
                return MsgSender(span=self._span_from(start))
            if word == "value":
                return MsgValue(span=self._span_from(start))
            self.err(f"msg.{word} is outside the subset", tok=start)
        if self.at("kw", "this"):
            start = self.next()
            self.eat("op", ".")
            word = self._identifier("this member")
            if word == "balance":
                return ThisBalance(span=self._span_from(start))
            self.err(f"this.{word} is outside the subset", tok=start)
        if t.kind == "name":
            self.next()
            if t.text == "sha3" and self.at("op", "("):
                self.next()
                arg = self.parse_expr()
                self.eat("op", ")")
                return Sha3(arg, span=Span(t.line, t.col, t.line, t.col + len(t.text)))
            if self.at("op", "("):
                self.err(f"call to {t.text!r} is outside the subset (only sha3)", tok=t)
            return Var(t.text, span=Span(t.line, t.col, t.line, t.col + len(t.text)))
        if self.at("op", "("):
            self.next()
            inner = self.parse_expr()
            self.eat("op", ")")
            return inner
        self.err(f"unexpected token {t.text!r} in expression")


def parse_contract(source_text: str, filename: str = "<sol>") -> ContractAst:
    """Parse one contract; every node carries a source span for diagnostics."""
    return Parser(source_text, filename).parse_contract()


# ---------------------------------------------------------------------------
# printer (testing aid: parse_contract(print_contract(ast)) == ast)


def _p_expr(e: Expr, level: int = 0) -> str:
    # levels: 0 or, 1 and, 2 cmp, 3 add, 4 mul, 5 unary/postfix
    def wrap(text: str, mine: int) -> str:
        return f"({text})" if mine < level else text

    match e:
        case IntLit(v, ether):
            return f"{v} ether" if ether else str(v)
        case BoolLit(v):
            return "true" if v else "false"
        case ByteLit(text) | AddrLit(text):
            return text
        case Var(name):
            return name
        case MsgSender():
            return "msg.sender"
        case MsgValue():
            return "msg.value"
        case ThisBalance():
            return "this.balance"
        case BalanceOf(addr):
            return f"{_p_expr(addr, 5)}.balance"
        case Sha3(arg):
            return f"sha3({_p_expr(arg)})"
        case Arith(op, l, r):
            mine = 4 if op in "*/" else 3
            return wrap(f"{_p_expr(l, mine)} {op} {_p_expr(r, mine + 1)}", mine)
        case Cmp(op, l, r):
            return wrap(f"{_p_expr(l, 3)} {op} {_p_expr(r, 3)}", 2)
        case BoolOp(op, l, r):
            mine = 1 if op == "&&" else 0
            return wrap(f"{_p_expr(l, mine)} {op} {_p_expr(r, mine + 1)}", mine)
        case Not(body):
            return f"!{_p_expr(body, 5)}"
    raise TypeError(f"not an expression: {e!r}")


def _p_stmt(s: Stmt, indent: str) -> list[str]:
    match s:
        case Assign(target, value):
            return [f"{indent}{target} = {_p_expr(value)};"]
        case Require(cond):
            return [f"{indent}require({_p_expr(cond)});"]
        case Return(value):
            return [f"{indent}return {_p_expr(value)};"]
        case Transfer(to, amount):
            return [f"{indent}{_p_expr(to, 5)}.transfer({_p_expr(amount)});"]
        case If(cond, then, orelse):
            lines = [f"{indent}if ({_p_expr(cond)}) {{"]
            for st in then:
                lines.extend(_p_stmt(st, indent + "    "))
            lines.append(f"{indent}}}")
            if orelse is not None:
                lines.append(f"{indent}else {{")
                for st in orelse:
                    lines.extend(_p_stmt(st, indent + "    "))
                lines.append(f"{indent}}}")
            return lines
    raise TypeError(f"not a statement: {s!r}")


def print_contract(ast: ContractAst) -> str:
    lines: list[str] = []
    if ast.pragma is not None:
        lines.append(f"pragma {ast.pragma};")
    lines.append(f"contract {ast.name} {{")
    for sv in ast.state_vars:
        quals = "".join(f" {q}" for q in sorted(sv.qualifiers))
        init = f" = {_p_expr(sv.init)}" if sv.init is not None else ""
        lines.append(f"    {sv.ty}{quals} {sv.name}{init};")
    for fn in ast.functions:
        params = ", ".join(f"{p.ty} {p.name}" for p in fn.params)
        quals = "".join(f" {q}" for q in sorted(fn.qualifiers))
        rets = f" returns ({fn.returns})" if fn.returns is not None else ""
        lines.append(f"    function {fn.name or ''}({params}){quals}{rets} {{")
        for st in fn.body:
            lines.extend(_p_stmt(st, "        "))
        lines.append("    }")
    lines.append("}")
    return "\n".join(lines) + "\n"
