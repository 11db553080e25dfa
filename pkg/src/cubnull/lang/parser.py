"""Tokenizer and recursive-descent parser for ``.ct`` files.

Grammar sketch (lowest precedence first)::

    term   ::= '\\' binders '.' term | 'let' x [':' term] '=' term 'in' term
             | 'elim' atom atom '{' clause (';' clause)* '}'
             | group+ '->' term | group '*' term | arrow
    arrow  ::= prod ['->' arrow]
    prod   ::= or ['*' prod]
    or     ::= and ('\\/' and)*
    and    ::= eq ('/\\' eq)*
    eq     ::= app ['=' app]
    app    ::= postfix (postfix | '{' term '}')*
    postfix::= atom ('.1' | '.2')*
    atom   ::= ident | '_' | numeral | 'U<k>' | '(' term ')' | '(' term ',' term ')'
             | '(' term ':' term ')' | '[' [or '->' term (',' or '->' term)*] ']'
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import ast as A

KEYWORDS = {"def", "axiom", "hit", "where", "import", "let", "in", "elim", "@label"}

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<lcomment>--[^\n]*)
  | (?P<bcomment>\{-(?:.|\n)*?-\})
  | (?P<string>"[^"\n]*")
  | (?P<label>@label\b)
  | (?P<num>\d+)
  | (?P<ident>[^\W\d][\w']*)
  | (?P<sym>->|=>|/\\|\\/|\\|\(|\)|\{|\}|\[|\]|,|:|=|\*|\||;|@|\.[12](?![\w])|\.|/)
""", re.VERBOSE)


class ParseError(Exception):
    def __init__(self, msg: str, pos):
        super().__init__(f"{pos[0]}:{pos[1]}: {msg}" if pos else msg)
        self.msg = msg
        self.pos = pos


@dataclass(frozen=True)
class Tok:
    kind: str       # ident, num, string, sym, kw, proj, eof
    text: str
    pos: tuple


def tokenize(src: str) -> list[Tok]:
    out: list[Tok] = []
    i, line, col = 0, 1, 1
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", (line, col))
        kind, text = m.lastgroup, m.group()
        pos = (line, col)
        if kind == "sym" and text in (".1", ".2"):
            prev = out[-1] if out else None
            glued = prev is not None and prev.kind in ("ident", "sym", "proj") and \
                (prev.kind != "sym" or prev.text in (")", "]")) and \
                prev.pos[0] == line and prev.pos[1] + len(prev.text) == col
            if glued:
                kind = "proj"
            else:
                # a lambda dot followed by a numeral
                out.append(Tok("sym", ".", pos))
                out.append(Tok("num", text[1], (line, col + 1)))
                kind = None
        if kind in ("ident",) and text in KEYWORDS:
            kind = "kw"
        if kind == "label":
            kind = "kw"
        if kind in ("ident", "num", "string", "sym", "kw", "proj"):
            out.append(Tok(kind, text, pos))
        nl = text.count("\n")
        if nl:
            line += nl
            col = len(text) - text.rfind("\n")
        else:
            col += len(text)
        i = m.end()
    out.append(Tok("eof", "", (line, col)))
    return out


_UNIV = re.compile(r"U(\d+)$")


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0
        self.no_eq = False   # a bare '=' ends the term (declaration types)

    # token helpers -------------------------------------------------------------

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, text: str, kind: str | None = None) -> bool:
        t = self.tok
        return t.text == text and (kind is None or t.kind == kind) and t.kind != "string"

    def accept(self, text: str) -> bool:
        if self.at(text) and self.tok.kind in ("sym", "kw"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Tok:
        if not (self.at(text) and self.tok.kind in ("sym", "kw")):
            self.fail(f"expected '{text}'")
        t = self.tok
        self.i += 1
        return t

    def fail(self, msg: str):
        t = self.tok
        shown = "end of input" if t.kind == "eof" else f"'{t.text}'"
        raise ParseError(f"{msg}, found {shown}", t.pos)

    def ident(self) -> str:
        if self.tok.kind != "ident":
            self.fail("expected an identifier")
        t = self.tok
        self.i += 1
        return t.text

    def name(self) -> str:
        """An identifier or ``_``."""
        return self.ident()

    # declarations ----------------------------------------------------------------

    def module(self) -> A.Module:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
        return A.Module(tuple(decls))

    def decl(self):
        label = ""
        if self.accept("@label"):
            if self.tok.kind != "string":
                self.fail("expected a label string")
            label = self.tok.text[1:-1]
            self.i += 1
        pos = self.tok.pos
        if self.accept("import"):
            if label:
                self.fail("labels attach to definitions")
            parts = [self.ident()]
            while self.accept("/"):
                parts.append(self.ident())
            return A.Import("/".join(parts), pos)
        if self.accept("def"):
            name = self.ident()
            tel = self.telescope()
            ty = self.decl_type() if self.accept(":") else None
            self.expect("=")
            return A.Def(name, tel, ty, self.term(), label, pos)
        if self.accept("axiom"):
            name = self.ident()
            tel = self.telescope()
            self.expect(":")
            return A.Axiom(name, tel, self.term(), label, pos)
        if self.accept("hit"):
            name = self.ident()
            tel = self.telescope()
            self.expect("where")
            cons = []
            while self.accept("|"):
                cons.append(self.con_def())
            return A.HitDef(name, tel, tuple(cons), label, pos)
        self.fail("expected a declaration")

    def decl_type(self) -> A.Node:
        prev, self.no_eq = self.no_eq, True
        try:
            return self.term()
        finally:
            self.no_eq = prev

    def nested(self, fn):
        prev, self.no_eq = self.no_eq, False
        try:
            return fn()
        finally:
            self.no_eq = prev

    def con_def(self) -> A.ConDef:
        name = self.ident()
        tel = self.telescope()
        inames = ()
        boundary = ()
        if self.accept("@"):
            ns = []
            while self.tok.kind == "ident":
                ns.append(self.ident())
            if not ns:
                self.fail("expected interval variable names")
            inames = tuple(ns)
        if self.at("[", "sym"):
            boundary = self.sys().entries
        return A.ConDef(name, tel, inames, boundary)

    def telescope(self) -> tuple:
        out = []
        while self.at("(", "sym") or self.at("{", "sym"):
            out.extend(self.group())
        return tuple(out)

    def group(self) -> list:
        implicit = self.at("{")
        close = "}" if implicit else ")"
        self.i += 1
        names = [self.name()]
        while self.tok.kind == "ident":
            names.append(self.name())
        self.expect(":")
        ty = self.nested(self.term)
        self.expect(close)
        return [A.Binder(n, ty, implicit) for n in names]

    # terms -------------------------------------------------------------------------

    def term(self) -> A.Node:
        pos = self.tok.pos
        if self.accept("\\"):
            binders = self.lam_binders()
            self.expect(".")
            body = self.term()
            for b in reversed(binders):
                body = A.Lam(b, body, pos)
            return body
        if self.accept("let"):
            name = self.name()
            ty = self.decl_type() if self.accept(":") else None
            self.expect("=")
            val = self.term()
            self.expect("in")
            return A.Let(name, ty, val, self.term(), pos)
        if self.accept("elim"):
            scrut = self.postfix()
            motive = self.postfix()
            self.expect("{")
            clauses = []
            if not self.at("}"):
                clauses.append(self.clause())
                while self.accept(";"):
                    clauses.append(self.clause())
            self.expect("}")
            return A.Elim(scrut, motive, tuple(clauses), pos)
        if self.at("(", "sym") or self.at("{", "sym"):
            save = self.i
            try:
                groups = []
                while self.at("(", "sym") or self.at("{", "sym"):
                    groups.append(self.group())
                if self.at("->") or (self.at("*") and len(groups) == 1):
                    sigma = self.at("*")
                    self.i += 1
                    body = self.term()
                    binders = [b for g in groups for b in g]
                    for b in reversed(binders):
                        body = A.Sigma(b, body, pos) if sigma else A.Pi(b, body, pos)
                    return body
            except ParseError:
                pass
            self.i = save
        return self.arrow()

    def lam_binders(self) -> list:
        out = []
        while True:
            if self.tok.kind == "ident":
                out.append(A.Binder(self.name(), None, False))
            elif self.at("(", "sym") or self.at("{", "sym"):
                if self.at("{") and self.peek(2).text == "}":
                    self.i += 1
                    out.append(A.Binder(self.name(), None, True))
                    self.expect("}")
                else:
                    out.extend(self.group())
            else:
                break
        if not out:
            self.fail("expected a binder")
        return out

    def clause(self) -> A.Clause:
        con = self.ident()
        args, ihs, inames = [], [], []
        while self.tok.kind == "ident":
            args.append(self.name())
        if self.accept("|"):
            while self.tok.kind == "ident":
                ihs.append(self.name())
        if self.accept("@"):
            while self.tok.kind == "ident":
                inames.append(self.name())
        self.expect("=>")
        return A.Clause(con, tuple(args), tuple(ihs), tuple(inames), self.term())

    def arrow(self) -> A.Node:
        pos = self.tok.pos
        left = self.prod()
        if self.accept("->"):
            return A.Pi(A.Binder("_", left, False), self.arrow_rhs(), pos)
        return left

    def arrow_rhs(self) -> A.Node:
        # the codomain of a non-dependent arrow may itself be dependent
        if self.at("(", "sym") or self.at("{", "sym") or self.at("\\") or self.at("let") \
                or self.at("elim"):
            return self.term()
        return self.arrow()

    def prod(self) -> A.Node:
        pos = self.tok.pos
        left = self.or_()
        if self.accept("*"):
            rhs = self.term() if (self.at("(", "sym") or self.at("{", "sym")) else self.prod()
            return A.Sigma(A.Binder("_", left, False), rhs, pos)
        return left

    def or_(self) -> A.Node:
        left = self.and_()
        while self.at("\\/"):
            pos = self.tok.pos
            self.i += 1
            left = A.BinOp("\\/", left, self.and_(), pos)
        return left

    def and_(self) -> A.Node:
        left = self.eq()
        while self.at("/\\"):
            pos = self.tok.pos
            self.i += 1
            left = A.BinOp("/\\", left, self.eq(), pos)
        return left

    def eq(self) -> A.Node:
        left = self.app()
        if self.at("=", "sym") and not self.no_eq:
            pos = self.tok.pos
            self.i += 1
            return A.BinOp("=", left, self.app(), pos)
        return left

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("ident", "num"):
            return True
        return t.kind == "sym" and t.text in ("(", "[")

    def app(self) -> A.Node:
        pos = self.tok.pos
        fn = self.postfix()
        while True:
            if self.starts_atom():
                fn = A.App(fn, self.postfix(), False, pos)
            elif self.at("{", "sym"):
                self.i += 1
                arg = self.nested(self.term)
                self.expect("}")
                fn = A.App(fn, arg, True, pos)
            else:
                return fn

    def postfix(self) -> A.Node:
        t = self.atom()
        while self.tok.kind == "proj":
            pos = self.tok.pos
            t = A.Proj(t, int(self.tok.text[1]), pos)
            self.i += 1
        return t

    def atom(self) -> A.Node:
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            if t.text == "_":
                return A.Hole(t.pos)
            m = _UNIV.match(t.text)
            if m:
                return A.Univ(int(m.group(1)), t.pos)
            return A.Var(t.text, t.pos)
        if t.kind == "num":
            self.i += 1
            return A.Num(int(t.text), t.pos)
        if self.accept("("):
            return self.nested(lambda: self.paren_rest(t.pos))
        if self.at("[", "sym"):
            return self.nested(self.sys)
        self.fail("expected a term")

    def paren_rest(self, pos) -> A.Node:
        inner = self.term()
        if self.accept(","):
            snd = self.term()
            self.expect(")")
            return A.Pair(inner, snd, pos)
        if self.accept(":"):
            ty = self.term()
            self.expect(")")
            return A.Ann(inner, ty, pos)
        self.expect(")")
        return inner

    def sys(self) -> A.Sys:
        pos = self.expect("[").pos
        entries = []
        if not self.at("]"):
            while True:
                cof = self.or_()
                self.expect("->")
                entries.append((cof, self.term()))
                if not self.accept(","):
                    break
        self.expect("]")
        return A.Sys(tuple(entries), pos)


def parse_module(src: str) -> A.Module:
    return Parser(src).module()


def parse_term(src: str) -> A.Node:
    p = Parser(src)
    t = p.term()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return t
