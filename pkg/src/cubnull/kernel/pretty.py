"""Turn core terms back into surface syntax for display and normal forms."""

from __future__ import annotations

from ..interval import CAnd, CBot, CEq, COr, CTop, IJoin, IMeet, IOne, IVar, IZero
from ..lang import ast as A
from ..lang.printer import show
from . import syntax as S
from .session import current
from .traverse import uses_var


class Delab:
    def __init__(self, names=()):
        self.names = list(names)

    def fresh(self, base: str) -> str:
        base = base if base and base != "_" else "x"
        name, k = base, 0
        while name in self.names:
            k += 1
            name = f"{base}{k}"
        return name

    def under(self, name: str, fn, *args):
        self.names.append(name)
        try:
            return fn(*args)
        finally:
            self.names.pop()

    def binder_name(self, name: str, body, extra: int = 0) -> str:
        if not uses_var(body, extra):
            return "_"
        return self.fresh(name)

    # interval and cofibration ---------------------------------------------------

    def iv(self, r):
        t = type(r)
        if t is IZero:
            return A.Num(0)
        if t is IOne:
            return A.Num(1)
        if t is IVar:
            return A.Var(self.var(r.index))
        op = "/\\" if t is IMeet else "\\/"
        return A.BinOp(op, self.iv(r.left), self.iv(r.right))

    def cof(self, c):
        t = type(c)
        if t is CTop:
            return A.Var("top")
        if t is CBot:
            return A.Var("bot")
        if t is CEq:
            return A.BinOp("=", self.iv(c.term), A.Num(c.eps))
        op = "/\\" if t is CAnd else "\\/"
        return A.BinOp(op, self.cof(c.left), self.cof(c.right))

    def var(self, ix: int) -> str:
        if ix < len(self.names):
            return self.names[-1 - ix]
        return f"#{ix - len(self.names)}"

    # terms -------------------------------------------------------------------------

    def go(self, t):
        m = getattr(self, "d_" + type(t).__name__)
        return m(t)

    def app(self, head: str, *args):
        out = A.Var(head)
        for a in args:
            out = A.App(out, a)
        return out

    def d_Var(self, t):
        return A.Var(self.var(t.ix))

    def d_Ref(self, t):
        return A.Var(t.name)

    def d_Meta(self, t):
        return A.Hole()

    def d_U(self, t):
        return A.Univ(t.level)

    def d_Pi(self, t):
        if t.implicit:
            n = self.fresh(t.name)
        else:
            n = self.binder_name(t.name, t.cod)
        dom = self.go(t.dom)
        cod = self.under(n, self.go, t.cod)
        return A.Pi(A.Binder(n, dom, t.implicit), cod)

    def d_Sigma(self, t):
        n = self.binder_name(t.name, t.snd)
        fst = self.go(t.fst)
        return A.Sigma(A.Binder(n, fst, False), self.under(n, self.go, t.snd))

    def d_Lam(self, t):
        n = self.fresh(t.name)
        return A.Lam(A.Binder(n, None, t.implicit), self.under(n, self.go, t.body))

    def d_App(self, t):
        return A.App(self.go(t.fn), self.go(t.arg), t.implicit)

    def d_Pair(self, t):
        return A.Pair(self.go(t.fst), self.go(t.snd))

    def d_Fst(self, t):
        return A.Proj(self.go(t.pair), 1)

    def d_Snd(self, t):
        return A.Proj(self.go(t.pair), 2)

    def line(self, name, body):
        n = self.fresh(name if name != "_" else "i")
        return A.Lam(A.Binder(n, None, False), self.under(n, self.go, body))

    def d_PathP(self, t):
        l, r = self.go(t.left), self.go(t.right)
        if not uses_var(t.fam, 0):
            return self.app("Path", self.under("_", self.go, t.fam), l, r)
        return self.app("PathP", self.line(t.name, t.fam), l, r)

    def d_PLam(self, t):
        n = self.fresh(t.name if t.name != "_" else "i")
        return A.Lam(A.Binder(n, None, False), self.under(n, self.go, t.body))

    def d_PApp(self, t):
        return A.App(self.go(t.path), self.iv(t.arg))

    def d_Nat(self, t):
        return A.Var("Nat")

    def d_Zero(self, t):
        return A.Num(0)

    def d_Suc(self, t):
        n, x = 1, t.pred
        while isinstance(x, S.Suc):
            n, x = n + 1, x.pred
        if isinstance(x, S.Zero):
            return A.Num(n)
        return self.app("suc", self.go(t.pred))

    def d_NatElim(self, t):
        return self.app("natrec", self.go(t.motive), self.go(t.zero), self.go(t.suc),
                        self.go(t.scrut))

    def d_Unit(self, t):
        return A.Var("Unit")

    def d_Tt(self, t):
        return A.Var("tt")

    def d_Empty(self, t):
        return A.Var("Empty")

    def d_EmptyElim(self, t):
        return self.app("absurd", self.go(t.motive), self.go(t.scrut))

    def d_Sum(self, t):
        return self.app("Sum", self.go(t.left), self.go(t.right))

    def d_Inl(self, t):
        return self.app("inl", self.go(t.val))

    def d_Inr(self, t):
        return self.app("inr", self.go(t.val))

    def d_Case(self, t):
        return self.app("case", self.go(t.motive), self.go(t.left), self.go(t.right),
                        self.go(t.scrut))

    def d_Transp(self, t):
        return self.app("transp1" if t.d else "transp", self.line(t.name, t.line),
                        self.cof(t.cof), self.go(t.base))

    def sys(self, sys, name, binds: bool):
        out = []
        for c, u in sys:
            body = self.line(name, u) if binds else self.go(u)
            out.append((self.cof(c), body))
        return A.Sys(tuple(out))

    def d_HComp(self, t):
        return self.app("hcomp1" if t.d else "hcomp", self.go(t.ty),
                        self.sys(t.sys, t.name if t.name != "_" else "k", True), self.go(t.cap))

    def d_Comp(self, t):
        return self.app("comp1" if t.d else "comp", self.line(t.name, t.line),
                        self.sys(t.sys, "k", True), self.go(t.cap))

    def d_Glue(self, t):
        return self.app("Glue", self.go(t.base), self.sys(t.sys, None, False))

    def d_GlueIn(self, t):
        return self.app("glue", self.sys(t.sys, None, False), self.go(t.base))

    def d_Unglue(self, t):
        return self.app("unglue", self.go(t.val))

    def d_Id(self, t):
        return self.app("Id", self.go(t.ty), self.go(t.left), self.go(t.right))

    def d_IdPair(self, t):
        return self.app("idpair", self.cof(t.cof), self.go(t.path))

    def d_IdPath(self, t):
        return self.app("idpath", self.go(t.val))

    def d_IdElim(self, t):
        return self.app("J", self.go(t.motive), self.go(t.refl_case), self.go(t.scrut))

    def d_HitType(self, t):
        return self.app(t.hit, *[self.go(p) for p in t.params])

    def d_HitCon(self, t):
        out = A.Var(t.con)
        for p in t.params:
            out = A.App(out, self.go(p), True)
        for a in t.args:
            out = A.App(out, self.go(a))
        for r in t.iargs:
            out = A.App(out, self.iv(r))
        return out

    def d_HitElim(self, t):
        decl = current().hits[t.hit]
        clauses = []
        for con, body in t.clauses:
            cd = decl.con(con)
            pushed = []
            args = []
            for n, _, _ in cd.args:
                args.append(self.fresh(n))
                self.names.append(args[-1])
            ihs = []
            for k in cd.rec_args:
                ihs.append(self.fresh("ih_" + cd.args[k][0]))
                self.names.append(ihs[-1])
            inames = []
            for n in cd.inames:
                inames.append(self.fresh(n))
                self.names.append(inames[-1])
            pushed = len(args) + len(ihs) + len(inames)
            try:
                b = self.go(body)
            finally:
                del self.names[len(self.names) - pushed:]
            clauses.append(A.Clause(con, tuple(args), tuple(ihs), tuple(inames), b))
        return A.Elim(self.go(t.scrut), self.go(t.motive), tuple(clauses))

    def d_Let(self, t):
        n = self.fresh(t.name)
        return A.Let(n, self.go(t.ty), self.go(t.val), self.under(n, self.go, t.body))


def delab(t, names=()):
    return Delab(names).go(t)


def show_term(t, names=()) -> str:
    return show(delab(t, [n if n != "_" else "x" for n in names]))
