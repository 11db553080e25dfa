"""Bidirectional elaboration of surface syntax into core terms.

The context is one telescope of term and interval variables named by de
Bruijn level.  Working under a face restricts the context by substituting
the face into every entry; the names and levels stay put, so a term
elaborated under a face is still a term of the full context.

Universes are cumulative through a structural subtyping check used only
where a term's inferred type meets its expected type.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..interval import (
    BOT, CAnd, CBot, CEq, COr, CTop, Cof, IJoin, IMeet, IOne, IVar, IvElem, IZero,
)
from ..lang import ast as A
from . import syntax as S
from .conv import Quoter, conv, conv_ty, conv_under, quote, sub_ty
from .hit import OMEGA, ConDecl, HitDecl, is_homomorphic, rec_depth
from .semantics import (
    Env, apply, at, clause_binders, const_clo, end, ev_cof, ev_iv, eval_, face_subst, force,
    hit_elim, ih_type, inst, mk_con, ne_type, norm_sys, papp, sys_cof, v_equiv, vfst, vsnd,
    act, KClo,
)
from .session import GlobalDef, current
from .traverse import mentions_hit, zonk
from .values import (
    Neutral, VEmpty, VFlex, VGlue, VHitType, VId, VIdPair, VLam, VNat, VPathP, VPi, VPLam,
    VSigma, VSuc, VSum, VU, VUnit, VVar, VZero, VInl, VInr, VHitCon,
)


class ElabError(Exception):
    def __init__(self, msg: str, pos=None, expected: str | None = None,
                 actual: str | None = None):
        super().__init__(msg)
        self.msg = msg
        self.pos = pos
        self.expected = expected
        self.actual = actual


UW = VU(OMEGA)


# ---------------------------------------------------------------------------
# context


@dataclass(frozen=True)
class Ctx:
    names: tuple = ()
    kinds: tuple = ()     # "term" | "dim"
    env: Env = Env()
    types: tuple = ()     # type values of term entries, None for dims

    @property
    def lvl(self) -> int:
        return len(self.names)

    def bind(self, name: str, ty) -> "Ctx":
        return self.define(name, VVar(self.lvl, ty), ty)

    def define(self, name: str, val, ty) -> "Ctx":
        return Ctx(self.names + (name,), self.kinds + ("term",), self.env.extend(val),
                   self.types + (ty,))

    def bind_dim(self, name: str) -> "Ctx":
        return Ctx(self.names + (name,), self.kinds + ("dim",),
                   self.env.extend(IvElem.var(self.lvl)), self.types + (None,))

    def restrict(self, face) -> "Ctx":
        s = face_subst(face)
        return Ctx(self.names, self.kinds, act(self.env, s),
                   tuple(None if t is None else act(t, s) for t in self.types))

    def lookup(self, name: str):
        for lvl in range(self.lvl - 1, -1, -1):
            if self.names[lvl] == name:
                return lvl, self.kinds[lvl]
        return None

    def var_term(self, lvl: int):
        ix = self.lvl - 1 - lvl
        return S.Var(ix) if self.kinds[lvl] == "term" else IVar(ix)

    def eval(self, t):
        return eval_(self.env, t)

    def quote(self, v, extra: int = 0):
        """Read back at this context, optionally weakened by ``extra``
        binders."""
        return Quoter().q(self.lvl + extra, self.lvl + extra, v)


PRIMS = {
    "Nat", "zero", "suc", "natrec", "Unit", "tt", "Empty", "absurd", "Sum", "inl", "inr", "case",
    "Path", "PathP", "Id", "idpair", "idrefl", "idpath", "J", "transp", "transp1", "hcomp",
    "hcomp1", "comp", "comp1", "Glue", "glue", "unglue", "top", "bot",
}


def _spine(r):
    args = []
    while isinstance(r, A.App):
        args.append((r.arg, r.implicit))
        r = r.fn
    args.reverse()
    return r, args


def _pos(r):
    return getattr(r, "pos", None)


# ---------------------------------------------------------------------------
# value helpers


def _pi(name, dom, fn):
    return VPi(name, dom, KClo(fn), False)


def _motive_ty(dom):
    return VPi("x", dom, const_clo(UW), False)


def _suc_cod2(P, k, _ih):
    return apply(P, VSuc(k))


def _suc_cod1(P, k):
    return VPi("ih", apply(P, k), KClo(_suc_cod2, P, k), False)


def _suc_ty(P):
    return VPi("k", VNat(), KClo(_suc_cod1, P), False)


def _case_cod(P, ctor, x):
    return apply(P, ctor(x))


def _j_cod2(_A, _a, _y, _q):
    return UW


def _j_cod1(A, a, y):
    return VPi("q", VId(A, a, y), KClo(_j_cod2, A, a, y), False)


def level_of(lvl: int, v) -> int:
    """Universe level of a type value."""
    v = force(v)
    t = type(v)
    if t is VU:
        return v.level + 1
    if t in (VNat, VUnit, VEmpty):
        return 0
    if t is VPi:
        return max(level_of(lvl, v.dom), level_of(lvl + 1, inst(v.cod, VVar(lvl, v.dom))))
    if t is VSigma:
        return max(level_of(lvl, v.fst), level_of(lvl + 1, inst(v.snd, VVar(lvl, v.fst))))
    if t is VPathP:
        return level_of(lvl + 1, inst(v.fam, IvElem.var(lvl)))
    if t is VSum:
        return max(level_of(lvl, v.left), level_of(lvl, v.right))
    if t is VId:
        return level_of(lvl, v.ty)
    if t is VGlue:
        return level_of(lvl, v.base)
    if t is VHitType:
        return hit_level(lvl, current().hits[v.hit], v.params)
    if isinstance(v, Neutral):
        ty = force(ne_type(v))
        if type(ty) is VU:
            return ty.level
    raise ElabError(f"cannot determine the universe of {type(v).__name__}")


def hit_level(lvl: int, decl: HitDecl, params) -> int:
    out = decl.level or 0
    done = ()
    for (_, pty), p in zip(decl.params, params):
        ty = force(eval_(Env(done), pty))
        x, l = p, lvl
        while type(ty) is VPi:
            arg = VVar(l, ty.dom)
            x = apply(x, arg)
            ty = force(inst(ty.cod, arg))
            l += 1
        if type(ty) is VU:
            out = max(out, level_of(l, x))
        done += (p,)
    return out


# ---------------------------------------------------------------------------
# the elaborator


class Elab:
    def __init__(self, session=None):
        self.s = session or current()

    # errors ----------------------------------------------------------------------

    def show(self, ctx: Ctx, v) -> str:
        from .pretty import show_term
        try:
            return show_term(ctx.quote(v), ctx.names)
        except Exception:  # noqa: BLE001 - diagnostics only
            return f"<{type(v).__name__}>"

    def mismatch(self, ctx, r, expected, actual):
        want, got = self.show(ctx, expected), self.show(ctx, actual)
        raise ElabError(f"type mismatch\n  expected: {want}\n  actual:   {got}", _pos(r),
                        want, got)

    # metas -----------------------------------------------------------------------

    def fresh_meta(self, ctx: Ctx, ty, name="?"):
        mid = self.s.fresh_meta(ctx.lvl, ctx.quote(ty), name)
        args = tuple(ctx.var_term(lvl) for lvl in range(ctx.lvl))
        return S.Meta(mid, args)

    def insert(self, ctx, t, ty):
        ty = force(ty)
        while type(ty) is VPi and ty.implicit:
            m = self.fresh_meta(ctx, ty.dom)
            t = S.App(t, m, True)
            ty = force(inst(ty.cod, ctx.eval(m)))
        return t, ty

    # interval and cofibration kinds --------------------------------------------

    def iv(self, ctx: Ctx, r):
        if isinstance(r, A.Num) and r.value in (0, 1):
            return IOne() if r.value else IZero()
        if isinstance(r, A.Var):
            hit = ctx.lookup(r.name)
            if hit is not None and hit[1] == "dim":
                return IVar(ctx.lvl - 1 - hit[0])
            raise ElabError(f"'{r.name}' is not an interval variable", _pos(r))
        if isinstance(r, A.BinOp) and r.op in ("/\\", "\\/"):
            cls = IMeet if r.op == "/\\" else IJoin
            return cls(self.iv(ctx, r.left), self.iv(ctx, r.right))
        raise ElabError("expected an interval expression", _pos(r))

    def cof(self, ctx: Ctx, r):
        if isinstance(r, A.Var) and ctx.lookup(r.name) is None:
            if r.name == "top":
                return CTop()
            if r.name == "bot":
                return CBot()
        if isinstance(r, A.BinOp):
            if r.op == "=":
                if not (isinstance(r.right, A.Num) and r.right.value in (0, 1)):
                    raise ElabError("a face compares with 0 or 1", _pos(r))
                return CEq(self.iv(ctx, r.left), r.right.value)
            cls = CAnd if r.op == "/\\" else COr
            return cls(self.cof(ctx, r.left), self.cof(ctx, r.right))
        raise ElabError("expected a cofibration", _pos(r))

    def cof_val(self, ctx, r):
        t = self.cof(ctx, r)
        return t, ev_cof(ctx.env, t)

    def face_term(self, ctx: Ctx, face):
        out = None
        for v, e in face:
            x = CEq(IVar(ctx.lvl - 1 - v), e)
            out = x if out is None else CAnd(out, x)
        return CTop() if out is None else out

    # types -------------------------------------------------------------------------

    def check_type(self, ctx: Ctx, r):
        """Elaborate a type; returns the term and its universe level."""
        t, ty = self.infer(ctx, r)
        ty = force(ty)
        if type(ty) is VU:
            return t, ty.level
        if type(ty) is VFlex:
            if conv(ctx.lvl, UW, ty, VU(0)):
                return t, 0
        raise ElabError(f"expected a type, got an element of {self.show(ctx, ty)}", _pos(r))

    # checking ----------------------------------------------------------------------

    def check(self, ctx: Ctx, r, ty):
        ty = force(ty)
        tt = type(ty)
        if isinstance(r, A.Lam):
            b = r.binder
            if tt is VPi and b.implicit == ty.implicit:
                if b.ty is not None:
                    dt, _ = self.check_type(ctx, b.ty)
                    if not conv_ty(ctx.lvl, ctx.eval(dt), ty.dom):
                        self.mismatch(ctx, b.ty, ty.dom, ctx.eval(dt))
                x = VVar(ctx.lvl, ty.dom)
                body = self.check(ctx.bind(b.name, ty.dom), r.body, inst(ty.cod, x))
                return S.Lam(b.name, ctx.quote(ty.dom), body, ty.implicit)
            if tt is VPi and ty.implicit:
                return self.implicit_lam(ctx, r, ty)
            if tt is VPathP and not b.implicit and b.ty is None:
                return self.check_plam(ctx, r, ty)
        elif tt is VPi and ty.implicit and not isinstance(r, A.Hole):
            return self.implicit_lam(ctx, r, ty)
        if isinstance(r, A.Pair) and tt is VSigma:
            a = self.check(ctx, r.fst, ty.fst)
            b = self.check(ctx, r.snd, inst(ty.snd, ctx.eval(a)))
            return S.Pair(a, b)
        if isinstance(r, A.Hole):
            return self.fresh_meta(ctx, ty)
        if isinstance(r, A.Let):
            return self.elab_let(ctx, r, ty)[0]
        if isinstance(r, A.Num) and tt is VNat:
            return _numeral(r.value)
        if isinstance(r, (A.Var, A.App)):
            head, args = _spine(r)
            if isinstance(head, A.Var) and ctx.lookup(head.name) is None \
                    and head.name not in self.s.defs:
                if head.name in PRIMS or head.name in self.s.cons:
                    t, ity = self.prim(ctx, head, args, ty)
                    return self.subsume(ctx, r, t, ity, ty)
        t, ity = self.infer(ctx, r)
        return self.subsume(ctx, r, t, ity, ty)

    def subsume(self, ctx, r, t, ity, ty):
        ty = force(ty)
        if not (type(ty) is VPi and ty.implicit):
            t, ity = self.insert(ctx, t, ity)
        if not sub_ty(ctx.lvl, ity, ty):
            self.mismatch(ctx, r, ty, ity)
        return t

    def implicit_lam(self, ctx, r, ty):
        x = VVar(ctx.lvl, ty.dom)
        body = self.check(ctx.bind(ty.name, ty.dom), r, inst(ty.cod, x))
        return S.Lam(ty.name, ctx.quote(ty.dom), body, True)

    def check_plam(self, ctx, r, ty):
        i = IvElem.var(ctx.lvl)
        inner = ctx.bind_dim(r.binder.name)
        body = self.check(inner, r.body, inst(ty.fam, i))
        t = S.PLam(r.binder.name, body)
        v = ctx.eval(t)
        for eps, want in ((0, ty.left), (1, ty.right)):
            got = papp(v, at(eps))
            if not conv(ctx.lvl, inst(ty.fam, at(eps)), got, want):
                w, g = self.show(ctx, want), self.show(ctx, got)
                raise ElabError(f"path endpoint {eps} mismatch\n  expected: {w}\n  actual:   {g}",
                                _pos(r), w, g)
        return t

    # inference -------------------------------------------------------------------

    def infer(self, ctx: Ctx, r):
        m = getattr(self, "infer_" + type(r).__name__, None)
        if m is None:
            raise ElabError(f"cannot infer the type of this {type(r).__name__.lower()}", _pos(r))
        return m(ctx, r)

    def infer_Var(self, ctx, r):
        hit = ctx.lookup(r.name)
        if hit is not None:
            lvl, kind = hit
            if kind == "dim":
                raise ElabError(f"interval variable '{r.name}' used as a term", _pos(r))
            return S.Var(ctx.lvl - 1 - lvl), ctx.types[lvl]
        if r.name in self.s.defs:
            d = self.s.defs[r.name]
            return S.Ref(r.name), d.ty_val
        if r.name in PRIMS or r.name in self.s.cons or r.name in self.s.hits:
            return self.prim(ctx, r, [], None)
        raise ElabError(f"unknown name '{r.name}'", _pos(r))

    def infer_Univ(self, ctx, r):
        return S.U(r.level), VU(r.level + 1)

    def infer_Pi(self, ctx, r):
        b = r.binder
        dt, l1 = self.check_type(ctx, b.ty)
        dv = ctx.eval(dt)
        ct, l2 = self.check_type(ctx.bind(b.name, dv), r.cod)
        return S.Pi(b.name, dt, ct, b.implicit), VU(max(l1, l2))

    def infer_Sigma(self, ctx, r):
        b = r.binder
        if b.implicit:
            raise ElabError("implicit binders are not allowed in pair types", _pos(r))
        dt, l1 = self.check_type(ctx, b.ty)
        dv = ctx.eval(dt)
        ct, l2 = self.check_type(ctx.bind(b.name, dv), r.snd)
        return S.Sigma(b.name, dt, ct), VU(max(l1, l2))

    def infer_Lam(self, ctx, r):
        b = r.binder
        if b.ty is None:
            raise ElabError("cannot infer the type of an unannotated lambda", _pos(r))
        dt, _ = self.check_type(ctx, b.ty)
        dv = ctx.eval(dt)
        inner = ctx.bind(b.name, dv)
        body, bty = self.infer(inner, r.body)
        cod = Quoter().q(inner.lvl, inner.lvl, bty)
        return S.Lam(b.name, dt, body, b.implicit), VPi(b.name, dv, _Clo(ctx.env, cod), b.implicit)

    def infer_App(self, ctx, r):
        head, args = _spine(r)
        if isinstance(head, A.Var) and ctx.lookup(head.name) is None \
                and head.name not in self.s.defs \
                and (head.name in PRIMS or head.name in self.s.cons or head.name in self.s.hits):
            return self.prim(ctx, head, args, None)
        t, ty = self.infer(ctx, head)
        return self.apply_args(ctx, t, ty, args, r)

    def apply_args(self, ctx, t, ty, args, r):
        for a, icit in args:
            if not icit:
                t, ty = self.insert(ctx, t, ty)
            ty = force(ty)
            if type(ty) is VPi:
                if ty.implicit != icit:
                    raise ElabError("implicit/explicit argument mismatch", _pos(a))
                at_ = self.check(ctx, a, ty.dom)
                t = S.App(t, at_, icit)
                ty = inst(ty.cod, ctx.eval(at_))
            elif type(ty) is VPathP and not icit:
                rt = self.iv(ctx, a)
                t = S.PApp(t, rt)
                ty = inst(ty.fam, ev_iv(ctx.env, rt))
            else:
                raise ElabError(f"not a function: {self.show(ctx, ty)}", _pos(a))
        return t, ty

    def infer_Pair(self, ctx, r):
        a, at_ = self.infer(ctx, r.fst)
        b, bt = self.infer(ctx, r.snd)
        return S.Pair(a, b), VSigma("_", at_, const_clo(bt))

    def infer_Proj(self, ctx, r):
        t, ty = self.infer(ctx, r.term)
        t, ty = self.insert(ctx, t, ty)
        ty = force(ty)
        if type(ty) is not VSigma:
            raise ElabError(f"projection from a non-pair type {self.show(ctx, ty)}", _pos(r))
        if r.index == 1:
            return S.Fst(t), ty.fst
        return S.Snd(t), inst(ty.snd, vfst(ctx.eval(t)))

    def infer_Ann(self, ctx, r):
        tt, _ = self.check_type(ctx, r.ty)
        tv = ctx.eval(tt)
        return self.check(ctx, r.term, tv), tv

    def infer_Num(self, ctx, r):
        return _numeral(r.value), VNat()

    def infer_Let(self, ctx, r):
        return self.elab_let(ctx, r, None)

    def elab_let(self, ctx, r, expected):
        if r.ty is not None:
            tt, _ = self.check_type(ctx, r.ty)
            tv = ctx.eval(tt)
            vt = self.check(ctx, r.val, tv)
        else:
            vt, tv = self.infer(ctx, r.val)
            tt = ctx.quote(tv)
        inner = ctx.define(r.name, ctx.eval(vt), tv)
        if expected is None:
            body, bty = self.infer(inner, r.body)
            return S.Let(r.name, tt, vt, body), bty
        body = self.check(inner, r.body, expected)
        return S.Let(r.name, tt, vt, body), expected

    def infer_Elim(self, ctx, r):
        return self.elim(ctx, r)

    def infer_Sys(self, ctx, r):
        raise ElabError("a system is only allowed as an argument of hcomp, comp, Glue or glue",
                        _pos(r))

    def infer_BinOp(self, ctx, r):
        raise ElabError("interval or cofibration expression used as a term", _pos(r))

    # primitives --------------------------------------------------------------------

    def prim(self, ctx, head, args, expected):
        name = head.name
        if name in self.s.hits and name not in PRIMS:
            return self.hit_type(ctx, head, args)
        if name in self.s.cons and name not in PRIMS:
            return self.constructor(ctx, head, args, expected)
        fn = getattr(self, "p_" + name)
        return fn(ctx, head, args, expected)

    def need(self, head, args, n, explicit_only=True):
        if len(args) < n:
            raise ElabError(f"'{head.name}' expects {n} arguments", _pos(head))
        if explicit_only and any(icit for _, icit in args[:n]):
            raise ElabError(f"'{head.name}' takes no implicit arguments", _pos(head))
        return [a for a, _ in args[:n]], args[n:]

    def rest(self, ctx, t, ty, more, r):
        if more:
            return self.apply_args(ctx, t, ty, more, r)
        return t, ty

    def p_Nat(self, ctx, h, args, _e):
        return self.rest(ctx, S.Nat(), VU(0), args, h)

    def p_Unit(self, ctx, h, args, _e):
        return self.rest(ctx, S.Unit(), VU(0), args, h)

    def p_Empty(self, ctx, h, args, _e):
        return self.rest(ctx, S.Empty(), VU(0), args, h)

    def p_zero(self, ctx, h, args, _e):
        return self.rest(ctx, S.Zero(), VNat(), args, h)

    def p_tt(self, ctx, h, args, _e):
        return self.rest(ctx, S.Tt(), VUnit(), args, h)

    def p_top(self, ctx, h, args, _e):
        raise ElabError("'top' is a cofibration", _pos(h))

    p_bot = p_top

    def p_suc(self, ctx, h, args, _e):
        (n,), more = self.need(h, args, 1)
        return self.rest(ctx, S.Suc(self.check(ctx, n, VNat())), VNat(), more, h)

    def p_natrec(self, ctx, h, args, _e):
        (P, z, s, n), more = self.need(h, args, 4)
        Pt = self.check(ctx, P, _motive_ty(VNat()))
        Pv = ctx.eval(Pt)
        zt = self.check(ctx, z, apply(Pv, VZero()))
        st = self.check(ctx, s, _suc_ty(Pv))
        nt = self.check(ctx, n, VNat())
        return self.rest(ctx, S.NatElim(Pt, zt, st, nt), apply(Pv, ctx.eval(nt)), more, h)

    def p_absurd(self, ctx, h, args, expected):
        if expected is not None and len(args) == 1 and not args[0][1]:
            et = self.check(ctx, args[0][0], VEmpty())
            return S.EmptyElim(ctx.quote(expected), et), expected
        (A_, e), more = self.need(h, args, 2)
        At, _ = self.check_type(ctx, A_)
        et = self.check(ctx, e, VEmpty())
        return self.rest(ctx, S.EmptyElim(At, et), ctx.eval(At), more, h)

    def p_Sum(self, ctx, h, args, _e):
        (a, b), more = self.need(h, args, 2)
        at_, l1 = self.check_type(ctx, a)
        bt, l2 = self.check_type(ctx, b)
        return self.rest(ctx, S.Sum(at_, bt), VU(max(l1, l2)), more, h)

    def _inj(self, ctx, h, args, expected, left: bool):
        (x,), more = self.need(h, args, 1)
        ety = force(expected) if expected is not None else None
        if type(ety) is VSum and not more:
            t = self.check(ctx, x, ety.left if left else ety.right)
            return (S.Inl(t) if left else S.Inr(t)), ety
        t, ty = self.infer(ctx, x)
        other = ctx.eval(self.fresh_meta(ctx, UW))
        sty = VSum(ty, other) if left else VSum(other, ty)
        return self.rest(ctx, S.Inl(t) if left else S.Inr(t), sty, more, h)

    def p_inl(self, ctx, h, args, e):
        return self._inj(ctx, h, args, e, True)

    def p_inr(self, ctx, h, args, e):
        return self._inj(ctx, h, args, e, False)

    def p_case(self, ctx, h, args, _e):
        (P, f, g, s), more = self.need(h, args, 4)
        st, sty = self.infer(ctx, s)
        sty = force(sty)
        if type(sty) is not VSum:
            raise ElabError(f"case on a non-sum {self.show(ctx, sty)}", _pos(s))
        Pt = self.check(ctx, P, _motive_ty(sty))
        Pv = ctx.eval(Pt)
        ft = self.check(ctx, f, VPi("x", sty.left, KClo(_case_cod, Pv, VInl), False))
        gt = self.check(ctx, g, VPi("y", sty.right, KClo(_case_cod, Pv, VInr), False))
        return self.rest(ctx, S.Case(Pt, ft, gt, st), apply(Pv, ctx.eval(st)), more, h)

    # paths and Id

    def line(self, ctx, r):
        """``\\i. A`` as a type line; returns (name, body term, level)."""
        if isinstance(r, A.Lam) and r.binder.ty is None and not r.binder.implicit:
            body, l = self.check_type(ctx.bind_dim(r.binder.name), r.body)
            return r.binder.name, body, l
        t, l = self.check_type(ctx, r)
        return "_", ctx.quote(ctx.eval(t), 1), l

    def p_Path(self, ctx, h, args, _e):
        (A_, a, b), more = self.need(h, args, 3)
        At, l = self.check_type(ctx, A_)
        Av = ctx.eval(At)
        at_ = self.check(ctx, a, Av)
        bt = self.check(ctx, b, Av)
        return self.rest(ctx, S.PathP("_", ctx.quote(Av, 1), at_, bt), VU(l), more, h)

    def p_PathP(self, ctx, h, args, _e):
        (L, a, b), more = self.need(h, args, 3)
        name, fam, l = self.line(ctx, L)
        clo = _IClo(ctx.env, fam)
        at_ = self.check(ctx, a, inst(clo, at(0)))
        bt = self.check(ctx, b, inst(clo, at(1)))
        return self.rest(ctx, S.PathP(name, fam, at_, bt), VU(l), more, h)

    def p_Id(self, ctx, h, args, _e):
        (A_, a, b), more = self.need(h, args, 3)
        At, l = self.check_type(ctx, A_)
        Av = ctx.eval(At)
        return self.rest(ctx, S.Id(At, self.check(ctx, a, Av), self.check(ctx, b, Av)), VU(l),
                         more, h)

    def p_idpair(self, ctx, h, args, expected):
        (c, p), more = self.need(h, args, 2)
        ety = force(expected) if expected is not None else None
        if type(ety) is not VId or more:
            raise ElabError("'idpair' needs a known Id type", _pos(h))
        ct, cv = self.cof_val(ctx, c)
        pty = VPathP("_", const_clo(ety.ty), ety.left, ety.right)
        pt = self.check(ctx, p, pty)
        refl = VPLam("_", const_clo(ety.left))
        if not conv_under(ctx.lvl, cv, pty, ctx.eval(pt), refl):
            raise ElabError("idpair: the path is not constant on its cofibration", _pos(h))
        return S.IdPair(ct, pt), ety

    def p_idrefl(self, ctx, h, args, _e):
        (a,), more = self.need(h, args, 1)
        at_, aty = self.infer(ctx, a)
        av = ctx.eval(at_)
        t = S.IdPair(CTop(), S.PLam("_", ctx.quote(av, 1)))
        return self.rest(ctx, t, VId(aty, av, av), more, h)

    def p_idpath(self, ctx, h, args, _e):
        (q,), more = self.need(h, args, 1)
        qt, qty = self.infer(ctx, q)
        qty = force(qty)
        if type(qty) is not VId:
            raise ElabError(f"idpath of a non-Id {self.show(ctx, qty)}", _pos(q))
        return self.rest(ctx, S.IdPath(qt), VPathP("_", const_clo(qty.ty), qty.left, qty.right),
                         more, h)

    def p_J(self, ctx, h, args, _e):
        (C, d, q), more = self.need(h, args, 3)
        qt, qty = self.infer(ctx, q)
        qty = force(qty)
        if type(qty) is not VId:
            raise ElabError(f"J on a non-Id {self.show(ctx, qty)}", _pos(q))
        Ct = self.check(ctx, C, VPi("y", qty.ty, KClo(_j_cod1, qty.ty, qty.left), False))
        Cv = ctx.eval(Ct)
        refl = VIdPair(Cof(((),)), VPLam("_", const_clo(qty.left)))
        dt = self.check(ctx, d, apply(apply(Cv, qty.left), refl))
        t = S.IdElim(ctx.quote(qty.ty), ctx.quote(qty.left), Ct, dt, ctx.quote(qty.right), qt)
        return self.rest(ctx, t, apply(apply(Cv, qty.right), ctx.eval(qt)), more, h)

    # Kan operations

    def p_transp(self, ctx, h, args, _e, d=0):
        (L, c, a), more = self.need(h, args, 3)
        name, body, _ = self.line(ctx, L)
        clo = _IClo(ctx.env, body)
        ct, cv = self.cof_val(ctx, c)
        inner = ctx.bind_dim(name)
        if not conv_under(inner.lvl, cv, UW, inner.eval(body), inst(clo, at(d))):
            raise ElabError("transp: the line is not constant where the cofibration holds",
                            _pos(h))
        aterm = self.check(ctx, a, inst(clo, at(d)))
        return self.rest(ctx, S.Transp(d, name, body, ct, aterm), inst(clo, end(d)), more, h)

    def p_transp1(self, ctx, h, args, e):
        return self.p_transp(ctx, h, args, e, d=1)

    def system(self, ctx, r, ty_at, d, cap_v):
        """Elaborate a Kan system: components bind the composition
        direction; returns core entries and value entries."""
        if not isinstance(r, A.Sys):
            raise ElabError("expected a system [phi -> u, ...]", _pos(r))
        terms, vals = [], []
        for c, u in r.entries:
            _, cv = self.cof_val(ctx, c)
            for face in cv.clauses:
                fctx = ctx.restrict(face)
                s = face_subst(face)
                if isinstance(u, A.Lam) and u.binder.ty is None and not u.binder.implicit:
                    kname, body = u.binder.name, u.body
                else:
                    kname, body = "_", u
                inner = fctx.bind_dim(kname)
                ut = self.check(inner, body, act(ty_at(IvElem.var(ctx.lvl)), s))
                terms.append((self.face_term(ctx, face), ut))
                vals.append((Cof((face,)), _IClo(ctx.env, ut)))
        k = IvElem.var(ctx.lvl)
        for n, (c1, u1) in enumerate(vals):
            if not conv_under(ctx.lvl, c1, ty_at(at(d)), inst(u1, at(d)), cap_v):
                raise ElabError("system component disagrees with the cap", _pos(r))
            for c2, u2 in vals[n + 1:]:
                m = c1.meet(c2)
                if not m.is_bot and not conv_under(ctx.lvl + 1, m, ty_at(k), inst(u1, k),
                                                   inst(u2, k)):
                    raise ElabError("system components disagree on an overlap", _pos(r))
        return tuple(terms)

    def p_hcomp(self, ctx, h, args, _e, d=0):
        (A_, sys, cap), more = self.need(h, args, 3)
        At, _ = self.check_type(ctx, A_)
        Av = ctx.eval(At)
        capt = self.check(ctx, cap, Av)
        st = self.system(ctx, sys, lambda _k: Av, d, ctx.eval(capt))
        return self.rest(ctx, S.HComp(d, At, "k", st, capt), Av, more, h)

    def p_hcomp1(self, ctx, h, args, e):
        return self.p_hcomp(ctx, h, args, e, d=1)

    def p_comp(self, ctx, h, args, _e, d=0):
        (L, sys, cap), more = self.need(h, args, 3)
        name, body, _ = self.line(ctx, L)
        clo = _IClo(ctx.env, body)
        capt = self.check(ctx, cap, inst(clo, at(d)))
        st = self.system(ctx, sys, lambda k: inst(clo, k), d, ctx.eval(capt))
        return self.rest(ctx, S.Comp(d, name, body, st, capt), inst(clo, end(d)), more, h)

    def p_comp1(self, ctx, h, args, e):
        return self.p_comp(ctx, h, args, e, d=1)

    # Glue

    def p_Glue(self, ctx, h, args, _e):
        (A_, sys), more = self.need(h, args, 2)
        At, l = self.check_type(ctx, A_)
        Av = ctx.eval(At)
        if not isinstance(sys, A.Sys):
            raise ElabError("Glue expects a system [phi -> (T, e)]", _pos(sys))
        terms, vals = [], []
        for c, u in sys.entries:
            _, cv = self.cof_val(ctx, c)
            for face in cv.clauses:
                fctx = ctx.restrict(face)
                s = face_subst(face)
                if not isinstance(u, A.Pair):
                    raise ElabError("Glue components are pairs (T, e)", _pos(u))
                Tt = self.check(fctx, u.fst, VU(l))
                Tv = fctx.eval(Tt)
                et = self.check(fctx, u.snd, v_equiv(Tv, act(Av, s)))
                terms.append((self.face_term(ctx, face), S.Pair(Tt, et)))
                vals.append((Cof((face,)), ctx.eval(S.Pair(Tt, et))))
        for n, (c1, p1) in enumerate(vals):
            for c2, p2 in vals[n + 1:]:
                m = c1.meet(c2)
                for f in m.clauses:
                    sf = face_subst(f)
                    T1, T2 = vfst(act(p1, sf)), vfst(act(p2, sf))
                    if not conv_ty(ctx.lvl, T1, T2) or not conv(
                            ctx.lvl, v_equiv(T1, act(Av, sf)), vsnd(act(p1, sf)),
                            vsnd(act(p2, sf))):
                        raise ElabError("Glue components disagree on an overlap", _pos(sys))
        return self.rest(ctx, S.Glue(At, tuple(terms)), VU(l), more, h)

    def p_glue(self, ctx, h, args, expected):
        (sys, a), more = self.need(h, args, 2)
        ety = force(expected) if expected is not None else None
        if more or ety is None:
            raise ElabError("'glue' needs a known Glue type", _pos(h))
        if not isinstance(sys, A.Sys):
            raise ElabError("glue expects a system [phi -> t]", _pos(sys))
        if type(ety) is not VGlue:
            for c, _ in sys.entries:
                if not self.cof_val(ctx, c)[1].is_bot:
                    raise ElabError("'glue' against a type that is not a Glue type", _pos(h))
            return self.check(ctx, a, ety), ety
        base = ety.base
        at_ = self.check(ctx, a, base)
        av = ctx.eval(at_)
        terms, vals = [], []
        for c, u in sys.entries:
            _, cv = self.cof_val(ctx, c)
            for face in cv.clauses:
                s = face_subst(face)
                top, _ = norm_sys(act(ety.sys, s))
                if top is None:
                    raise ElabError("glue component outside the Glue type's faces", _pos(u))
                T, e = vfst(top), vsnd(top)
                fctx = ctx.restrict(face)
                tt = self.check(fctx, u, T)
                tv = fctx.eval(tt)
                if not conv(ctx.lvl, act(base, s), apply(vfst(e), tv), act(av, s)):
                    raise ElabError("glue: component does not map to the base", _pos(u))
                terms.append((self.face_term(ctx, face), tt))
                vals.append((Cof((face,)), ctx.eval(tt)))
        got = BOT
        for c, _ in vals:
            got = got.join(c)
        if got != sys_cof(ety.sys):
            raise ElabError("glue: system faces differ from the Glue type's", _pos(sys))
        for n, (c1, t1) in enumerate(vals):
            for c2, t2 in vals[n + 1:]:
                if not conv_under(ctx.lvl, c1.meet(c2), ety, t1, t2):
                    raise ElabError("glue components disagree on an overlap", _pos(sys))
        return S.GlueIn(tuple(terms), at_), ety

    def p_unglue(self, ctx, h, args, _e):
        (g,), more = self.need(h, args, 1)
        gt, gty = self.infer(ctx, g)
        gty = force(gty)
        if type(gty) is not VGlue:
            raise ElabError(f"unglue of a non-Glue {self.show(ctx, gty)}", _pos(g))
        Q = Quoter()
        t = S.Unglue(ctx.quote(gty.base), Q.vsys(ctx.lvl, ctx.lvl, gty.sys), gt)
        return self.rest(ctx, t, gty.base, more, h)

    # HITs --------------------------------------------------------------------------

    def hit_type(self, ctx, head, args):
        decl = self.s.hits[head.name]
        n = len(decl.params)
        ps, more = self.need(head, args, n)
        pts, pvs = [], []
        for (_, pty), p in zip(decl.params, ps):
            want = eval_(Env(tuple(pvs)), pty)
            pt = self.check(ctx, p, want)
            pts.append(pt)
            pvs.append(ctx.eval(pt))
        lvl = hit_level(ctx.lvl, decl, tuple(pvs))
        return self.rest(ctx, S.HitType(decl.name, tuple(pts)), VU(lvl), more, head)

    def constructor(self, ctx, head, args, expected):
        cands = self.s.cons[head.name]
        ety = force(expected) if expected is not None else None
        hit = None
        if type(ety) is VHitType and ety.hit in cands:
            hit = ety.hit
        elif len(cands) == 1:
            hit = cands[0]
        else:
            raise ElabError(f"ambiguous constructor '{head.name}': annotate the expected type",
                            _pos(head))
        decl = self.s.hits[hit]
        cd = decl.con(head.name)
        # leading implicit arguments give the parameters
        given = []
        while args and args[0][1] and len(given) < len(decl.params):
            given.append(args[0][0])
            args = args[1:]
        pvs, pts = [], []
        for k, (_, pty) in enumerate(decl.params):
            want = eval_(Env(tuple(pvs)), pty)
            if k < len(given):
                pt = self.check(ctx, given[k], want)
            elif type(ety) is VHitType and ety.hit == hit:
                pt = ctx.quote(ety.params[k])
            else:
                pt = self.fresh_meta(ctx, want, f"{hit}.{decl.params[k][0]}")
            pts.append(pt)
            pvs.append(ctx.eval(pt))
        need = cd.arity + len(cd.inames)
        xs, more = self.need(head, args, need)
        ats, avs = [], []
        for k in range(cd.arity):
            want = eval_(Env(tuple(pvs) + tuple(avs)), cd.args[k][1])
            t = self.check(ctx, xs[k], want)
            ats.append(t)
            avs.append(ctx.eval(t))
        its = tuple(self.iv(ctx, x) for x in xs[cd.arity:])
        t = S.HitCon(hit, tuple(pts), head.name, tuple(ats), its)
        return self.rest(ctx, t, VHitType(hit, tuple(pvs)), more, head)

    def elim(self, ctx, r):
        st, sty = self.infer(ctx, r.scrut)
        st, sty = self.insert(ctx, st, sty)
        sty = force(sty)
        if type(sty) is not VHitType:
            raise ElabError(f"elim on a non-inductive type {self.show(ctx, sty)}", _pos(r))
        decl = self.s.hits[sty.hit]
        params = sty.params
        mt = self.check(ctx, r.motive, _motive_ty(sty))
        mv = ctx.eval(mt)
        by_name = {}
        for c in r.clauses:
            if c.con in by_name:
                raise ElabError(f"duplicate clause for '{c.con}'", _pos(r))
            by_name[c.con] = c
        for c in by_name:
            if c not in [cd.name for cd in decl.cons]:
                raise ElabError(f"'{c}' is not a constructor of {decl.name}", _pos(r))
        terms = []
        infos = []
        for cd in decl.cons:
            if cd.name not in by_name:
                raise ElabError(f"missing clause for '{cd.name}'", _pos(r))
            c = by_name[cd.name]
            ihnames = c.ihs or tuple("_" for _ in cd.rec_args)
            if len(c.args) != cd.arity or len(ihnames) != len(cd.rec_args) \
                    or len(c.inames) != len(cd.inames):
                raise ElabError(
                    f"clause '{cd.name}' binds {len(c.args)}/{len(c.ihs)}/{len(c.inames)} "
                    f"names; expected {cd.arity}/{len(cd.rec_args)}/{len(cd.inames)}", _pos(r))
            args, ihs, iargs = clause_binders(decl, cd, params, mv, ctx.lvl)
            inner = ctx
            for n, a in zip(c.args, args):
                inner = inner.bind(n, a.ty)
            for n, x in zip(ihnames, ihs):
                inner = inner.bind(n, x.ty)
            for n in c.inames:
                inner = inner.bind_dim(n)
            con_v = mk_con(decl.name, params, cd.name, args, iargs)
            body = self.check(inner, c.body, apply(mv, con_v))
            terms.append((cd.name, body))
            infos.append((cd, args, iargs, body, inner.names))
        clauses_v = tuple((cname, ctx.env, b) for cname, b in terms)
        for cd, args, iargs, body, names in infos:
            self.check_clause_boundary(ctx, decl, params, mv, clauses_v, cd, args, iargs, body,
                                       names, r)
        t = S.HitElim(decl.name, tuple(ctx.quote(p) for p in params), mt, tuple(terms), st)
        return t, apply(mv, ctx.eval(st))

    def check_clause_boundary(self, ctx, decl, params, mv, clauses_v, cd, args, iargs, body,
                              names, r):
        if not cd.boundary:
            return
        ihs = tuple(
            _ih_value(decl, cd, params, mv, clauses_v, args, k) for k in cd.rec_args)
        lvl = ctx.lvl + len(args) + len(ihs) + len(iargs)
        env = ctx.env.extend_many(args + ihs + iargs)
        lhs = eval_(env, body)
        penv = Env(params + args + iargs)
        con_v = mk_con(decl.name, params, cd.name, args, iargs)
        for cof_t, tgt in cd.boundary:
            cv = ev_cof(penv, cof_t)
            for face in cv.clauses:
                s = face_subst(face)
                want = hit_elim(decl.name, params, mv, clauses_v, act(eval_(penv, tgt), s))
                if not conv(lvl, act(apply(mv, con_v), s), act(lhs, s), want):
                    raise ElabError(
                        f"clause '{cd.name}' does not meet its boundary at "
                        f"{Cof((face,)).pretty(lambda v: names[v])}", _pos(r))

    # declarations ----------------------------------------------------------------

    def decl(self, d, file: str = ""):
        if isinstance(d, A.Def):
            return self.def_(d, file)
        if isinstance(d, A.Axiom):
            return self.axiom(d, file)
        if isinstance(d, A.HitDef):
            return self.hit_decl(d, file)
        raise ElabError(f"unexpected declaration {type(d).__name__}")

    def _fresh_name(self, name, pos):
        if name in self.s.defs or name in self.s.hits or name in PRIMS:
            raise ElabError(f"'{name}' is already defined", pos)

    def def_(self, d: A.Def, file=""):
        self._fresh_name(d.name, d.pos)
        ctx = Ctx()
        try:
            if d.ty is not None:
                ty_r = d.ty
                for b in reversed(d.tel):
                    ty_r = A.Pi(b, ty_r, d.pos)
                body_r = d.body
                for b in reversed(d.tel):
                    body_r = A.Lam(A.Binder(b.name, None, b.implicit), body_r, d.pos)
                tyt, lvl = self.check_type(ctx, ty_r)
                tyv = ctx.eval(tyt)
                term = self.check(ctx, body_r, tyv)
            else:
                body_r = d.body
                for b in reversed(d.tel):
                    body_r = A.Lam(b, body_r, d.pos)
                term, tyv = self.infer(ctx, body_r)
                tyt = ctx.quote(tyv)
                lvl = level_of(0, tyv)
            self.finish_metas(d.pos)
            tyt, term = zonk(tyt), zonk(term)
        except BaseException:
            self.s.close_metas()
            raise
        g = GlobalDef(d.name, tyt, term, tyv, None, lvl, d.label, file)
        self.s.defs[d.name] = g
        return g

    def finish_metas(self, pos):
        bad = [m for m in self.s.metas[self.s.live_from:] if m.solution is None]
        self.s.close_metas()
        if bad:
            raise ElabError(f"could not solve {len(bad)} implicit argument(s) "
                            f"({', '.join(m.name for m in bad)})", pos)

    def axiom(self, d: A.Axiom, file=""):
        self._fresh_name(d.name, d.pos)
        ty_r = d.ty
        for b in reversed(d.tel):
            ty_r = A.Pi(b, ty_r, d.pos)
        try:
            tyt, lvl = self.check_type(Ctx(), ty_r)
            self.finish_metas(d.pos)
            tyt = zonk(tyt)
        except BaseException:
            self.s.close_metas()
            raise
        g = GlobalDef(d.name, tyt, None, eval_(Env(), tyt), None, lvl, d.label, file)
        self.s.defs[d.name] = g
        return g

    def hit_decl(self, d: A.HitDef, file=""):
        self._fresh_name(d.name, d.pos)
        if d.name in self.s.cons:
            raise ElabError(f"'{d.name}' is already a constructor", d.pos)
        ctx = Ctx()
        params = []
        level = 0
        try:
            for b in d.tel:
                if b.implicit:
                    raise ElabError("HIT parameters are explicit", d.pos)
                t, l = self.check_type(ctx, b.ty)
                params.append((b.name, t))
                ctx = ctx.bind(b.name, ctx.eval(t))
            decl = HitDecl(d.name, tuple(params), (), level=0)
            self.s.hits[d.name] = decl
            names = set()
            for c in d.cons:
                if c.name in names or c.name in PRIMS or c.name in self.s.defs:
                    raise ElabError(f"constructor name '{c.name}' is not available", d.pos)
                names.add(c.name)
                cd, l = self.con_decl(ctx, decl, c, d.pos)
                level = max(level, l)
                decl.cons = decl.cons + (cd,)
                self.s.add_hit(decl)
            decl.level = level
            self.finish_metas(d.pos)
            decl.cons = tuple(
                ConDecl(cd.name, tuple((n, zonk(t, len(params) + k), r)
                                       for k, (n, t, r) in enumerate(cd.args)),
                        cd.inames,
                        tuple((c, zonk(t, len(params) + cd.arity + len(cd.inames)))
                              for c, t in cd.boundary),
                        cd.homomorphic)
                for cd in decl.cons)
        except BaseException:
            self.s.hits.pop(d.name, None)
            for c in d.cons:
                hs = self.s.cons.get(c.name)
                if hs and d.name in hs:
                    hs.remove(d.name)
                    if not hs:
                        del self.s.cons[c.name]
            self.s.close_metas()
            raise
        self.s.add_hit(decl)
        return decl

    def con_decl(self, ctx, decl, c, pos):
        inner = ctx
        args = []
        level = 0
        for b in c.tel:
            if b.implicit:
                raise ElabError("constructor arguments are explicit", pos)
            t, l = self.check_type(inner, b.ty)
            depth = rec_depth(t, decl.name)
            if depth is None and mentions_hit(t, decl.name):
                raise ElabError(f"'{decl.name}' occurs in a non-positive position in "
                                f"constructor '{c.name}'", pos)
            if depth is not None:
                tail = t
                while isinstance(tail, S.Pi):
                    if mentions_hit(tail.dom, decl.name):
                        raise ElabError(f"'{decl.name}' occurs in a non-positive position in "
                                        f"constructor '{c.name}'", pos)
                    tail = tail.cod
                if tail.params != tuple(S.Var(inner.lvl - 1 - k + depth)
                                        for k in range(len(decl.params))):
                    raise ElabError(f"recursive occurrence of '{decl.name}' must use the "
                                    "declared parameters", pos)
            else:
                level = max(level, l)
            args.append((b.name, t, depth))
            inner = inner.bind(b.name, inner.eval(t))
        for n in c.inames:
            inner = inner.bind_dim(n)
        ni = len(c.inames)
        self_ty = VHitType(decl.name, tuple(ctx.env.entries))
        boundary = []
        vals = []
        for cof_r, tgt_r in c.boundary:
            ct = self.cof(inner, cof_r)
            cv = ev_cof(inner.env, ct)
            if any(v < inner.lvl - ni for v in cv.vars()):
                raise ElabError("a boundary may only mention the constructor's interval "
                                "variables", pos)
            if cv.is_bot:
                continue
            for face in cv.clauses:
                fctx = inner.restrict(face)
                tt = self.check(fctx, tgt_r, self_ty)
                boundary.append((self.face_term(inner, face), tt))
                vals.append((Cof((face,)), inner.eval(tt)))
        for n, (c1, v1) in enumerate(vals):
            for c2, v2 in vals[n + 1:]:
                m = c1.meet(c2)
                if not m.is_bot and not conv_under(inner.lvl, m, self_ty, v1, v2):
                    raise ElabError(f"overlapping reductions of '{c.name}' disagree", pos)
        cd = ConDecl(c.name, tuple(args), tuple(c.inames), tuple(boundary))
        cd = ConDecl(cd.name, cd.args, cd.inames, cd.boundary, is_homomorphic(decl.name, cd))
        return cd, level


# ---------------------------------------------------------------------------


def _numeral(n: int):
    t = S.Zero()
    for _ in range(n):
        t = S.Suc(t)
    return t


def _Clo(env, body):
    from .values import Clo
    return Clo(env, body)


def _IClo(env, body):
    from .values import IClo
    return IClo(env, body)


def _ih_value(decl, cd, params, mv, clauses_v, args, k):
    from .semantics import induction_hyps
    ihs = induction_hyps(decl.name, params, mv, clauses_v, cd, args)
    return ihs[cd.rec_args.index(k)]
