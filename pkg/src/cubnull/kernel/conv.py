"""Readback, type-directed conversion and pattern unification.

Context variables are named by de Bruijn level; quoting at level ``lvl``
turns level ``l`` into index ``lvl - 1 - l``.  Binders are opened with the
next level, for term and interval variables alike.

Unification solves a metavariable applied to distinct variables (its
creation substitution plus a spine of applications) by renaming the other
side.  Entries of the substitution that are not variables are pruned: the
solution may not mention them.  Everything else is a conversion failure.
"""

from __future__ import annotations

from typing import Optional

from ..interval import BOT, CEq, COr, CAnd, CBot, CTop, Cof, IJoin, IMeet, IOne, IVar, IvElem, IZero
from . import syntax as S
from .semantics import (
    apply, arg_types, clause_binders, const_clo, end, face_subst, force, inst, ne_type, papp,
    sys_cof, unglue, v_equiv, vfst, vsnd, act, at,
)
from .session import current
from .values import (
    Neutral, VAxiom, VApp, VCase, VEmpty, VEmptyElim, VFlex, VFst, VGlue, VGlueIn, VHCompNe,
    VHitCon, VHitElimNe, VHitHComp, VHitType, VId, VIdElimNe, VIdPair, VIdPathNe, VInl, VInr,
    VLam, VNat, VNatElim, VPApp, VPair, VPathP, VPi, VPLam, VSigma, VSnd, VSuc, VSum,
    VTranspNe, VTt, VU, VUnglueNe, VUnit, VVar, VZero,
)


class QuoteError(Exception):
    pass


# ---------------------------------------------------------------------------
# readback


class Quoter:
    """Reads values back at source level ``lvl`` into a target context of
    length ``tlvl``.  ``ren``/``dren`` rename source levels and dimension
    names to target levels; ``None`` means the identity.  ``occurs`` is a
    meta that must not appear."""

    def __init__(self, ren: Optional[dict] = None, dren: Optional[dict] = None,
                 occurs: Optional[int] = None):
        self.ren = ren
        self.dren = dren
        self.occurs = occurs

    # binders are opened at source level lvl and target level tlvl
    def under(self, ren_key_lvl, tlvl, dim: bool):
        if self.ren is None:
            return self
        ren = dict(self.ren)
        dren = dict(self.dren)
        (dren if dim else ren)[ren_key_lvl] = tlvl
        return Quoter(ren, dren, self.occurs)

    def var(self, level: int, tlvl: int) -> S.Term:
        tgt = level if self.ren is None else self.ren.get(level)
        if tgt is None:
            raise QuoteError(f"variable at level {level} escapes its scope")
        return S.Var(tlvl - 1 - tgt)

    def dim(self, name: int, tlvl: int):
        if name < 0:
            raise QuoteError("kernel dimension escaped")
        tgt = name if self.dren is None else self.dren.get(name)
        if tgt is None:
            raise QuoteError(f"dimension {name} escapes its scope")
        return IVar(tlvl - 1 - tgt)

    def iv(self, r: IvElem, tlvl: int):
        out = None
        for c in r.clauses:
            m = None
            for v in c:
                x = self.dim(v, tlvl)
                m = x if m is None else IMeet(m, x)
            m = IOne() if m is None else m
            out = m if out is None else IJoin(out, m)
        return IZero() if out is None else out

    def cof(self, c: Cof, tlvl: int):
        if c.is_top:
            return CTop()
        out = None
        for f in c.clauses:
            m = None
            for v, e in f:
                x = CEq(self.dim(v, tlvl), e)
                m = x if m is None else CAnd(m, x)
            out = m if out is None else COr(out, m)
        return CBot() if out is None else out

    def bind(self, lvl, tlvl, clo, ty=None):
        x = VVar(lvl, ty)
        return self.under(lvl, tlvl, False).q(lvl + 1, tlvl + 1, inst(clo, x))

    def ibind(self, lvl, tlvl, clo):
        return self.under(lvl, tlvl, True).q(lvl + 1, tlvl + 1, inst(clo, IvElem.var(lvl)))

    def sys(self, lvl, tlvl, sys):
        return tuple((self.cof(c, tlvl), self.ibind(lvl, tlvl, u)) for c, u in sys)

    def vsys(self, lvl, tlvl, sys):
        return tuple((self.cof(c, tlvl), self.q(lvl, tlvl, u)) for c, u in sys)

    def qs(self, lvl, tlvl, vs):
        return tuple(self.q(lvl, tlvl, v) for v in vs)

    def q(self, lvl: int, tlvl: int, v) -> S.Term:
        v = force(v)
        if isinstance(v, IvElem):
            return self.iv(v, tlvl)
        t = type(v)
        h = _QUOTE.get(t)
        if h is None:
            raise QuoteError(f"cannot read back {t.__name__}")
        return h(self, lvl, tlvl, v)


def _q_flex(Q, lvl, tlvl, v):
    if v.meta == Q.occurs:
        raise QuoteError("occurs check")
    out = S.Meta(v.meta, Q.qs(lvl, tlvl, v.subst))
    for e in v.elims:
        if e[0] == "app":
            out = S.App(out, Q.q(lvl, tlvl, e[1]), e[2])
        elif e[0] == "papp":
            out = S.PApp(out, Q.iv(e[1], tlvl))
        elif e[0] == "fst":
            out = S.Fst(out)
        else:
            out = S.Snd(out)
    return out


def _q_hit_clauses(Q, lvl, tlvl, v):
    decl = current().hits[v.hit]
    out = []
    for con, env, body in v.clauses:
        cd = decl.con(con)
        args, ihs, iargs = clause_binders(decl, cd, v.params, v.motive, lvl)
        n = len(args) + len(ihs) + len(iargs)
        from .semantics import eval_
        val = eval_(env.extend_many(args + ihs + iargs), body)
        Qn = Q
        for k in range(len(args) + len(ihs)):
            Qn = Qn.under(lvl + k, tlvl + k, False)
        for k in range(len(args) + len(ihs), n):
            Qn = Qn.under(lvl + k, tlvl + k, True)
        out.append((con, Qn.q(lvl + n, tlvl + n, val)))
    return tuple(out)


_QUOTE = {
    VU: lambda Q, l, t, v: S.U(v.level),
    VPi: lambda Q, l, t, v: S.Pi(v.name, Q.q(l, t, v.dom), Q.bind(l, t, v.cod, v.dom), v.implicit),
    VLam: lambda Q, l, t, v: S.Lam(v.name, None if v.dom is None else Q.q(l, t, v.dom),
                                   Q.bind(l, t, v.body, v.dom), v.implicit),
    VSigma: lambda Q, l, t, v: S.Sigma(v.name, Q.q(l, t, v.fst), Q.bind(l, t, v.snd, v.fst)),
    VPair: lambda Q, l, t, v: S.Pair(Q.q(l, t, v.fst), Q.q(l, t, v.snd)),
    VPathP: lambda Q, l, t, v: S.PathP(v.name, Q.ibind(l, t, v.fam), Q.q(l, t, v.left),
                                       Q.q(l, t, v.right)),
    VPLam: lambda Q, l, t, v: S.PLam(v.name, Q.ibind(l, t, v.body)),
    VNat: lambda Q, l, t, v: S.Nat(),
    VZero: lambda Q, l, t, v: S.Zero(),
    VSuc: lambda Q, l, t, v: S.Suc(Q.q(l, t, v.pred)),
    VUnit: lambda Q, l, t, v: S.Unit(),
    VTt: lambda Q, l, t, v: S.Tt(),
    VEmpty: lambda Q, l, t, v: S.Empty(),
    VSum: lambda Q, l, t, v: S.Sum(Q.q(l, t, v.left), Q.q(l, t, v.right)),
    VInl: lambda Q, l, t, v: S.Inl(Q.q(l, t, v.val)),
    VInr: lambda Q, l, t, v: S.Inr(Q.q(l, t, v.val)),
    VGlue: lambda Q, l, t, v: S.Glue(Q.q(l, t, v.base), Q.vsys(l, t, v.sys)),
    VGlueIn: lambda Q, l, t, v: S.GlueIn(Q.vsys(l, t, v.sys), Q.q(l, t, v.base)),
    VId: lambda Q, l, t, v: S.Id(Q.q(l, t, v.ty), Q.q(l, t, v.left), Q.q(l, t, v.right)),
    VIdPair: lambda Q, l, t, v: S.IdPair(Q.cof(v.cof, t), Q.q(l, t, v.path)),
    VHitType: lambda Q, l, t, v: S.HitType(v.hit, Q.qs(l, t, v.params)),
    VHitCon: lambda Q, l, t, v: S.HitCon(v.hit, Q.qs(l, t, v.params), v.con, Q.qs(l, t, v.args),
                                         tuple(Q.iv(r, t) for r in v.iargs)),
    VHitHComp: lambda Q, l, t, v: S.HComp(v.d, S.HitType(v.hit, Q.qs(l, t, v.params)), "k",
                                          Q.sys(l, t, v.sys), Q.q(l, t, v.cap)),
    VVar: lambda Q, l, t, v: Q.var(v.level, t),
    VAxiom: lambda Q, l, t, v: S.Ref(v.name),
    VFlex: _q_flex,
    VApp: lambda Q, l, t, v: S.App(Q.q(l, t, v.fn), Q.q(l, t, v.arg), v.implicit),
    VFst: lambda Q, l, t, v: S.Fst(Q.q(l, t, v.pair)),
    VSnd: lambda Q, l, t, v: S.Snd(Q.q(l, t, v.pair)),
    VPApp: lambda Q, l, t, v: S.PApp(Q.q(l, t, v.path), Q.iv(v.arg, t)),
    VNatElim: lambda Q, l, t, v: S.NatElim(Q.q(l, t, v.motive), Q.q(l, t, v.zero),
                                           Q.q(l, t, v.suc), Q.q(l, t, v.scrut)),
    VEmptyElim: lambda Q, l, t, v: S.EmptyElim(Q.q(l, t, v.motive), Q.q(l, t, v.scrut)),
    VCase: lambda Q, l, t, v: S.Case(Q.q(l, t, v.motive), Q.q(l, t, v.left), Q.q(l, t, v.right),
                                     Q.q(l, t, v.scrut)),
    VTranspNe: lambda Q, l, t, v: S.Transp(v.d, "i", Q.ibind(l, t, v.line), Q.cof(v.cof, t),
                                           Q.q(l, t, v.base)),
    VHCompNe: lambda Q, l, t, v: S.HComp(v.d, Q.q(l, t, v.ty), "k", Q.sys(l, t, v.sys),
                                         Q.q(l, t, v.cap)),
    VUnglueNe: lambda Q, l, t, v: S.Unglue(Q.q(l, t, v.base), Q.vsys(l, t, v.ty_sys),
                                           Q.q(l, t, v.val)),
    VIdPathNe: lambda Q, l, t, v: S.IdPath(Q.q(l, t, v.val)),
    VIdElimNe: lambda Q, l, t, v: S.IdElim(Q.q(l, t, v.ty), Q.q(l, t, v.left),
                                           Q.q(l, t, v.motive), Q.q(l, t, v.refl_case),
                                           Q.q(l, t, v.right), Q.q(l, t, v.scrut)),
    VHitElimNe: lambda Q, l, t, v: S.HitElim(v.hit, Q.qs(l, t, v.params), Q.q(l, t, v.motive),
                                             _q_hit_clauses(Q, l, t, v), Q.q(l, t, v.scrut)),
}


_PLAIN = Quoter()


def quote(lvl: int, v) -> S.Term:
    return _PLAIN.q(lvl, lvl, v)


# ---------------------------------------------------------------------------
# conversion


class Conv:
    """Conversion checking with meta solving.  ``conv`` is type-directed;
    ``conv_ty`` compares types; ``sub_ty`` adds universe cumulativity."""

    def conv(self, lvl: int, ty, a, b) -> bool:
        a, b = force(a), force(b)
        if a is b:
            return True
        if type(a) is VFlex or type(b) is VFlex:
            r = self.flex(lvl, a, b)
            if r is not None:
                return r
        ty = force(ty)
        t = type(ty)
        if t is VPi:
            x = VVar(lvl, ty.dom)
            return self.conv(lvl + 1, inst(ty.cod, x), apply(a, x, ty.implicit),
                             apply(b, x, ty.implicit))
        if t is VSigma:
            a1, b1 = vfst(a), vfst(b)
            return (self.conv(lvl, ty.fst, a1, b1)
                    and self.conv(lvl, inst(ty.snd, a1), vsnd(a), vsnd(b)))
        if t is VPathP:
            i = IvElem.var(lvl)
            return self.conv(lvl + 1, inst(ty.fam, i), papp(a, i), papp(b, i))
        if t is VUnit:
            return True
        if t is VU:
            return self.conv_ty(lvl, a, b)
        if t is VGlue:
            if not self.conv(lvl, ty.base, unglue(ty.base, ty.sys, a),
                             unglue(ty.base, ty.sys, b)):
                return False
            for c, te in ty.sys:
                s = face_subst(c.clauses[0])
                if not self.conv(lvl, vfst(act(te, s)), act(a, s), act(b, s)):
                    return False
            return True
        return self.conv_val(lvl, ty, a, b)

    def conv_under(self, lvl, cof: Cof, ty, a, b) -> bool:
        for f in cof.clauses:
            s = face_subst(f)
            if not self.conv(lvl, act(ty, s), act(a, s), act(b, s)):
                return False
        return True

    # values at positive or neutral types
    def conv_val(self, lvl, ty, a, b) -> bool:
        ta, tb = type(a), type(b)
        if isinstance(a, Neutral) and isinstance(b, Neutral):
            return self.conv_ne(lvl, a, b) is not None
        if ta is not tb:
            return False
        if ta in (VZero, VTt):
            return True
        if ta is VSuc:
            return self.conv(lvl, VNat(), a.pred, b.pred)
        if ta is VInl or ta is VInr:
            ty = force(ty)
            side = (ty.left if ta is VInl else ty.right) if type(ty) is VSum else None
            return self.conv(lvl, side, a.val, b.val)
        if ta is VIdPair:
            ty = force(ty)
            return a.cof == b.cof and self.conv(
                lvl, VPathP("_", const_clo(ty.ty), ty.left, ty.right), a.path, b.path)
        if ta is VHitCon:
            return self.conv_con(lvl, a, b)
        if ta is VHitHComp:
            return (a.hit == b.hit and a.d == b.d
                    and self.conv_params(lvl, a.hit, a.params, b.params)
                    and self.conv_sys(lvl, VHitType(a.hit, a.params), a.sys, b.sys)
                    and self.conv(lvl, VHitType(a.hit, a.params), a.cap, b.cap))
        if ta is VGlueIn:
            return False  # only reached at non-Glue types
        if ta in (VLam, VPair, VPLam):
            return self.conv_eta_free(lvl, a, b)
        return self.conv_ty(lvl, a, b) if ta in _TYPE_FORMERS else False

    def conv_eta_free(self, lvl, a, b) -> bool:
        # values of unknown type compared by their structure
        t = type(a)
        if t is VLam:
            x = VVar(lvl, a.dom)
            return self.conv(lvl + 1, None, inst(a.body, x), inst(b.body, x))
        if t is VPLam:
            i = IvElem.var(lvl)
            return self.conv(lvl + 1, None, inst(a.body, i), inst(b.body, i))
        return self.conv(lvl, None, a.fst, b.fst) and self.conv(lvl, None, a.snd, b.snd)

    def conv_params(self, lvl, hit, ps, qs) -> bool:
        decl = current().hits[hit]
        from .semantics import eval_
        from .values import Env
        done = ()
        for (_, pty), p, q in zip(decl.params, ps, qs):
            if not self.conv(lvl, eval_(Env(done), pty), p, q):
                return False
            done += (p,)
        return True

    def conv_con(self, lvl, a, b) -> bool:
        if a.hit != b.hit or a.con != b.con or a.iargs != b.iargs:
            return False
        if not self.conv_params(lvl, a.hit, a.params, b.params):
            return False
        decl = current().hits[a.hit]
        tys = arg_types(decl, decl.con(a.con), a.params, a.args)
        return all(self.conv(lvl, t, x, y) for t, x, y in zip(tys, a.args, b.args))

    def conv_sys(self, lvl, ty, s1, s2) -> bool:
        """Systems of interval closures at a constant type."""
        if sys_cof(s1) != sys_cof(s2):
            return False
        k = IvElem.var(lvl)
        for c1, u1 in s1:
            for c2, u2 in s2:
                m = c1.meet(c2)
                if m.is_bot:
                    continue
                if not self.conv_under(lvl + 1, m, ty, inst(u1, k), inst(u2, k)):
                    return False
        return True

    def conv_vsys(self, lvl, ty_of, s1, s2) -> bool:
        if sys_cof(s1) != sys_cof(s2):
            return False
        for c1, u1 in s1:
            for c2, u2 in s2:
                m = c1.meet(c2)
                if m.is_bot:
                    continue
                for f in m.clauses:
                    s = face_subst(f)
                    x, y = act(u1, s), act(u2, s)
                    if not self.conv(lvl, ty_of(x, s), x, y):
                        return False
        return True

    # types -------------------------------------------------------------------

    def conv_ty(self, lvl, a, b) -> bool:
        return self.sub_ty(lvl, a, b, exact=True)

    def sub_ty(self, lvl, a, b, exact: bool = False) -> bool:
        a, b = force(a), force(b)
        if a is b:
            return True
        if type(a) is VFlex or type(b) is VFlex:
            r = self.flex(lvl, a, b)
            if r is not None:
                return r
        ta, tb = type(a), type(b)
        if isinstance(a, Neutral) and isinstance(b, Neutral):
            return self.conv_ne(lvl, a, b) is not None
        if ta is not tb:
            return False
        if ta is VU:
            return a.level == b.level or (not exact and a.level <= b.level)
        if ta in (VNat, VUnit, VEmpty):
            return True
        if ta is VPi:
            if a.implicit != b.implicit or not self.conv_ty(lvl, a.dom, b.dom):
                return False
            x = VVar(lvl, a.dom)
            return self.sub_ty(lvl + 1, inst(a.cod, x), inst(b.cod, x), exact)
        if ta is VSigma:
            if not self.sub_ty(lvl, a.fst, b.fst, exact):
                return False
            x = VVar(lvl, a.fst)
            return self.sub_ty(lvl + 1, inst(a.snd, x), inst(b.snd, x), exact)
        if ta is VPathP:
            i = IvElem.var(lvl)
            if not self.sub_ty(lvl + 1, inst(a.fam, i), inst(b.fam, i), exact):
                return False
            return (self.conv(lvl, inst(b.fam, at(0)), a.left, b.left)
                    and self.conv(lvl, inst(b.fam, at(1)), a.right, b.right))
        if ta is VSum:
            return self.sub_ty(lvl, a.left, b.left, exact) and self.sub_ty(lvl, a.right, b.right,
                                                                            exact)
        if ta is VId:
            return (self.conv_ty(lvl, a.ty, b.ty) and self.conv(lvl, a.ty, a.left, b.left)
                    and self.conv(lvl, a.ty, a.right, b.right))
        if ta is VHitType:
            return a.hit == b.hit and self.conv_params(lvl, a.hit, a.params, b.params)
        if ta is VGlue:
            if not self.conv_ty(lvl, a.base, b.base):
                return False
            base = a.base

            def ty_of(te, s):
                T = vfst(te)
                return force(VSigma("T", VU(_big()), const_clo(v_equiv(T, act(base, s)))))
            return self.conv_vsys(lvl, ty_of, a.sys, b.sys)
        return False

    # neutrals ----------------------------------------------------------------

    def conv_ne(self, lvl, a, b):
        """Compare neutrals; on success return the type of ``a``."""
        ta = type(a)
        if ta is not type(b):
            return None
        if ta is VVar:
            return a.ty if a.level == b.level else None
        if ta is VAxiom:
            return a.ty if a.name == b.name else None
        if ta is VFlex:
            if a.meta != b.meta or len(a.elims) != len(b.elims):
                return None
            me = current().metas[a.meta]
            from .semantics import eval_
            from .values import Env
            # substitutions: compare entry-wise by their own types
            for x, y in zip(a.subst, b.subst):
                if isinstance(x, IvElem):
                    if x != y:
                        return None
                elif not self._conv_infer(lvl, x, y):
                    return None
            ty = eval_(Env(a.subst), me.ty)
            head = VFlex(a.meta, a.subst, ())
            for e1, e2 in zip(a.elims, b.elims):
                if e1[0] != e2[0]:
                    return None
                fty = force(ty)
                if e1[0] == "app":
                    if not self.conv(lvl, fty.dom, e1[1], e2[1]):
                        return None
                    ty = inst(fty.cod, e1[1])
                    head = apply(head, e1[1], e1[2])
                elif e1[0] == "papp":
                    if e1[1] != e2[1]:
                        return None
                    ty = inst(fty.fam, e1[1])
                    head = papp(head, e1[1])
                elif e1[0] == "fst":
                    ty = fty.fst
                    head = vfst(head)
                else:
                    ty = inst(fty.snd, vfst(head))
                    head = vsnd(head)
            return ty
        if ta is VApp:
            fty = self.conv_ne(lvl, a.fn, b.fn)
            if fty is None:
                return None
            fty = force(fty)
            if not self.conv(lvl, fty.dom, a.arg, b.arg):
                return None
            return inst(fty.cod, a.arg)
        if ta is VFst:
            pty = self.conv_ne(lvl, a.pair, b.pair)
            return None if pty is None else force(pty).fst
        if ta is VSnd:
            pty = self.conv_ne(lvl, a.pair, b.pair)
            return None if pty is None else inst(force(pty).snd, vfst(a.pair))
        if ta is VPApp:
            if a.arg != b.arg:
                return None
            pty = self.conv_ne(lvl, a.path, b.path)
            return None if pty is None else inst(force(pty).fam, a.arg)
        if ta is VNatElim:
            if self.conv_ne(lvl, a.scrut, b.scrut) is None:
                return None
            n = VVar(lvl, VNat())
            if not self.conv_ty(lvl + 1, apply(a.motive, n), apply(b.motive, n)):
                return None
            if not self.conv(lvl, apply(a.motive, VZero()), a.zero, b.zero):
                return None
            ih = VVar(lvl + 1, apply(a.motive, n))
            if not self.conv(lvl + 2, apply(a.motive, VSuc(n)), apply(apply(a.suc, n), ih),
                             apply(apply(b.suc, n), ih)):
                return None
            return apply(a.motive, a.scrut)
        if ta is VEmptyElim:
            if self.conv_ne(lvl, a.scrut, b.scrut) is None:
                return None
            return a.motive if self.conv_ty(lvl, a.motive, b.motive) else None
        if ta is VCase:
            sty = self.conv_ne(lvl, a.scrut, b.scrut)
            if sty is None:
                return None
            sty = force(sty)
            x = VVar(lvl, sty)
            if not self.conv_ty(lvl + 1, apply(a.motive, x), apply(b.motive, x)):
                return None
            for side, ctor, f, g in ((sty.left, VInl, a.left, b.left),
                                     (sty.right, VInr, a.right, b.right)):
                y = VVar(lvl, side)
                if not self.conv(lvl + 1, apply(a.motive, ctor(y)), apply(f, y), apply(g, y)):
                    return None
            return apply(a.motive, a.scrut)
        if ta is VTranspNe:
            if a.d != b.d or a.cof != b.cof:
                return None
            i = IvElem.var(lvl)
            if not self.conv_ty(lvl + 1, inst(a.line, i), inst(b.line, i)):
                return None
            if not self.conv(lvl, inst(a.line, at(a.d)), a.base, b.base):
                return None
            return inst(a.line, end(a.d))
        if ta is VHCompNe:
            if a.d != b.d or not self.conv_ty(lvl, a.ty, b.ty):
                return None
            if not (self.conv_sys(lvl, a.ty, a.sys, b.sys) and self.conv(lvl, a.ty, a.cap, b.cap)):
                return None
            return a.ty
        if ta is VUnglueNe:
            return a.base if self.conv_ne(lvl, a.val, b.val) is not None else None
        if ta is VIdPathNe:
            return ne_type(a) if self.conv_ne(lvl, a.val, b.val) is not None else None
        if ta is VIdElimNe:
            ity = self.conv_ne(lvl, a.scrut, b.scrut)
            if ity is None:
                return None
            ity = force(ity)
            if not self.conv(lvl, ity.ty, a.right, b.right):
                return None
            y = VVar(lvl, ity.ty)
            q = VVar(lvl + 1, VId(ity.ty, ity.left, y))
            if not self.conv_ty(lvl + 2, apply(apply(a.motive, y), q), apply(apply(b.motive, y), q)):
                return None
            from .semantics import at as _at
            refl = VIdPair(Cof(((),)), VPLam("_", const_clo(ity.left)))
            if not self.conv(lvl, apply(apply(a.motive, ity.left), refl), a.refl_case,
                             b.refl_case):
                return None
            return ne_type(a)
        if ta is VHitElimNe:
            if a.hit != b.hit:
                return None
            hty = self.conv_ne(lvl, a.scrut, b.scrut)
            if hty is None:
                return None
            x = VVar(lvl, VHitType(a.hit, a.params))
            if not self.conv_ty(lvl + 1, apply(a.motive, x), apply(b.motive, x)):
                return None
            if not self.conv_clauses(lvl, a, b):
                return None
            return apply(a.motive, a.scrut)
        return None

    def conv_clauses(self, lvl, a, b) -> bool:
        from .semantics import eval_
        decl = current().hits[a.hit]
        cb = {c: (env, body) for c, env, body in b.clauses}
        for con, env, body in a.clauses:
            if con not in cb:
                return False
            cd = decl.con(con)
            args, ihs, iargs = clause_binders(decl, cd, a.params, a.motive, lvl)
            n = len(args) + len(ihs) + len(iargs)
            env2, body2 = cb[con]
            xs = args + ihs + iargs
            scrut = VHitCon(a.hit, a.params, con, args, iargs)
            if not self.conv(lvl + n, apply(a.motive, scrut), eval_(env.extend_many(xs), body),
                             eval_(env2.extend_many(xs), body2)):
                return False
        return True

    def _conv_infer(self, lvl, x, y) -> bool:
        x, y = force(x), force(y)
        if isinstance(x, Neutral) and isinstance(y, Neutral):
            return self.conv_ne(lvl, x, y) is not None
        return self.conv(lvl, None, x, y)

    # metas -------------------------------------------------------------------

    def flex(self, lvl, a, b) -> Optional[bool]:
        """Try to solve; ``None`` means the problem is not a pattern."""
        if type(a) is VFlex and type(b) is VFlex and a.meta == b.meta:
            r = self.conv_ne(lvl, a, b)
            if r is not None:
                return True
        if type(a) is VFlex and solve(lvl, a, b):
            return True
        if type(b) is VFlex and solve(lvl, b, a):
            return True
        return None


_TYPE_FORMERS = (VU, VPi, VSigma, VPathP, VNat, VUnit, VEmpty, VSum, VId, VHitType, VGlue)


def _big():
    from .hit import OMEGA
    return OMEGA


def solve(lvl: int, flex: VFlex, rhs) -> bool:
    """Pattern unification ``?m[subst] elims = rhs``."""
    me = current().metas[flex.meta]
    if me.solution is not None:
        return False
    ren, dren = {}, {}
    seen_v, seen_d = set(), set()
    for k, e in enumerate(flex.subst):
        if isinstance(e, IvElem):
            name = e.as_var()
            if name is None:
                continue
            if name in seen_d:
                dren.pop(name, None)
            else:
                seen_d.add(name)
                dren[name] = k
        else:
            e = force(e)
            if type(e) is VVar:
                if e.level in seen_v:
                    ren.pop(e.level, None)
                else:
                    seen_v.add(e.level)
                    ren[e.level] = k
    binders = []
    tl = len(flex.subst)
    for e in flex.elims:
        if e[0] == "app":
            x = force(e[1])
            if type(x) is not VVar or x.level in ren:
                return False
            ren[x.level] = tl
            binders.append(("lam", e[2]))
        elif e[0] == "papp":
            name = e[1].as_var()
            if name is None or name in dren:
                return False
            dren[name] = tl
            binders.append(("plam", None))
        else:
            return False
        tl += 1
    Q = Quoter(ren, dren, occurs=flex.meta)
    try:
        body = Q.q(lvl, tl, rhs)
    except QuoteError:
        return False
    for kind, icit in reversed(binders):
        body = S.Lam("x", None, body, icit) if kind == "lam" else S.PLam("i", body)
    me.solution = body
    return True


_CONV = Conv()


def conv(lvl: int, ty, a, b) -> bool:
    return _CONV.conv(lvl, ty, a, b)


def conv_ty(lvl: int, a, b) -> bool:
    return _CONV.conv_ty(lvl, a, b)


def sub_ty(lvl: int, a, b) -> bool:
    return _CONV.sub_ty(lvl, a, b)


def conv_under(lvl: int, cof: Cof, ty, a, b) -> bool:
    return _CONV.conv_under(lvl, cof, ty, a, b)
