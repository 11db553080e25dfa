"""Evaluation, dimension substitution and the Kan operations.

``transp(d, line, phi, a)`` moves ``a`` from endpoint ``d`` of the type line
to the other endpoint and is the identity where ``phi`` holds.
``hcomp(d, A, sys, cap)`` composes from ``k = d`` to ``k = 1 - d``; the
system components are interval closures valid under their faces and must
agree with ``cap`` at ``k = d``.  Both directions exist because the interval
has no reversal.
"""

from __future__ import annotations

import sys

from ..interval import (
    BOT, ONE, TOP, ZERO, CAnd, CBot, CEq, Cof, COr, CTop, IJoin, IMeet, IOne, IVar, IvElem,
    IZero,
)
from . import syntax as S
from .hit import OMEGA
from .session import current
from .values import (
    AClo, Clo, Env, IClo, KClo, Neutral, VAxiom, VApp, VCase, VEmpty, VEmptyElim, VFlex, VFst,
    VGlue, VGlueIn, VHCompNe, VHitCon, VHitElimNe, VHitHComp, VHitType, VId, VIdElimNe,
    VIdPair, VIdPathNe, VInl, VInr, VLam, VNat, VNatElim, VPApp, VPair, VPathP, VPi, VPLam,
    VSigma, VSnd, VSuc, VSum, VTranspNe, VTt, VU, VUnglueNe, VUnit, VVar, VZero, Value,
    fresh_dim, support,
)

sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))

__all__ = ["Env", "VAxiom", "eval_", "apply", "papp", "transp", "hcomp", "comp", "act",
           "force", "ne_type", "inst"]


class EvalError(Exception):
    pass


NAT, ZERO_V, UNIT, TT, EMPTY = VNat(), VZero(), VUnit(), VTt(), VEmpty()


def end(d: int) -> IvElem:
    """The endpoint opposite to ``d``."""
    return ZERO if d else ONE


def at(d: int) -> IvElem:
    return ONE if d else ZERO


# ---------------------------------------------------------------------------
# interval and cofibration evaluation


def ev_iv(env: Env, r) -> IvElem:
    t = type(r)
    if t is IVar:
        v = env.lookup(r.index)
        if not isinstance(v, IvElem):
            raise EvalError(f"interval variable {r.index} bound to a term")
        return v
    if t is IZero:
        return ZERO
    if t is IOne:
        return ONE
    if t is IMeet:
        return ev_iv(env, r.left).meet(ev_iv(env, r.right))
    if t is IJoin:
        return ev_iv(env, r.left).join(ev_iv(env, r.right))
    raise EvalError(f"not an interval term: {r!r}")


def ev_cof(env: Env, c) -> Cof:
    t = type(c)
    if t is CEq:
        return Cof.eq(ev_iv(env, c.term), c.eps)
    if t is CTop:
        return TOP
    if t is CBot:
        return BOT
    if t is CAnd:
        return ev_cof(env, c.left).meet(ev_cof(env, c.right))
    if t is COr:
        return ev_cof(env, c.left).join(ev_cof(env, c.right))
    if t is Cof:
        return c
    raise EvalError(f"not a cofibration: {c!r}")


_IV_TYPES = (IZero, IOne, IVar, IMeet, IJoin)


def ev_any(env: Env, t):
    return ev_iv(env, t) if isinstance(t, _IV_TYPES) else eval_(env, t)


# ---------------------------------------------------------------------------
# evaluation


def eval_(env: Env, t):
    return _EVAL[type(t)](env, t)


def _ev_meta(env, t):
    vals = tuple(ev_any(env, a) for a in t.args)
    me = current().metas[t.id]
    if me.solution is not None:
        return eval_(Env(vals), me.solution)
    return VFlex(t.id, vals, ())


def _ev_sys(env, sys):
    return tuple((ev_cof(env, c), IClo(env, u)) for c, u in sys)


def _ev_vsys(env, sys):
    return tuple((ev_cof(env, c), eval_(env, u)) for c, u in sys)


_EVAL = {
    S.Var: lambda env, t: env.lookup(t.ix),
    S.Ref: lambda env, t: current().defs[t.name].value,
    S.Meta: _ev_meta,
    S.U: lambda env, t: VU(t.level),
    S.Pi: lambda env, t: VPi(t.name, eval_(env, t.dom), Clo(env, t.cod), t.implicit),
    S.Lam: lambda env, t: VLam(t.name, None if t.dom is None else eval_(env, t.dom),
                               Clo(env, t.body), t.implicit),
    S.App: lambda env, t: apply(eval_(env, t.fn), eval_(env, t.arg), t.implicit),
    S.Sigma: lambda env, t: VSigma(t.name, eval_(env, t.fst), Clo(env, t.snd)),
    S.Pair: lambda env, t: VPair(eval_(env, t.fst), eval_(env, t.snd)),
    S.Fst: lambda env, t: vfst(eval_(env, t.pair)),
    S.Snd: lambda env, t: vsnd(eval_(env, t.pair)),
    S.PathP: lambda env, t: VPathP(t.name, IClo(env, t.fam), eval_(env, t.left),
                                   eval_(env, t.right)),
    S.PLam: lambda env, t: VPLam(t.name, IClo(env, t.body)),
    S.PApp: lambda env, t: papp(eval_(env, t.path), ev_iv(env, t.arg)),
    S.Nat: lambda env, t: NAT,
    S.Zero: lambda env, t: ZERO_V,
    S.Suc: lambda env, t: VSuc(eval_(env, t.pred)),
    S.NatElim: lambda env, t: natelim(eval_(env, t.motive), eval_(env, t.zero),
                                      eval_(env, t.suc), eval_(env, t.scrut)),
    S.Unit: lambda env, t: UNIT,
    S.Tt: lambda env, t: TT,
    S.Empty: lambda env, t: EMPTY,
    S.EmptyElim: lambda env, t: emptyelim(eval_(env, t.motive), eval_(env, t.scrut)),
    S.Sum: lambda env, t: VSum(eval_(env, t.left), eval_(env, t.right)),
    S.Inl: lambda env, t: VInl(eval_(env, t.val)),
    S.Inr: lambda env, t: VInr(eval_(env, t.val)),
    S.Case: lambda env, t: case(eval_(env, t.motive), eval_(env, t.left),
                                eval_(env, t.right), eval_(env, t.scrut)),
    S.Transp: lambda env, t: transp(t.d, IClo(env, t.line), ev_cof(env, t.cof),
                                    eval_(env, t.base)),
    S.HComp: lambda env, t: hcomp(t.d, eval_(env, t.ty), _ev_sys(env, t.sys),
                                  eval_(env, t.cap)),
    S.Comp: lambda env, t: comp(t.d, IClo(env, t.line), _ev_sys(env, t.sys),
                                eval_(env, t.cap)),
    S.Glue: lambda env, t: mk_glue(eval_(env, t.base), _ev_vsys(env, t.sys)),
    S.GlueIn: lambda env, t: mk_gluein(_ev_vsys(env, t.sys), eval_(env, t.base)),
    S.Unglue: lambda env, t: unglue(eval_(env, t.base), _ev_vsys(env, t.ty_sys),
                                    eval_(env, t.val)),
    S.Id: lambda env, t: VId(eval_(env, t.ty), eval_(env, t.left), eval_(env, t.right)),
    S.IdPair: lambda env, t: VIdPair(ev_cof(env, t.cof), eval_(env, t.path)),
    S.IdPath: lambda env, t: idpath(eval_(env, t.val)),
    S.IdElim: lambda env, t: idelim(eval_(env, t.ty), eval_(env, t.left), eval_(env, t.motive),
                                    eval_(env, t.refl_case), eval_(env, t.right),
                                    eval_(env, t.scrut)),
    S.HitType: lambda env, t: VHitType(t.hit, tuple(eval_(env, p) for p in t.params)),
    S.HitCon: lambda env, t: mk_con(t.hit, tuple(eval_(env, p) for p in t.params), t.con,
                                    tuple(eval_(env, a) for a in t.args),
                                    tuple(ev_iv(env, r) for r in t.iargs)),
    S.HitElim: lambda env, t: hit_elim(t.hit, tuple(eval_(env, p) for p in t.params),
                                       eval_(env, t.motive),
                                       tuple((c, env, b) for c, b in t.clauses),
                                       eval_(env, t.scrut)),
    S.Let: lambda env, t: eval_(env.extend(eval_(env, t.val)), t.body),
}


# ---------------------------------------------------------------------------
# closures


def inst(clo, x):
    t = type(clo)
    if t is Clo or t is IClo:
        return eval_(clo.env.extend(x), clo.body)
    if t is KClo:
        return clo.fn(*clo.args, x)
    if t is AClo:
        return act(clo.val, {clo.dim: x})
    raise EvalError(f"not a closure: {clo!r}")


def _const(v, _x):
    return v


def const_clo(v) -> KClo:
    return KClo(_const, v)


def _reparam(clo, j: IvElem, meet: bool, k: IvElem):
    return inst(clo, j.meet(k) if meet else j.join(k))


def reparam(clo, j: IvElem, meet: bool) -> KClo:
    """``k |-> clo(j /\\ k)`` or ``k |-> clo(j \\/ k)``."""
    return KClo(_reparam, clo, j, meet)


def abstract(i: int, v) -> AClo:
    return AClo(i, v)


# ---------------------------------------------------------------------------
# eliminators


def force(v):
    """Unfold solved metas at the head of ``v``."""
    while type(v) is VFlex:
        me = current().metas[v.meta]
        if me.solution is None:
            return v
        r = eval_(Env(v.subst), me.solution)
        for e in v.elims:
            r = _elim(r, e)
        v = r
    if isinstance(v, Neutral) and type(v) in _PRINCIPAL and current().has_live_metas():
        field = _PRINCIPAL[type(v)]
        h = getattr(v, field)
        fh = force(h)
        if fh is not h:
            return force(act_rebuild(v, {field: fh}))
    return v


_PRINCIPAL = {}


def _elim(r, e):
    tag = e[0]
    if tag == "app":
        return apply(r, e[1], e[2])
    if tag == "papp":
        return papp(r, e[1])
    if tag == "fst":
        return vfst(r)
    return vsnd(r)


def apply(f, a, icit: bool = False):
    t = type(f)
    if t is VLam:
        return inst(f.body, a)
    if t is VFlex:
        f = force(f)
        if type(f) is VFlex:
            return VFlex(f.meta, f.subst, f.elims + (("app", a, icit),))
        return apply(f, a, icit)
    if isinstance(f, Neutral):
        return VApp(f, a, icit)
    raise EvalError(f"cannot apply {type(f).__name__}")


def papp(p, r: IvElem):
    t = type(p)
    if t is VPLam:
        return inst(p.body, r)
    if t is VFlex:
        p = force(p)
        if type(p) is not VFlex:
            return papp(p, r)
    if isinstance(p, Neutral):
        c = r.as_const()
        if c is not None:
            ty = force(ne_type(p))
            if type(ty) is VPathP:
                return ty.right if c else ty.left
        if type(p) is VFlex:
            return VFlex(p.meta, p.subst, p.elims + (("papp", r),))
        return VPApp(p, r)
    raise EvalError(f"cannot apply {type(p).__name__} to an interval element")


def vfst(p):
    t = type(p)
    if t is VPair:
        return p.fst
    if t is VFlex:
        p = force(p)
        if type(p) is VFlex:
            return VFlex(p.meta, p.subst, p.elims + (("fst",),))
        return vfst(p)
    if isinstance(p, Neutral):
        return VFst(p)
    raise EvalError(f"cannot project from {type(p).__name__}")


def vsnd(p):
    t = type(p)
    if t is VPair:
        return p.snd
    if t is VFlex:
        p = force(p)
        if type(p) is VFlex:
            return VFlex(p.meta, p.subst, p.elims + (("snd",),))
        return vsnd(p)
    if isinstance(p, Neutral):
        return VSnd(p)
    raise EvalError(f"cannot project from {type(p).__name__}")


def natelim(m, z, s, n):
    preds = []
    n = force(n)
    while type(n) is VSuc:
        preds.append(n.pred)
        n = force(n.pred)
    if type(n) is VZero:
        acc = z
    elif isinstance(n, Neutral):
        acc = VNatElim(m, z, s, n)
    else:
        raise EvalError(f"natrec on {type(n).__name__}")
    for p in reversed(preds):
        acc = apply(apply(s, p), acc)
    return acc


def emptyelim(m, e):
    return VEmptyElim(m, force(e))


def case(m, l, r, s):
    s = force(s)
    if type(s) is VInl:
        return apply(l, s.val)
    if type(s) is VInr:
        return apply(r, s.val)
    if isinstance(s, Neutral):
        return VCase(m, l, r, s)
    raise EvalError(f"case on {type(s).__name__}")


# ---------------------------------------------------------------------------
# systems


def face_subst(face) -> dict:
    return {v: (ONE if e else ZERO) for v, e in face}


def norm_sys(sys):
    """Split a system into single-face components restricted to their
    face.  Returns ``(u, None)`` when some face is true."""
    out = []
    for c, u in sys:
        for f in c.clauses:
            if not f:
                return u, None
            out.append((Cof((f,)), act(u, face_subst(f))))
    return None, tuple(out)


def sys_cof(sys) -> Cof:
    out = BOT
    for c, _ in sys:
        out = out.join(c)
    return out


# ---------------------------------------------------------------------------
# Glue


def mk_glue(base, sys):
    top, ns = norm_sys(sys)
    if top is not None:
        return vfst(top)
    if not ns:
        return base
    return VGlue(base, ns)


def mk_gluein(sys, base):
    top, ns = norm_sys(sys)
    if top is not None:
        return top
    if not ns:
        return base
    return VGlueIn(ns, base)


def equiv_fun(e):
    return vfst(e)


def unglue(base, ty_sys, v):
    top, ns = norm_sys(ty_sys)
    if top is not None:
        return apply(equiv_fun(vsnd(top)), v)
    if not ns:
        return v
    v = force(v)
    if type(v) is VGlueIn:
        return v.base
    return VUnglueNe(base, ns, v)


# ---------------------------------------------------------------------------
# Id


def idpath(v):
    v = force(v)
    if type(v) is VIdPair:
        return v.path
    return VIdPathNe(v)


def _meet_path(p, i, j):
    return papp(p, i.meet(j))


def _j_line(C, p, w, i):
    q = VIdPair(w.join(Cof.eq(i, 0)), VPLam("j", KClo(_meet_path, p, i)))
    return apply(apply(C, papp(p, i)), q)


def idelim(A, a, C, d, b, q):
    q = force(q)
    if type(q) is VIdPair:
        w = q.cof
        return comp(0, KClo(_j_line, C, q.path, w), ((w, const_clo(d)),), d)
    return VIdElimNe(A, a, C, d, b, q)


# ---------------------------------------------------------------------------
# equivalences used by the universe and Glue rules
#   isContr X   = (c : X) * ((z : X) -> Path X z c)
#   fiber f y   = (x : T) * Path A (f x) y
#   Equiv T A   = (f : T -> A) * ((y : A) -> isContr (fiber f y))


def _isc_cod(X, c, z):
    return VPathP("_", const_clo(X), z, c)


def _isc_snd(X, c):
    return VPi("z", X, KClo(_isc_cod, X, c), False)


def v_is_contr(X):
    return VSigma("c", X, KClo(_isc_snd, X))


def _fib_snd(A, f, y, x):
    return VPathP("_", const_clo(A), apply(f, x), y)


def v_fiber(T, A, f, y):
    return VSigma("x", T, KClo(_fib_snd, A, f, y))


def _eq_cod(T, A, f, y):
    return v_is_contr(v_fiber(T, A, f, y))


def _eq_snd(T, A, f):
    return VPi("y", A, KClo(_eq_cod, T, A, f), False)


def v_equiv(T, A):
    return VSigma("f", VPi("x", T, const_clo(A), False), KClo(_eq_snd, T, A))


def _id_fn(x):
    return x


def _idc_path2(z, i, j):
    return papp(vsnd(z), i.join(j))


def _idc_path(z, i):
    return VPair(papp(vsnd(z), i), VPLam("j", KClo(_idc_path2, z, i)))


def _idc_contr(z):
    return VPLam("i", KClo(_idc_path, z))


def _idc(T, y):
    return VPair(VPair(y, VPLam("i", const_clo(y))), VLam("z", None, KClo(_idc_contr), False))


def v_id_equiv(T):
    return VPair(VLam("x", T, KClo(_id_fn), False), VLam("y", T, KClo(_idc, T), False))


# ---------------------------------------------------------------------------
# fillers and heterogeneous composition


def tfill_at(d: int, line, phi: Cof, a, j: IvElem):
    """Transport filler: ``a`` at ``j = d``, ``transp`` at ``j = 1 - d``."""
    return transp(d, reparam(line, j, d == 0), phi.join(Cof.eq(j, d)), a)


def tfill(d, line, phi, a) -> KClo:
    return KClo(tfill_at, d, line, phi, a)


def _hfill_at(d, A, sys, cap, j: IvElem):
    ext = tuple((c, reparam(u, j, d == 0)) for c, u in sys)
    return hcomp(d, A, ext + ((Cof.eq(j, d), const_clo(cap)),), cap)


def hfill(d, A, sys, cap) -> KClo:
    return KClo(_hfill_at, d, A, sys, cap)


def _comp_tube(d, line, u, k):
    return transp(d, reparam(line, k, d != 0), Cof.eq(k, 1 - d), inst(u, k))


def comp(d: int, line, sys, cap):
    a1 = inst(line, end(d))
    tubes = tuple((c, KClo(_comp_tube, d, line, u)) for c, u in sys)
    return hcomp(d, a1, tubes, transp(d, line, BOT, cap))


# ---------------------------------------------------------------------------
# hcomp


def _app_clo(u, x, k):
    return apply(inst(u, k), x)


def _papp_clo(u, j, k):
    return papp(inst(u, k), j)


def _fst_clo(u, k):
    return vfst(inst(u, k))


def _snd_clo(u, k):
    return vsnd(inst(u, k))


def _hcomp_pi(d, A, sys, cap, x):
    return hcomp(d, inst(A.cod, x), tuple((c, KClo(_app_clo, u, x)) for c, u in sys),
                 apply(cap, x))


def _sigma_snd_line(A, fill, k):
    return inst(A.snd, inst(fill, k))


def _hcomp_path(d, A, sys, cap, j):
    s = tuple((c, KClo(_papp_clo, u, j)) for c, u in sys)
    s += ((Cof.eq(j, 0), const_clo(A.left)), (Cof.eq(j, 1), const_clo(A.right)))
    return hcomp(d, inst(A.fam, j), s, papp(cap, j))


def _sample(sys):
    """Each component at a fresh dimension, with the dimension."""
    k = fresh_dim()
    kv = IvElem.var(k)
    return k, [(c, force(inst(u, kv))) for c, u in sys]


def _hcomp_discrete(d, A, sys, cap, ctor, field):
    """Composition in ℕ and sums: only when the cap and every tube share
    the head constructor; then compose under it."""
    k, samples = _sample(sys)
    if not all(type(s) is ctor for _, s in samples):
        return None
    inner = tuple((c, AClo(k, getattr(s, field))) for c, s in samples)
    return inner


def _unglue_clo(base, gsys, u, k):
    return unglue(base, gsys, inst(u, k))


def _glue_tube(e, fill, k):
    return apply(equiv_fun(e), inst(fill, k))


def _hcomp_glue(d, A, sys, cap):
    base, gsys = A.base, A.sys
    ts = []
    tubes = [(c, KClo(_unglue_clo, base, gsys, u)) for c, u in sys]
    for g, te in gsys:
        s = face_subst(g.clauses[0])
        T, e = vfst(te), vsnd(te)
        sys_g = tuple((c.subst(s), act(u, s)) for c, u in sys)
        cap_g = act(cap, s)
        ts.append((g, hcomp(d, T, sys_g, cap_g)))
        tubes.append((g, KClo(_glue_tube, e, hfill(d, T, sys_g, cap_g))))
    a1 = hcomp(d, base, tuple(tubes), unglue(base, gsys, cap))
    return mk_gluein(tuple(ts), a1)


def _id_tube(u, j, k):
    return papp(idpath(inst(u, k)), j)


def _hcomp_id_path(d, A, sys, cap, j):
    s = tuple((c, KClo(_id_tube, u, j)) for c, u in sys)
    s += ((Cof.eq(j, 0), const_clo(A.left)), (Cof.eq(j, 1), const_clo(A.right)))
    return hcomp(d, A.ty, s, papp(idpath(cap), j))


def _hcomp_id(d, A, sys, cap):
    cof = BOT
    for c, u in sys:
        w = force(inst(u, end(d)))
        if type(w) is not VIdPair:
            return None
        cof = cof.join(c.meet(w.cof))
    return VIdPair(cof, VPLam("j", KClo(_hcomp_path_id_entry, d, A, sys, cap)))


def _hcomp_path_id_entry(d, A, sys, cap, j):
    return _hcomp_id_path(d, A, sys, cap, j)


def _equiv_line(u, d, j):
    return v_equiv(inst(u, end(d)), inst(u, j))


def _hcomp_u(d, sys, cap):
    comps = []
    for c, u in sys:
        T1 = inst(u, end(d))
        e = transp(1 - d, KClo(_equiv_line, u, d), BOT, v_id_equiv(T1))
        comps.append((c, VPair(T1, e)))
    return mk_glue(cap, tuple(comps))


def hcomp(d: int, A, sys, cap):
    top, ns = norm_sys(sys)
    if top is not None:
        return inst(top, end(d))
    A = force(A)
    t = type(A)
    if t is VPi:
        return VLam(A.name, A.dom, KClo(_hcomp_pi, d, A, ns, cap), A.implicit)
    if t is VSigma:
        fill = hfill(d, A.fst, tuple((c, KClo(_fst_clo, u)) for c, u in ns), vfst(cap))
        snd = comp(d, KClo(_sigma_snd_line, A, fill), tuple((c, KClo(_snd_clo, u)) for c, u in ns),
                   vsnd(cap))
        return VPair(inst(fill, end(d)), snd)
    if t is VPathP:
        return VPLam(A.name, KClo(_hcomp_path, d, A, ns, cap))
    if t is VUnit:
        return TT
    if t is VU:
        return _hcomp_u(d, ns, cap)
    if t is VGlue:
        return _hcomp_glue(d, A, ns, cap)
    if t is VHitType:
        decl = current().hits[A.hit]
        if decl.fibrant:
            return VHitHComp(A.hit, A.params, d, ns, cap)
        return VHCompNe(d, A, ns, cap)
    c = force(cap)
    if t is VNat:
        if type(c) is VZero:
            if all(type(s) is VZero for _, s in _sample(ns)[1]):
                return ZERO_V
        elif type(c) is VSuc:
            inner = _hcomp_discrete(d, A, ns, c, VSuc, "pred")
            if inner is not None:
                return VSuc(hcomp(d, NAT, inner, c.pred))
        return VHCompNe(d, A, ns, cap)
    if t is VSum:
        for ctor, ty in ((VInl, A.left), (VInr, A.right)):
            if type(c) is ctor:
                inner = _hcomp_discrete(d, A, ns, c, ctor, "val")
                if inner is not None:
                    return ctor(hcomp(d, ty, inner, c.val))
        return VHCompNe(d, A, ns, cap)
    if t is VId:
        r = _hcomp_id(d, A, ns, cap)
        if r is not None:
            return r
        return VHCompNe(d, A, ns, cap)
    return VHCompNe(d, A, ns, cap)


# ---------------------------------------------------------------------------
# transp


def _regular(A) -> bool:
    """Types whose transport along a constant line is the identity by
    their own structural rules."""
    t = type(A)
    if t in (VNat, VUnit, VEmpty, VU):
        return True
    if t is VSum:
        return _regular(force(A.left)) and _regular(force(A.right))
    return False


def _line_field(line, name, r):
    return getattr(force(inst(line, r)), name)


def _pi_cod_line(line, xfill, k):
    return inst(force(inst(line, k)).cod, inst(xfill, k))


def _transp_pi_body(d, line, phi, f, y):
    domline = KClo(_line_field, line, "dom")
    xfill = tfill(1 - d, domline, phi, y)
    return transp(d, KClo(_pi_cod_line, line, xfill), phi, apply(f, inst(xfill, at(d))))


def _sigma_snd_tline(line, afill, k):
    return inst(force(inst(line, k)).snd, inst(afill, k))


def _path_fam_line(line, j, k):
    return inst(force(inst(line, k)).fam, j)


def _transp_path_at(d, line, phi, p, j):
    s = ((phi, const_clo(papp(p, j))),
         (Cof.eq(j, 0), KClo(_line_field, line, "left")),
         (Cof.eq(j, 1), KClo(_line_field, line, "right")))
    return comp(d, KClo(_path_fam_line, line, j), s, papp(p, j))


def _transp_id_at(d, line, phi, p, j):
    s = ((phi, const_clo(papp(p, j))),
         (Cof.eq(j, 0), KClo(_line_field, line, "left")),
         (Cof.eq(j, 1), KClo(_line_field, line, "right")))
    return comp(d, KClo(_line_field, line, "ty"), s, papp(p, j))


def transp(d: int, line, phi: Cof, a):
    if phi.is_top:
        return a
    i = fresh_dim()
    Ai = force(inst(line, IvElem.var(i)))
    t = type(Ai)
    if t in (VNat, VUnit, VEmpty, VU):
        return a
    L = AClo(i, Ai)
    if t is VPi:
        A1 = force(inst(L, end(d)))
        return VLam(A1.name, A1.dom, KClo(_transp_pi_body, d, L, phi, a), A1.implicit)
    if t is VSigma:
        afill = tfill(d, KClo(_line_field, L, "fst"), phi, vfst(a))
        snd = transp(d, KClo(_sigma_snd_tline, L, afill), phi, vsnd(a))
        return VPair(inst(afill, end(d)), snd)
    if t is VPathP:
        return VPLam(Ai.name, KClo(_transp_path_at, d, L, phi, a))
    if t is VSum:
        if i not in support(Ai) and _regular(Ai):
            return a
        v = force(a)
        if type(v) is VInl:
            return VInl(transp(d, KClo(_line_field, L, "left"), phi, v.val))
        if type(v) is VInr:
            return VInr(transp(d, KClo(_line_field, L, "right"), phi, v.val))
        return VTranspNe(d, L, phi, a)
    if t is VGlue:
        return _transp_glue(d, L, i, Ai, phi, a)
    if t is VId:
        v = force(a)
        if type(v) is VIdPair:
            return VIdPair(phi.meet(v.cof), VPLam("j", KClo(_transp_id_at, d, L, phi, v.path)))
        return VTranspNe(d, L, phi, a)
    if t is VHitType:
        return _transp_hit(d, L, phi, a)
    return VTranspNe(d, L, phi, a)


# Glue transport --------------------------------------------------------------


def _glue_sys_at(Ai, i, r):
    """The (cof, (T, e)) system of the Glue line at ``r``, unreduced."""
    s = {i: r}
    return tuple((c.subst(s), act(te, s)) for c, te in Ai.sys)


def _component_under(gsys, face):
    """The (T, e) component whose face holds under ``face``."""
    for c, te in gsys:
        if c.satisfied_by(face):
            return act(te, face_subst(face))
    raise EvalError("no Glue component covers the face")


def _glue_comp_tube(d, L, i, Ai, phi, u0, beta, k):
    s = face_subst(beta)
    te = act(_glue_sys_at_component(Ai, i, k, beta), s)
    tline = KClo(_glue_T_line, Ai, i, beta)
    t_k = tfill_at(d, tline, phi.subst(s), act(u0, s), k)
    return apply(equiv_fun(vsnd(te)), t_k)


def _glue_sys_at_component(Ai, i, r, beta):
    return _component_under(_glue_sys_at(Ai, i, r), beta)


def _glue_T_line(Ai, i, beta, r):
    return vfst(_glue_sys_at_component(Ai, i, r, beta))


def _contr_tube(h, x, j):
    return papp(apply(h, x), j)


def _glue_base_at(Ai, i, r):
    return act(Ai.base, {i: r})


def _transp_glue(d, L, i, Ai, phi, u0):
    # read the base off the unreduced Glue: at an endpoint the line may
    # already have collapsed onto one of its components
    base_line = KClo(_glue_base_at, Ai, i)
    sys_d = _glue_sys_at(Ai, i, at(d))
    sys_1 = _glue_sys_at(Ai, i, end(d))
    a0 = unglue(inst(base_line, at(d)), sys_d, u0)
    psi = sys_cof(Ai.sys)
    delta = psi.forall(i)
    tubes = [(phi, const_clo(a0))]
    for beta in delta.clauses:
        tubes.append((Cof((beta,)), KClo(_glue_comp_tube, d, L, i, Ai, phi, u0, beta)))
    a1p = comp(d, base_line, tuple(tubes), a0)
    A1 = inst(base_line, end(d))
    top, ns1 = norm_sys(sys_1)
    if top is not None:
        ns1 = ((TOP, top),)
    t1s = []
    fix = [(phi, const_clo(a1p))]
    for gface_cof, te in ns1:
        g = gface_cof.clauses[0]
        s = face_subst(g)
        T1, e1 = vfst(te), vsnd(te)
        a1g = act(a1p, s)
        fib = v_fiber(T1, act(A1, s), equiv_fun(e1), a1g)
        contr = apply(vsnd(e1), a1g)
        center, h = vfst(contr), vsnd(contr)
        ext = []
        phig = phi.subst(s)
        refl = VPLam("_", const_clo(a1g))
        if not phig.is_bot:
            ext.append((phig, KClo(_contr_tube, h, VPair(act(u0, s), refl))))
        for beta in delta.clauses:
            bc = Cof((beta,)).subst(s)
            if bc.is_bot:
                continue
            tline = KClo(_glue_T_line, Ai, i, beta)
            t_end = transp(d, tline, phi, u0)
            ext.append((bc, KClo(_contr_tube, h, VPair(act(t_end, s), refl))))
        fibv = hcomp(1, fib, tuple(ext), center)
        t1s.append((gface_cof, vfst(fibv)))
        fix.append((gface_cof, KClo(_papp_plain, vsnd(fibv))))
    if top is not None:
        return t1s[0][1]
    a1 = hcomp(1, A1, tuple(fix), a1p)
    return mk_gluein(tuple(t1s), a1)


def _papp_plain(p, j):
    return papp(p, j)


# HIT transport ---------------------------------------------------------------


def _transp_clo(d, L, phi, u, k):
    return transp(d, L, phi, inst(u, k))


def _arg_line(L, ty, fills, r):
    params = force(inst(L, r)).params
    return eval_(Env(params + tuple(inst(f, r) for f in fills)), ty)


def _boundary_tube(d, L, phi, tgt, fills, iargs, j):
    params = force(inst(L, j)).params
    val = eval_(Env(params + tuple(inst(f, j) for f in fills) + iargs), tgt)
    return transp(d, reparam(L, j, d != 0), phi.join(Cof.eq(j, 1 - d)), val)


def _transp_hit(d, L, phi, a):
    H1 = force(inst(L, end(d)))
    decl = current().hits[H1.hit]
    v = force(a)
    if type(v) is VHitHComp:
        return hcomp(v.d, H1, tuple((c, KClo(_transp_clo, d, L, phi, u)) for c, u in v.sys),
                     transp(d, L, phi, v.cap))
    if decl.builtin == "K":
        return _transp_k(d, L, phi, a, v, H1)
    if type(v) is not VHitCon:
        return VTranspNe(d, L, phi, a)
    cd = decl.con(v.con)
    fills = []
    for k, (_, ty, _) in enumerate(cd.args):
        line_k = KClo(_arg_line, L, ty, tuple(fills))
        fills.append(tfill(d, line_k, phi, v.args[k]))
    args1 = tuple(inst(f, end(d)) for f in fills)
    res = mk_con(H1.hit, H1.params, v.con, args1, v.iargs)
    if not cd.boundary or cd.homomorphic:
        return res
    env1 = Env(H1.params + args1 + v.iargs)
    tubes = [(phi, const_clo(v))]
    for cof_t, tgt in cd.boundary:
        c = ev_cof(env1, cof_t)
        if not c.is_bot:
            tubes.append((c, KClo(_boundary_tube, d, L, phi, tgt, tuple(fills), v.iargs)))
    return hcomp(1 - d, H1, tuple(tubes), res)


def _kb_line(L, afill, r):
    return apply(force(inst(L, r)).params[1], inst(afill, r))


def _kb_tinv(d, BL, phi, b1):
    return comp(1 - d, BL, ((phi, const_clo(b1)),), b1)


def _kb_fprime(d, L, phi, BL, f, b1):
    return transp(d, L, phi, apply(f, _kb_tinv(d, BL, phi, b1)))


def _kb_p(d, BL, phi, b, tb, j):
    s = ((phi, const_clo(b)), (Cof.eq(j, 1), tfill(d, BL, phi, b)))
    return comp(1 - d, BL, s, tb)


def _kb_face1(d, L, phi, BL, f, b, tb, j):
    return transp(d, L, phi, apply(f, _kb_p(d, BL, phi, b, tb, j)))


def _transp_k(d, L, phi, a, v, H1):
    """Transport in ``K A B`` following the pastecone recipe: the naive
    answer corrected by an hcomp so the reduction at ``cin(b, 1)`` holds
    strictly."""
    if type(v) is not VHitCon:
        return VTranspNe(d, L, phi, a)
    a0, c, f = v.args
    afill = tfill(d, KClo(_param_line, L, 0), phi, a0)
    ta = inst(afill, end(d))
    BL = KClo(_kb_line, L, afill)
    A1, B1 = H1.params
    Bta = apply(B1, ta)
    fprime = VLam("b", Bta, KClo(_kb_fprime, d, L, phi, BL, f), False)
    cv = force(c)
    if type(cv) is VHitCon and cv.con == "apex":
        return mk_con("K", H1.params, "pastecone", (ta, mk_con("Cone", (Bta,), "apex", (), ()),
                                                     fprime), ())
    if type(cv) is VHitCon and cv.con == "cin":
        b, r = cv.args[0], cv.iargs[0]
        tb = transp(d, BL, phi, b)
        cap = mk_con("K", H1.params, "pastecone",
                     (ta, mk_con("Cone", (Bta,), "cin", (tb,), (r,)), fprime), ())
        ext0 = mk_con("K", H1.params, "pastecone",
                      (ta, mk_con("Cone", (Bta,), "apex", (), ()), fprime), ())
        tubes = ((phi, const_clo(v)),
                 (Cof.eq(r, 0), const_clo(ext0)),
                 (Cof.eq(r, 1), KClo(_kb_face1, d, L, phi, BL, f, b, tb)))
        return hcomp(0, H1, tubes, cap)
    return VTranspNe(d, L, phi, a)


def _param_line(L, n, r):
    return force(inst(L, r)).params[n]


# ---------------------------------------------------------------------------
# HIT constructors and eliminators


def mk_con(hit, params, con, args, iargs):
    decl = current().hits[hit]
    if decl.builtin == "K":
        if con == "ext":
            a, f = args
            return VHitCon(hit, params, "pastecone",
                           (a, mk_con("Cone", (apply(params[1], a),), "apex", (), ()), f), ())
        if con == "isext":
            a, f, b = args
            c = mk_con("Cone", (apply(params[1], a),), "cin", (b,), iargs)
            return mk_con(hit, params, "pastecone", (a, c, f), ())
        a, c, f = args
        cv = force(c)
        if type(cv) is VHitCon and cv.con == "cin" and cv.iargs[0].is_one:
            return apply(f, cv.args[0])
        return VHitCon(hit, params, "pastecone", args, ())
    cd = decl.con(con)
    if cd.boundary:
        env = Env(params + args + iargs)
        for cof_t, tgt in cd.boundary:
            if ev_cof(env, cof_t).is_top:
                return eval_(env, tgt)
    return VHitCon(hit, params, con, args, iargs)


def con_view(decl, v):
    """Constructor name, term args and interval args as seen by the
    eliminator, or None when stuck."""
    if decl.builtin == "K":
        a, c, f = v.args
        cv = force(c)
        if type(cv) is VHitCon and cv.con == "apex":
            return "ext", (a, f), ()
        if type(cv) is VHitCon and cv.con == "cin":
            return "isext", (a, f, cv.args[0]), cv.iargs
        return None
    return v.con, v.args, v.iargs


def _ih_body(hit, params, motive, clauses, f, fty, n, x):
    fx = apply(f, x)
    if n == 1:
        return hit_elim(hit, params, motive, clauses, fx)
    cod = force(inst(fty.cod, x))
    return VLam(cod.name, cod.dom, KClo(_ih_body, hit, params, motive, clauses, fx, cod, n - 1),
                False)


def arg_types(decl, cd, params, args):
    """Values of the constructor's argument types."""
    out = []
    for k, (_, ty, _) in enumerate(cd.args):
        out.append(eval_(Env(params + tuple(args[:k])), ty))
    return out


def induction_hyps(hit, params, motive, clauses, cd, args):
    decl = current().hits[hit]
    ihs = []
    tys = None
    for k in cd.rec_args:
        depth = cd.args[k][2]
        if depth == 0:
            ihs.append(hit_elim(hit, params, motive, clauses, args[k]))
        else:
            if tys is None:
                tys = arg_types(decl, cd, params, args)
            fty = force(tys[k])
            ihs.append(VLam(fty.name, fty.dom,
                            KClo(_ih_body, hit, params, motive, clauses, args[k], fty, depth),
                            False))
    return tuple(ihs)


def _elim_line(motive, fill, k):
    return apply(motive, inst(fill, k))


def _elim_clo(hit, params, motive, clauses, u, k):
    return hit_elim(hit, params, motive, clauses, inst(u, k))


def hit_elim(hit, params, motive, clauses, scrut):
    v = force(scrut)
    if type(v) is VHitCon and v.hit == hit:
        decl = current().hits[hit]
        view = con_view(decl, v)
        if view is not None:
            con, args, iargs = view
            for cname, env, body in clauses:
                if cname == con:
                    cd = decl.con(con)
                    ihs = induction_hyps(hit, params, motive, clauses, cd, args)
                    return eval_(env.extend_many(args + ihs + iargs), body)
            raise EvalError(f"no clause for {con}")
    if type(v) is VHitHComp and v.hit == hit:
        H = VHitType(hit, v.params)
        fill = hfill(v.d, H, v.sys, v.cap)
        tubes = tuple((c, KClo(_elim_clo, hit, params, motive, clauses, u)) for c, u in v.sys)
        return comp(v.d, KClo(_elim_line, motive, fill), tubes,
                    hit_elim(hit, params, motive, clauses, v.cap))
    return VHitElimNe(hit, params, motive, clauses, v)


# ---------------------------------------------------------------------------
# types of neutrals


def _const_fam(A):
    return const_clo(A)


def ne_type(v):
    t = type(v)
    if t is VVar or t is VAxiom:
        return v.ty
    if t is VFlex:
        me = current().metas[v.meta]
        ty = eval_(Env(v.subst), me.ty)
        head = VFlex(v.meta, v.subst, ())
        for e in v.elims:
            ty = _elim_type(ty, head, e)
            head = _elim(head, e)
        return ty
    if t is VApp:
        ty = force(ne_type(v.fn))
        return inst(ty.cod, v.arg)
    if t is VFst:
        return force(ne_type(v.pair)).fst
    if t is VSnd:
        ty = force(ne_type(v.pair))
        return inst(ty.snd, vfst(v.pair))
    if t is VPApp:
        ty = force(ne_type(v.path))
        return inst(ty.fam, v.arg)
    if t is VNatElim or t is VCase:
        return apply(v.motive, v.scrut)
    if t is VEmptyElim:
        return v.motive
    if t is VTranspNe:
        return inst(v.line, end(v.d))
    if t is VHCompNe:
        return v.ty
    if t is VUnglueNe:
        return v.base
    if t is VIdPathNe:
        ty = force(ne_type(v.val))
        return VPathP("_", _const_fam(ty.ty), ty.left, ty.right)
    if t is VIdElimNe:
        return apply(apply(v.motive, v.right), v.scrut)
    if t is VHitElimNe:
        return apply(v.motive, v.scrut)
    raise EvalError(f"no type for {t.__name__}")


def _elim_type(ty, head, e):
    ty = force(ty)
    tag = e[0]
    if tag == "app":
        return inst(ty.cod, e[1])
    if tag == "papp":
        return inst(ty.fam, e[1])
    if tag == "fst":
        return ty.fst
    return inst(ty.snd, vfst(head))


# ---------------------------------------------------------------------------
# dimension substitution


def act(x, s: dict):
    if not s:
        return x
    if support(x).isdisjoint(s):
        return x
    h = _ACT.get(type(x))
    if h is None:
        if isinstance(x, Value):
            return _act_generic(x, s)
        return x
    return h(x, s)


def _act_generic(x, s):
    return type(x)(*[act(c, s) for c in x.children()])


def act_rebuild(v, override: dict):
    """Re-run the operation a neutral stands for, with some fields
    replaced.  Used after forcing a head."""
    fields = {f: getattr(v, f) for f in type(v).fields}
    fields.update(override)
    return _RERUN[type(v)](**fields)


def _act_flex(x, s):
    r = VFlex(x.meta, act(x.subst, s), ())
    for e in x.elims:
        if e[0] == "app":
            r = apply(r, act(e[1], s), e[2])
        elif e[0] == "papp":
            r = papp(r, act(e[1], s))
        else:
            r = _elim(r, e)
    return r


_RERUN = {
    VApp: lambda fn, arg, implicit: apply(fn, arg, implicit),
    VFst: lambda pair: vfst(pair),
    VSnd: lambda pair: vsnd(pair),
    VPApp: lambda path, arg: papp(path, arg),
    VNatElim: lambda motive, zero, suc, scrut: natelim(motive, zero, suc, scrut),
    VEmptyElim: lambda motive, scrut: emptyelim(motive, scrut),
    VCase: lambda motive, left, right, scrut: case(motive, left, right, scrut),
    VTranspNe: lambda d, line, cof, base: transp(d, line, cof, base),
    VHCompNe: lambda d, ty, sys, cap: hcomp(d, ty, sys, cap),
    VUnglueNe: lambda base, ty_sys, val: unglue(base, ty_sys, val),
    VIdPathNe: lambda val: idpath(val),
    VIdElimNe: lambda ty, left, motive, refl_case, right, scrut:
        idelim(ty, left, motive, refl_case, right, scrut),
    VHitElimNe: lambda hit, params, motive, clauses, scrut:
        hit_elim(hit, params, motive, clauses, scrut),
}

_PRINCIPAL.update({VApp: "fn", VFst: "pair", VSnd: "pair", VPApp: "path", VNatElim: "scrut",
                   VEmptyElim: "scrut", VCase: "scrut", VUnglueNe: "val", VIdPathNe: "val",
                   VIdElimNe: "scrut", VHitElimNe: "scrut"})


def _rerun(x, s):
    return _RERUN[type(x)](*[act(getattr(x, f), s) for f in type(x).fields])


_ACT = {
    IvElem: lambda x, s: x.subst(s),
    Cof: lambda x, s: x.subst(s),
    tuple: lambda x, s: tuple(act(y, s) for y in x),
    Env: lambda x, s: Env(tuple(act(e, s) for e in x.entries)),
    Clo: lambda x, s: Clo(act(x.env, s), x.body),
    IClo: lambda x, s: IClo(act(x.env, s), x.body),
    KClo: lambda x, s: KClo(x.fn, *[act(a, s) for a in x.args]),
    AClo: lambda x, s: AClo(x.dim, act(x.val, s)),
    VVar: lambda x, s: VVar(x.level, act(x.ty, s)),
    VFlex: _act_flex,
    VGlue: lambda x, s: mk_glue(act(x.base, s), act(x.sys, s)),
    VGlueIn: lambda x, s: mk_gluein(act(x.sys, s), act(x.base, s)),
    VHitCon: lambda x, s: mk_con(x.hit, act(x.params, s), x.con, act(x.args, s),
                                 act(x.iargs, s)),
    VHitHComp: lambda x, s: hcomp(x.d, VHitType(x.hit, act(x.params, s)), act(x.sys, s),
                                  act(x.cap, s)),
}
for _cls in _RERUN:
    _ACT[_cls] = _rerun


def omega_level() -> int:
    return OMEGA


def _ih_cod(motive, fty, n, f, x):
    return ih_type(motive, force(inst(fty.cod, x)), n - 1, apply(f, x))


def ih_type(motive, fty, n: int, f):
    """Type of the induction hypothesis for a recursive argument ``f`` of
    type ``fty`` with ``n`` leading binders."""
    if n == 0:
        return apply(motive, f)
    return VPi(fty.name, fty.dom, KClo(_ih_cod, motive, fty, n, f), False)


def clause_binders(decl, cd, params, motive, level: int):
    """Fresh variables for a clause body of ``cd`` starting at context
    level ``level``: term args, induction hypotheses, interval args."""
    args = []
    for _, ty, _ in cd.args:
        args.append(VVar(level + len(args), eval_(Env(params + tuple(args)), ty)))
    ihs = []
    lv = level + len(args)
    arg_tys = [a.ty for a in args]
    for k in cd.rec_args:
        depth = cd.args[k][2]
        ihs.append(VVar(lv + len(ihs), ih_type(motive, force(arg_tys[k]), depth, args[k])))
    lv += len(ihs)
    iargs = [IvElem.var(lv + n) for n in range(len(cd.inames))]
    return tuple(args), tuple(ihs), tuple(iargs)
