"""Generic traversal of core terms with their binding structure."""

from __future__ import annotations

from ..interval import CAnd, CEq, COr, IJoin, IMeet, IVar
from . import syntax as S
from .session import current

# fields that sit under one extra binder
_BINDS = {
    S.Pi: {"cod"}, S.Lam: {"body"}, S.Sigma: {"snd"}, S.PathP: {"fam"}, S.PLam: {"body"},
    S.Transp: {"line"}, S.Comp: {"line"}, S.Let: {"body"},
}


def children(t):
    """Yield ``(child, extra_binders)`` for every direct subterm, including
    interval and cofibration terms."""
    cls = type(t)
    if cls in (IMeet, IJoin, CAnd, COr):
        yield t.left, 0
        yield t.right, 0
        return
    if cls is CEq:
        yield t.term, 0
        return
    if not isinstance(t, S.Term):
        return
    binds = _BINDS.get(cls, ())
    for f in t.__dataclass_fields__:
        v = getattr(t, f)
        if cls in (S.HComp, S.Comp) and f == "sys":
            for c, u in v:
                yield c, 0
                yield u, 1
        elif cls in (S.Glue, S.GlueIn, S.Unglue) and f in ("sys", "ty_sys"):
            for c, u in v:
                yield c, 0
                yield u, 0
        elif cls is S.HitElim and f == "clauses":
            decl = current().hits[t.hit]
            for con, body in v:
                cd = decl.con(con)
                yield body, _clause_binders(cd)
        elif isinstance(v, tuple):
            for x in v:
                if _is_node(x):
                    yield x, 0
        elif _is_node(v):
            yield v, (1 if f in binds else 0)


def _is_node(x) -> bool:
    return isinstance(x, S.Term) or type(x).__module__.endswith("interval")


def uses_var(t, ix: int) -> bool:
    """Does de Bruijn index ``ix`` (term or interval) occur free in ``t``?"""
    cls = type(t)
    if cls is S.Var or cls is IVar:
        return (t.ix if cls is S.Var else t.index) == ix
    for c, n in children(t):
        if uses_var(c, ix + n):
            return True
    return False


def mentions_hit(t, name: str) -> bool:
    if isinstance(t, (S.HitType, S.HitCon, S.HitElim)) and t.hit == name:
        return True
    return any(mentions_hit(c, name) for c, _ in children(t))


def max_ivar(t, depth: int = 0) -> int:
    """Largest free interval or term index, or -1."""
    cls = type(t)
    if cls is S.Var or cls is IVar:
        ix = t.ix if cls is S.Var else t.index
        return ix - depth
    best = -1
    for c, n in children(t):
        best = max(best, max_ivar(c, depth + n))
    return best


def rebuild(t, fn):
    """Copy ``t`` with every direct subterm replaced by
    ``fn(child, extra_binders)``; mirrors :func:`children`."""
    cls = type(t)
    if cls in (IMeet, IJoin, CAnd, COr):
        return cls(fn(t.left, 0), fn(t.right, 0))
    if cls is CEq:
        return CEq(fn(t.term, 0), t.eps)
    if not isinstance(t, S.Term):
        return t
    binds = _BINDS.get(cls, ())
    out = {}
    for f in t.__dataclass_fields__:
        v = getattr(t, f)
        if cls in (S.HComp, S.Comp) and f == "sys":
            v = tuple((fn(c, 0), fn(u, 1)) for c, u in v)
        elif cls in (S.Glue, S.GlueIn, S.Unglue) and f in ("sys", "ty_sys"):
            v = tuple((fn(c, 0), fn(u, 0)) for c, u in v)
        elif cls is S.HitElim and f == "clauses":
            decl = current().hits[t.hit]
            v = tuple((con, fn(body, _clause_binders(decl.con(con)))) for con, body in v)
        elif isinstance(v, tuple):
            v = tuple(fn(x, 0) if _is_node(x) else x for x in v)
        elif _is_node(v):
            v = fn(v, 1 if f in binds else 0)
        out[f] = v
    return cls(**out)


def _clause_binders(cd) -> int:
    return cd.arity + len(cd.rec_args) + len(cd.inames)


def zonk(t, depth: int = 0):
    """Replace solved metas by their solutions, read back at the
    occurrence's depth."""
    if type(t) is S.Meta:
        me = current().metas[t.id]
        if me.solution is None:
            return t
        from .conv import quote
        from .semantics import ev_any, eval_
        from .values import Env, VVar
        from ..interval import IvElem
        # arguments are arbitrary terms once a substitution has been pushed
        # through them; evaluate them against generic variables
        dims = set()
        for a in t.args:
            _interval_indices(a, 0, dims)
        generic = Env(tuple(IvElem.var(lvl) if depth - 1 - lvl in dims else VVar(lvl, None)
                            for lvl in range(depth)))
        vals = [ev_any(generic, a) for a in t.args]
        return quote(depth, eval_(Env(tuple(vals)), me.solution))
    return rebuild(t, lambda c, n: zonk(c, depth + n))


def _interval_indices(t, depth: int, out: set) -> None:
    """Free indices of ``t`` that occur as interval variables."""
    if type(t) is IVar:
        if t.index >= depth:
            out.add(t.index - depth)
        return
    for c, n in children(t):
        _interval_indices(c, depth + n, out)
