"""Render surface syntax back to concrete text.

Output reparses to an equal tree; parentheses are inserted from a small
precedence table mirroring the parser.
"""

from __future__ import annotations

from . import ast as A

# precedence levels, loosest first
TERM, ARROW, PROD, OR, AND, EQ, APP, ATOM = range(8)


def _level(t) -> int:
    if isinstance(t, (A.Lam, A.Let, A.Elim)):
        return TERM
    if isinstance(t, A.Pi):
        return ARROW if _nondep(t.binder) else TERM
    if isinstance(t, A.Sigma):
        return PROD if _nondep(t.binder) else TERM
    if isinstance(t, A.BinOp):
        return {"\\/": OR, "/\\": AND, "=": EQ}[t.op]
    if isinstance(t, A.App):
        return APP
    return ATOM


def _nondep(b: A.Binder) -> bool:
    return b.name == "_" and not b.implicit


def show(t, prec: int = TERM) -> str:
    s = _show(t)
    return f"({s})" if _level(t) < prec else s


def _group(b: A.Binder) -> str:
    o, c = ("{", "}") if b.implicit else ("(", ")")
    return f"{o}{b.name} : {show(b.ty)}{c}"


def _show(t) -> str:
    if isinstance(t, A.Var):
        return t.name
    if isinstance(t, A.Hole):
        return "_"
    if isinstance(t, A.Num):
        return str(t.value)
    if isinstance(t, A.Univ):
        return f"U{t.level}"
    if isinstance(t, A.Pi):
        if _nondep(t.binder):
            return f"{_dom(t.binder.ty)} -> {_cod(t.cod)}"
        return f"{_group(t.binder)} -> {show(t.cod)}"
    if isinstance(t, A.Sigma):
        if _nondep(t.binder):
            rhs = t.snd
            # a dependent right-hand side is reparsed by the full term rule
            return f"{_dom(t.binder.ty, OR)} * {show(rhs, PROD)}"
        return f"{_group(t.binder)} * {show(t.snd)}"
    if isinstance(t, A.Lam):
        bs = []
        while isinstance(t, A.Lam):
            b = t.binder
            if b.ty is not None:
                bs.append(_group(b))
            elif b.implicit:
                bs.append("{" + b.name + "}")
            else:
                bs.append(b.name)
            t = t.body
        return "\\" + " ".join(bs) + ". " + show(t)
    if isinstance(t, A.App):
        arg = "{" + show(t.arg) + "}" if t.implicit else show(t.arg, ATOM)
        return f"{show(t.fn, APP)} {arg}"
    if isinstance(t, A.Pair):
        return f"({show(t.fst)}, {show(t.snd)})"
    if isinstance(t, A.Proj):
        inner = t.term
        s = show(inner, ATOM)
        if not (isinstance(inner, (A.Var, A.Hole, A.Univ, A.Proj)) or s.endswith((")", "]"))):
            s = f"({s})"
        return f"{s}.{t.index}"
    if isinstance(t, A.Let):
        ty = f" : {show(t.ty)}" if t.ty is not None else ""
        return f"let {t.name}{ty} = {show(t.val)} in {show(t.body)}"
    if isinstance(t, A.Ann):
        inner = show(t.term)
        if isinstance(t.term, A.Var):
            inner = f"({inner})"
        return f"({inner} : {show(t.ty)})"
    if isinstance(t, A.Sys):
        return "[" + ", ".join(f"{show(c, OR)} -> {show(u)}" for c, u in t.entries) + "]"
    if isinstance(t, A.BinOp):
        if t.op == "=":
            return f"{show(t.left, APP)} = {show(t.right, APP)}"
        lv = OR if t.op == "\\/" else AND
        return f"{show(t.left, lv)} {t.op} {show(t.right, lv + 1)}"
    if isinstance(t, A.Elim):
        cl = " ; ".join(_clause(c) for c in t.clauses)
        return f"elim {show(t.scrut, ATOM)} {show(t.motive, ATOM)} {{ {cl} }}"
    raise TypeError(f"cannot print {type(t).__name__}")


def _dom(t, prec: int = PROD) -> str:
    s = show(t, prec)
    # a parenthesised annotation at the head would read as a binder group,
    # and a pair type's right side would swallow the arrow
    if isinstance(t, A.Ann) and isinstance(t.term, A.Var) or \
            isinstance(t, A.Sigma) and _level(t) >= prec:
        s = f"({s})"
    return s


def _cod(t) -> str:
    # binder-led and keyword-led forms reparse through the full term rule
    if _level(t) == TERM:
        return _show(t)
    return show(t, ARROW)


def _clause(c: A.Clause) -> str:
    parts = [c.con, *c.args]
    if c.ihs:
        parts += ["|", *c.ihs]
    if c.inames:
        parts += ["@", *c.inames]
    return " ".join(parts) + " => " + show(c.body)


def _tel(tel) -> str:
    return "".join(" " + _group(b) for b in tel)


def show_decl(d) -> str:
    head = f'@label "{d.label}"\n' if getattr(d, "label", "") else ""
    if isinstance(d, A.Import):
        return f"import {d.path}"
    if isinstance(d, A.Def):
        ty = f" : {show(d.ty)}" if d.ty is not None else ""
        return f"{head}def {d.name}{_tel(d.tel)}{ty} =\n  {show(d.body)}"
    if isinstance(d, A.Axiom):
        return f"{head}axiom {d.name}{_tel(d.tel)} : {show(d.ty)}"
    if isinstance(d, A.HitDef):
        lines = [f"{head}hit {d.name}{_tel(d.tel)} where"]
        for c in d.cons:
            s = f"  | {c.name}{_tel(c.tel)}"
            if c.inames:
                s += " @ " + " ".join(c.inames)
            if c.boundary:
                s += " " + show(A.Sys(c.boundary))
            lines.append(s)
        return "\n".join(lines)
    raise TypeError(f"cannot print {type(d).__name__}")


def show_module(m: A.Module) -> str:
    return "\n\n".join(show_decl(d) for d in m.decls) + "\n"
