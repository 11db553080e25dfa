"""Programmatic access to the checker: load source, elaborate closed
terms, normalize and compare them.

    ws = Workspace(imports=["trunc"])
    ws.conv("Trunc Nat", "sq (inc 1) (inc 2) 0", "inc 1")   # True
"""

from __future__ import annotations

from pathlib import Path

from .kernel.conv import conv, quote
from .kernel.elab import Ctx, Elab, ElabError
from .kernel.pretty import show_term
from .kernel.semantics import eval_
from .kernel.session import active
from .kernel.values import Env
from .lang import ast as A
from .lang.loader import Loader, LoadError, stdlib_root
from .lang.parser import parse_module, parse_term


class Workspace:
    def __init__(self, imports=()):
        self.loader = Loader(lint_labels=False)
        self.session = self.loader.session
        self.elab = Elab(self.session)
        for name in imports:
            self.import_(name)

    def import_(self, name: str):
        path = (stdlib_root() / Path(*name.split("/"))).with_suffix(".ct")
        res = self.loader.load(path)
        if not res.ok:
            raise LoadError("; ".join(d.render() for d in res.diagnostics))
        return res

    def load(self, src: str) -> list[str]:
        """Check declarations given as source text; returns their names."""
        names = []
        with active(self.session):
            for d in parse_module(src).decls:
                if isinstance(d, A.Import):
                    self.import_(d.path)
                    continue
                self.elab.decl(d, "<input>")
                names.append(d.name)
        return names

    def _closed(self, src: str, ty: str | None):
        ctx = Ctx()
        try:
            if ty is None:
                t, tyv = self.elab.infer(ctx, parse_term(src))
            else:
                tyt, _ = self.elab.check_type(ctx, parse_term(ty))
                tyv = eval_(Env(), tyt)
                t = self.elab.check(ctx, parse_term(src), tyv)
            self.elab.finish_metas(None)
        except BaseException:
            self.session.close_metas()
            raise
        return t, tyv

    def value(self, src: str, ty: str | None = None):
        """(value, type value) of a closed term."""
        with active(self.session):
            t, tyv = self._closed(src, ty)
            return eval_(Env(), t), tyv

    def normalize(self, src: str, ty: str | None = None) -> str:
        with active(self.session):
            v, _ = self.value(src, ty)
            return show_term(quote(0, v))

    def conv(self, ty: str, lhs: str, rhs: str) -> bool:
        """Are the two closed terms of type ``ty`` definitionally equal?"""
        with active(self.session):
            a, tyv = self.value(lhs, ty)
            b, _ = self.value(rhs, ty)
            return conv(0, tyv, a, b)

    def checks(self, src: str, ty: str | None = None) -> bool:
        """Does the term elaborate (at ``ty`` if given)?"""
        try:
            self.value(src, ty)
            return True
        except ElabError:
            return False
