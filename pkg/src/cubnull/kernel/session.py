"""Per-session state: global definitions, HIT declarations and metas.

Evaluation consults the active session through :func:`current`.  Sessions
are independent; one is active per thread of checking.
"""

from __future__ import annotations

import contextlib
import threading
from dataclasses import dataclass, field
from typing import Any, Optional

from .syntax import Term


@dataclass
class GlobalDef:
    name: str
    ty: Term
    term: Optional[Term]          # None for axioms
    ty_val: Any = None
    _val: Any = None
    level: int = 0
    annotation: str = ""
    file: str = ""

    @property
    def value(self):
        if self._val is None:
            from .semantics import eval_, VAxiom, Env
            if self.term is None:
                self._val = VAxiom(self.name, self.ty_val)
            else:
                self._val = eval_(Env(), self.term)
        return self._val


@dataclass
class MetaEntry:
    ctx_len: int
    ty: Term                      # in the creation context
    solution: Optional[Term] = None
    name: str = "?"


@dataclass
class Session:
    defs: dict = field(default_factory=dict)
    hits: dict = field(default_factory=dict)
    cons: dict = field(default_factory=dict)   # constructor name -> [hit names]
    metas: list = field(default_factory=list)
    live_from: int = 0   # metas before this index belong to finished definitions

    def has_live_metas(self) -> bool:
        return len(self.metas) > self.live_from

    def close_metas(self) -> None:
        self.live_from = len(self.metas)

    def fresh_meta(self, ctx_len: int, ty: Term, name: str = "?") -> int:
        self.metas.append(MetaEntry(ctx_len, ty, None, name))
        return len(self.metas) - 1

    def add_hit(self, decl) -> None:
        self.hits[decl.name] = decl
        for c in decl.surface_cons():
            hits = self.cons.setdefault(c, [])
            if decl.name not in hits:
                hits.append(decl.name)


_local = threading.local()


def current() -> Session:
    s = getattr(_local, "session", None)
    if s is None:
        s = new_session()
        _local.session = s
    return s


@contextlib.contextmanager
def active(session: Session):
    prev = getattr(_local, "session", None)
    _local.session = session
    try:
        yield session
    finally:
        _local.session = prev


def new_session() -> Session:
    from .hit import install_builtins
    s = Session()
    install_builtins(s)
    return s
