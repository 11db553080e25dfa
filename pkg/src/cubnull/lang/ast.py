"""Surface syntax tree.

Nodes compare structurally; source positions ride along but are ignored by
equality so that a reparsed printout compares equal to the original.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

Pos = Optional[tuple]   # (line, column), 1-based


def _pos():
    return field(default=None, compare=False, repr=False)


class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Node):
    name: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Hole(Node):
    pos: Pos = _pos()


@dataclass(frozen=True)
class Num(Node):
    value: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Univ(Node):
    level: int
    pos: Pos = _pos()


@dataclass(frozen=True)
class Binder:
    name: str
    ty: Optional[Node]
    implicit: bool = False


@dataclass(frozen=True)
class Pi(Node):
    binder: Binder
    cod: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class Sigma(Node):
    binder: Binder
    snd: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class Lam(Node):
    binder: Binder
    body: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class App(Node):
    fn: Node
    arg: Node
    implicit: bool = False
    pos: Pos = _pos()


@dataclass(frozen=True)
class Pair(Node):
    fst: Node
    snd: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class Proj(Node):
    term: Node
    index: int      # 1 or 2
    pos: Pos = _pos()


@dataclass(frozen=True)
class Let(Node):
    name: str
    ty: Optional[Node]
    val: Node
    body: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class Ann(Node):
    term: Node
    ty: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class Sys(Node):
    """``[phi -> u, ...]``."""
    entries: tuple    # ((cof Node, Node), ...)
    pos: Pos = _pos()


@dataclass(frozen=True)
class BinOp(Node):
    """``=``, ``/\\`` or ``\\/``; interval or cofibration by kind."""
    op: str
    left: Node
    right: Node
    pos: Pos = _pos()


@dataclass(frozen=True)
class Clause:
    con: str
    args: tuple
    ihs: tuple
    inames: tuple
    body: Node


@dataclass(frozen=True)
class Elim(Node):
    scrut: Node
    motive: Node
    clauses: tuple
    pos: Pos = _pos()


# declarations ----------------------------------------------------------------


@dataclass(frozen=True)
class Def:
    name: str
    tel: tuple          # (Binder, ...)
    ty: Optional[Node]
    body: Node
    label: str = ""
    pos: Pos = _pos()


@dataclass(frozen=True)
class Axiom:
    name: str
    tel: tuple
    ty: Node
    label: str = ""
    pos: Pos = _pos()


@dataclass(frozen=True)
class ConDef:
    name: str
    tel: tuple
    inames: tuple
    boundary: tuple     # ((cof Node, Node), ...)


@dataclass(frozen=True)
class HitDef:
    name: str
    tel: tuple
    cons: tuple
    label: str = ""
    pos: Pos = _pos()


@dataclass(frozen=True)
class Import:
    path: str
    pos: Pos = _pos()


@dataclass(frozen=True)
class Module:
    decls: tuple
