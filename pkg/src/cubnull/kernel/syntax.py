"""Core terms.

Variables are de Bruijn indices into one telescope that holds both term and
interval variables.  Interval expressions reuse ``interval.IvTerm`` and
cofibrations reuse ``interval.CofTerm``; their ``IVar`` indices point into
the same telescope.

Systems are tuples of ``(CofTerm, Term)``.  In ``HComp`` and ``Comp`` every
component binds one extra interval variable (the direction of composition).
Directions are 0 (from 0 to 1) or 1 (from 1 to 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from ..interval import CofTerm, IvTerm


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(Term):
    ix: int


@dataclass(frozen=True, slots=True)
class Ref(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Meta(Term):
    """A metavariable under an explicit substitution for the context it was
    created in (outermost entry first; interval entries are IvTerms)."""
    id: int
    args: tuple


@dataclass(frozen=True, slots=True)
class U(Term):
    level: int


@dataclass(frozen=True, slots=True)
class Pi(Term):
    name: str
    dom: Term
    cod: Term
    implicit: bool = False


@dataclass(frozen=True, slots=True)
class Lam(Term):
    name: str
    dom: Optional[Term]
    body: Term
    implicit: bool = False


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: Term
    arg: Term
    implicit: bool = False


@dataclass(frozen=True, slots=True)
class Sigma(Term):
    name: str
    fst: Term
    snd: Term


@dataclass(frozen=True, slots=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True, slots=True)
class Fst(Term):
    pair: Term


@dataclass(frozen=True, slots=True)
class Snd(Term):
    pair: Term


@dataclass(frozen=True, slots=True)
class PathP(Term):
    """``PathP (\\i. fam) left right``; ``fam`` binds an interval variable."""
    name: str
    fam: Term
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class PLam(Term):
    name: str
    body: Term


@dataclass(frozen=True, slots=True)
class PApp(Term):
    path: Term
    arg: IvTerm


@dataclass(frozen=True, slots=True)
class Nat(Term):
    pass


@dataclass(frozen=True, slots=True)
class Zero(Term):
    pass


@dataclass(frozen=True, slots=True)
class Suc(Term):
    pred: Term


@dataclass(frozen=True, slots=True)
class NatElim(Term):
    """``natrec motive z s n`` with ``s : (k : Nat) -> motive k -> motive (suc k)``."""
    motive: Term
    zero: Term
    suc: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Unit(Term):
    pass


@dataclass(frozen=True, slots=True)
class Tt(Term):
    pass


@dataclass(frozen=True, slots=True)
class Empty(Term):
    pass


@dataclass(frozen=True, slots=True)
class EmptyElim(Term):
    motive: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Sum(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Inl(Term):
    val: Term


@dataclass(frozen=True, slots=True)
class Inr(Term):
    val: Term


@dataclass(frozen=True, slots=True)
class Case(Term):
    motive: Term
    left: Term
    right: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class Transp(Term):
    """Transport along ``\\i. line`` from endpoint ``d`` to the other one;
    the identity where ``cof`` holds."""
    d: int
    name: str
    line: Term
    cof: CofTerm
    base: Term


@dataclass(frozen=True, slots=True)
class HComp(Term):
    d: int
    ty: Term
    name: str
    sys: tuple  # ((CofTerm, Term under the composition variable), ...)
    cap: Term


@dataclass(frozen=True, slots=True)
class Comp(Term):
    d: int
    name: str
    line: Term
    sys: tuple
    cap: Term


@dataclass(frozen=True, slots=True)
class Glue(Term):
    """``Glue A [phi -> (T, e)]``: sys components are ``Pair(T, e)``."""
    base: Term
    sys: tuple


@dataclass(frozen=True, slots=True)
class GlueIn(Term):
    """``glue [phi -> t] a``."""
    sys: tuple
    base: Term


@dataclass(frozen=True, slots=True)
class Unglue(Term):
    """``unglue`` with the Glue type's base and ``(T, e)`` system."""
    base: Term
    ty_sys: tuple
    val: Term


@dataclass(frozen=True, slots=True)
class Id(Term):
    ty: Term
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class IdPair(Term):
    """``idpair phi p``: a path constant where ``phi`` holds; refl is
    ``idpair top (\\_. a)``."""
    cof: CofTerm
    path: Term


@dataclass(frozen=True, slots=True)
class IdPath(Term):
    val: Term


@dataclass(frozen=True, slots=True)
class IdElim(Term):
    """``J {A} {a} C d {b} q`` with ``C : (b : A) -> Id A a b -> U``."""
    ty: Term
    left: Term
    motive: Term
    refl_case: Term
    right: Term
    scrut: Term


@dataclass(frozen=True, slots=True)
class HitType(Term):
    hit: str
    params: tuple


@dataclass(frozen=True, slots=True)
class HitCon(Term):
    hit: str
    params: tuple
    con: str
    args: tuple   # term arguments
    iargs: tuple  # interval arguments (IvTerm)


@dataclass(frozen=True, slots=True)
class HitElim(Term):
    """Eliminator.  Each clause body lives under the constructor's term
    args, then one induction hypothesis per recursive arg, then the
    constructor's interval args."""
    hit: str
    params: tuple
    motive: Term
    clauses: tuple  # ((con_name, Term), ...)
    scrut: Term


@dataclass(frozen=True, slots=True)
class Let(Term):
    name: str
    ty: Term
    val: Term
    body: Term


Sys = tuple
TermLike = Union[Term, IvTerm]
