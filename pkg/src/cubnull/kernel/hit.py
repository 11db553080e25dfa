"""Declarations of higher inductive types and the builtin ones.

A declaration is a cofibrant polynomial with reductions in the following
presentation.  Each constructor takes term arguments (a telescope over the
parameters; recursive arguments have a type ``(x1 : X1) -> ... -> H``), then
interval arguments, and carries a boundary: a list of cofibrations over its
interval arguments together with the element the constructor reduces to
there.  Fibrant declarations additionally get a free ``hcomp`` constructor.

``K`` is presented to the eliminator by ``ext``/``isext`` while its values
are built from the single constructor ``pastecone(a, c, f)``, whose
reduction fires when ``c`` is ``cin(b, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..interval import CEq, IVar
from .syntax import App, HitCon, HitType, Pi, Term, U, Var

OMEGA = 1 << 20  # level placeholder: parameters accepting any universe


class HitError(Exception):
    pass


@dataclass(frozen=True)
class ConDecl:
    name: str
    args: tuple          # ((name, Term, rec_depth | None), ...)
    inames: tuple = ()
    boundary: tuple = ()  # ((CofTerm, Term), ...)
    homomorphic: bool = True

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def rec_args(self) -> list[int]:
        return [k for k, (_, _, r) in enumerate(self.args) if r is not None]


@dataclass
class HitDecl:
    name: str
    params: tuple        # ((name, Term), ...)
    cons: tuple
    fibrant: bool = True
    builtin: str = ""
    level: Optional[int] = None
    extra: dict = field(default_factory=dict)   # value-only constructors

    def con(self, name: str) -> ConDecl:
        for c in self.cons:
            if c.name == name:
                return c
        if name in self.extra:
            return self.extra[name]
        raise HitError(f"{self.name} has no constructor {name}")

    def surface_cons(self) -> list[str]:
        return [c.name for c in self.cons] + list(self.extra)

    def polynomial(self) -> dict:
        """Summary of the polynomial: constructor shapes and reductions.
        The hcomp constructor contributes the ``Prop x 2`` summand."""
        summands = []
        for c in self.cons:
            summands.append({"con": c.name, "args": [a for a, _, _ in c.args],
                             "recursive": [c.args[k][0] for k in c.rec_args],
                             "interval": list(c.inames),
                             "reductions": len(c.boundary)})
        if self.fibrant:
            summands.append({"con": "hcomp", "args": ["Prop", "2"], "recursive": ["u"],
                             "interval": [], "reductions": 1})
        return {"name": self.name, "params": [p for p, _ in self.params],
                "summands": summands}


def rec_depth(ty: Term, hit: str) -> Optional[int]:
    """Number of Pi binders before the recursive occurrence, or None."""
    n = 0
    while isinstance(ty, Pi):
        ty, n = ty.cod, n + 1
    if isinstance(ty, HitType) and ty.hit == hit:
        return n
    return None


def is_homomorphic(hit: str, con: ConDecl) -> bool:
    """Boundary targets that commute with transport on the nose: a direct
    recursive argument or a nullary constructor at constant endpoints."""
    n_ctx_tail = len(con.args) + len(con.inames)
    for _, tgt in con.boundary:
        if isinstance(tgt, Var):
            k = n_ctx_tail - 1 - tgt.ix
            if not (0 <= k < len(con.args) and con.args[k][2] == 0):
                return False
        elif isinstance(tgt, HitCon) and tgt.hit == hit and not tgt.args:
            from ..interval import IOne, IZero
            if not all(isinstance(r, (IZero, IOne)) for r in tgt.iargs):
                return False
        else:
            return False
    return True


def _eq(ix: int, eps: int):
    return CEq(IVar(ix), eps)


def builtin_decls() -> list[HitDecl]:
    UW = U(OMEGA)
    lfr = HitDecl("LFR", (("A", UW),), (ConDecl("inc", (("a", Var(0), None),)),),
                  builtin="LFR")

    trunc = HitDecl("Trunc", (("A", UW),), (
        ConDecl("inc", (("a", Var(0), None),)),
        ConDecl("sq", (("x", HitType("Trunc", (Var(0),)), 0),
                       ("y", HitType("Trunc", (Var(1),)), 0)),
                ("i",), ((_eq(0, 0), Var(2)), (_eq(0, 1), Var(1)))),
    ), builtin="Trunc")

    susp = HitDecl("Susp", (("A", UW),), (
        ConDecl("north", ()),
        ConDecl("south", ()),
        ConDecl("merid", (("a", Var(0), None),), ("i",),
                ((_eq(0, 0), HitCon("Susp", (Var(2),), "north", (), ())),
                 (_eq(0, 1), HitCon("Susp", (Var(2),), "south", (), ())))),
    ), builtin="Susp")

    cone = HitDecl("Cone", (("X", UW),), (
        ConDecl("apex", ()),
        ConDecl("cin", (("x", Var(0), None),), ("i",),
                ((_eq(0, 0), HitCon("Cone", (Var(2),), "apex", (), ())),)),
    ), fibrant=False, builtin="Cone")

    # K A B, with A : U and B : A -> U
    k_self = lambda a_ix, b_ix: HitType("K", (Var(a_ix), Var(b_ix)))  # noqa: E731
    f_ty = Pi("b", App(Var(1), Var(0)), k_self(3, 2))      # in context [A, B, a]
    ext = ConDecl("ext", (("a", Var(1), None), ("f", f_ty, 1)))
    isext = ConDecl("isext", (("a", Var(1), None), ("f", f_ty, 1),
                              ("b", App(Var(2), Var(1)), None)), ("i",),
                    ((_eq(0, 0), HitCon("K", (Var(5), Var(4)), "ext", (Var(3), Var(2)), ())),
                     (_eq(0, 1), App(Var(2), Var(1)))),
                    homomorphic=False)
    pastecone = ConDecl("pastecone", (("a", Var(1), None),
                                      ("c", HitType("Cone", (App(Var(1), Var(0)),)), None),
                                      ("f", Pi("b", App(Var(2), Var(1)), k_self(4, 3)), 1)))
    kdecl = HitDecl("K", (("A", UW), ("B", Pi("a", Var(0), UW))), (ext, isext),
                    builtin="K", extra={"pastecone": pastecone})
    return [lfr, trunc, susp, cone, kdecl]


def install_builtins(session) -> None:
    for d in builtin_decls():
        session.add_hit(d)
