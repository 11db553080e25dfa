"""Semantic values, environments and closures.

Dimension names are ints.  Interval variables bound in the typing context
are named by their de Bruijn level; the kernel draws fresh names for its own
binders from a negative counter so they never clash with context names.

Every value caches its support (set of dimension names it mentions) so that
acting with a dimension substitution can skip untouched values cheaply.
"""

from __future__ import annotations

import itertools
from typing import Any, Callable

from ..interval import Cof, IvElem

_fresh = itertools.count(-1, -1)


def fresh_dim() -> int:
    return next(_fresh)


class Value:
    __slots__ = ("_sup",)

    def children(self):
        return ()


def _sup_of(x) -> frozenset:
    if isinstance(x, Value):
        s = getattr(x, "_sup", None)
        if s is None:
            acc = set()
            for c in x.children():
                acc |= _sup_of(c)
            s = frozenset(acc)
            x._sup = s
        return s
    if isinstance(x, IvElem):
        return frozenset(x.vars())
    if isinstance(x, Cof):
        return frozenset(x.vars())
    if isinstance(x, Env):
        return x.support()
    if isinstance(x, (Clo, IClo, KClo, AClo)):
        return x.support()
    if isinstance(x, (tuple, list)):
        acc = set()
        for c in x:
            acc |= _sup_of(c)
        return frozenset(acc)
    return frozenset()


def support(x) -> frozenset:
    return _sup_of(x)


# ---------------------------------------------------------------------------
# environments and closures


class Env:
    """Persistent environment; entries are Values or IvElems, index 0 is
    the most recently bound."""

    __slots__ = ("entries", "_sup")

    def __init__(self, entries: tuple = ()):
        self.entries = entries
        self._sup = None

    def extend(self, v) -> "Env":
        return Env(self.entries + (v,))

    def extend_many(self, vs) -> "Env":
        return Env(self.entries + tuple(vs))

    def lookup(self, ix: int):
        return self.entries[-1 - ix]

    def __len__(self):
        return len(self.entries)

    def support(self) -> frozenset:
        if self._sup is None:
            self._sup = _sup_of(self.entries)
        return self._sup


class Clo:
    """Term closure binding one term variable."""

    __slots__ = ("env", "body", "_sup")

    def __init__(self, env: Env, body):
        self.env = env
        self.body = body
        self._sup = None

    def support(self):
        if self._sup is None:
            self._sup = self.env.support()
        return self._sup


class IClo:
    """Term closure binding one interval variable."""

    __slots__ = ("env", "body", "_sup")

    def __init__(self, env: Env, body):
        self.env = env
        self.body = body
        self._sup = None

    def support(self):
        if self._sup is None:
            self._sup = self.env.support()
        return self._sup


class KClo:
    """Kernel closure: ``fn(*args, x)``.  Used for both term and interval
    binders; ``args`` must only hold actable data."""

    __slots__ = ("fn", "args", "_sup")

    def __init__(self, fn: Callable, *args):
        self.fn = fn
        self.args = args
        self._sup = None

    def support(self):
        if self._sup is None:
            self._sup = _sup_of(self.args)
        return self._sup


class AClo:
    """Interval closure given by a value abstracted over the private
    dimension ``dim``; instantiation is substitution."""

    __slots__ = ("dim", "val", "_sup")

    def __init__(self, dim: int, val):
        self.dim = dim
        self.val = val
        self._sup = None

    def support(self):
        if self._sup is None:
            self._sup = _sup_of(self.val) - {self.dim}
        return self._sup


AnyClo = Any  # Clo | IClo | KClo | AClo


# ---------------------------------------------------------------------------
# canonical values


def _mk(name: str, fields: tuple[str, ...], doc: str = ""):
    def __init__(self, *args):
        for f, a in zip(fields, args):
            object.__setattr__(self, f, a)
        self._sup = None

    def children(self):
        return tuple(getattr(self, f) for f in fields)

    def __repr__(self):
        return f"{name}({', '.join(repr(getattr(self, f)) for f in fields)})"

    cls = type(name, (Value,), {"__slots__": fields, "__init__": __init__,
                                "children": children, "__repr__": __repr__,
                                "__doc__": doc, "fields": fields})
    return cls


VU = _mk("VU", ("level",))
VPi = _mk("VPi", ("name", "dom", "cod", "implicit"))
VLam = _mk("VLam", ("name", "dom", "body", "implicit"))
VSigma = _mk("VSigma", ("name", "fst", "snd"))
VPair = _mk("VPair", ("fst", "snd"))
VPathP = _mk("VPathP", ("name", "fam", "left", "right"))
VPLam = _mk("VPLam", ("name", "body"))
VNat = _mk("VNat", ())
VZero = _mk("VZero", ())
VSuc = _mk("VSuc", ("pred",))
VUnit = _mk("VUnit", ())
VTt = _mk("VTt", ())
VEmpty = _mk("VEmpty", ())
VSum = _mk("VSum", ("left", "right"))
VInl = _mk("VInl", ("val",))
VInr = _mk("VInr", ("val",))
VGlue = _mk("VGlue", ("base", "sys"), "sys: ((face, VPair(T, e)), ...)")
VGlueIn = _mk("VGlueIn", ("sys", "base"), "sys: ((face, t), ...)")
VId = _mk("VId", ("ty", "left", "right"))
VIdPair = _mk("VIdPair", ("cof", "path"))
VHitType = _mk("VHitType", ("hit", "params"))
VHitCon = _mk("VHitCon", ("hit", "params", "con", "args", "iargs"))
VHitHComp = _mk("VHitHComp", ("hit", "params", "d", "sys", "cap"))


class Neutral(Value):
    __slots__ = ()


def _mkne(name: str, fields: tuple[str, ...], doc: str = ""):
    cls = _mk(name, fields, doc)
    return type(name, (cls, Neutral), {"__slots__": ()})


VVar = _mkne("VVar", ("level", "ty"))
VFlex = _mkne("VFlex", ("meta", "subst", "elims"),
              "elims: (('app', v, icit) | ('papp', r) | ('fst',) | ('snd',)), ...")
VApp = _mkne("VApp", ("fn", "arg", "implicit"))
VFst = _mkne("VFst", ("pair",))
VSnd = _mkne("VSnd", ("pair",))
VPApp = _mkne("VPApp", ("path", "arg"))
VNatElim = _mkne("VNatElim", ("motive", "zero", "suc", "scrut"))
VEmptyElim = _mkne("VEmptyElim", ("motive", "scrut"))
VCase = _mkne("VCase", ("motive", "left", "right", "scrut"))
VTranspNe = _mkne("VTranspNe", ("d", "line", "cof", "base"))
VHCompNe = _mkne("VHCompNe", ("d", "ty", "sys", "cap"))
VUnglueNe = _mkne("VUnglueNe", ("base", "ty_sys", "val"))
VIdPathNe = _mkne("VIdPathNe", ("val",))
VIdElimNe = _mkne("VIdElimNe", ("ty", "left", "motive", "refl_case", "right", "scrut"))
VHitElimNe = _mkne("VHitElimNe", ("hit", "params", "motive", "clauses", "scrut"))
VAxiom = _mkne("VAxiom", ("name", "ty"), "a postulated constant")


def is_neutral(v) -> bool:
    return isinstance(v, Neutral)
