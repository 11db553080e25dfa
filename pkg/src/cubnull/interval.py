"""Interval lattice and cofibration algebra.

Interval elements live in the free bounded distributive lattice on the
interval variables (there is no reversal).  An element is stored as an
antichain of meet-clauses: ``i ⊓ j ⊔ k`` is ``((i, j), (k,))``.

Cofibrations are stored in disjunctive normal form: a set of consistent
partial endpoint assignments ("faces"), none of which extends another.

Variables are plain integers.  At the API boundary (``iv_normalize``,
``cof_normalize`` ...) they are de Bruijn indices into an interval context
of a given size; the kernel reuses the same classes with dimension names.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Mapping, Union


class ScopeError(Exception):
    """An interval variable is not bound by the surrounding context."""


Clause = tuple[int, ...]
Face = tuple[tuple[int, int], ...]


def _minimize_clauses(clauses: Iterable[frozenset]) -> tuple[Clause, ...]:
    uniq = set(clauses)
    keep = [c for c in uniq if not any(d < c for d in uniq)]
    return tuple(sorted(tuple(sorted(c)) for c in keep))


class IvElem:
    """Canonical interval element: a join of meets of variables."""

    __slots__ = ("clauses", "_hash")

    def __init__(self, clauses: tuple[Clause, ...]):
        self.clauses = clauses
        self._hash = hash(clauses)

    @staticmethod
    def of(clauses: Iterable[Iterable[int]]) -> "IvElem":
        return IvElem(_minimize_clauses(frozenset(c) for c in clauses))

    @staticmethod
    def var(i: int) -> "IvElem":
        return IvElem(((i,),))

    @staticmethod
    def const(b: int) -> "IvElem":
        return ONE if b else ZERO

    def __eq__(self, other):
        return isinstance(other, IvElem) and self.clauses == other.clauses

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"IvElem({self})"

    def __str__(self):
        return self.pretty(lambda v: f"i{v}")

    def pretty(self, name) -> str:
        if not self.clauses:
            return "0"
        if self.clauses == ((),):
            return "1"
        parts = []
        for c in self.clauses:
            s = " /\\ ".join(name(v) for v in c)
            parts.append(f"({s})" if len(c) > 1 and len(self.clauses) > 1 else s)
        return " \\/ ".join(parts)

    @property
    def is_zero(self) -> bool:
        return not self.clauses

    @property
    def is_one(self) -> bool:
        return self.clauses == ((),)

    def as_const(self):
        """0 or 1 for constants, else None."""
        if not self.clauses:
            return 0
        if self.clauses == ((),):
            return 1
        return None

    def as_var(self):
        if len(self.clauses) == 1 and len(self.clauses[0]) == 1:
            return self.clauses[0][0]
        return None

    def vars(self) -> set[int]:
        return {v for c in self.clauses for v in c}

    def join(self, other: "IvElem") -> "IvElem":
        if self.is_zero or other.is_one:
            return other
        if other.is_zero or self.is_one:
            return self
        return IvElem(_minimize_clauses(frozenset(c) for c in self.clauses + other.clauses))

    def meet(self, other: "IvElem") -> "IvElem":
        if self.is_one or other.is_zero:
            return other
        if other.is_one or self.is_zero:
            return self
        return IvElem(_minimize_clauses(frozenset(a) | frozenset(b)
                                        for a in self.clauses for b in other.clauses))

    def subst(self, sigma: Mapping[int, "IvElem"]) -> "IvElem":
        if not any(v in sigma for c in self.clauses for v in c):
            return self
        out = ZERO
        for c in self.clauses:
            term = ONE
            for v in c:
                term = term.meet(sigma.get(v) or IvElem.var(v))
                if term.is_zero:
                    break
            out = out.join(term)
            if out.is_one:
                break
        return out

    def evaluate(self, point: Mapping[int, int]) -> int:
        return int(any(all(point[v] for v in c) for c in self.clauses))


ZERO = IvElem(())
ONE = IvElem(((),))


# ---------------------------------------------------------------------------
# interval term syntax


@dataclass(frozen=True)
class IZero:
    pass


@dataclass(frozen=True)
class IOne:
    pass


@dataclass(frozen=True)
class IVar:
    index: int


@dataclass(frozen=True)
class IMeet:
    left: "IvTerm"
    right: "IvTerm"


@dataclass(frozen=True)
class IJoin:
    left: "IvTerm"
    right: "IvTerm"


IvTerm = Union[IZero, IOne, IVar, IMeet, IJoin]


def iv_normalize(t: IvTerm, n: int) -> IvElem:
    if isinstance(t, IZero):
        return ZERO
    if isinstance(t, IOne):
        return ONE
    if isinstance(t, IVar):
        if not 0 <= t.index < n:
            raise ScopeError(f"interval variable {t.index} out of scope (context size {n})")
        return IvElem.var(t.index)
    if isinstance(t, IMeet):
        return iv_normalize(t.left, n).meet(iv_normalize(t.right, n))
    if isinstance(t, IJoin):
        return iv_normalize(t.left, n).join(iv_normalize(t.right, n))
    raise TypeError(f"not an interval term: {t!r}")


def iv_eq(s: IvTerm, t: IvTerm, n: int) -> bool:
    return iv_normalize(s, n) == iv_normalize(t, n)


def iv_term(e: IvElem) -> IvTerm:
    """A syntactic representative of a canonical element."""
    if e.is_zero:
        return IZero()
    out = None
    for c in e.clauses:
        m = None
        for v in c:
            m = IVar(v) if m is None else IMeet(m, IVar(v))
        m = IOne() if m is None else m
        out = m if out is None else IJoin(out, m)
    return out


# ---------------------------------------------------------------------------
# cofibrations


def _face_union(a: Face, b: Face):
    d = dict(a)
    for v, e in b:
        if d.setdefault(v, e) != e:
            return None
    return tuple(sorted(d.items()))


def _minimize_faces(faces: Iterable[Face]) -> tuple[Face, ...]:
    uniq = {frozenset(f) for f in faces}
    keep = [f for f in uniq if not any(g < f for g in uniq)]
    return tuple(sorted(tuple(sorted(f)) for f in keep))


class Cof:
    """Canonical cofibration: an antichain of faces, read disjunctively."""

    __slots__ = ("clauses", "_hash")

    def __init__(self, clauses: tuple[Face, ...]):
        self.clauses = clauses
        self._hash = hash(clauses)

    @staticmethod
    def of(faces: Iterable[Iterable[tuple[int, int]]]) -> "Cof":
        checked = []
        for f in faces:
            face = _face_union((), tuple(sorted(f)))
            if face is not None:
                checked.append(face)
        return Cof(_minimize_faces(checked))

    @staticmethod
    def face(face: Mapping[int, int] | Iterable[tuple[int, int]]) -> "Cof":
        items = face.items() if isinstance(face, Mapping) else face
        return Cof.of([tuple(items)])

    @staticmethod
    def eq(r: IvElem, eps: int) -> "Cof":
        """The cofibration ``r = eps``."""
        if eps == 1:
            return Cof(_minimize_faces(tuple((v, 1) for v in c) for c in r.clauses))
        # r = 0 iff every meet-clause has some variable at 0
        out = TOP
        for c in r.clauses:
            out = out.meet(Cof(tuple(((v, 0),) for v in c)))
            if out.is_bot:
                break
        return out

    def __eq__(self, other):
        return isinstance(other, Cof) and self.clauses == other.clauses

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Cof({self})"

    def __str__(self):
        return self.pretty(lambda v: f"i{v}")

    def pretty(self, name) -> str:
        if not self.clauses:
            return "bot"
        if self.clauses == ((),):
            return "top"
        parts = []
        for f in self.clauses:
            s = " /\\ ".join(f"{name(v)} = {e}" for v, e in f)
            parts.append(f"({s})" if len(f) > 1 and len(self.clauses) > 1 else s)
        return " \\/ ".join(parts)

    @property
    def is_top(self) -> bool:
        return self.clauses == ((),)

    @property
    def is_bot(self) -> bool:
        return not self.clauses

    def vars(self) -> set[int]:
        return {v for f in self.clauses for v, _ in f}

    def join(self, other: "Cof") -> "Cof":
        if self.is_bot or other.is_top:
            return other
        if other.is_bot or self.is_top:
            return self
        return Cof(_minimize_faces(self.clauses + other.clauses))

    def meet(self, other: "Cof") -> "Cof":
        if self.is_top or other.is_bot:
            return other
        if other.is_top or self.is_bot:
            return self
        faces = []
        for a in self.clauses:
            for b in other.clauses:
                u = _face_union(a, b)
                if u is not None:
                    faces.append(u)
        return Cof(_minimize_faces(faces))

    def restrict(self, face: Face | Mapping[int, int]) -> "Cof":
        """Instantiate the variables assigned by ``face``."""
        assign = dict(face)
        if not assign or not (self.vars() & assign.keys()):
            return self
        faces = []
        for f in self.clauses:
            ok = True
            rest = []
            for v, e in f:
                if v in assign:
                    if assign[v] != e:
                        ok = False
                        break
                else:
                    rest.append((v, e))
            if ok:
                if not rest:
                    return TOP
                faces.append(tuple(rest))
        return Cof(_minimize_faces(faces))

    def subst(self, sigma: Mapping[int, IvElem]) -> "Cof":
        if not (self.vars() & sigma.keys()):
            return self
        out = BOT
        for f in self.clauses:
            c = TOP
            for v, e in f:
                r = sigma.get(v)
                c = c.meet(Cof.eq(r, e) if r is not None else Cof((((v, e),),)))
                if c.is_bot:
                    break
            out = out.join(c)
            if out.is_top:
                break
        return out

    def satisfied_by(self, face: Face | Mapping[int, int]) -> bool:
        """Does the partial assignment force this cofibration to hold?"""
        return self.restrict(face).is_top

    def entails(self, other: "Cof") -> bool:
        return all(other.satisfied_by(f) for f in self.clauses)

    def forall(self, var: int) -> "Cof":
        """Largest cofibration without ``var`` entailing this one at every
        substitution for ``var``: the clauses that do not mention it."""
        return Cof(tuple(f for f in self.clauses if all(v != var for v, _ in f)))

    def evaluate(self, point: Mapping[int, int]) -> int:
        return int(any(all(point[v] == e for v, e in f) for f in self.clauses))


TOP = Cof(((),))
BOT = Cof(())


# ---------------------------------------------------------------------------
# cofibration formula syntax


@dataclass(frozen=True)
class CTop:
    pass


@dataclass(frozen=True)
class CBot:
    pass


@dataclass(frozen=True)
class CEq:
    term: IvTerm
    eps: int


@dataclass(frozen=True)
class CAnd:
    left: "CofTerm"
    right: "CofTerm"


@dataclass(frozen=True)
class COr:
    left: "CofTerm"
    right: "CofTerm"


CofTerm = Union[CTop, CBot, CEq, CAnd, COr]


def cof_normalize(phi: CofTerm | Cof, n: int) -> Cof:
    if isinstance(phi, Cof):
        bad = [v for v in phi.vars() if not 0 <= v < n]
        if bad:
            raise ScopeError(f"interval variable {bad[0]} out of scope (context size {n})")
        return phi
    if isinstance(phi, CTop):
        return TOP
    if isinstance(phi, CBot):
        return BOT
    if isinstance(phi, CEq):
        if phi.eps not in (0, 1):
            raise ValueError("endpoint must be 0 or 1")
        return Cof.eq(iv_normalize(phi.term, n), phi.eps)
    if isinstance(phi, CAnd):
        return cof_normalize(phi.left, n).meet(cof_normalize(phi.right, n))
    if isinstance(phi, COr):
        return cof_normalize(phi.left, n).join(cof_normalize(phi.right, n))
    raise TypeError(f"not a cofibration: {phi!r}")


def cof_entails(phi: CofTerm | Cof, psi: CofTerm | Cof, n: int) -> bool:
    return cof_normalize(phi, n).entails(cof_normalize(psi, n))


def cof_forall(phi: CofTerm | Cof, n: int) -> Cof:
    """Quantify away the last variable of an (n+1)-variable cofibration."""
    return cof_normalize(phi, n + 1).forall(n)


def cof_term(c: Cof) -> CofTerm:
    out = None
    for f in c.clauses:
        conj = None
        for v, e in f:
            a = CEq(IVar(v), e)
            conj = a if conj is None else CAnd(conj, a)
        conj = CTop() if conj is None else conj
        out = conj if out is None else COr(out, conj)
    return CBot() if out is None else out


# ---------------------------------------------------------------------------
# enumeration helpers (shared by the oracle suites and the tests)


def all_faces(n: int) -> list[Face]:
    out = []
    for vals in product((None, 0, 1), repeat=n):
        out.append(tuple((v, e) for v, e in enumerate(vals) if e is not None))
    return out


def all_cofs(n: int) -> list[Cof]:
    """Every canonical cofibration over variables ``0..n-1``."""
    faces = sorted(all_faces(n), key=len, reverse=True)
    exts = {f: [g for g in faces if g != f and set(f) <= set(g)] for f in faces}
    out: list[Cof] = []

    def go(k, chosen: frozenset):
        if k == len(faces):
            minimal = [f for f in chosen if not any(set(g) < set(f) for g in chosen)]
            out.append(Cof(_minimize_faces(minimal)))
            return
        f = faces[k]
        go(k + 1, chosen)
        if all(g in chosen for g in exts[f]):
            go(k + 1, chosen | {f})

    go(0, frozenset())
    return out


def entailment_masks(cofs: list[Cof], n: int):
    """Bit encodings for batch entailment over the faces of the n-cube.

    ``need[c]`` has a bit for each clause of ``c``; ``sat[c]`` has a bit for
    each face along which ``c`` instantiates to top.  Then phi entails psi
    iff ``need[phi] & ~sat[psi] == 0``.
    """
    import numpy as np

    faces = all_faces(n)
    if len(faces) > 64:
        raise ValueError("batch entailment supports at most 3 variables")
    bit = {f: k for k, f in enumerate(faces)}
    sat = np.array([sum(1 << bit[f] for f in faces if c.satisfied_by(f)) for c in cofs],
                   dtype=np.uint64)
    need = np.array([sum(1 << bit[f] for f in c.clauses) for c in cofs], dtype=np.uint64)
    return need, sat


def entailment_matrix(phis: list[Cof], psis: list[Cof], n: int):
    """``M[a, b]`` iff ``phis[a]`` entails ``psis[b]``."""
    need, _ = entailment_masks(phis, n)
    _, sat = entailment_masks(psis, n)
    return (need[:, None] & ~sat[None, :]) == 0
