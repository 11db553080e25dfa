"""Seeded generators of closed surface terms for the kernel suites.

Each generator returns ``Case`` records: a type and two terms that must be
definitionally equal at it.  Depth counts constructor nesting; every case
stays within depth 3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

IMPORTS = ["prelude", "trunc", "hits"]

FIXTURES = r"""
def KA : U0 = Sum Unit Unit
def KB (a : KA) : U0 = case (\_. U0) (\_. Nat) (\_. Empty) a
def KT : U0 = K KA KB
def leaf : KT = ext (inr tt) (\e. absurd KT e)
def node (g : Nat -> KT) : KT = ext (inl tt) g

def rebuild (k : KT) : KT =
  elim k (\_. KT) { ext a f | ih => ext a ih ; isext a f b | ih @ i => isext a ih b i }

def lfrSuc (t : LFR Nat) : LFR Nat = elim t (\_. LFR Nat) { inc a => inc (suc a) }

def truncSuc (t : Trunc Nat) : Trunc Nat = truncRec (truncIsProp Nat) (\n. inc (suc n)) t

def suspSquash (t : Susp Nat) : Susp Unit =
  elim t (\_. Susp Unit) { north => north ; south => south ; merid a @ i => merid tt i }

def coneDepth (t : Cone Nat) : Nat = elim t (\_. Nat) { apex => 0 ; cin x @ i => 0 }

def JT : U0 = JB Nat (\_. Nat) Nat
def jleaf (n : Nat) : JT = jbAlpha {Nat} {\_. Nat} {Nat} n
def jnode (a : Nat) (g : Nat -> JT) : JT = ext (inl a) g
"""


@dataclass(frozen=True)
class Case:
    family: str
    ty: str
    lhs: str
    rhs: str

    @property
    def id(self) -> str:
        return f"{self.family}:{self.lhs}"[:90]


# --- values ---------------------------------------------------------------------------

def nat(r: random.Random, d: int) -> str:
    if d <= 0 or r.random() < 0.5:
        return str(r.randrange(6))
    return f"suc ({nat(r, d - 1)})"


def trunc(r: random.Random, d: int) -> str:
    if d <= 1 or r.random() < 0.4:
        return f"inc {r.randrange(6)}"
    return f"sq ({trunc(r, d - 1)}) ({trunc(r, d - 1)}) {r.randrange(2)}"


def susp(r: random.Random, d: int) -> str:
    pick = r.randrange(3 if d > 1 else 2)
    if pick == 0:
        return "north"
    if pick == 1:
        return "south"
    return f"merid ({nat(r, d - 1)}) {r.randrange(2)}"


def cone(r: random.Random, d: int) -> str:
    if d <= 1 or r.random() < 0.3:
        return "apex"
    return f"cin ({nat(r, d - 1)}) 1"


def kfun(r: random.Random, d: int) -> str:
    """A function ``Nat -> KT``: constant, or branching on zero."""
    if r.random() < 0.5:
        return f"\\(n : Nat). {kval(r, d)}"
    return f"\\(n : Nat). natrec (\\_. KT) ({kval(r, d)}) (\\m acc. {kval(r, d)}) n"


def kval(r: random.Random, d: int) -> str:
    if d <= 1:
        return "leaf"
    pick = r.randrange(4)
    if pick == 0:
        return "leaf"
    if pick == 1:
        return f"node ({kfun(r, d - 1)})"
    if pick == 2:
        return f"isext {{KA}} {{KB}} (inl tt) ({kfun(r, d - 1)}) {r.randrange(4)} {r.randrange(2)}"
    return f"pastecone {{KA}} {{KB}} (inl tt) (cin {r.randrange(4)} 1) ({kfun(r, d - 1)})"


def jval(r: random.Random, d: int) -> str:
    if d <= 1 or r.random() < 0.4:
        return f"jleaf {r.randrange(5)}"
    return f"jnode {r.randrange(4)} (\\n. {jval(r, d - 1)})"


# --- beta corpus ----------------------------------------------------------------------

def beta_cases(seed: int = 7, per_family: int = 12) -> list[Case]:
    r = random.Random(seed)
    out: list[Case] = []
    for _ in range(per_family):
        x, y = trunc(r, 2), trunc(r, 2)
        n = nat(r, 2)
        out += [
            Case("LFR.elim", "LFR Nat", f"lfrSuc (inc ({n}))", f"inc (suc ({n}))"),
            Case("LFR.hcomp-top", "LFR Nat", f"hcomp (LFR Nat) [top -> \\k. inc ({n})] (inc ({n}))",
                 f"inc ({n})"),
            Case("Trunc.sq0", "Trunc Nat", f"sq ({x}) ({y}) 0", x),
            Case("Trunc.sq1", "Trunc Nat", f"sq ({x}) ({y}) 1", y),
            Case("Trunc.elim-inc", "Trunc Nat", f"truncSuc (inc ({n}))", f"inc (suc ({n}))"),
            Case("Trunc.elim-sq", f"Path (Trunc Nat) (truncSuc ({x})) (truncSuc ({y}))",
                 f"\\i. truncSuc (sq ({x}) ({y}) i)",
                 f"\\i. truncIsProp Nat (truncSuc ({x})) (truncSuc ({y})) i"),
            Case("Trunc.hcomp-top", "Trunc Nat", f"hcomp (Trunc Nat) [top -> \\k. sq ({x}) ({y}) k] ({x})",
                 y),
        ]
        s = susp(r, 3)
        out += [
            Case("Susp.merid0", "Susp Nat", f"merid ({n}) 0", "north"),
            Case("Susp.merid1", "Susp Nat", f"merid ({n}) 1", "south"),
            Case("Susp.elim-merid", "Path (Susp Unit) north south",
                 f"\\i. suspSquash (merid ({n}) i)", "\\i. merid tt i"),
            Case("Susp.elim-point", "Susp Unit", f"suspSquash ({s})",
                 {"n": "north", "s": "south"}[_susp_pole(s)]),
            Case("Susp.hcomp-top", "Susp Nat", f"hcomp (Susp Nat) [top -> \\k. merid ({n}) k] north",
                 "south"),
        ]
        c = cone(r, 2)
        out += [
            Case("Cone.cin0", "Cone Nat", f"cin ({n}) 0", "apex"),
            Case("Cone.elim", "Nat", f"coneDepth ({c})", "0"),
            Case("Cone.elim-cin", "Path Nat 0 0", f"\\i. coneDepth (cin ({n}) i)", "\\i. 0"),
        ]
        f, b = kfun(r, 2), r.randrange(5)
        out += [
            Case("K.isext0", "KT", f"isext (inl tt) ({f}) {b} 0", f"node ({f})"),
            Case("K.isext1", "KT", f"isext (inl tt) ({f}) {b} 1", f"({f}) {b}"),
            Case("K.pastecone", "KT", f"pastecone {{KA}} {{KB}} (inl tt) (cin {b} 1) ({f})",
                 f"({f}) {b}"),
            Case("K.elim-ext", "KT", f"rebuild (node ({f}))",
                 f"ext (inl tt) (\\n. rebuild (({f}) n))"),
            Case("K.elim-isext", f"Path KT (rebuild (node ({f}))) (rebuild (({f}) {b}))",
                 f"\\i. rebuild (isext (inl tt) ({f}) {b} i)",
                 f"\\i. isext (inl tt) (\\n. rebuild (({f}) n)) {b} i"),
            Case("K.hcomp-top", "KT", f"hcomp KT [top -> \\k. isext (inl tt) ({f}) {b} k] (node ({f}))",
                 f"({f}) {b}"),
        ]
        a, jv = r.randrange(4), jval(r, 2)
        out += [
            Case("JB.isext0", "JT", f"isext (inl {a}) (\\n. {jv}) {b} 0", f"jnode {a} (\\n. {jv})"),
            Case("JB.isext1", "JT", f"isext (inl {a}) (\\n. {jv}) {b} 1", jv),
            Case("JB.path0", "JT", f"jbIsext {{Nat}} {{\\_. Nat}} {{Nat}} {a} (\\n. {jv}) {b} 0",
                 f"jnode {a} (\\n. {jv})"),
            Case("JB.path1", "JT", f"jbIsext {{Nat}} {{\\_. Nat}} {{Nat}} {a} (\\n. {jv}) {b} 1", jv),
        ]
    return out


def _susp_pole(s: str) -> str:
    if s == "north" or s.endswith(" 0"):
        return "n"
    return "s"


def negative_cases() -> list[Case]:
    """Plausible but wrong equations; each must be rejected by conv."""
    return [
        Case("neg", "Trunc Nat", "sq (inc 1) (inc 2) 0", "inc 2"),
        Case("neg", "Trunc Nat", "sq (inc 1) (inc 2) 1", "inc 1"),
        Case("neg", "Susp Nat", "merid 0 1", "north"),
        Case("neg", "KT", "isext (inl tt) (\\n. leaf) 2 0", "leaf"),
        Case("neg", "KT", "pastecone {KA} {KB} (inl tt) (cin 3 1) (\\n. leaf)", "node (\\m. leaf)"),
        Case("neg", "KT", "pastecone {KA} {KB} (inl tt) (apex {Nat}) (\\n. leaf)", "leaf"),
    ]


# --- transport corpus -----------------------------------------------------------------

def k_values(seed: int = 11, count: int = 120) -> list[str]:
    r = random.Random(seed)
    return [kval(r, 1 + k % 3) for k in range(count)]


# (type, closed inhabitant) for the former-by-former transport check; every
# type is also checked at a generic variable.
FORMERS = [
    ("Nat", "4"),
    ("Unit", "tt"),
    ("Nat -> Nat", "\\n. suc n"),
    ("(n : Nat) * Path Nat n n", "(2, refl 2)"),
    ("Path Nat 3 3", "refl 3"),
    ("PathP (\\_. Nat) 1 1", "\\_. 1"),
    ("Sum Nat Unit", "inl 5"),
    ("Sum Nat Unit", "inr tt"),
    ("U0", "Nat"),
    ("Id Nat 1 1", "idrefl 1"),
    ("LFR Nat", "inc 3"),
    ("Trunc Nat", "sq (inc 1) (inc 2) 0"),
    ("Susp Nat", "merid 2 1"),
    ("Cone Nat", "cin 2 1"),
    ("KT", "node (\\n. leaf)"),
    ("JT", "jleaf 4"),
]
GENERIC_ONLY = ["Empty", "Nat -> Empty", "Trunc Empty"]
