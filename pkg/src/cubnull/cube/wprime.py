"""Pointwise W-types with reductions over the truncated cube category.

Normal forms ``sup(y, α)`` at level d have a non-reducible head y in Y(d)
and children ``α(g, x)`` for every ``g: e -> d`` and arity element
``x in X(e, Y(g) y)``.  Restriction along g either fires the reduction
(when Y(g) y is reducible) or rebuilds the node with reindexed children.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable

from .box import BoxCat, BoxMap, compose, identity
from .presheaf import FinPresheaf


@dataclass
class Polynomial:
    """Finite polynomial with reductions over the terminal context.

    ``arity(n, y)`` lists X(n, y); ``arity_act(g, y, x)`` restricts an arity
    element along ``g: e -> n`` into X(e, Y(g) y).  ``reducible(n, y)``
    decides membership in R and ``reduce(n, y)`` is k(y) in X(n, y).
    """

    name: str
    Y: FinPresheaf
    arity: Callable[[int, Hashable], list]
    arity_act: Callable[[BoxMap, Hashable, Hashable], Hashable]
    reducible: Callable[[int, Hashable], bool]
    reduce: Callable[[int, Hashable], Hashable]

    @property
    def box(self) -> BoxCat:
        return self.Y.box


@dataclass(frozen=True)
class Sup:
    level: int
    head: Hashable
    children: tuple  # aligned with WPrime.keys(level, head)

    def __repr__(self):
        if not self.children:
            return f"{self.head}@{self.level}"
        return f"sup({self.head}@{self.level}, ...{len(self.children)})"


@dataclass
class WPrime:
    poly: Polynomial
    depth: int
    levels: dict[int, list[Sup]] = field(default_factory=dict)
    truncated: bool = False
    _keys: dict = field(default_factory=dict, repr=False)
    _restrict: dict = field(default_factory=dict, repr=False)
    _natural: dict = field(default_factory=dict, repr=False)

    @property
    def box(self) -> BoxCat:
        return self.poly.box

    def keys(self, d: int, y) -> list[tuple[BoxMap, Hashable]]:
        key = (d, y)
        if key not in self._keys:
            out = []
            for e in self.box.objects():
                for g in self.box.hom(e, d):
                    yg = self.poly.Y.act(g, y)
                    for x in self.poly.arity(e, yg):
                        out.append((g, x))
            self._keys[key] = out
        return self._keys[key]

    def child(self, t: Sup, g: BoxMap, x):
        return t.children[self.keys(t.level, t.head).index((g, x))]

    def restrict(self, t: Sup, g: BoxMap) -> Sup:
        """N0(g)(t) by the reduction case split."""
        memo = (t, g)
        if memo in self._restrict:
            return self._restrict[memo]
        P = self.poly
        e = g.dom
        yg = P.Y.act(g, t.head)
        if P.reducible(e, yg):
            out = self.child(t, g, P.reduce(e, yg))
        else:
            kids = tuple(self.child(t, compose(g, h), x) for h, x in self.keys(e, yg))
            out = Sup(e, yg, kids)
        self._restrict[memo] = out
        return out

    def is_natural(self, t: Sup) -> bool:
        """Hereditary naturality of the child family."""
        if t in self._natural:
            return self._natural[t]
        P = self.poly
        ok = True
        for g, x in self.keys(t.level, t.head):
            c = self.child(t, g, x)
            if not self.is_natural(c):
                ok = False
                break
            yg = P.Y.act(g, t.head)
            for e2 in self.box.objects():
                for h in self.box.hom(e2, g.dom):
                    lhs = self.child(t, compose(g, h), P.arity_act(h, yg, x))
                    if lhs != self.restrict(c, h):
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        self._natural[t] = ok
        return ok


def build_wprime(poly: Polynomial, depth: int = 3) -> WPrime:
    """Enumerate hereditarily natural normal forms of depth <= ``depth``.

    Candidates choose the identity-indexed children freely and fill every
    other position by restriction where an arity element is a restriction,
    and freely otherwise; the naturality filter then decides membership.
    """
    w = WPrime(poly, depth)
    box = poly.box
    layers: list[dict[int, list[Sup]]] = [{n: [] for n in box.objects()}]
    for k in range(1, depth + 1):
        prev = layers[-1]
        cur: dict[int, list[Sup]] = {}
        for d in box.objects():
            found: dict[Sup, None] = {}
            for y in poly.Y(d):
                if poly.reducible(d, y):
                    continue
                for cand in _candidates(w, prev, d, y):
                    if w.is_natural(cand):
                        found[cand] = None
            cur[d] = list(found)
        layers.append(cur)
        if k == depth:
            # anything at the next depth that is not already present?
            w.truncated = any(w.keys(d, y) for d in box.objects() for y in poly.Y(d)
                              if not poly.reducible(d, y))
    w.levels = layers[-1]
    return w


def _candidates(w: WPrime, prev: dict[int, list[Sup]], d: int, y):
    P = w.poly
    keys = w.keys(d, y)
    if not keys:
        yield Sup(d, y, ())
        return
    idd = identity(d)
    base = [x for g, x in keys if g == idd]
    for beta in product(prev[d], repeat=len(base)):
        chosen = dict(zip(base, beta))
        fixed: dict[int, Sup] = {}
        free: list[int] = []
        clash = False
        for pos, (g, xg) in enumerate(keys):
            if g == idd:
                fixed[pos] = chosen[xg]
                continue
            sources = [x for x in base if P.arity_act(g, y, x) == xg]
            if sources:
                vals = {w.restrict(chosen[x], g) for x in sources}
                if len(vals) > 1:
                    clash = True
                    break
                fixed[pos] = vals.pop()
            else:
                free.append(pos)
        if clash:
            continue
        pools = [prev[keys[pos][0].dom] for pos in free]
        for extra in product(*pools):
            kids = dict(fixed)
            kids.update(zip(free, extra))
            yield Sup(d, y, tuple(kids[p] for p in range(len(keys))))


def depth_of(t: Sup) -> int:
    return 1 + max((depth_of(c) for c in t.children), default=0)


# ---------------------------------------------------------------------------
# checks


def check_case_split(w: WPrime) -> dict:
    """Every restriction satisfies the reduction case split, lands in the
    enumerated set, and the action is functorial."""
    P, box = w.poly, w.box
    count = 0
    for d, elems in w.levels.items():
        members = {e: set(w.levels[e]) for e in box.objects()}
        for t in elems:
            for e in box.objects():
                for g in box.hom(e, d):
                    r = w.restrict(t, g)
                    yg = P.Y.act(g, t.head)
                    if P.reducible(e, yg):
                        expect = w.child(t, g, P.reduce(e, yg))
                        if r != expect:
                            return {"ok": False, "witness": (t, g)}
                    else:
                        if r.head != yg:
                            return {"ok": False, "witness": (t, g)}
                        for h, x in w.keys(e, yg):
                            if w.child(r, h, x) != w.child(t, compose(g, h), x):
                                return {"ok": False, "witness": (t, g, h, x)}
                    if r not in members[e]:
                        return {"ok": False, "witness": ("not closed", t, g)}
                    for e2 in box.objects():
                        for h in box.hom(e2, e):
                            if w.restrict(r, h) != w.restrict(t, compose(g, h)):
                                return {"ok": False, "witness": ("functoriality", t, g, h)}
                    count += 1
            if w.restrict(t, identity(d)) != t:
                return {"ok": False, "witness": ("identity", t)}
    return {"ok": True, "restrictions": count}


def check_no_reducible_head(w: WPrime) -> dict:
    P = w.poly
    seen = set()

    def go(t: Sup) -> bool:
        if t in seen:
            return True
        seen.add(t)
        if P.reducible(t.level, t.head):
            return False
        return all(go(c) for c in t.children)

    for elems in w.levels.values():
        for t in elems:
            if not go(t):
                return {"ok": False, "witness": t}
    return {"ok": True, "nodes": len(seen)}


@dataclass
class Algebra:
    """A presheaf with ``structure(d, y, fam)``; ``fam(g, x)`` is the
    family of values of the children."""

    carrier: FinPresheaf
    structure: Callable


def check_algebra(w: WPrime, alg: Algebra) -> dict:
    """The structure map respects reductions and restriction, on all
    families obtained by restricting a choice of identity-level values."""
    P, box, A = w.poly, w.box, alg.carrier
    for d in box.objects():
        idd = identity(d)
        for y in P.Y(d):
            keys = w.keys(d, y)
            base = [x for g, x in keys if g == idd]
            for vals in product(A(d), repeat=len(base)):
                chosen = dict(zip(base, vals))

                def fam(g, x, chosen=chosen, y=y):
                    for x0 in chosen:
                        if P.arity_act(g, y, x0) == x:
                            return A.act(g, chosen[x0])
                    raise KeyError((g, x))

                if P.reducible(d, y):
                    if alg.structure(d, y, fam) != fam(idd, P.reduce(d, y)):
                        return {"ok": False, "witness": ("reduction", d, y, vals)}
                    continue
                out = alg.structure(d, y, fam)
                for e in box.objects():
                    for g in box.hom(e, d):
                        yg = P.Y.act(g, y)
                        sub = lambda h, x, g=g: fam(compose(g, h), x)
                        if P.reducible(e, yg):
                            restricted = fam(g, P.reduce(e, yg))
                        else:
                            restricted = alg.structure(e, yg, sub)
                        if restricted != A.act(g, out):
                            return {"ok": False, "witness": ("naturality", d, y, g, vals)}
    return {"ok": True}


def fold(w: WPrime, alg: Algebra) -> dict[Sup, Hashable]:
    """The algebra map by structural recursion."""
    memo: dict[Sup, Hashable] = {}

    def go(t: Sup):
        if t not in memo:
            keys = w.keys(t.level, t.head)
            vals = {k: go(c) for k, c in zip(keys, t.children)}
            memo[t] = alg.structure(t.level, t.head, lambda g, x: vals[(g, x)])
        return memo[t]

    for elems in w.levels.values():
        for t in elems:
            go(t)
    return memo


def brute_force_morphisms(w: WPrime, alg: Algebra, limit: int = 10) -> list[dict]:
    """All maps on the enumerated elements that commute with restriction and
    with the structure maps, by exhaustive backtracking over value choices."""
    box, A = w.box, alg.carrier
    elems = sorted({t for ts in w.levels.values() for t in ts}, key=lambda t: (depth_of(t), t.level))
    present = set(elems)
    assign: dict[Sup, Hashable] = {}
    out: list[dict] = []

    def ok(t: Sup) -> bool:
        v = assign[t]
        keys = w.keys(t.level, t.head)
        if all(c in assign for c in t.children):
            vals = {k: assign[c] for k, c in zip(keys, t.children)}
            if alg.structure(t.level, t.head, lambda g, x: vals[(g, x)]) != v:
                return False
        for e in box.objects():
            for g in box.hom(e, t.level):
                r = w.restrict(t, g)
                if r in assign and assign[r] != A.act(g, v):
                    return False
        for s in assign:
            if s.level > t.level:
                for g in box.hom(t.level, s.level):
                    if w.restrict(s, g) == t and A.act(g, assign[s]) != v:
                        return False
        return True

    def go(i: int):
        if len(out) >= limit:
            return
        if i == len(elems):
            out.append(dict(assign))
            return
        t = elems[i]
        for v in A(t.level):
            assign[t] = v
            if ok(t):
                go(i + 1)
            del assign[t]

    assert all(c in present for t in elems for c in t.children)
    go(0)
    return out
