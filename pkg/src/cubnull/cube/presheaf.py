"""Finite presheaves on the cube category, truncated at a dimension bound."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Sequence

from .box import BoxCat, BoxMap, compose, face_map, identity, projection

Elem = Hashable


@dataclass
class FinPresheaf:
    """Carrier ``carriers[n]`` for each n <= d and a restriction action.

    ``act(f, x)`` restricts ``x in P(m)`` along ``f: n -> m`` to ``P(n)``.
    """

    box: BoxCat
    carriers: dict[int, list]
    act: Callable[[BoxMap, Elem], Elem]
    name: str = "P"
    _index: dict = field(default_factory=dict, repr=False)

    @property
    def d(self) -> int:
        return self.box.d

    def __call__(self, n: int) -> list:
        return self.carriers[n]

    def index(self, n: int, x) -> int:
        if n not in self._index:
            self._index[n] = {y: k for k, y in enumerate(self.carriers[n])}
        return self._index[n][x]

    def restrict(self, f: BoxMap, x):
        return self.act(f, x)

    def sizes(self) -> list[int]:
        return [len(self.carriers[n]) for n in self.box.objects()]

    def check_functorial(self, exhaustive_pairs: int = 400_000, samples: int = 2000,
                         seed: int = 0) -> dict:
        """Identity and composition laws; exhaustive over composable pairs
        when the work is small, otherwise on a seeded random sample."""
        box = self.box
        for n in box.objects():
            idn = identity(n)
            for x in self.carriers[n]:
                if self.act(idn, x) != x:
                    return {"ok": False, "witness": ("identity", n, x)}
        for n in box.objects():
            for m in box.objects():
                for f in box.hom(n, m):
                    for x in self.carriers[m]:
                        if self.act(f, x) not in self.index_set(n):
                            return {"ok": False, "witness": ("closure", f, x)}
        rng = random.Random(seed)
        sampled = False
        for a, b, c in product(box.objects(), repeat=3):
            fs, gs, xs = box.hom(a, b), box.hom(b, c), self.carriers[c]
            work = len(fs) * len(gs) * len(xs)
            if work <= exhaustive_pairs:
                triples = product(fs, gs, xs)
            else:
                sampled = True
                triples = ((rng.choice(fs), rng.choice(gs), rng.choice(xs))
                           for _ in range(samples)) if xs else ()
            for f, g, x in triples:
                if self.act(compose(g, f), x) != self.act(f, self.act(g, x)):
                    return {"ok": False, "witness": ("composition", f, g, x)}
        return {"ok": True, "sampled": sampled}

    def index_set(self, n: int) -> dict:
        if n not in self._index:
            self._index[n] = {y: k for k, y in enumerate(self.carriers[n])}
        return self._index[n]


# ---------------------------------------------------------------------------
# standard presheaves


def representable(box: BoxCat, m: int) -> FinPresheaf:
    """y(m): maps into m, restriction by precomposition."""
    return FinPresheaf(box, {n: list(box.hom(n, m)) for n in box.objects()},
                       lambda f, x: compose(x, f), name=f"y({m})")


def interval(box: BoxCat) -> FinPresheaf:
    """The interval as y(1); an element of level n is a monotone truth table."""
    def act(f: BoxMap, x: tuple) -> tuple:
        return tuple(x[f(p)] for p in range(1 << f.dom))

    return FinPresheaf(box, {n: list(_tables(box, n)) for n in box.objects()}, act, name="I")


def _tables(box: BoxCat, n: int):
    return [f.comps[0] for f in box.hom(n, 1)]


def iv_meet(x: tuple, y: tuple) -> tuple:
    return tuple(a & b for a, b in zip(x, y))


def iv_join(x: tuple, y: tuple) -> tuple:
    return tuple(a | b for a, b in zip(x, y))


def delta_const(box: BoxCat, s: Sequence) -> FinPresheaf:
    """The constant presheaf on a finite set."""
    return FinPresheaf(box, {n: list(s) for n in box.objects()}, lambda f, x: x,
                       name=f"Delta{len(s)}")


def eval_at0(p: FinPresheaf) -> list:
    return list(p.carriers[0])


def nabla(box: BoxCat, s: Sequence) -> FinPresheaf:
    """Codiscrete presheaf: level n is the set of functions from the
    2^n vertices of the n-cube to ``s``, stored as tuples indexed by vertex."""
    def act(f: BoxMap, x: tuple) -> tuple:
        return tuple(x[f(p)] for p in range(1 << f.dom))

    return FinPresheaf(box, {n: list(product(s, repeat=1 << n)) for n in box.objects()}, act,
                       name=f"Nabla{len(s)}")


def product_psh(p: FinPresheaf, q: FinPresheaf) -> FinPresheaf:
    return FinPresheaf(p.box, {n: list(product(p(n), q(n))) for n in p.box.objects()},
                       lambda f, x: (p.act(f, x[0]), q.act(f, x[1])), name=f"({p.name}x{q.name})")


def coproduct_psh(p: FinPresheaf, q: FinPresheaf) -> FinPresheaf:
    def act(f, x):
        tag, v = x
        return (tag, p.act(f, v)) if tag == 0 else (tag, q.act(f, v))

    return FinPresheaf(p.box, {n: [(0, x) for x in p(n)] + [(1, y) for y in q(n)]
                               for n in p.box.objects()}, act, name=f"({p.name}+{q.name})")


# ---------------------------------------------------------------------------
# natural transformations


@dataclass(frozen=True)
class NatTrans:
    components: tuple[tuple, ...]  # components[n][i] = image of P(n)[i]

    def at(self, p: FinPresheaf, n: int, x):
        return self.components[n][p.index(n, x)]


def nat_transformations(p: FinPresheaf, q: FinPresheaf, limit: int | None = None) -> list[NatTrans]:
    """All natural transformations P -> Q by backtracking over elements.

    Elements are assigned level by level; each assignment is checked against
    every naturality square whose other corners are already assigned.
    """
    box = p.box
    order = [(n, i) for n in box.objects() for i in range(len(p(n)))]
    maps_into = {n: [f for k in range(n + 1) for f in box.hom(k, n)] for n in box.objects()}
    maps_out = {n: [f for k in range(n, box.d + 1) for f in box.hom(n, k)] for n in box.objects()}
    assign: dict[tuple[int, int], object] = {}
    results: list[NatTrans] = []

    def consistent(n: int, i: int) -> bool:
        x = p(n)[i]
        y = assign[(n, i)]
        # squares where x is the restricted element or the one being restricted
        for f in maps_into[n]:
            k = f.dom
            j = p.index(k, p.act(f, x))
            if (k, j) in assign and assign[(k, j)] != q.act(f, y):
                return False
        for f in maps_out[n]:
            k = f.cod
            for jj, z in enumerate(p(k)):
                if (k, jj) in assign and p.act(f, z) == x:
                    if q.act(f, assign[(k, jj)]) != y:
                        return False
        return True

    def go(pos: int):
        if limit is not None and len(results) >= limit:
            return
        if pos == len(order):
            results.append(NatTrans(tuple(tuple(assign[(n, i)] for i in range(len(p(n))))
                                          for n in box.objects())))
            return
        n, i = order[pos]
        for y in q(n):
            assign[(n, i)] = y
            if consistent(n, i):
                go(pos + 1)
            del assign[(n, i)]

    go(0)
    return results


# ---------------------------------------------------------------------------
# discreteness


def path_map_bijective(p: FinPresheaf, n: int) -> bool:
    """Is ``x ↦ λi.x : P(n) -> P^I(n) = P(n+1)`` a bijection?

    Uses y(n) × I ≅ y(n+1), so the constant-path map is restriction along
    the projection n+1 -> n.
    """
    pi = projection(n)
    image = {p.act(pi, x) for x in p(n)}
    return len(image) == len(p(n)) and len(image) == len(p(n + 1))


def is_discrete(p: FinPresheaf) -> bool:
    return all(path_map_bijective(p, n) for n in range(p.d))


def paths_at_level0(p: FinPresheaf) -> int:
    """|P^I(0)| computed independently as the number of maps I -> P."""
    return len(nat_transformations(interval(p.box), p))


def is_cubical_prop(b: FinPresheaf) -> bool:
    """Any two elements of the same level are joined by a path (checked where
    the path level exists)."""
    for n in range(b.d):
        d0, d1 = face_map(n, n, 0), face_map(n, n, 1)
        ends = {(b.act(d0, z), b.act(d1, z)) for z in b(n + 1)}
        if any((x, y) not in ends for x in b(n) for y in b(n)):
            return False
    return True


def is_well_supported(b: FinPresheaf) -> bool:
    return all(b(n) for n in b.box.objects())
