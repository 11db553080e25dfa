"""The cube category: objects are n, maps n -> m are monotone Bool^n -> Bool^m.

A point of Bool^n is an integer whose bit v is coordinate v.  A monotone
function Bool^n -> Bool is a truth table indexed by points; a map n -> m
is a tuple of m such tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

MAX_DIM = 3


class BoundError(ValueError):
    """Requested dimension exceeds what the enumerator supports."""


def is_monotone(table: tuple[int, ...], n: int) -> bool:
    for p in range(1 << n):
        if table[p]:
            for v in range(n):
                if not p >> v & 1 and not table[p | 1 << v]:
                    return False
    return True


@lru_cache(maxsize=None)
def monotone_functions(n: int) -> tuple[tuple[int, ...], ...]:
    """All monotone Bool^n -> Bool, by filtering every truth table."""
    if n > MAX_DIM + 1:
        raise BoundError(f"dimension {n} too large")
    return tuple(t for t in product((0, 1), repeat=1 << n) if is_monotone(t, n))


@dataclass(frozen=True)
class BoxMap:
    dom: int
    cod: int
    comps: tuple[tuple[int, ...], ...]

    def __call__(self, p: int) -> int:
        out = 0
        for j, t in enumerate(self.comps):
            out |= t[p] << j
        return out

    def __repr__(self):
        return f"BoxMap({self.dom}->{self.cod}: {self.comps})"


def identity(n: int) -> BoxMap:
    return BoxMap(n, n, tuple(tuple(p >> v & 1 for p in range(1 << n)) for v in range(n)))


def compose(g: BoxMap, f: BoxMap) -> BoxMap:
    """``g ∘ f`` (first f, then g)."""
    if f.cod != g.dom:
        raise ValueError(f"cannot compose {g} after {f}")
    images = [f(p) for p in range(1 << f.dom)]
    return BoxMap(f.dom, g.cod, tuple(tuple(t[q] for q in images) for t in g.comps))


def face_map(n: int, var: int, eps: int) -> BoxMap:
    """n -> n+1 inserting the constant ``eps`` as coordinate ``var``."""
    comps = []
    for v in range(n + 1):
        if v < var:
            comps.append(tuple(p >> v & 1 for p in range(1 << n)))
        elif v == var:
            comps.append(tuple(eps for _ in range(1 << n)))
        else:
            comps.append(tuple(p >> (v - 1) & 1 for p in range(1 << n)))
    return BoxMap(n, n + 1, tuple(comps))


def projection(n: int) -> BoxMap:
    """n+1 -> n forgetting the last coordinate."""
    return BoxMap(n + 1, n, tuple(tuple(p >> v & 1 for p in range(1 << (n + 1))) for v in range(n)))


def point(n: int, p: int) -> BoxMap:
    """The map 0 -> n picking out the vertex p."""
    return BoxMap(0, n, tuple((p >> v & 1,) for v in range(n)))


class BoxCat:
    """Hom-sets and composition of the cube category up to dimension ``d``."""

    def __init__(self, d: int):
        if d > MAX_DIM:
            raise BoundError(f"dimension bound {d} exceeds {MAX_DIM}")
        self.d = d
        self._homs: dict[tuple[int, int], tuple[BoxMap, ...]] = {}
        self._index: dict[tuple[int, int], dict[BoxMap, int]] = {}
        self._cache: dict = {}

    def hom(self, n: int, m: int) -> tuple[BoxMap, ...]:
        key = (n, m)
        if key not in self._homs:
            if max(n, m) > self.d:
                raise BoundError(f"object {max(n, m)} beyond bound {self.d}")
            fs = monotone_functions(n)
            maps = tuple(BoxMap(n, m, comps) for comps in product(fs, repeat=m))
            self._homs[key] = maps
            self._index[key] = {f: k for k, f in enumerate(maps)}
        return self._homs[key]

    def index(self, f: BoxMap) -> int:
        self.hom(f.dom, f.cod)
        return self._index[(f.dom, f.cod)][f]

    def into(self, m: int):
        """All maps with codomain m, any domain up to the bound."""
        for n in range(self.d + 1):
            yield from self.hom(n, m)

    def objects(self) -> range:
        return range(self.d + 1)

    def images(self, n: int, m: int):
        """``images[fi, p]`` = the point ``hom(n, m)[fi](p)`` of Bool^m."""
        import numpy as np

        key = ("img", n, m)
        if key not in self._cache:
            self._cache[key] = np.array([[f(p) for p in range(1 << n)] for f in self.hom(n, m)],
                                        dtype=np.int64).reshape(len(self.hom(n, m)), 1 << n)
        return self._cache[key]

    def _codes(self, img, m: int):
        import numpy as np

        weights = (1 << m) ** np.arange(img.shape[-1], dtype=np.int64)
        return img @ weights

    def composition_table(self, a: int, b: int, c: int):
        """``T[gi, fi]`` = index of ``hom(b,c)[gi] ∘ hom(a,b)[fi]`` in hom(a,c)."""
        import numpy as np

        img_f, img_g = self.images(a, b), self.images(b, c)
        composite = img_g[:, img_f]                      # [g, f, point]
        codes = self._codes(composite, c)
        target = self._codes(self.images(a, c), c)
        order = np.argsort(target)
        pos = np.searchsorted(target, codes, sorter=order)
        return order[pos]

    def check_laws(self, max_work: int = 20_000_000) -> dict:
        """Unit laws everywhere; associativity for every object quadruple whose
        triple count fits in ``max_work`` (all of them for d <= 2)."""
        import numpy as np

        for n in self.objects():
            for m in self.objects():
                for f in self.hom(n, m):
                    if compose(identity(m), f) != f or compose(f, identity(n)) != f:
                        return {"ok": False, "witness": repr(f)}
        tables = {}
        checked = skipped = 0
        objs = self.objects()
        for a, b, c, e in product(objs, repeat=4):
            work = len(self.hom(a, b)) * len(self.hom(b, c)) * len(self.hom(c, e))
            pairs = max(len(self.hom(a, b)) * len(self.hom(b, c)),
                        len(self.hom(b, c)) * len(self.hom(c, e)))
            if work > max_work or pairs > max_work // 20:
                skipped += 1
                continue
            for key in ((a, b, c), (b, c, e), (a, c, e), (a, b, e)):
                if key not in tables:
                    tables[key] = self.composition_table(*key)
            t_abc, t_bce, t_ace, t_abe = (tables[(a, b, c)], tables[(b, c, e)],
                                          tables[(a, c, e)], tables[(a, b, e)])
            # h∘(g∘f) vs (h∘g)∘f for all h, g, f at once
            left = t_ace[:, t_abc]            # [h, g, f]
            right = np.take(t_abe, t_bce, axis=0)  # [h, g, f]
            if not np.array_equal(left, right):
                return {"ok": False, "witness": (a, b, c, e)}
            checked += 1
        return {"ok": True, "quadruples_checked": checked, "quadruples_skipped": skipped}
