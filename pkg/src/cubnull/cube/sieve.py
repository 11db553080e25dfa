"""Sieves on representables and the semantics of cofibration formulas.

A formula over n interval variables denotes the sieve on y(n) of all maps
``f: k -> n`` along which it becomes true.  Atoms are evaluated straight
from truth tables: ``r = e`` holds along f when ``r ∘ f`` is constantly e.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..interval import CAnd, CBot, CEq, COr, CTop, Cof, IJoin, IMeet, IOne, IVar, IZero, cof_term
from .box import BoxCat, BoxMap, compose


@dataclass(frozen=True)
class Sieve:
    n: int
    maps: frozenset  # of BoxMap with codomain n

    def __le__(self, other: "Sieve") -> bool:
        return self.maps <= other.maps

    def __lt__(self, other: "Sieve") -> bool:
        return self.maps < other.maps


def _iv_table(t, f: BoxMap) -> tuple[int, ...]:
    """Truth table of the interval term ``t`` composed with f."""
    size = 1 << f.dom
    if isinstance(t, IZero):
        return (0,) * size
    if isinstance(t, IOne):
        return (1,) * size
    if isinstance(t, IVar):
        return f.comps[t.index]
    a, b = _iv_table(t.left, f), _iv_table(t.right, f)
    if isinstance(t, IMeet):
        return tuple(x & y for x, y in zip(a, b))
    return tuple(x | y for x, y in zip(a, b))


def holds_along(phi, f: BoxMap) -> bool:
    if isinstance(phi, Cof):
        phi = cof_term(phi)
    if isinstance(phi, CTop):
        return True
    if isinstance(phi, CBot):
        return False
    if isinstance(phi, CEq):
        return all(v == phi.eps for v in _iv_table(phi.term, f))
    if isinstance(phi, CAnd):
        return holds_along(phi.left, f) and holds_along(phi.right, f)
    if isinstance(phi, COr):
        return holds_along(phi.left, f) or holds_along(phi.right, f)
    raise TypeError(phi)


def cof_sieve(box: BoxCat, phi, n: int) -> Sieve:
    return Sieve(n, frozenset(f for f in box.into(n) if holds_along(phi, f)))


def maximal_sieve(box: BoxCat, n: int) -> Sieve:
    return Sieve(n, frozenset(box.into(n)))


def sieve_leq(s: Sieve, t: Sieve) -> bool:
    return s <= t


def is_sieve(box: BoxCat, s: Sieve) -> bool:
    """Closed under precomposition."""
    for f in s.maps:
        for k in box.objects():
            for g in box.hom(k, f.dom):
                if compose(f, g) not in s.maps:
                    return False
    return True


# ---------------------------------------------------------------------------
# bulk comparison for the completeness suite


def atom_signature(f: BoxMap) -> tuple[int, ...]:
    """Per coordinate: 0 or 1 if that component of f is constant, else 2."""
    out = []
    for t in f.comps:
        out.append(t[0] if all(v == t[0] for v in t) else 2)
    return tuple(out)


def sieve_masks(box: BoxCat, cofs: list[Cof], n: int, dim: int | None = None):
    """Bit masks of ``cof_sieve`` for many canonical cofibrations at once.

    Maps into n are grouped by their atom signature, since every formula
    with single-variable atoms is decided by it; one representative map per
    class is evaluated with ``holds_along``.  Only maps with domain at most
    ``dim`` are considered.
    """
    import numpy as np

    dim = box.d if dim is None else dim
    reps: dict[tuple, BoxMap] = {}
    for k in range(dim + 1):
        for f in box.hom(k, n):
            reps.setdefault(atom_signature(f), f)
    classes = sorted(reps)
    if len(classes) > 64:
        raise ValueError("too many signature classes for 64-bit masks")
    masks = np.zeros(len(cofs), dtype=np.uint64)
    for bit, sig in enumerate(classes):
        f = reps[sig]
        col = np.array([holds_along(c, f) for c in cofs], dtype=bool)
        masks[col] |= np.uint64(1 << bit)
    return masks, classes
