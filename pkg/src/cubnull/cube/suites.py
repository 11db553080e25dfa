"""Oracle suites: each returns a list of check records."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from itertools import product
from typing import Any, Callable

from .. import interval as iv
from .box import BoxCat, identity, monotone_functions
from .presheaf import (
    FinPresheaf, coproduct_psh, delta_const, eval_at0, interval, iv_join, iv_meet,
    is_cubical_prop, is_discrete, is_well_supported, nabla, nat_transformations,
    path_map_bijective, paths_at_level0, product_psh, representable,
)
from .sieve import cof_sieve, is_sieve, maximal_sieve, sieve_masks
from .wprime import (
    Algebra, Polynomial, brute_force_morphisms, build_wprime, check_algebra,
    check_case_split, check_no_reducible_head, fold,
)


@dataclass
class Record:
    name: str
    size: Any
    ok: bool
    witness: Any = None

    def as_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = None if self.witness is None else repr(self.witness)
        return d


# ---------------------------------------------------------------------------
# cube category and interval


def box_suite(dim: int = 3) -> list[Record]:
    box = BoxCat(dim)
    out = []
    expected_dedekind = {0: 2, 1: 3, 2: 6, 3: 20}
    for n in box.objects():
        size = len(box.hom(n, 1))
        out.append(Record(f"|Box({n},1)|", size, size == expected_dedekind[n]))
    for n in box.objects():
        for m in box.objects():
            size = len(box.hom(n, m))
            out.append(Record(f"|Box({n},{m})| = M({n})^{m}", size,
                              size == len(monotone_functions(n)) ** m))
    laws = box.check_laws()
    out.append(Record("composition laws", laws.get("quadruples_checked"), laws["ok"],
                      laws.get("witness")))
    return out


def interval_suite(dim: int = 3) -> list[Record]:
    box = BoxCat(dim)
    I = interval(box)
    out = [Record(f"|I({n})|", len(I(n)), len(I(n)) == len(box.hom(n, 1))) for n in box.objects()]
    small = [n for n in box.objects() if n <= 2]
    bad = None
    for n in box.objects():
        for a, b, c in product(I(n), repeat=3):
            if iv_meet(a, iv_join(b, c)) != iv_join(iv_meet(a, b), iv_meet(a, c)):
                bad = (n, a, b, c)
            if iv_join(a, iv_meet(b, c)) != iv_meet(iv_join(a, b), iv_join(a, c)):
                bad = (n, a, b, c)
    out.append(Record("pointwise distributivity", dim, bad is None, bad))
    natural = None
    for n in small:
        for m in small:
            for f in box.hom(n, m):
                for a, b in product(I(m), repeat=2):
                    if I.act(f, iv_meet(a, b)) != iv_meet(I.act(f, a), I.act(f, b)):
                        natural = (f, a, b)
    out.append(Record("meet natural", dim, natural is None, natural))
    fun = I.check_functorial()
    out.append(Record("interval functorial", dim, fun["ok"], fun.get("witness")))
    return out


def _dnf_term(table, n):
    """Join of the meets of minimal true points."""
    trues = [p for p in range(1 << n) if table[p]]
    minimal = [p for p in trues if not any(q != p and q & p == q for q in trues)]
    out = None
    for p in minimal:
        m = None
        for v in range(n):
            if p >> v & 1:
                m = iv.IVar(v) if m is None else iv.IMeet(m, iv.IVar(v))
        m = iv.IOne() if m is None else m
        out = m if out is None else iv.IJoin(out, m)
    return iv.IZero() if out is None else out


def _cnf_term(table, n):
    """Meet over maximal false points of the join of the variables they miss."""
    falses = [p for p in range(1 << n) if not table[p]]
    maximal = [p for p in falses if not any(q != p and q & p == p for q in falses)]
    out = None
    for p in maximal:
        j = None
        for v in range(n):
            if not p >> v & 1:
                j = iv.IVar(v) if j is None else iv.IJoin(j, iv.IVar(v))
        j = iv.IZero() if j is None else j
        out = j if out is None else iv.IMeet(out, j)
    return iv.IOne() if out is None else out


def iv_eq_suite(max_vars: int = 4) -> list[Record]:
    out = []
    for n in range(max_vars + 1):
        fs = monotone_functions(n)
        dnf = [_dnf_term(t, n) for t in fs]
        cnf = [_cnf_term(t, n) for t in fs]
        bad = None
        for a, ta in enumerate(fs):
            e = iv.iv_normalize(dnf[a], n)
            if tuple(e.evaluate({v: p >> v & 1 for v in range(n)}) for p in range(1 << n)) != ta:
                bad = ("normal form table", ta)
            for b, tb in enumerate(fs):
                if iv.iv_eq(dnf[a], cnf[b], n) != (ta == tb):
                    bad = (ta, tb)
                    break
            if bad:
                break
        out.append(Record(f"ivEq vs truth tables, {n} vars", len(fs) ** 2, bad is None, bad))
    return out


# ---------------------------------------------------------------------------
# cofibration completeness


def cof_completeness_suite(dim: int = 3, max_vars: int = 3, chunk: int = 1024) -> list[Record]:
    import numpy as np

    box = BoxCat(dim)
    out = []
    # the headline strict inclusion
    two_ends = iv.COr(iv.CEq(iv.IVar(0), 0), iv.CEq(iv.IVar(0), 1))
    s, top = cof_sieve(box, two_ends, 1), maximal_sieve(box, 1)
    out.append(Record("sieve((i=0)\\/(i=1)) strictly below maximal", (len(s.maps), len(top.maps)),
                      s < top and is_sieve(box, s) and not iv.cof_entails(iv.CTop(), two_ends, 1)))
    for n in range(max_vars + 1):
        if n > dim:
            break
        start = time.perf_counter()
        cofs = iv.all_cofs(n)
        need, sat = iv.entailment_masks(cofs, n)
        dims = list(range(1, dim + 1))
        oracle_masks = {k: sieve_masks(box, cofs, n, dim=k)[0] for k in dims}
        bad: dict[int, Any] = {k: None for k in dims}
        for lo in range(0, len(cofs), chunk):
            solver = (need[lo:lo + chunk, None] & ~sat[None, :]) == 0
            for k in dims:
                if bad[k] is not None:
                    continue
                m = oracle_masks[k]
                oracle = (m[lo:lo + chunk, None] & ~m[None, :]) == 0
                diff = np.argwhere(solver != oracle)
                if len(diff):
                    a, b = diff[0]
                    bad[k] = (str(cofs[lo + a]), str(cofs[b]))
        for k in dims:
            out.append(Record(f"cofEntails = sieve inclusion, {n} vars, maps from dim <= {k}",
                              len(cofs) ** 2, bad[k] is None, bad[k]))
        out[-1].size = (len(cofs) ** 2, round(time.perf_counter() - start, 2))
    return out


# ---------------------------------------------------------------------------
# discreteness and the constant / codiscrete adjunctions


def _test_presheaves(box: BoxCat) -> list[FinPresheaf]:
    return [
        delta_const(box, ["a"]),
        delta_const(box, ["a", "b"]),
        interval(box),
        representable(box, 0),
        coproduct_psh(delta_const(box, ["a"]), interval(box)),
        nabla(box, ["a", "b"]),
    ]


def discrete_suite(dim: int = 2, max_set: int = 3) -> list[Record]:
    box = BoxCat(dim)
    out = []
    for size in range(max_set + 1):
        s = list(range(size))
        D = delta_const(box, s)
        out.append(Record(f"Delta({size}) discrete", size, is_discrete(D)))
        out.append(Record(f"evalAt0(Delta({size})) = S", size, eval_at0(D) == s))
        N = nabla(box, s)
        out.append(Record(f"|Nabla({size})(1)| = {size}^2", len(N(1)), len(N(1)) == size ** 2))
        fun = N.check_functorial()
        out.append(Record(f"Nabla({size}) functorial", size, fun["ok"], fun.get("witness")))
    nat = delta_const(box, list(range(8)))
    out.append(Record("finite segment of N discrete", 8, is_discrete(nat)))
    I = interval(box)
    out.append(Record("I not discrete", (len(I(0)), len(I(1))), not is_discrete(I)
                      and not path_map_bijective(I, 0)))
    paths = paths_at_level0(I)
    out.append(Record("I^I(0) counted as maps I -> I", paths, paths == 3 and paths == len(I(1))))
    for P in _test_presheaves(box):
        paths = paths_at_level0(P)
        out.append(Record(f"P^I(0) = P(1) for {P.name}", paths, paths == len(P(1))))
    # products preserved by Delta
    a, b = delta_const(box, [0, 1]), delta_const(box, ["x", "y", "z"])
    prod = product_psh(a, b)
    out.append(Record("Delta preserves binary products", prod.sizes(),
                      all(set(prod(n)) == set(product(a(n), b(n))) for n in box.objects())
                      and is_discrete(prod)))
    # adjunctions, by counting and by the explicit transpose
    for size in range(1, max_set + 1):
        s = list(range(size))
        for P in _test_presheaves(box):
            left = nat_transformations(delta_const(box, s), P)
            expect = len(P(0)) ** size
            transposes = {a.components[0] for a in left}
            out.append(Record(f"Hom(Delta {size}, {P.name}) = Hom({size}, P0)", (len(left), expect),
                              len(left) == expect and len(transposes) == expect))
            right = nat_transformations(P, nabla(box, s))
            expect = size ** len(P(0))
            transposes = {tuple(v[0] for v in a.components[0]) for a in right}
            out.append(Record(f"Hom({P.name}, Nabla {size}) = Hom(P0, {size})", (len(right), expect),
                              len(right) == expect and len(transposes) == expect))
    return out


# ---------------------------------------------------------------------------
# null structures on finite data


def _exponential(box: BoxCat, b: FinPresheaf, x: FinPresheaf, n: int):
    """(B -> X)(n) as the maps y(n) × B -> X."""
    return nat_transformations(product_psh(representable(box, n), b), x)


def check_coproduct_null(box: BoxCat, b: FinPresheaf, x: FinPresheaf, y: FinPresheaf) -> Record:
    """Phi : (B->X) + (B->Y) -> (B -> X+Y) is a bijection at each level."""
    xy = coproduct_psh(x, y)
    sizes = []
    for n in box.objects():
        dom = product_psh(representable(box, n), b)
        fx, fy, fxy = _exponential(box, b, x, n), _exponential(box, b, y, n), _exponential(box, b, xy, n)
        image = set()
        for tag, maps in ((0, fx), (1, fy)):
            for a in maps:
                image.add(tuple(tuple((tag, v) for v in comp) for comp in a.components))
        targets = {a.components for a in fxy}
        sizes.append((len(fx) + len(fy), len(fxy)))
        if len(image) != len(fx) + len(fy) or image != targets:
            return Record(f"coproduct null {b.name}; {x.name} + {y.name}", sizes, False, n)
        del dom
    return Record(f"coproduct null {b.name}; {x.name} + {y.name}", sizes, True)


def check_discrete_null(box: BoxCat, b: FinPresheaf, x: FinPresheaf) -> bool:
    """x ↦ λb.x : X(n) -> (B -> X)(n) is a bijection at each level."""
    for n in box.objects():
        maps = _exponential(box, b, x, n)
        dom = product_psh(representable(box, n), b)
        consts = set()
        for v in x(n):
            comps = tuple(tuple(x.act(pair[0], v) for pair in dom(k)) for k in box.objects())
            consts.add(comps)
        if len(consts) != len(x(n)) or consts != {a.components for a in maps}:
            return False
    return True


def null_suite(dim: int = 1) -> list[Record]:
    box = BoxCat(dim)
    I = interval(box)
    one, two = delta_const(box, ["*"]), delta_const(box, ["a", "b"])
    empty = delta_const(box, [])
    codisc = nabla(box, ["a", "b"])
    out = [
        Record("Nabla(2) well-supported cubical proposition", dim,
               is_well_supported(codisc) and is_cubical_prop(codisc)),
        Record("I is not a cubical proposition (no reversal)", dim, not is_cubical_prop(I)),
        Record("Delta(2) not a cubical proposition", dim, not is_cubical_prop(two)),
    ]
    for B in (one, codisc):
        for X, Y in ((two, one), (empty, two), (two, empty), (I, two)):
            out.append(check_coproduct_null(box, B, X, Y))
    for X in (empty, one, two, delta_const(box, [0, 1, 2])):
        out.append(Record(f"discrete {X.name} is Nabla(2)-null", dim,
                          check_discrete_null(box, codisc, X)))
    out.append(Record("Delta(2) not null for the empty family", dim,
                      not check_discrete_null(box, empty, two)))
    return out


# ---------------------------------------------------------------------------
# W-types with reductions


def leaf_polynomial(box: BoxCat) -> Polynomial:
    """Constructors = interval elements, no arguments, no reductions."""
    return Polynomial("leaves", interval(box), lambda n, y: [], lambda g, y, x: x,
                      lambda n, y: False, lambda n, y: None)


def nat_polynomial(box: BoxCat) -> Polynomial:
    """zero and successor; nothing reduces."""
    return Polynomial("nat", delta_const(box, ["z", "s"]),
                      lambda n, y: ["*"] if y == "s" else [], lambda g, y, x: x,
                      lambda n, y: False, lambda n, y: None)


def cone_polynomial(box: BoxCat) -> Polynomial:
    """An apex and ``cin(i, t)`` which reduces to t when i = 0."""
    Y = coproduct_psh(delta_const(box, ["apex"]), interval(box))

    def reducible(n, y):
        return y[0] == 1 and not any(y[1])

    return Polynomial("cone", Y, lambda n, y: ["*"] if y[0] == 1 else [], lambda g, y, x: x,
                      reducible, lambda n, y: "*")


def segment_polynomial(box: BoxCat) -> Polynomial:
    """Points p, q and ``seg(i, a, b)`` reducing to a at i = 0 and b at i = 1."""
    Y = coproduct_psh(delta_const(box, ["p", "q"]), interval(box))

    def reducible(n, y):
        return y[0] == 1 and len(set(y[1])) == 1

    return Polynomial("segment", Y, lambda n, y: [0, 1] if y[0] == 1 else [], lambda g, y, x: x,
                      reducible, lambda n, y: y[1][0])


def nat_algebra(box: BoxCat) -> Algebra:
    carrier = delta_const(box, [0, 1, 2, 3])
    return Algebra(carrier, lambda d, y, fam: 0 if y == "z" else min(fam(identity(d), "*") + 1, 3))


def cone_algebra(box: BoxCat) -> Algebra:
    I = interval(box)

    def structure(d, y, fam):
        if y[0] == 0:
            return (0,) * (1 << d)
        return iv_join(fam(identity(d), "*"), y[1])

    return Algebra(I, structure)


def bad_cone_algebra(box: BoxCat) -> Algebra:
    """Counts path constructors: not natural, so not an algebra."""
    carrier = delta_const(box, [0, 1, 2, 3])

    def structure(d, y, fam):
        return 0 if y[0] == 0 else min(fam(identity(d), "*") + 1, 3)

    return Algebra(carrier, structure)


def wprime_suite(dim: int = 1, depth: int = 3) -> list[Record]:
    box = BoxCat(dim)
    out = []
    leaves = build_wprime(leaf_polynomial(box), depth)
    I = interval(box)
    out.append(Record("leaf-only W' is Y levelwise", [len(leaves.levels[n]) for n in box.objects()],
                      all(sorted(t.head for t in leaves.levels[n]) == sorted(I(n))
                          for n in box.objects())))
    cases = [
        (nat_polynomial(box), [nat_algebra(box)]),
        (cone_polynomial(box), [cone_algebra(box)]),
        (segment_polynomial(box), []),
    ]
    for poly, algebras in cases:
        w = build_wprime(poly, depth)
        sizes = [len(w.levels[n]) for n in box.objects()]
        cs = check_case_split(w)
        out.append(Record(f"{poly.name}: restriction case split", sizes, cs["ok"], cs.get("witness")))
        nr = check_no_reducible_head(w)
        out.append(Record(f"{poly.name}: no reducible head", sizes, nr["ok"], nr.get("witness")))
        out.append(Record(f"{poly.name}: truncation reported", depth, w.truncated))
        for alg in algebras:
            valid = check_algebra(w, alg)
            out.append(Record(f"{poly.name}: algebra valid", None, valid["ok"], valid.get("witness")))
            f = fold(w, alg)
            brute = brute_force_morphisms(w, alg)
            ok = len(brute) == 1 and all(brute[0][t] == f[t] for t in brute[0])
            out.append(Record(f"{poly.name}: fold unique (brute force)", (len(f), len(brute)), ok))
    bad = check_algebra(build_wprime(cone_polynomial(box), 2), bad_cone_algebra(box))
    out.append(Record("cone: non-natural structure rejected", None, not bad["ok"]))
    return out


SUITES: dict[str, Callable[..., list[Record]]] = {
    "box": lambda dim=3, depth=3: box_suite(dim),
    "interval": lambda dim=3, depth=3: interval_suite(dim),
    "iv-eq": lambda dim=3, depth=3: iv_eq_suite(4),
    "cof-completeness": lambda dim=3, depth=3: cof_completeness_suite(dim),
    "discrete": lambda dim=2, depth=3: discrete_suite(min(dim, 2)),
    "null": lambda dim=1, depth=3: null_suite(min(dim, 1)),
    "wprime": lambda dim=1, depth=3: wprime_suite(min(dim, 1), depth),
}

DEFAULT_DIM = {"box": 3, "interval": 3, "iv-eq": 4, "cof-completeness": 3, "discrete": 2,
               "null": 1, "wprime": 1}


def run_suite(name: str, dim: int | None = None, depth: int = 3) -> list[Record]:
    if name == "all":
        return [r for n in SUITES for r in run_suite(n, None, depth)]
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](DEFAULT_DIM[name] if dim is None else dim, depth)
