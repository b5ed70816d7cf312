"""Finite Brouwer algebras as explicit operation tables.

A Brouwer algebra here is a bounded distributive lattice whose co-implication
a -> b = least {c : a v c >= b} is total; the least element 0 plays the role
of "valid".  Everything is table-driven: leq is a boolean matrix, meet/join/
arrow are int32 tables, and every law can be (and is) checked exhaustively.

The flagship constructor is from_upsets: the up-sets of a finite poset under
reverse inclusion, with union as meet, intersection as join, 0 the full
carrier and 1 the empty set.  Algebras remember their provenance and, when
built from up-sets, the element masks, so elements can be reported as the
up-sets they are.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from ._backend import get_kernels
from .checks import CheckReport, LawCheck
from .errors import BottomTop, InputError, PreconditionFailed
from .order import Poset, Preorder
from .upsets import UPSET_CAP, enumerate_upset_masks


@dataclass(frozen=True)
class BrouwerAlgebra:
    size: int
    leq: np.ndarray                       # bool matrix
    meet: np.ndarray                      # int32 tables
    join: np.ndarray
    arrow: np.ndarray | None
    bottom: int
    top: int
    provenance: str = "raw"
    labels: tuple[str, ...] | None = None
    element_masks: np.ndarray | None = field(default=None, compare=False, repr=False)
    host: Preorder | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for arr in (self.leq, self.meet, self.join, self.arrow):
            if arr is not None:
                arr.setflags(write=False)

    def __eq__(self, other):
        if not isinstance(other, BrouwerAlgebra):
            return NotImplemented
        if (self.size, self.bottom, self.top, self.provenance) != \
           (other.size, other.bottom, other.top, other.provenance):
            return False
        if (self.arrow is None) != (other.arrow is None):
            return False
        return (np.array_equal(self.leq, other.leq)
                and np.array_equal(self.meet, other.meet)
                and np.array_equal(self.join, other.join)
                and (self.arrow is None or np.array_equal(self.arrow, other.arrow)))

    def __hash__(self):
        return hash((self.size, self.bottom, self.top, self.leq.tobytes()))

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    def le(self, a: int, b: int) -> bool:
        return bool(self.leq[a, b])

    def lt(self, a: int, b: int) -> bool:
        return a != b and bool(self.leq[a, b])

    def neg(self, a: int) -> int:
        """Co-negation a -> 1."""
        if self.arrow is None:
            raise InputError("algebra has no arrow table")
        return int(self.arrow[a, self.top])

    def elements_leq(self, a: int) -> list[int]:
        return [int(x) for x in np.nonzero(self.leq[:, a])[0]]

    def as_poset(self) -> Poset:
        return Poset(self.size, self.leq.copy(), self.labels)


def _upset_label(mask: int, host: Preorder) -> str:
    if mask == 0:
        return "empty"
    mins = []
    for i in range(host.size):
        if mask >> i & 1:
            below = any(host.leq[j, i] and j != i and mask >> j & 1
                        for j in range(host.size))
            if not below:
                mins.append(host.label(i))
    return "up(" + ",".join(mins) + ")"


def from_upsets(p: Preorder, cap: int = UPSET_CAP, with_labels: bool = True) -> BrouwerAlgebra:
    """The Brouwer algebra of up-sets of a poset/preorder.

    Carrier: all up-set masks in ascending mask order (index 0 is the empty
    up-set = top, the last index is the full carrier = bottom).  Meet is
    union, join intersection, arrow the closed-form co-implication.
    """
    masks = enumerate_upset_masks(p, cap)
    m = masks.shape[0]
    kern = get_kernels()
    leq = np.empty((m, m), dtype=bool)
    meet = np.empty((m, m), dtype=np.int32)
    join = np.empty((m, m), dtype=np.int32)
    arrow = np.empty((m, m), dtype=np.int32)
    chunk = max(1, (1 << 21) // max(m, 1))
    for lo in range(0, m, chunk):
        hi = min(m, lo + chunk)
        rows = masks[lo:hi, None]
        leq[lo:hi] = (rows & masks[None, :]) == masks[None, :]  # i <= j iff X_i >= X_j
        meet[lo:hi] = np.searchsorted(masks, rows | masks[None, :]).astype(np.int32)
        join[lo:hi] = np.searchsorted(masks, rows & masks[None, :]).astype(np.int32)
        amask = kern.upset_arrow_masks(masks[lo:hi], masks, p.up_masks, p.size)
        arrow[lo:hi] = np.searchsorted(masks, amask).astype(np.int32)
    labels = tuple(_upset_label(int(x), p) for x in masks) if with_labels else None
    return BrouwerAlgebra(
        size=m, leq=leq, meet=meet, join=join, arrow=arrow,
        bottom=m - 1, top=0, provenance="from_upsets",
        labels=labels, element_masks=masks, host=p,
    )


def raw_lattice(leq, meet, join, arrow=None, provenance="raw",
                labels: Sequence[str] | None = None) -> BrouwerAlgebra:
    """Wrap explicit tables; bounds are derived, laws are NOT checked here."""
    leq = np.asarray(leq).astype(bool)
    meet = np.asarray(meet, dtype=np.int32)
    join = np.asarray(join, dtype=np.int32)
    arrow = None if arrow is None else np.asarray(arrow, dtype=np.int32)
    m = leq.shape[0]
    bottoms = [i for i in range(m) if leq[i].all()]
    tops = [i for i in range(m) if leq[:, i].all()]
    if not bottoms or not tops:
        raise InputError("tables have no bottom or no top element")
    return BrouwerAlgebra(m, leq, meet, join, arrow, bottoms[0], tops[0],
                          provenance, tuple(labels) if labels else None)


def validate_brouwer(b: BrouwerAlgebra) -> CheckReport:
    """Exhaustively check the bounded-distributive-lattice and residuation laws.

    Reports at most one counterexample per law, in fixed scan order, so the
    output is deterministic and small.  An algebra without an arrow table is
    checked as a bounded distributive lattice only.
    """
    kern = get_kernels()
    checks: list[LawCheck] = []
    m = b.size
    leq = b.leq
    leqm = leq.astype(np.uint8)

    refl = all(leq[i, i] for i in range(m))
    checks.append(LawCheck("order_reflexive", refl))
    sym = leq & leq.T & ~np.eye(m, dtype=bool)
    wit = tuple(int(v) for v in np.argwhere(sym)[0]) if sym.any() else None
    checks.append(LawCheck("order_antisymmetric", wit is None, wit))
    comp = (leq @ leq).astype(bool) & ~leq
    wit = tuple(int(v) for v in np.argwhere(comp)[0]) if comp.any() else None
    checks.append(LawCheck("order_transitive", wit is None, wit))

    checks.append(LawCheck("nontrivial", b.bottom != b.top,
                           None if b.bottom != b.top else (b.bottom,)))
    bad_bot = np.nonzero(~leq[b.bottom])[0]
    checks.append(LawCheck("bottom_least", bad_bot.size == 0,
                           (int(bad_bot[0]),) if bad_bot.size else None))
    bad_top = np.nonzero(~leq[:, b.top])[0]
    checks.append(LawCheck("top_greatest", bad_top.size == 0,
                           (int(bad_top[0]),) if bad_top.size else None))

    res = kern.check_glb(leqm, b.meet)
    checks.append(LawCheck("meet_is_glb", res[0] < 0, _wit3(res)))
    res = kern.check_lub(leqm, b.join)
    checks.append(LawCheck("join_is_lub", res[0] < 0, _wit3(res)))
    res = kern.check_distributivity(b.meet, b.join)
    checks.append(LawCheck("distributive", res[0] < 0, _wit3(res)))

    if b.arrow is not None:
        res = kern.check_residuation(leqm, b.join, b.arrow)
        checks.append(LawCheck("residuation", res[0] < 0, _wit3(res),
                               "a v c >= b  iff  a->b <= c"))
        below = leq[b.arrow, np.arange(m)[None, :]]
        wit = None
        if not below.all():
            a, bb = np.argwhere(~below)[0]
            wit = (int(a), int(bb))
        checks.append(LawCheck("arrow_below_target", wit is None, wit,
                               "a->b <= b"))
        res = kern.check_meet_arrow_law(b.meet, b.join, b.arrow)
        checks.append(LawCheck("meet_arrow_law", res[0] < 0, _wit3(res),
                               "(a^b)->c == (a->c) v (b->c)"))
    return CheckReport(tuple(checks))


def _wit3(res) -> tuple | None:
    if res[0] < 0:
        return None
    return tuple(int(x) for x in res if x >= 0)


def meet_irreducibles(b: BrouwerAlgebra) -> list[int]:
    """Elements (top excluded) that are not the meet of two strictly greater ones."""
    flags = get_kernels().meet_irreducible_flags(b.leq.astype(np.uint8), b.meet)
    return [x for x in range(b.size) if flags[x] and x != b.top]


def join_irreducibles(b: BrouwerAlgebra) -> list[int]:
    """Elements (bottom excluded) that are not the join of two strictly smaller ones."""
    flags = get_kernels().join_irreducible_flags(b.leq.astype(np.uint8), b.join)
    return [x for x in range(b.size) if flags[x] and x != b.bottom]


def embeddable_shape(b: BrouwerAlgebra) -> bool:
    """True iff 0 is meet-irreducible and 1 is join-irreducible (raw predicates)."""
    kern = get_kernels()
    mflags = kern.meet_irreducible_flags(b.leq.astype(np.uint8), b.meet)
    jflags = kern.join_irreducible_flags(b.leq.astype(np.uint8), b.join)
    return bool(mflags[b.bottom]) and bool(jflags[b.top])


def subinterval(b: BrouwerAlgebra, lo: int, hi: int) -> tuple[BrouwerAlgebra, list[int]]:
    """The interval [lo, hi] as a Brouwer algebra plus its old-element indices.

    Meet and join restrict; the interval arrow is lo v arrow(x, y), which is
    the least residual within the interval.
    """
    if not b.leq[lo, hi]:
        raise PreconditionFailed(f"not an interval: {lo} is not below {hi}")
    elems = [x for x in range(b.size) if b.leq[lo, x] and b.leq[x, hi]]
    pos = {x: i for i, x in enumerate(elems)}
    k = len(elems)
    leq = np.zeros((k, k), dtype=bool)
    meet = np.zeros((k, k), dtype=np.int32)
    join = np.zeros((k, k), dtype=np.int32)
    arrow = None if b.arrow is None else np.zeros((k, k), dtype=np.int32)
    for i, x in enumerate(elems):
        for j, y in enumerate(elems):
            leq[i, j] = b.leq[x, y]
            meet[i, j] = pos[int(b.meet[x, y])]
            join[i, j] = pos[int(b.join[x, y])]
            if arrow is not None:
                val = int(b.join[lo, b.arrow[x, y]])
                if val not in pos:
                    raise PreconditionFailed(
                        f"interval arrow escaped: ({x},{y}) gives {val}")
                arrow[i, j] = pos[val]
    labels = tuple(b.label(x) for x in elems) if b.labels else None
    alg = BrouwerAlgebra(k, leq, meet, join, arrow, pos[lo], pos[hi],
                         provenance="interval", labels=labels)
    return alg, elems


def interval(b: BrouwerAlgebra, a: int) -> BrouwerAlgebra:
    """The initial segment [0, a]; arrow restricts verbatim since a->b <= b."""
    if a == b.bottom:
        raise BottomTop()
    alg, _ = subinterval(b, b.bottom, a)
    return alg


def add_top(b: BrouwerAlgebra) -> BrouwerAlgebra:
    """Adjoin a new greatest element.

    Old operation tables are preserved verbatim (old indices unchanged); the
    new element 1' satisfies a->1' = 1' and 1'->b = 0 for every old a, b.
    """
    m = b.size
    leq = np.zeros((m + 1, m + 1), dtype=bool)
    leq[:m, :m] = b.leq
    leq[:, m] = True
    meet = np.zeros((m + 1, m + 1), dtype=np.int32)
    meet[:m, :m] = b.meet
    meet[m, :m] = np.arange(m)
    meet[:m, m] = np.arange(m)
    meet[m, m] = m
    join = np.full((m + 1, m + 1), m, dtype=np.int32)
    join[:m, :m] = b.join
    arrow = None
    if b.arrow is not None:
        arrow = np.zeros((m + 1, m + 1), dtype=np.int32)
        arrow[:m, :m] = b.arrow
        arrow[:m, m] = m
        arrow[m, :] = b.bottom
    labels = None
    if b.labels:
        labels = tuple(b.labels) + ("top'",)
    return BrouwerAlgebra(m + 1, leq, meet, join, arrow, b.bottom, m,
                          provenance="add_top", labels=labels)


def interval_homomorphism_check(b: BrouwerAlgebra, x: int, y: int, z: int) -> CheckReport:
    """Verify that u |-> x v u maps [0, z] homomorphically onto [x, y].

    Requires x < y and y = z v x.  Checks preservation of meet, join, arrow
    (the interval arrow of [x, y]), the bounds, and surjectivity.
    """
    if b.arrow is None:
        raise PreconditionFailed("algebra has no arrow table")
    if not (b.lt(x, y) and int(b.join[z, x]) == y):
        raise PreconditionFailed(f"need x < y and y == z v x, got x={x} y={y} z={z}")
    dom = b.elements_leq(z)
    cod = [u for u in range(b.size) if b.leq[x, u] and b.leq[u, y]]
    codset = set(cod)
    f = {u: int(b.join[x, u]) for u in dom}
    checks: list[LawCheck] = []

    bad = next((u for u in dom if f[u] not in codset), None)
    checks.append(LawCheck("maps_into_interval", bad is None,
                           (bad,) if bad is not None else None))
    image = {f[u] for u in dom}
    missing = next((v for v in cod if v not in image), None)
    checks.append(LawCheck("onto", missing is None,
                           (missing,) if missing is not None else None))
    checks.append(LawCheck("bounds", f[b.bottom] == x and f[z] == y,
                           None if f[b.bottom] == x and f[z] == y else (f[b.bottom], f[z])))

    wit_meet = wit_join = wit_arrow = None
    for u in dom:
        for v in dom:
            if wit_meet is None and f[int(b.meet[u, v])] != int(b.meet[f[u], f[v]]):
                wit_meet = (u, v)
            if wit_join is None and f[int(b.join[u, v])] != int(b.join[f[u], f[v]]):
                wit_join = (u, v)
            # arrow inside [0,z] restricts verbatim; inside [x,y] it is x v arrow
            if wit_arrow is None:
                lhs = f[int(b.arrow[u, v])]
                rhs = int(b.join[x, b.arrow[f[u], f[v]]])
                if lhs != rhs:
                    wit_arrow = (u, v)
    checks.append(LawCheck("preserves_meet", wit_meet is None, wit_meet))
    checks.append(LawCheck("preserves_join", wit_join is None, wit_join))
    checks.append(LawCheck("preserves_arrow", wit_arrow is None, wit_arrow))
    return CheckReport(tuple(checks))


def canonical_set_check(b: BrouwerAlgebra, cset: Sequence[int]) -> CheckReport:
    """The three conditions for a canonical subset.

    (1) members distribute arrows over meets: a->(b^c) == (a->b)^(a->c) for
        every a in the set and all b, c;
    (2) every member is meet-irreducible (top excluded by convention);
    (3) the set is closed under join and under arrow.
    """
    if b.arrow is None:
        raise PreconditionFailed("algebra has no arrow table")
    cs = sorted(set(int(x) for x in cset))
    if not cs:
        raise PreconditionFailed("canonical set must be nonempty")
    checks: list[LawCheck] = []

    wit1 = None
    for a in cs:
        arr = b.arrow[a]
        lhs = arr[b.meet]                       # [b, c] -> a -> (b ^ c)
        rhs = b.meet[np.ix_(arr, arr)]
        bad = lhs != rhs
        if bad.any():
            bb, cc = np.argwhere(bad)[0]
            wit1 = (a, int(bb), int(cc))
            break
    checks.append(LawCheck("arrow_distributes_over_meet", wit1 is None, wit1,
                           "a->(b^c) == (a->b)^(a->c) for a in the set"))

    irred = set(meet_irreducibles(b))
    bad2 = next((a for a in cs if a not in irred), None)
    checks.append(LawCheck("members_meet_irreducible", bad2 is None,
                           (bad2,) if bad2 is not None else None))

    wit3 = None
    csset = set(cs)
    for a in cs:
        for c in cs:
            if int(b.join[a, c]) not in csset:
                wit3 = ("join", a, c)
                break
            if int(b.arrow[a, c]) not in csset:
                wit3 = ("arrow", a, c)
                break
        if wit3:
            break
    checks.append(LawCheck("closed_under_join_and_arrow", wit3 is None, wit3))
    return CheckReport(tuple(checks))


def _meet_of(b: BrouwerAlgebra, xs: Sequence[int]) -> int:
    acc = b.top
    for x in xs:
        acc = int(b.meet[acc, x])
    return acc


def _join_of(b: BrouwerAlgebra, xs: Sequence[int]) -> int:
    acc = b.bottom
    for x in xs:
        acc = int(b.join[acc, x])
    return acc


def canonical_laws_check(b: BrouwerAlgebra, cset: Sequence[int],
                         family_cap: int = 3) -> CheckReport:
    """Laws satisfied by finite families from a canonical set.

    For nonempty families {a_i}, {b_j} drawn from the set (up to family_cap
    members per side):
      (1) meet{a_i} <= meet{b_j}  iff  every b_j has some a_i below it;
      (2) meet{a_i} -> meet{b_j} == join_i( meet_j (a_i -> b_j) ).
    Also the unconditional law (a^b)->c == (a->c) v (b->c) over the whole
    algebra.
    """
    if b.arrow is None:
        raise PreconditionFailed("algebra has no arrow table")
    cs = sorted(set(int(x) for x in cset))
    checks: list[LawCheck] = []

    res = get_kernels().check_meet_arrow_law(b.meet, b.join, b.arrow)
    checks.append(LawCheck("meet_arrow_law_global", res[0] < 0, _wit3(res)))

    fams: list[tuple[int, ...]] = []
    for r in range(1, min(family_cap, len(cs)) + 1):
        fams.extend(combinations(cs, r))

    wit1 = wit2 = None
    for fam_a in fams:
        ma = _meet_of(b, fam_a)
        for fam_b in fams:
            mb = _meet_of(b, fam_b)
            if wit1 is None:
                lhs = bool(b.leq[ma, mb])
                rhs = all(any(b.leq[a, bj] for a in fam_a) for bj in fam_b)
                if lhs != rhs:
                    wit1 = (fam_a, fam_b)
            if wit2 is None:
                lhs = int(b.arrow[ma, mb])
                rhs = _join_of(b, [_meet_of(b, [int(b.arrow[a, bj]) for bj in fam_b])
                                   for a in fam_a])
                if lhs != rhs:
                    wit2 = (fam_a, fam_b)
        if wit1 is not None and wit2 is not None:
            break
    checks.append(LawCheck("family_order_characterisation", wit1 is None, wit1,
                           "meet{a_i} <= meet{b_j} iff forall j exists i: a_i <= b_j"))
    checks.append(LawCheck("family_arrow_expansion", wit2 is None, wit2,
                           "meet{a_i} -> meet{b_j} == join_i meet_j (a_i -> b_j)"))
    return CheckReport(tuple(checks))


# --- JSON interchange --------------------------------------------------------

def algebra_to_json(b: BrouwerAlgebra) -> dict:
    doc = {
        "size": b.size,
        "leq": [int(v) for v in b.leq.astype(np.uint8).ravel()],
        "meet": [int(v) for v in b.meet.ravel()],
        "join": [int(v) for v in b.join.ravel()],
        "arrow": None if b.arrow is None else [int(v) for v in b.arrow.ravel()],
        "bottom": b.bottom,
        "top": b.top,
        "provenance": b.provenance,
    }
    if b.labels:
        doc["labels"] = list(b.labels)
    return doc


def algebra_from_json(doc: dict) -> BrouwerAlgebra:
    try:
        m = int(doc["size"])
        leq = np.array(doc["leq"], dtype=np.uint8).reshape(m, m).astype(bool)
        meet = np.array(doc["meet"], dtype=np.int32).reshape(m, m)
        join = np.array(doc["join"], dtype=np.int32).reshape(m, m)
        arrow = doc.get("arrow")
        arrow = None if arrow is None else np.array(arrow, dtype=np.int32).reshape(m, m)
        bottom = int(doc["bottom"])
        top = int(doc["top"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad algebra JSON: {exc}")
    labels = doc.get("labels")
    return BrouwerAlgebra(m, leq, meet, join, arrow, bottom, top,
                          provenance=str(doc.get("provenance", "raw")),
                          labels=tuple(labels) if labels else None)
