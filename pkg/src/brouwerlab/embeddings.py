"""Strong upward antichains and the induced interval embeddings.

Given a downward-closed set A inside an implicative upper semilattice and a
strong upward antichain x_1..x_n in A (pairwise joins escape A), the map

    alpha(X) = complement(A)  union  up-closure{x_i : i in X}

sends the reverse-inclusion powerset of {1..n} into the interval
[alpha(I), alpha(empty)] of the up-set algebra, preserving order both ways,
joins, the interval arrow, and the bounds.  All of that is verified
exhaustively here.

The free lattice over the n-cube maps onto the same interval through its
universal property (gamma, the meet-extension of alpha).  gamma is always a
bounded lattice homomorphism agreeing with alpha on generators, and the
report records exactly which embedding laws survive at finite scale: its
image is the 2^n-element alpha-image, so for n >= 2 the map cannot be
injective on the whole free lattice (which has Dedekind-number size), and
the formal top is always identified with the image of the semilattice's
greatest element.  Both facts are reported with witnesses rather than
papered over.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import BrouwerAlgebra, from_upsets, subinterval
from .checks import CheckReport, LawCheck
from .errors import PreconditionFailed, PreconditionViolated
from .freedist import FreeLattice, free_over, universal_extend
from .order import ImplicativeUsl, boolean_inclusion_usl, boolean_reverse_usl
from .upsets import DownSet, UPSET_CAP, UpSet, downward_closure


@dataclass(frozen=True)
class StrongUAntichain:
    """Elements of a down-set whose pairwise joins escape it."""

    host: ImplicativeUsl
    down: DownSet
    elements: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.elements)


def check_strong_u_antichain(u: ImplicativeUsl, down: DownSet,
                             xs) -> CheckReport:
    """Membership and pairwise join-escape, with witnesses."""
    xs = tuple(int(x) for x in xs)
    checks = []
    bad_member = next((x for x in xs if x not in down), None)
    checks.append(LawCheck("members_in_down_set", bad_member is None,
                           (bad_member,) if bad_member is not None else None))
    wit = None
    for i, j in combinations(range(len(xs)), 2):
        if int(u.join[xs[i], xs[j]]) in down:
            wit = (xs[i], xs[j], int(u.join[xs[i], xs[j]]))
            break
    checks.append(LawCheck("pairwise_joins_escape", wit is None, wit,
                           "x_i + x_j must leave the down-set for i != j"))
    return CheckReport(tuple(checks))


def strong_u_antichain(u: ImplicativeUsl, down: DownSet, xs) -> StrongUAntichain:
    rep = check_strong_u_antichain(u, down, xs)
    if not rep.ok:
        raise PreconditionViolated(f"not a strong upward antichain: "
                                   f"{[c.as_dict() for c in rep.failed()]}")
    return StrongUAntichain(u, down, tuple(int(x) for x in xs))


@dataclass(frozen=True)
class AlphaMap:
    """The subset-to-up-set assignment induced by a strong upward antichain."""

    antichain: StrongUAntichain

    @property
    def host(self) -> ImplicativeUsl:
        return self.antichain.host

    @property
    def n(self) -> int:
        return self.antichain.n

    def mask(self, subset: int) -> int:
        """alpha of a position mask over the antichain: A^c plus the up-closures."""
        u = self.host
        out = self.antichain.down.complement_mask()
        for i in range(self.n):
            if subset >> i & 1:
                out |= int(u.poset.up_masks[self.antichain.elements[i]])
        return out

    def upset(self, subset: int) -> UpSet:
        return UpSet(self.host.poset, self.mask(subset))


def alpha(am: AlphaMap, subset) -> UpSet:
    """alpha(X) as an UpSet; X is an iterable of positions or a bitmask."""
    if not isinstance(subset, int):
        mask = 0
        for i in subset:
            if not 0 <= int(i) < am.n:
                raise PreconditionFailed(f"position {i} outside 0..{am.n - 1}")
            mask |= 1 << int(i)
        subset = mask
    if subset >> am.n:
        raise PreconditionFailed(f"subset mask {subset:#x} outside the index set")
    return am.upset(subset)


def _interval_context(am: AlphaMap, cap: int = UPSET_CAP):
    """(big algebra, interval algebra, old-element list, mask->interval index)."""
    big = from_upsets(am.host.poset, cap)
    masks = big.element_masks
    assert masks is not None
    lo = int(np.searchsorted(masks, np.uint64(am.mask((1 << am.n) - 1))))
    hi = int(np.searchsorted(masks, np.uint64(am.mask(0))))
    ialg, elems = subinterval(big, lo, hi)
    pos = {int(masks[e]): i for i, e in enumerate(elems)}
    return big, ialg, elems, pos


def verify_alpha_embedding(am: AlphaMap, cap: int = UPSET_CAP) -> CheckReport:
    """Exhaustive laws for alpha into the interval [alpha(I), alpha(empty)].

    Checks: every alpha(X) is an up-set; the empty set goes to A^c and the
    full index set to A^c plus all up-closures; order embedding in both
    directions; join preservation (intersection on both sides); arrow
    preservation for the interval arrow; bound preservation.
    """
    n = am.n
    total = 1 << n
    _, ialg, _, pos = _interval_context(am, cap)
    amasks = [am.mask(X) for X in range(total)]
    checks = []

    bad = None
    for X in range(total):
        try:
            am.upset(X)
        except ValueError:
            bad = (X,)
            break
    checks.append(LawCheck("alpha_upward_closed", bad is None, bad))

    acomp = am.antichain.down.complement_mask()
    checks.append(LawCheck("alpha_empty_is_complement", amasks[0] == acomp,
                           None if amasks[0] == acomp else (amasks[0], acomp)))
    fullm = acomp
    for x in am.antichain.elements:
        fullm |= int(am.host.poset.up_masks[x])
    checks.append(LawCheck("alpha_full_is_union", amasks[total - 1] == fullm,
                           None if amasks[total - 1] == fullm else (amasks[total - 1], fullm)))

    wit_inj = next((pair for pair in combinations(range(total), 2)
                    if amasks[pair[0]] == amasks[pair[1]]), None)
    checks.append(LawCheck("alpha_injective", wit_inj is None, wit_inj))

    wit_ord = None
    for X in range(total):
        for Y in range(total):
            lhs = X & Y == Y                      # X superset of Y: X <= Y reversed
            rhs = amasks[X] & amasks[Y] == amasks[Y]
            if lhs != rhs:
                wit_ord = (X, Y)
                break
        if wit_ord:
            break
    checks.append(LawCheck("alpha_order_embedding", wit_ord is None, wit_ord,
                           "X >= Y in reverse inclusion iff alpha(X) >= alpha(Y)"))

    wit_join = next(((X, Y) for X in range(total) for Y in range(total)
                     if amasks[X & Y] != amasks[X] & amasks[Y]), None)
    checks.append(LawCheck("alpha_preserves_join", wit_join is None, wit_join,
                           "alpha(X n Y) == alpha(X) n alpha(Y)"))

    wit_arrow = None
    full_idx = total - 1
    for X in range(total):
        for Y in range(total):
            res = Y | (full_idx & ~X)             # arrow in the reverse powerset
            lhs = pos[amasks[res]]
            rhs = int(ialg.arrow[pos[amasks[X]], pos[amasks[Y]]])
            if lhs != rhs:
                wit_arrow = (X, Y)
                break
        if wit_arrow:
            break
    checks.append(LawCheck("alpha_preserves_arrow", wit_arrow is None, wit_arrow,
                           "alpha(X -> Y) equals the interval arrow of the images"))

    bounds_ok = (pos[amasks[full_idx]] == ialg.bottom and pos[amasks[0]] == ialg.top)
    checks.append(LawCheck("alpha_preserves_bounds", bounds_ok,
                           None if bounds_ok else (pos[amasks[full_idx]], pos[amasks[0]])))
    return CheckReport(tuple(checks))


def gamma_embedding(am: AlphaMap, cap: int = UPSET_CAP) -> tuple[FreeLattice, np.ndarray, BrouwerAlgebra, CheckReport]:
    """Extend alpha to the free lattice over the n-cube and verify its laws.

    Returns (free lattice, element map gamma, interval algebra, report).
    gamma is the universal meet-extension of alpha; the report covers the
    homomorphism laws on all pairs, agreement with alpha on generators,
    bound preservation, and the embedding laws (injectivity, two-sided order
    embedding, arrow preservation) on the sublattice generated by the
    generators, i.e. everything except the formal top.  The final checks
    record the structural facts that the formal top collapses onto the image
    of the semilattice's greatest element and that the image of gamma is
    exactly the alpha-image.
    """
    n = am.n
    free = free_over(boolean_reverse_usl(n, cap=max(n, 6)), cap=cap)
    _, ialg, _, pos = _interval_context(am, cap)
    # generator map: element x of the reverse powerset is the position mask x
    g = [pos[am.mask(x)] for x in range(1 << n)]
    gamma, ext_report = universal_extend(free, g, ialg)
    alg = free.algebra
    checks = list(ext_report.checks)

    wit = None
    for x in range(1 << n):
        if int(gamma[free.iota[x]]) != g[x]:
            wit = (x,)
            break
    checks.append(LawCheck("gamma_matches_alpha_on_generators", wit is None, wit))

    wit = None
    for x in range(1 << n):
        for y in range(1 << n):
            lhs = int(gamma[alg.arrow[free.iota[x], free.iota[y]]])
            rhs = int(ialg.arrow[gamma[free.iota[x]], gamma[free.iota[y]]])
            if lhs != rhs:
                wit = (x, y)
                break
        if wit:
            break
    checks.append(LawCheck("gamma_preserves_arrow_on_generators", wit is None, wit))

    free_part = [e for e in range(alg.size) if e != alg.top]
    seen: dict[int, int] = {}
    wit = None
    for e in free_part:
        v = int(gamma[e])
        if v in seen:
            wit = (seen[v], e)
            break
        seen[v] = e
    checks.append(LawCheck("gamma_injective_on_free_part", wit is None, wit,
                           "injectivity over all elements except the formal top"))

    wit = None
    for a in free_part:
        for b in free_part:
            if bool(alg.leq[a, b]) != bool(ialg.leq[gamma[a], gamma[b]]):
                wit = (a, b)
                break
        if wit:
            break
    checks.append(LawCheck("gamma_order_embedding_on_free_part", wit is None, wit))

    wit = None
    for a in free_part:
        for b in free_part:
            if int(gamma[alg.arrow[a, b]]) != int(ialg.arrow[gamma[a], gamma[b]]):
                wit = (a, b)
                break
        if wit:
            break
    checks.append(LawCheck("gamma_preserves_arrow_on_free_part", wit is None, wit))

    top_usl_gen = free.iota[0]                      # element 0 is the empty subset,
    collapsed = int(gamma[alg.top]) == int(gamma[top_usl_gen])   # the usl's greatest
    checks.append(LawCheck("formal_top_collapses_onto_usl_top_image", collapsed,
                           None if collapsed else (int(gamma[alg.top]), int(gamma[top_usl_gen])),
                           "the adjoined formal top and iota(greatest) share one image"))

    image = sorted(set(int(v) for v in gamma))
    expected = sorted(set(g))
    checks.append(LawCheck("gamma_image_is_alpha_image", image == expected,
                           None if image == expected else (len(image), len(expected))))
    return free, gamma, ialg, CheckReport(tuple(checks))


def canned_instance(name: str) -> AlphaMap:
    """Ready-made strong-antichain instances over inclusion powersets.

    unit:  one-element antichain {empty} inside A = {empty} of the powerset
           of {1}; the induced interval is the whole two-element algebra.
    pair:  the atoms {1},{2} inside A = {empty,{1},{2}} of the powerset of
           {1,2}; their union escapes A.
    triple: the three atoms inside A = {empty, atoms} of the powerset of
           {1,2,3}.
    """
    if name == "unit":
        u = boolean_inclusion_usl(1)
        down = downward_closure(u.poset, [0])
        return AlphaMap(strong_u_antichain(u, down, (0,)))
    if name == "pair":
        u = boolean_inclusion_usl(2)
        down = DownSet(u.poset, 0b0111)
        return AlphaMap(strong_u_antichain(u, down, (1, 2)))
    if name == "triple":
        u = boolean_inclusion_usl(3)
        down = DownSet(u.poset, 0b00010111)
        return AlphaMap(strong_u_antichain(u, down, (1, 2, 4)))
    raise PreconditionFailed(f"unknown canned instance {name!r}")
