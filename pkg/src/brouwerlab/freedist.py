"""Free distributive lattices over finite implicative upper semilattices.

For a finite implicative upper semilattice U, the formal finite meets of
principal up-sets [x) coincide with the up-set algebra of U's poset: every
up-set is the union (= lattice meet) of the principal up-sets of its members.
The generator embedding iota(x) = [x) lands exactly on the meet-irreducible
elements, and the whole algebra carries the universal extension property for
join-semilattice homomorphisms into any bounded distributive lattice.

The reverse-inclusion powerset of {1..n} yields the algebra family whose
sizes follow the Dedekind numbers: 3, 6, 20, 168, 7581 for n = 1..5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import BrouwerAlgebra, from_upsets, meet_irreducibles
from .checks import CheckReport, LawCheck
from .errors import CapExceeded, NotAUslHom, PreconditionFailed
from .order import ImplicativeUsl, boolean_reverse_usl
from .upsets import UPSET_CAP

MEDVEDEV_DEFAULT_CAP = 4


@dataclass(frozen=True)
class FreeLattice:
    """A free distributive lattice: base usl, its up-set algebra, and iota."""

    base: ImplicativeUsl
    algebra: BrouwerAlgebra
    iota: tuple[int, ...]                # usl element -> algebra element

    @property
    def generators(self) -> tuple[int, ...]:
        return self.iota


def generator_mask(u: ImplicativeUsl, xs: Iterable[int]) -> int:
    """Up-closure mask of a generator subset: union of the [x)."""
    mask = 0
    for x in xs:
        mask |= int(u.poset.up_masks[x])
    return mask


def free_leq(u: ImplicativeUsl, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """Formal-meet order: meet{[x)} <= meet{[y)} iff every y has some x below it."""
    xs = list(xs)
    return all(any(u.poset.leq[x, y] for x in xs) for y in ys)


def free_over(u: ImplicativeUsl, cap: int = UPSET_CAP) -> FreeLattice:
    """Build the free distributive lattice over `u` as its up-set algebra.

    iota(x) is the principal up-set [x); construction verifies that the
    iota image is injective, order-preserving both ways, and is exactly the
    set of meet-irreducible elements.
    """
    alg = from_upsets(u.poset, cap)
    masks = alg.element_masks
    assert masks is not None
    iota = tuple(int(np.searchsorted(masks, np.uint64(u.poset.up_masks[x])))
                 for x in range(u.size))
    for x in range(u.size):
        if int(masks[iota[x]]) != int(u.poset.up_masks[x]):
            raise PreconditionFailed(f"principal up-set of {x} missing from enumeration")
    for x in range(u.size):
        for y in range(u.size):
            if bool(u.poset.leq[x, y]) != bool(alg.leq[iota[x], iota[y]]):
                raise PreconditionFailed(f"iota does not preserve order at ({x},{y})")
    if sorted(iota) != sorted(meet_irreducibles(alg)):
        raise PreconditionFailed("iota image differs from the meet-irreducible elements")
    return FreeLattice(u, alg, iota)


def medvedev_algebra(n: int, allow_large: bool = False,
                     cap: int = UPSET_CAP) -> FreeLattice:
    """Free lattice over the reverse-inclusion powerset of {1..n}.

    Sizes grow like the Dedekind numbers; n = 5 already has 7581 elements
    and sits behind allow_large.
    """
    if n < 1:
        raise PreconditionFailed("n must be >= 1")
    if n > MEDVEDEV_DEFAULT_CAP and not allow_large:
        raise CapExceeded("medvedev_algebra n", n, MEDVEDEV_DEFAULT_CAP)
    return free_over(boolean_reverse_usl(n, cap=max(n, 6)), cap=cap)


def _meet_of(b: BrouwerAlgebra, xs: Sequence[int]) -> int:
    acc = b.top
    for x in xs:
        acc = int(b.meet[acc, x])
    return acc


def universal_extend(f: FreeLattice, g: Sequence[int] | Mapping[int, int],
                     target: BrouwerAlgebra) -> tuple[np.ndarray, CheckReport]:
    """Extend a join-semilattice homomorphism g along iota.

    g maps usl elements to target elements and must satisfy
    g(x+y) = g(x) v g(y) (validated; raises NotAUslHom with a witness pair).
    The extension sends the formal meet of generators X to the target meet
    of g[X]; the empty meet (the formal top) goes to the target's top.

    Returns the element map and a report verifying: the map is a lattice
    homomorphism (meet and join, all pairs), it extends g through iota, it
    sends the top to the target top and the bottom to g(usl bottom), and
    every element is the meet of the generators below it (which is what
    makes the extension unique).
    """
    u = f.base
    gv = [int(g[x]) for x in range(u.size)]
    for x in range(u.size):
        for y in range(u.size):
            if gv[int(u.join[x, y])] != int(target.join[gv[x], gv[y]]):
                raise NotAUslHom(x, y)

    masks = f.algebra.element_masks
    assert masks is not None
    out = np.empty(f.algebra.size, dtype=np.int32)
    for e in range(f.algebra.size):
        mask = int(masks[e])
        members = [x for x in range(u.size) if mask >> x & 1]
        out[e] = _meet_of(target, [gv[x] for x in members])

    alg = f.algebra
    checks: list[LawCheck] = []
    wit_meet = wit_join = None
    for a in range(alg.size):
        for b in range(alg.size):
            if wit_meet is None and int(out[alg.meet[a, b]]) != int(target.meet[out[a], out[b]]):
                wit_meet = (a, b)
            if wit_join is None and int(out[alg.join[a, b]]) != int(target.join[out[a], out[b]]):
                wit_join = (a, b)
    checks.append(LawCheck("preserves_meet", wit_meet is None, wit_meet))
    checks.append(LawCheck("preserves_join", wit_join is None, wit_join))
    bad = next((x for x in range(u.size) if int(out[f.iota[x]]) != gv[x]), None)
    checks.append(LawCheck("extends_g_through_iota", bad is None,
                           (bad,) if bad is not None else None))
    checks.append(LawCheck("top_to_top", int(out[alg.top]) == target.top,
                           None if int(out[alg.top]) == target.top else (int(out[alg.top]),)))
    checks.append(LawCheck("bottom_to_g_of_bottom",
                           int(out[alg.bottom]) == gv[u.bottom],
                           None if int(out[alg.bottom]) == gv[u.bottom]
                           else (int(out[alg.bottom]), gv[u.bottom])))
    wit_gen = None
    for e in range(alg.size):
        mask = int(masks[e])
        members = [x for x in range(u.size) if mask >> x & 1]
        if _meet_of(alg, [f.iota[x] for x in members]) != e:
            wit_gen = (e,)
            break
    checks.append(LawCheck("generators_meet_generate", wit_gen is None, wit_gen,
                           "every element is the meet of the generators below it"))
    return out, CheckReport(tuple(checks))


def iota_arrow_check(f: FreeLattice) -> CheckReport:
    """iota preserves the usl arrow: iota(x ->u y) == iota(x) -> iota(y)."""
    u = f.base
    alg = f.algebra
    assert alg.arrow is not None
    wit = None
    for x in range(u.size):
        for y in range(u.size):
            lhs = f.iota[int(u.arrow[x, y])]
            rhs = int(alg.arrow[f.iota[x], f.iota[y]])
            if lhs != rhs:
                wit = (x, y)
                break
        if wit:
            break
    return CheckReport((LawCheck("iota_preserves_arrow", wit is None, wit),))


def bruteforce_upset_count(n: int) -> int:
    """Independent oracle for the free-lattice sizes over the n-cube.

    Filters all 2**(2**n) subsets of the reverse-inclusion powerset poset
    with a plain Python up-closedness test (no kernels, no shared code path).
    """
    size = 1 << n
    uppers = []
    for a in range(size):
        uppers.append([b for b in range(size) if a & b == b])   # b subset of a
    count = 0
    for sub in range(1 << size):
        ok = True
        for a in range(size):
            if sub >> a & 1:
                for b in uppers[a]:
                    if not sub >> b & 1:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            count += 1
    return count
