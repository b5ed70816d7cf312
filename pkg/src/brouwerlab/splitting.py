"""Finite witness forms of the splitting-class condition.

A splitting instance is a nonempty downward-closed subset A (containing the
bottom) of an upper semilattice.  The witness query asks, for a in A and a
finite family B of members of A that do not sit below a, for some c in A
strictly above a whose joins with every member of B escape A.

On a finite instance the full splitting condition always fails: a maximal
member of A admits no strict extension at all.  The checker therefore
reports the definition faithfully (expecting False, with a maximal-element
witness) and offers a depth-truncated variant for positive desk-scale tests:
below a height bound it suffices to test the single maximal family
B = {b in A : b not below a}, because any witness for the full family works
for every subfamily.

The pipeline step connects a finite instance to frames: it searches for an
onto p-morphism from A's poset to a truncated binary tree, transfers corpus
refutations along it, and verifies the isomorphism between the up-set
algebra of A and the interval [0, A-complement] of the ambient up-set
algebra via the assignment B |-> B union A-complement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import from_upsets, subinterval
from .checks import CheckReport, LawCheck
from .errors import PreconditionViolated
from .formulas import Formula
from .kripke import find_pmorphism, pmorphism_theory_transfer
from .order import Poset, UpperSemilattice, boolean_inclusion_usl, canned_poset
from .upsets import DownSet, UPSET_CAP


@dataclass(frozen=True)
class SplittingInstance:
    usl: UpperSemilattice
    down: DownSet

    def __post_init__(self):
        if self.down.mask == 0:
            raise PreconditionViolated("the candidate class is empty")
        if self.usl.bottom not in self.down:
            raise PreconditionViolated("the candidate class must contain the bottom")

    @property
    def members(self) -> list[int]:
        return self.down.members()

    def a_poset(self) -> tuple[Poset, list[int]]:
        """The induced order on the members of A, plus the member list."""
        mem = self.members
        k = len(mem)
        mat = np.zeros((k, k), dtype=bool)
        for i, x in enumerate(mem):
            for j, y in enumerate(mem):
                mat[i, j] = self.usl.poset.leq[x, y]
        labels = tuple(self.usl.label(x) for x in mem)
        return Poset(k, mat, labels), mem


def splitting_witness(inst: SplittingInstance, a: int,
                      bs: Sequence[int]) -> int | None:
    """Least-index c in A with c > a and join(b, c) outside A for all b in bs.

    Preconditions (violations raise): a in A; every b in A and not b <= a.
    Returns None when no witness exists.
    """
    if a not in inst.down:
        raise PreconditionViolated(f"a={a} is not in the class")
    for b in bs:
        if b not in inst.down:
            raise PreconditionViolated(f"b={b} is not in the class")
        if inst.usl.poset.leq[b, a]:
            raise PreconditionViolated(f"b={b} lies below a={a}")
    leq = inst.usl.poset.leq
    for c in inst.members:
        if c == a or not leq[a, c]:
            continue
        if all(int(inst.usl.join[b, c]) not in inst.down for b in bs):
            return c
    return None


def _max_family(inst: SplittingInstance, a: int) -> list[int]:
    leq = inst.usl.poset.leq
    return [b for b in inst.members if not leq[b, a]]


def is_splitting_class_finite(inst: SplittingInstance) -> CheckReport:
    """Evaluate the full splitting condition on a finite instance.

    For each a it suffices to seek one witness against the maximal family
    {b in A : b not below a}: a c that works there works for every finite
    subfamily (the condition is antitone in the family).  On finite
    instances the verdict is always False; the summary check names a maximal
    member of A, which can have no strict extension inside A.
    """
    checks = []
    leq = inst.usl.poset.leq
    members = inst.members
    amask = inst.down.mask
    for a in members:
        fam = _max_family(inst, a)
        c = splitting_witness(inst, a, fam)
        checks.append(LawCheck(f"extends[a={a}]", c is not None,
                               None if c is not None else (a, tuple(fam)),
                               f"maximal family size {len(fam)}"))
    maximal = next(a for a in members
                   if int(inst.usl.poset.up_masks[a]) & amask == 1 << a)
    all_ok = all(c.ok for c in checks)
    checks.append(LawCheck("is_splitting_class", all_ok, (maximal,),
                           "finite classes always fail at a maximal member"))
    return CheckReport(tuple(checks))


def _heights(p: Poset) -> list[int]:
    h = [0] * p.size
    order = sorted(range(p.size), key=lambda i: int(np.count_nonzero(p.leq[:, i])))
    for i in order:
        below = [j for j in range(p.size) if p.leq[j, i] and j != i]
        h[i] = 1 + max((h[j] for j in below), default=-1)
    return h


def splitting_upto_depth(inst: SplittingInstance, depth: int) -> CheckReport:
    """Witness condition restricted to members of height below `depth`.

    Tests the maximal family only (sufficient by antitonicity).  A report
    with no per-element checks is a vacuous pass.
    """
    if depth < 1:
        raise PreconditionViolated("depth must be >= 1")
    apos, mem = inst.a_poset()
    heights = _heights(apos)
    checks = []
    for i, a in enumerate(mem):
        if heights[i] >= depth:
            continue
        fam = _max_family(inst, a)
        c = splitting_witness(inst, a, fam)
        checks.append(LawCheck(f"extends[a={a}]", c is not None,
                               None if c is not None else (a, tuple(fam)),
                               f"height {heights[i]}, family size {len(fam)}"))
    return CheckReport(tuple(checks))


def interval_iso_check(inst: SplittingInstance, cap: int = UPSET_CAP) -> CheckReport:
    """up(A) is isomorphic to [0, A-complement] via B |-> B union A-complement.

    Builds both algebras and verifies the assignment is a bijection matching
    leq, meet, join and arrow tables entry for entry.
    """
    apos, mem = inst.a_poset()
    small = from_upsets(apos, cap)
    big = from_upsets(inst.usl.poset, cap)
    big_masks = big.element_masks
    assert big_masks is not None and small.element_masks is not None
    acomp = inst.down.complement_mask()
    hi = int(np.searchsorted(big_masks, np.uint64(acomp)))
    ialg, elems = subinterval(big, big.bottom, hi)
    pos = {int(big_masks[e]): i for i, e in enumerate(elems)}

    def lift(small_mask: int) -> int:
        out = acomp
        for i, x in enumerate(mem):
            if small_mask >> i & 1:
                out |= 1 << x
        return out

    send = []
    missing = None
    for sm in small.element_masks:
        m = lift(int(sm))
        if m not in pos:
            missing = (int(sm),)
            break
        send.append(pos[m])
    checks = [LawCheck("maps_into_interval", missing is None, missing)]
    if missing is None:
        bij = len(set(send)) == small.size and small.size == ialg.size
        checks.append(LawCheck("bijection", bij,
                               None if bij else (small.size, ialg.size)))
        wit = {"leq": None, "meet": None, "join": None, "arrow": None}
        for a in range(small.size):
            for b in range(small.size):
                if wit["leq"] is None and bool(small.leq[a, b]) != bool(ialg.leq[send[a], send[b]]):
                    wit["leq"] = (a, b)
                if wit["meet"] is None and send[int(small.meet[a, b])] != int(ialg.meet[send[a], send[b]]):
                    wit["meet"] = (a, b)
                if wit["join"] is None and send[int(small.join[a, b])] != int(ialg.join[send[a], send[b]]):
                    wit["join"] = (a, b)
                if wit["arrow"] is None and send[int(small.arrow[a, b])] != int(ialg.arrow[send[a], send[b]]):
                    wit["arrow"] = (a, b)
        for op in ("leq", "meet", "join", "arrow"):
            checks.append(LawCheck(f"preserves_{op}", wit[op] is None, wit[op]))
    return CheckReport(tuple(checks))


def tree_pipeline(inst: SplittingInstance, depth: int,
                  corpus: Sequence[tuple[str, Formula]] = (),
                  cap: int = UPSET_CAP) -> CheckReport:
    """Splitting-to-tree pipeline at finite truncation.

    Searches for an onto p-morphism from A's poset to the depth-`depth`
    binary tree; when found, transfers corpus refutations along it.  Either
    way, verifies the interval isomorphism B |-> B union A-complement.
    The absence of a p-morphism is informative (small instances often cannot
    map onto a tree), not a defect.
    """
    apos, _ = inst.a_poset()
    tree = canned_poset("binary_tree", depth)
    pm = find_pmorphism(apos, tree, require_onto=True)
    checks = [LawCheck("pmorphism_found", pm is not None,
                       None if pm is not None else (apos.size, tree.size),
                       "informative: absence is expected for some instances")]
    if pm is not None and corpus:
        transfer = pmorphism_theory_transfer(pm, corpus)
        checks.extend(LawCheck("transfer_" + c.name, c.ok, c.witness, c.detail)
                      for c in transfer.checks)
    iso = interval_iso_check(inst, cap)
    checks.extend(LawCheck("interval_iso_" + c.name, c.ok, c.witness, c.detail)
                  for c in iso.checks)
    return CheckReport(tuple(checks))


def canned_splitting_instance(name: str) -> SplittingInstance:
    """Ready-made instances over inclusion powersets.

    powerset3: A = {empty, {1}, {2}, {3}} inside the powerset of {1,2,3}.
    fork:      A = {empty, {1}, {2}} inside the powerset of {1,2}.
    chain:     A = {empty, {1}} inside the powerset of {1,2}.
    """
    if name == "powerset3":
        u = boolean_inclusion_usl(3)
        return SplittingInstance(u.usl, DownSet(u.poset, 0b00010111))
    if name == "fork":
        u = boolean_inclusion_usl(2)
        return SplittingInstance(u.usl, DownSet(u.poset, 0b0111))
    if name == "chain":
        u = boolean_inclusion_usl(2)
        return SplittingInstance(u.usl, DownSet(u.poset, 0b0011))
    raise PreconditionViolated(f"unknown canned instance {name!r}")
