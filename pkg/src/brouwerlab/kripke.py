"""Intuitionistic Kripke semantics on finite posets, and p-morphisms.

Frame validity enumerates every monotone valuation (atom truth sets are
up-sets) and evaluates formulas as truth masks over the worlds.  This engine
never touches the algebra tables, so agreement with the up-set-algebra
identity checker is a real cross-validation of two independent semantics.

Negation is primitive here: w forces ~a iff no successor of w forces a.
The constants behave as the everywhere-true and nowhere-true sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .algebra import from_upsets
from .checks import CheckReport, LawCheck
from .errors import CapExceeded, NotAPMorphism, NotOnto, UnassignedAtom
from .formulas import And, Atom, Bot, Formula, Neg, Or, Top
from .order import Poset
from .semantics import VALUATION_CAP, is_identity
from .upsets import UPSET_CAP, UpSet, enumerate_upset_masks

_CHUNK = 1 << 16


@dataclass(frozen=True)
class KripkeModel:
    """Frame plus monotone atom valuation (truth sets are up-sets)."""

    frame: Poset
    valuation: Mapping[int, UpSet]

    def atom_mask(self, index: int) -> int:
        try:
            return self.valuation[index].mask
        except KeyError:
            raise UnassignedAtom(index)


def truth_mask(frame: Poset, atom_masks: Mapping[int, int], f: Formula) -> int:
    """Worlds forcing f, as a bitmask, for one fixed valuation."""
    up = [int(m) for m in frame.up_masks]
    full = frame.full_mask

    def rec(node: Formula) -> int:
        if isinstance(node, Atom):
            if node.index not in atom_masks:
                raise UnassignedAtom(node.index)
            return atom_masks[node.index]
        if isinstance(node, Top):
            return full
        if isinstance(node, Bot):
            return 0
        if isinstance(node, And):
            return rec(node.left) & rec(node.right)
        if isinstance(node, Or):
            return rec(node.left) | rec(node.right)
        if isinstance(node, Neg):
            a = rec(node.arg)
            return _imp_mask(up, frame.size, a, 0)
        a = rec(node.left)
        b = rec(node.right)
        return _imp_mask(up, frame.size, a, b)

    return rec(f)


def _imp_mask(up: list[int], size: int, a: int, b: int) -> int:
    out = 0
    for w in range(size):
        if up[w] & a & ~b == 0:
            out |= 1 << w
    return out


def forces(m: KripkeModel, world: int, f: Formula) -> bool:
    """Standard forcing at one world."""
    masks = {i: m.valuation[i].mask for i in m.valuation}
    return bool(truth_mask(m.frame, masks, f) >> world & 1)


def _vector_truth(frame: Poset, f: Formula, atom_arrays: Mapping[int, np.ndarray],
                  nvals: int) -> np.ndarray:
    up = [np.uint64(m) for m in frame.up_masks]
    full = np.uint64(frame.full_mask)

    def rec(node: Formula) -> np.ndarray:
        if isinstance(node, Atom):
            return atom_arrays[node.index]
        if isinstance(node, Top):
            return np.full(nvals, full, dtype=np.uint64)
        if isinstance(node, Bot):
            return np.zeros(nvals, dtype=np.uint64)
        if isinstance(node, And):
            return rec(node.left) & rec(node.right)
        if isinstance(node, Or):
            return rec(node.left) | rec(node.right)
        if isinstance(node, Neg):
            a = rec(node.arg)
            b = np.zeros(nvals, dtype=np.uint64)
        else:
            a = rec(node.left)
            b = rec(node.right)
        out = np.zeros(nvals, dtype=np.uint64)
        for w in range(frame.size):
            ok = (up[w] & a & ~b) == np.uint64(0)
            out |= np.where(ok, np.uint64(1) << np.uint64(w), np.uint64(0))
        return out

    return rec(f)


def frame_valid(p: Poset, f: Formula, cap: int = VALUATION_CAP,
                upset_cap: int = UPSET_CAP) -> tuple[bool, tuple[dict[int, int], int] | None]:
    """Validity over all monotone valuations and worlds.

    Returns (True, None) or (False, (atom mask dict, world)) with the
    lexicographically least failing valuation (valuations ordered by up-set
    mask index, atom p-min most significant) and its least failing world.
    """
    atoms = sorted(f.atoms())
    umasks = enumerate_upset_masks(p, upset_cap)
    nups = umasks.shape[0]
    total = nups ** len(atoms)
    if total > cap:
        raise CapExceeded("frame valuation enumeration", total, cap)
    full = np.uint64(p.full_mask)

    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        idx = np.arange(start, stop, dtype=np.int64)
        nvals = idx.shape[0]
        atom_arrays: dict[int, np.ndarray] = {}
        for j, a in enumerate(atoms):
            power = nups ** (len(atoms) - 1 - j)
            atom_arrays[a] = umasks[(idx // power) % nups]
        tvals = _vector_truth(p, f, atom_arrays, nvals)
        bad = np.nonzero(tvals != full)[0]
        if bad.size:
            k = int(bad[0])
            assignment = {a: int(atom_arrays[a][k]) for a in atoms}
            missing = int(tvals[k])
            world = next(w for w in range(p.size) if not missing >> w & 1)
            return False, (assignment, world)
    return True, None


def dejongh_agreement(p: Poset, corpus: Sequence[tuple[str, Formula]],
                      cap: int = VALUATION_CAP, jobs: int | None = None) -> CheckReport:
    """Frame validity and up-set-algebra identity must coincide formula-wise."""
    alg = from_upsets(p)
    checks = []
    for name, f in corpus:
        fv, _ = frame_valid(p, f, cap)
        iv, _ = is_identity(alg, f, cap, jobs)
        checks.append(LawCheck(f"agree[{name}]", fv == iv,
                               None if fv == iv else (fv, iv)))
    return CheckReport(tuple(checks))


# --- p-morphisms ----------------------------------------------------------

@dataclass(frozen=True)
class PMorphism:
    source: Poset
    target: Poset
    mapping: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.mapping[x]

    def is_onto(self) -> bool:
        return set(self.mapping) == set(range(self.target.size))


def is_pmorphism(f: PMorphism) -> tuple[bool, tuple | None]:
    """Check the forth and back conditions exhaustively; witness on failure."""
    p1, p2, m = f.source, f.target, f.mapping
    if len(m) != p1.size or any(not 0 <= t < p2.size for t in m):
        return False, ("total", len(m))
    for x in range(p1.size):
        for y in range(p1.size):
            if p1.leq[x, y] and not p2.leq[m[x], m[y]]:
                return False, ("forth", x, y)
    for x in range(p1.size):
        for t in range(p2.size):
            if p2.leq[m[x], t]:
                if not any(p1.leq[x, z] and m[z] == t for z in range(p1.size)):
                    return False, ("back", x, t)
    return True, None


def find_pmorphism(p1: Poset, p2: Poset, require_onto: bool = True,
                   cap: int = 10 ** 7) -> PMorphism | None:
    """Backtracking search for the lexicographically least p-morphism.

    Prunes on forth-consistency among assigned worlds and on back-condition
    failures that no future assignment could repair (every candidate witness
    z >= x already assigned elsewhere).
    """
    n1, n2 = p1.size, p2.size
    if require_onto and n2 > n1:
        return None
    if n2 ** n1 > cap:
        raise CapExceeded("p-morphism search", n2 ** n1, cap)
    assign = [-1] * n1

    def consistent(k: int) -> bool:
        for x in range(k + 1):
            if p1.leq[x, k] and not p2.leq[assign[x], assign[k]]:
                return False
            if p1.leq[k, x] and not p2.leq[assign[k], assign[x]]:
                return False
        for x in range(k + 1):
            for t in range(n2):
                if p2.leq[assign[x], t]:
                    decided_all = all(assign[z] >= 0 for z in range(n1) if p1.leq[x, z])
                    hit = any(p1.leq[x, z] and assign[z] == t
                              for z in range(n1) if assign[z] >= 0)
                    if decided_all and not hit:
                        return False
        return True

    def rec(k: int) -> PMorphism | None:
        if k == n1:
            cand = PMorphism(p1, p2, tuple(assign))
            ok, _ = is_pmorphism(cand)
            if ok and (not require_onto or cand.is_onto()):
                return cand
            return None
        for t in range(n2):
            assign[k] = t
            if consistent(k):
                found = rec(k + 1)
                if found is not None:
                    return found
            assign[k] = -1
        return None

    return rec(0)


def pullback_model(f: PMorphism, target_masks: Mapping[int, int]) -> dict[int, int]:
    """Preimage valuation: source world x gets atoms true at f(x)."""
    out: dict[int, int] = {}
    for a, tmask in target_masks.items():
        smask = 0
        for x in range(f.source.size):
            if tmask >> f.mapping[x] & 1:
                smask |= 1 << x
        out[a] = smask
    return out


def pmorphism_theory_transfer(f: PMorphism, corpus: Sequence[tuple[str, Formula]],
                              cap: int = VALUATION_CAP) -> CheckReport:
    """Corpus-level consequences of an onto p-morphism.

    For every corpus formula: validity on the source implies validity on the
    target, and any counter-model on the target pulls back along f to a
    counter-model on the source (checked via the world-wise pullback
    equivalence w forces phi  iff  f(w) forces phi).
    """
    ok, wit = is_pmorphism(f)
    if not ok:
        raise NotAPMorphism(f"not a p-morphism: {wit}")
    if not f.is_onto():
        raise NotOnto("theory transfer needs an onto p-morphism")
    checks = []
    for name, formula in corpus:
        sv, _ = frame_valid(f.source, formula, cap)
        tv, twit = frame_valid(f.target, formula, cap)
        inclusion_ok = (not sv) or tv
        checks.append(LawCheck(f"inclusion[{name}]", inclusion_ok,
                               None if inclusion_ok else (sv, tv),
                               "valid on source implies valid on target"))
        if not tv:
            assert twit is not None
            tmasks, tworld = twit
            smasks = pullback_model(f, tmasks)
            pb_ok = True
            witness = None
            for w in range(f.source.size):
                here = bool(truth_mask(f.source, smasks, formula) >> w & 1)
                there = bool(truth_mask(f.target, tmasks, formula) >> f.mapping[w] & 1)
                if here != there:
                    pb_ok = False
                    witness = (w, f.mapping[w])
                    break
            refuted = any(f.mapping[w] == tworld for w in range(f.source.size))
            checks.append(LawCheck(f"pullback[{name}]", pb_ok and refuted, witness,
                                   "pulled-back counter-model refutes on the source"))
    return CheckReport(tuple(checks))
