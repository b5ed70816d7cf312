"""Decision procedure for intuitionistic propositional validity.

A contraction-free sequent search in the style of Dyckhoff's LJT/G4ip:
the usual left rules are applied eagerly (they are invertible and strictly
decrease a multiset weight), implications whose antecedent is itself an
implication get the special two-premise rule, and only disjunctions on the
right plus those nested implications require backtracking.  The calculus
terminates without loop checking; memoization on (context, goal) keeps the
search fast on the corpus sizes used here.

This module is deliberately independent of the algebra and frame semantics;
it serves as their oracle, and they serve as its cross-check.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import CapExceeded
from .formulas import And, Atom, Bot, Formula, Imp, Neg, Or, Top

FORMULA_SIZE_CAP = 10 ** 4


def _size(f: Formula) -> int:
    if isinstance(f, (Atom, Top, Bot)):
        return 1
    if isinstance(f, Neg):
        return 1 + _size(f.arg)
    return 1 + _size(f.left) + _size(f.right)


def _strip_neg(f: Formula) -> Formula:
    """Replace every Neg node with an implication into Bot."""
    if isinstance(f, Neg):
        return Imp(_strip_neg(f.arg), Bot())
    if isinstance(f, And):
        return And(_strip_neg(f.left), _strip_neg(f.right))
    if isinstance(f, Or):
        return Or(_strip_neg(f.left), _strip_neg(f.right))
    if isinstance(f, Imp):
        return Imp(_strip_neg(f.left), _strip_neg(f.right))
    return f


@lru_cache(maxsize=None)
def _prove(ctx: frozenset, goal: Formula) -> bool:
    work = set(ctx)

    # saturate with the invertible left rules
    changed = True
    while changed:
        changed = False
        for f in list(work):
            if isinstance(f, Bot):
                return True
            if isinstance(f, Top):
                work.discard(f)
                changed = True
            elif isinstance(f, And):
                work.discard(f)
                work.add(f.left)
                work.add(f.right)
                changed = True
            elif isinstance(f, Imp):
                a = f.left
                if isinstance(a, Top):
                    work.discard(f)
                    work.add(f.right)
                    changed = True
                elif isinstance(a, Bot):
                    work.discard(f)
                    changed = True
                elif isinstance(a, And):
                    work.discard(f)
                    work.add(Imp(a.left, Imp(a.right, f.right)))
                    changed = True
                elif isinstance(a, Or):
                    work.discard(f)
                    work.add(Imp(a.left, f.right))
                    work.add(Imp(a.right, f.right))
                    changed = True
                elif isinstance(a, Atom) and a in work:
                    work.discard(f)
                    work.add(f.right)
                    changed = True

    if goal in work and isinstance(goal, Atom):
        return True
    if isinstance(goal, Top):
        return True

    # invertible right rules
    if isinstance(goal, And):
        return (_prove(frozenset(work), goal.left)
                and _prove(frozenset(work), goal.right))
    if isinstance(goal, Imp):
        return _prove(frozenset(work) | {goal.left}, goal.right)

    # branching left rule on disjunctions (invertible, but explodes context)
    for f in work:
        if isinstance(f, Or):
            rest = frozenset(work - {f})
            return (_prove(rest | {f.left}, goal)
                    and _prove(rest | {f.right}, goal))

    # non-invertible choices
    if isinstance(goal, Or):
        if _prove(frozenset(work), goal.left) or _prove(frozenset(work), goal.right):
            return True
    for f in work:
        if isinstance(f, Imp) and isinstance(f.left, Imp):
            a, b, c = f.left.left, f.left.right, f.right
            rest = frozenset(work - {f})
            if _prove(rest | {Imp(b, c)}, Imp(a, b)) and _prove(rest | {c}, goal):
                return True
    return False


def ipc_prove(f: Formula) -> bool:
    """True iff the formula is an intuitionistic propositional theorem."""
    if _size(f) > FORMULA_SIZE_CAP:
        raise CapExceeded("formula size", _size(f), FORMULA_SIZE_CAP)
    return _prove(frozenset(), _strip_neg(f))


def cpc_valid(f: Formula) -> bool:
    """Classical validity by truth tables (small atom counts only)."""
    atoms = sorted(f.atoms())
    n = len(atoms)
    pos = {a: i for i, a in enumerate(atoms)}

    def ev(node: Formula, row: int) -> bool:
        if isinstance(node, Atom):
            return bool(row >> pos[node.index] & 1)
        if isinstance(node, Top):
            return True
        if isinstance(node, Bot):
            return False
        if isinstance(node, Neg):
            return not ev(node.arg, row)
        if isinstance(node, And):
            return ev(node.left, row) and ev(node.right, row)
        if isinstance(node, Or):
            return ev(node.left, row) or ev(node.right, row)
        return (not ev(node.left, row)) or ev(node.right, row)

    return all(ev(f, row) for row in range(1 << n))
