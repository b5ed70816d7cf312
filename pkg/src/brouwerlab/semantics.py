"""Valuation semantics of formulas in finite Brouwer algebras.

The interpretation is dual: logical "or" is the lattice meet, logical "and"
the lattice join, implication the co-implication arrow, and negation maps a
to arrow(a, top).  A formula is an identity of an algebra when every
valuation lands on the least element 0, which therefore plays the role of
"valid"; the constants top/bot map to 0 and 1 respectively.

Identity checking enumerates valuations in mixed-radix order over element
indices (atom p1 the most significant digit) and reports the lexicographically
least counter-valuation, no matter how many worker threads scan the range.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ._backend import default_jobs, get_kernels
from .algebra import BrouwerAlgebra
from .errors import CapExceeded, InputError, UnassignedAtom
from .formulas import And, Atom, Bot, Formula, Imp, Neg, Or, Top, is_positive

VALUATION_CAP = 10 ** 7
_CHUNK = 1 << 16


@dataclass(frozen=True)
class Valuation:
    """Total assignment of algebra elements to the atoms of a formula."""

    target: BrouwerAlgebra
    assignment: Mapping[int, int]

    def get(self, index: int) -> int:
        try:
            return self.assignment[index]
        except KeyError:
            raise UnassignedAtom(index)


def eval_algebra(b: BrouwerAlgebra, f: Formula, v: Valuation | Mapping[int, int]) -> int:
    """Evaluate under the dual interpretation; returns an element index."""
    if b.arrow is None:
        raise InputError("algebra has no arrow table")
    assignment = v.assignment if isinstance(v, Valuation) else v
    if isinstance(f, Atom):
        if f.index not in assignment:
            raise UnassignedAtom(f.index)
        val = int(assignment[f.index])
        if not 0 <= val < b.size:
            raise InputError(f"element {val} out of range for atom p{f.index + 1}")
        return val
    if isinstance(f, Top):
        return b.bottom
    if isinstance(f, Bot):
        return b.top
    if isinstance(f, Neg):
        return int(b.arrow[eval_algebra(b, f.arg, assignment), b.top])
    left = eval_algebra(b, f.left, assignment)
    right = eval_algebra(b, f.right, assignment)
    if isinstance(f, And):
        return int(b.join[left, right])
    if isinstance(f, Or):
        return int(b.meet[left, right])
    return int(b.arrow[left, right])


def compile_program(f: Formula, atom_order: Sequence[int],
                    b: BrouwerAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Flatten a formula into the postfix opcode arrays the kernels run."""
    pos = {a: i for i, a in enumerate(atom_order)}
    code: list[int] = []
    arg: list[int] = []

    def rec(node: Formula):
        if isinstance(node, Atom):
            code.append(0)
            arg.append(pos[node.index])
        elif isinstance(node, Top):
            code.append(5)
            arg.append(b.bottom)
        elif isinstance(node, Bot):
            code.append(5)
            arg.append(b.top)
        elif isinstance(node, Neg):
            rec(node.arg)
            code.append(4)
            arg.append(0)
        else:
            rec(node.left)
            rec(node.right)
            code.append({And: 1, Or: 2, Imp: 3}[type(node)])
            arg.append(0)

    rec(f)
    return np.array(code, dtype=np.int32), np.array(arg, dtype=np.int32)


def _decode_valuation(index: int, atoms: Sequence[int], size: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for j in range(len(atoms) - 1, -1, -1):
        out[atoms[j]] = index % size
        index //= size
    return out


def is_identity(b: BrouwerAlgebra, f: Formula, cap: int = VALUATION_CAP,
                jobs: int | None = None) -> tuple[bool, dict[int, int] | None]:
    """Exhaustive identity check; returns (True, None) or (False, witness).

    The witness is the lexicographically least counter-valuation as a dict
    atom index -> element index.
    """
    if b.arrow is None:
        raise InputError("algebra has no arrow table")
    jobs = default_jobs() if jobs is None else max(1, jobs)
    atoms = sorted(f.atoms())
    total = b.size ** len(atoms)
    if total > cap:
        raise CapExceeded("valuation enumeration", total, cap)
    code, arg = compile_program(f, atoms, b)
    kern = get_kernels()

    def scan(start: int, stop: int) -> int:
        return int(kern.identity_scan(code, arg, b.meet, b.join, b.arrow,
                                      b.top, b.bottom, len(atoms), b.size,
                                      start, stop))

    hit = -1
    if jobs == 1 or total <= _CHUNK:
        pos = 0
        while pos < total:
            hit = scan(pos, min(total, pos + _CHUNK))
            if hit >= 0:
                break
            pos += _CHUNK
    else:
        starts = list(range(0, total, _CHUNK))
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            for wave_start in range(0, len(starts), jobs):
                wave = starts[wave_start:wave_start + jobs]
                futs = [ex.submit(scan, s, min(total, s + _CHUNK)) for s in wave]
                for fut in futs:
                    res = fut.result()
                    if res >= 0 and hit < 0:
                        hit = res
                if hit >= 0:
                    break
    if hit < 0:
        return True, None
    return False, _decode_valuation(hit, atoms, b.size)


def eval_all(b: BrouwerAlgebra, f: Formula, atoms: Sequence[int] | None = None,
             radix: int | None = None, cap: int = VALUATION_CAP) -> np.ndarray:
    """Values of f over every valuation, as an array in mixed-radix order.

    `radix` restricts atom values to 0..radix-1 (defaults to the algebra
    size); this is how evaluation over a subalgebra's elements is compared
    against the same evaluation in a larger algebra that extends its tables.
    """
    if b.arrow is None:
        raise InputError("algebra has no arrow table")
    atoms = sorted(f.atoms()) if atoms is None else list(atoms)
    radix = b.size if radix is None else radix
    total = max(radix, 1) ** len(atoms)
    if total > cap:
        raise CapExceeded("valuation enumeration", total, cap)
    out = np.empty(total, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        idx = np.arange(start, stop, dtype=np.int64)
        digits = {}
        for j, a in enumerate(atoms):
            power = radix ** (len(atoms) - 1 - j)
            digits[a] = ((idx // power) % radix).astype(np.int64)
        def rec(node: Formula) -> np.ndarray:
            if isinstance(node, Atom):
                return digits[node.index]
            if isinstance(node, Top):
                return np.full(idx.shape[0], b.bottom, dtype=np.int64)
            if isinstance(node, Bot):
                return np.full(idx.shape[0], b.top, dtype=np.int64)
            if isinstance(node, Neg):
                return b.arrow[rec(node.arg), b.top].astype(np.int64)
            left = rec(node.left)
            right = rec(node.right)
            if isinstance(node, And):
                return b.join[left, right].astype(np.int64)
            if isinstance(node, Or):
                return b.meet[left, right].astype(np.int64)
            return b.arrow[left, right].astype(np.int64)
        out[start:stop] = rec(f)
    return out


def classify_positive(f: Formula) -> bool:
    """True iff the formula contains no negation node."""
    return is_positive(f)


@dataclass(frozen=True)
class TheoryComparison:
    names: tuple[str, ...]
    in_first: tuple[bool, ...]
    in_second: tuple[bool, ...]
    expect: str | None
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "expect": self.expect,
            "ok": self.ok,
            "per_formula": [
                {"name": n, "first": a, "second": c}
                for n, a, c in zip(self.names, self.in_first, self.in_second)
            ],
            "violations": list(self.violations),
        }


def theory_compare(b1: BrouwerAlgebra, b2: BrouwerAlgebra,
                   corpus: Sequence[tuple[str, Formula]],
                   expect: str | None = None,
                   cap: int = VALUATION_CAP, jobs: int | None = None) -> TheoryComparison:
    """Identity status of each corpus formula in two algebras.

    expect may be 'first_subseteq_second' or 'second_subseteq_first'; a
    formula that is an identity on the small side but not on the large side
    is recorded as a violation.
    """
    if expect not in (None, "first_subseteq_second", "second_subseteq_first"):
        raise InputError(f"unknown expectation {expect!r}")
    names, first, second, viol = [], [], [], []
    for name, f in corpus:
        a, _ = is_identity(b1, f, cap, jobs)
        c, _ = is_identity(b2, f, cap, jobs)
        names.append(name)
        first.append(a)
        second.append(c)
        if expect == "first_subseteq_second" and a and not c:
            viol.append(name)
        if expect == "second_subseteq_first" and c and not a:
            viol.append(name)
    return TheoryComparison(tuple(names), tuple(first), tuple(second),
                            expect, tuple(viol))
