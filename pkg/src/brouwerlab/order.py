"""Finite preorders, posets and (implicative) upper semilattices.

Elements are dense integer indices 0..size-1; display names live in an
optional label list.  Order relations are kept both as a boolean membership
matrix and as bit-packed uint64 rows (up_masks[i] = mask of {j : i <= j}),
which is what every downstream enumeration works on.  Carriers are capped at
64 elements so a row always fits one machine word.

Invalid input is never repaired: a relation that is not reflexive/transitive
(or not antisymmetric, for posets) raises with a witness.  Quotienting a
preorder by mutual comparability is the one sanctioned way to turn symmetric
pairs into a poset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    InputError,
    NoBottom,
    NoLeastResidual,
    NoLub,
    NotAntisymmetric,
    NotReflexive,
    NotTransitive,
    UnknownName,
)

MAX_CARRIER = 64
BOOLEAN_CAP = 6
BINARY_TREE_CAP = 5


def _as_bool_matrix(raw) -> np.ndarray:
    mat = np.asarray(raw)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InputError(f"relation must be square, got shape {mat.shape}")
    return mat.astype(bool)


def _pack_rows(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    masks = np.zeros(n, dtype=np.uint64)
    for j in range(n):
        masks |= np.where(mat[:, j], np.uint64(1) << np.uint64(j), np.uint64(0))
    return masks


@dataclass(frozen=True)
class Preorder:
    """Reflexive, transitive relation over indices 0..size-1."""

    size: int
    leq: np.ndarray                      # bool matrix, read-only
    labels: tuple[str, ...] | None = None
    up_masks: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.size > MAX_CARRIER:
            raise CapExceeded("carrier", self.size, MAX_CARRIER)
        if self.size <= 0:
            raise InputError("carrier must be nonempty")
        mat = self.leq
        for i in range(self.size):
            if not mat[i, i]:
                raise NotReflexive(i)
        comp = (mat @ mat).astype(bool)
        if (comp & ~mat).any():
            i, k = np.argwhere(comp & ~mat)[0]
            j = int(np.nonzero(mat[i] & mat[:, k])[0][0])
            raise NotTransitive(int(i), j, int(k))
        mat.setflags(write=False)
        object.__setattr__(self, "up_masks", _pack_rows(mat))
        self.up_masks.setflags(write=False)

    def __eq__(self, other):
        return (isinstance(other, Preorder) and self.size == other.size
                and bool(np.array_equal(self.leq, other.leq)))

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))

    def le(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else str(i)

    @property
    def full_mask(self) -> int:
        return (1 << self.size) - 1

    def down_masks(self) -> np.ndarray:
        return _pack_rows(self.leq.T)


def validate_preorder(raw, labels: Sequence[str] | None = None) -> Preorder:
    """Validate a raw square membership matrix into a Preorder."""
    mat = _as_bool_matrix(raw)
    return Preorder(mat.shape[0], mat, tuple(labels) if labels else None)


@dataclass(frozen=True, eq=False)
class Poset(Preorder):
    """Preorder that is additionally antisymmetric."""

    def __post_init__(self):
        super().__post_init__()
        sym = self.leq & self.leq.T & ~np.eye(self.size, dtype=bool)
        if sym.any():
            i, j = np.argwhere(sym)[0]
            raise NotAntisymmetric(int(i), int(j))

    def __eq__(self, other):
        return (isinstance(other, Poset) and self.size == other.size
                and bool(np.array_equal(self.leq, other.leq)))

    def __hash__(self):
        return hash((self.size, self.leq.tobytes()))

    def covers(self) -> list[tuple[int, int]]:
        """Transitive reduction: pairs (i, j) with j covering i."""
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        between = (lt @ lt).astype(bool)
        return [tuple(p) for p in np.argwhere(lt & ~between)]


def validate_poset(raw, labels: Sequence[str] | None = None) -> Poset:
    mat = _as_bool_matrix(raw)
    return Poset(mat.shape[0], mat, tuple(labels) if labels else None)


def quotient_to_poset(p: Preorder) -> tuple[Poset, list[int]]:
    """Collapse mutual-comparability classes of a preorder into a poset.

    Returns the quotient poset and the surjective, order-reflecting map
    from element index to class index.  Classes are numbered by their
    smallest member, in ascending order.
    """
    equiv = p.leq & p.leq.T
    class_map = [-1] * p.size
    reps: list[int] = []
    for i in range(p.size):
        if class_map[i] >= 0:
            continue
        cls = len(reps)
        reps.append(i)
        for j in range(i, p.size):
            if equiv[i, j]:
                class_map[j] = cls
    k = len(reps)
    mat = np.zeros((k, k), dtype=bool)
    for a, ra in enumerate(reps):
        for b, rb in enumerate(reps):
            mat[a, b] = p.leq[ra, rb]
    labels = None
    if p.labels:
        labels = tuple("~".join(p.labels[j] for j in range(p.size) if class_map[j] == c)
                       for c in range(k))
    return Poset(k, mat, labels), class_map


@dataclass(frozen=True)
class UpperSemilattice:
    """Poset in which every pair has a least upper bound, plus a least element."""

    poset: Poset
    join: np.ndarray                     # int32 table, join[a,b] = index of a v b
    bottom: int

    def __post_init__(self):
        n = self.poset.size
        leq = self.poset.leq
        join = self.join
        for a in range(n):
            for b in range(n):
                j = join[a, b]
                if not (leq[a, j] and leq[b, j]):
                    raise NoLub(a, b)
                ub = leq[a] & leq[b]
                if (ub & ~leq[j]).any():
                    raise NoLub(a, b)
        if not leq[self.bottom].all():
            raise NoBottom()
        join.setflags(write=False)

    @property
    def size(self) -> int:
        return self.poset.size

    def label(self, i: int) -> str:
        return self.poset.label(i)


def compute_join_table(p: Poset) -> UpperSemilattice:
    """Scan for least upper bounds; raises NoLub/NoBottom on the first failure.

    Only posets are accepted: in a preorder, "least" is ambiguous up to
    mutual comparability, so quotient first.
    """
    if not isinstance(p, Poset):
        raise InputError("least-upper-bound scans need a poset; quotient the preorder first")
    n = p.size
    up = p.up_masks
    join = np.full((n, n), -1, dtype=np.int32)
    for a in range(n):
        for b in range(n):
            cand = np.uint64(up[a]) & np.uint64(up[b])
            if cand == 0:
                raise NoLub(a, b)
            found = -1
            for c in range(n):
                if (cand >> np.uint64(c)) & np.uint64(1):
                    if np.uint64(up[c]) & cand == cand:
                        found = c
                        break
            if found < 0:
                raise NoLub(a, b)
            join[a, b] = found
    bottoms = [i for i in range(n) if int(up[i]) == p.full_mask]
    if not bottoms:
        raise NoBottom()
    return UpperSemilattice(p, join, bottoms[0])


@dataclass(frozen=True)
class ImplicativeUsl:
    """Upper semilattice where arrow(a,b) = least {c : b <= a v c} always exists."""

    usl: UpperSemilattice
    arrow: np.ndarray

    def __post_init__(self):
        recomputed = _residual_table(self.usl)
        if not np.array_equal(recomputed, self.arrow):
            bad = np.argwhere(recomputed != self.arrow)[0]
            raise NoLeastResidual(int(bad[0]), int(bad[1]))
        self.arrow.setflags(write=False)

    @property
    def poset(self) -> Poset:
        return self.usl.poset

    @property
    def size(self) -> int:
        return self.usl.size

    @property
    def join(self) -> np.ndarray:
        return self.usl.join

    @property
    def bottom(self) -> int:
        return self.usl.bottom

    def label(self, i: int) -> str:
        return self.usl.label(i)


def _residual_table(u: UpperSemilattice) -> np.ndarray:
    n = u.size
    leq = u.poset.leq
    up = u.poset.up_masks
    arrow = np.full((n, n), -1, dtype=np.int32)
    for a in range(n):
        for b in range(n):
            cand = np.uint64(0)
            for c in range(n):
                if leq[b, u.join[a, c]]:
                    cand |= np.uint64(1) << np.uint64(c)
            if cand == 0:
                raise NoLeastResidual(a, b)
            found = -1
            for c in range(n):
                if (cand >> np.uint64(c)) & np.uint64(1):
                    if np.uint64(up[c]) & cand == cand:
                        found = c
                        break
            if found < 0:
                raise NoLeastResidual(a, b)
            arrow[a, b] = found
    return arrow


def compute_implication_table(u: UpperSemilattice) -> ImplicativeUsl:
    """Residual scan; raises NoLeastResidual on the first pair without one."""
    return ImplicativeUsl(u, _residual_table(u))


def _subset_label(mask: int, n: int) -> str:
    return "{" + ",".join(str(i + 1) for i in range(n) if mask >> i & 1) + "}"


def boolean_reverse_usl(n: int, cap: int = BOOLEAN_CAP) -> ImplicativeUsl:
    """Powerset of {1..n} ordered by reverse inclusion.

    Element index i is the subset with bit pattern i.  The order puts the
    full set at the bottom: a <= b iff a is a superset of b; join is
    intersection, and arrow(x, y) = y | ~x holds (verified by the residual
    scan on construction).
    """
    if n < 1:
        raise InputError("n must be >= 1")
    if n > cap:
        raise CapExceeded("boolean_reverse_usl", n, cap)
    size = 1 << n
    idx = np.arange(size)
    mat = (idx[:, None] & idx[None, :]) == idx[None, :]   # a >= b as sets
    labels = tuple(_subset_label(i, n) for i in range(size))
    poset = Poset(size, mat, labels)
    join = (idx[:, None] & idx[None, :]).astype(np.int32)
    usl = UpperSemilattice(poset, join, bottom=size - 1)
    return compute_implication_table(usl)


def boolean_inclusion_usl(n: int, cap: int = BOOLEAN_CAP) -> ImplicativeUsl:
    """Powerset of {1..n} under ordinary inclusion; join is union, bottom {}."""
    u = compute_join_table(canned_poset("boolean", n, cap=1 << cap))
    return compute_implication_table(u)


def canned_poset(name: str, k: int | None = None, cap: int = MAX_CARRIER) -> Poset:
    """Small named posets used throughout: chain(k), antichain(k), fork,
    diamond, binary_tree(k), boolean(k).

    binary_tree(k) is the set of 0/1-strings of length <= k under the
    prefix order (so binary_tree(1) is the fork).  boolean(k) is the
    powerset of {1..k} under inclusion, element index = bit pattern.
    """
    name = name.strip().lower()
    if name in ("fork", "diamond"):
        if k is not None:
            raise UnknownName(f"{name} takes no size parameter")
        if name == "fork":
            mat = np.eye(3, dtype=bool)
            mat[0, 1] = mat[0, 2] = True
            return Poset(3, mat, ("root", "leaf0", "leaf1"))
        mat = np.eye(4, dtype=bool)
        mat[0, 1] = mat[0, 2] = mat[0, 3] = True
        mat[1, 3] = mat[2, 3] = True
        return Poset(4, mat, ("bot", "a", "b", "top"))
    if k is None or k < 1:
        raise UnknownName(f"{name} needs a positive size parameter")
    if name == "chain":
        if k > cap:
            raise CapExceeded("chain", k, cap)
        mat = np.triu(np.ones((k, k), dtype=bool))
        return Poset(k, mat)
    if name == "antichain":
        if k > cap:
            raise CapExceeded("antichain", k, cap)
        return Poset(k, np.eye(k, dtype=bool))
    if name == "binary_tree":
        if k > BINARY_TREE_CAP:
            raise CapExceeded("binary_tree", k, BINARY_TREE_CAP)
        strings = [""]
        for d in range(1, k + 1):
            strings.extend("".join(s) for s in _binary_strings(d))
        index = {s: i for i, s in enumerate(strings)}
        n = len(strings)
        mat = np.zeros((n, n), dtype=bool)
        for s in strings:
            for t in strings:
                mat[index[s], index[t]] = t.startswith(s)
        labels = tuple(s if s else "e" for s in strings)
        return Poset(n, mat, labels)
    if name == "boolean":
        if k > BOOLEAN_CAP:
            raise CapExceeded("boolean", k, BOOLEAN_CAP)
        size = 1 << k
        idx = np.arange(size)
        mat = (idx[:, None] & idx[None, :]) == idx[:, None]   # a subset of b
        labels = tuple(_subset_label(i, k) for i in range(size))
        return Poset(size, mat, labels)
    raise UnknownName(name)


def _binary_strings(depth: int):
    from itertools import product
    return product("01", repeat=depth)


# --- JSON / DOT interchange -------------------------------------------------

def poset_to_json(p: Preorder) -> dict:
    pairs = [[int(i), int(j)] for i, j in np.argwhere(p.leq) if i != j]
    doc: dict = {"size": p.size, "leq": pairs}
    if p.labels:
        doc["labels"] = list(p.labels)
    return doc


def poset_from_json(doc: dict, *, require_poset: bool = True) -> Preorder:
    try:
        size = int(doc["size"])
    except (KeyError, TypeError, ValueError):
        raise InputError("poset JSON needs an integer 'size'")
    if size < 1 or size > MAX_CARRIER:
        raise InputError(f"size must be in 1..{MAX_CARRIER}")
    mat = np.eye(size, dtype=bool)
    for pair in doc.get("leq", []):
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise InputError(f"bad leq pair {pair!r}")
        i, j = int(pair[0]), int(pair[1])
        if not (0 <= i < size and 0 <= j < size):
            raise InputError(f"leq pair {pair!r} out of range")
        mat[i, j] = True
    labels = doc.get("labels")
    if labels is not None and len(labels) != size:
        raise InputError("labels length must equal size")
    labels = tuple(str(x) for x in labels) if labels else None
    cls = Poset if require_poset else Preorder
    return cls(size, mat, labels)


def usl_to_json(u: UpperSemilattice) -> dict:
    doc = poset_to_json(u.poset)
    doc["derive_join"] = True
    return doc


def usl_from_json(doc: dict) -> UpperSemilattice:
    poset = poset_from_json(doc)
    if doc.get("derive_join"):
        return compute_join_table(poset)
    triples = doc.get("join")
    if triples is None:
        raise InputError("usl JSON needs 'join' triples or 'derive_join': true")
    n = poset.size
    join = np.full((n, n), -1, dtype=np.int32)
    for a in range(n):
        join[a, a] = a
    for trip in triples:
        if not (isinstance(trip, (list, tuple)) and len(trip) == 3):
            raise InputError(f"bad join triple {trip!r}")
        a, b, c = (int(x) for x in trip)
        join[a, b] = c
        join[b, a] = c
    if (join < 0).any():
        a, b = np.argwhere(join < 0)[0]
        raise InputError(f"join table is missing pair ({a},{b})")
    up = poset.up_masks
    bottoms = [i for i in range(n) if int(up[i]) == poset.full_mask]
    if not bottoms:
        raise NoBottom()
    return UpperSemilattice(poset, join, bottoms[0])


def poset_to_dot(p: Poset, highlight: Iterable[int] = ()) -> str:
    """Hasse diagram (transitive reduction) in DOT, bottom-up."""
    hi = set(highlight)
    lines = ["digraph poset {", "  rankdir=BT;", "  node [shape=ellipse];"]
    for i in range(p.size):
        attrs = f'label="{p.label(i)}"'
        if i in hi:
            attrs += ", style=filled, fillcolor=lightblue"
        lines.append(f"  n{i} [{attrs}];")
    for i, j in p.covers():
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def load_json_file(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
    except OSError as exc:
        raise InputError(f"{path}: {exc}")
