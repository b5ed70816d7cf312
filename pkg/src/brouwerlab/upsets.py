"""Upward-closed subsets of a finite poset/preorder and their algebra.

An UpSet is a membership mask over the host carrier.  The collection of all
up-sets, ordered by reverse inclusion, is a Brouwer algebra: meet is union,
join is intersection, and the co-implication has the closed form

    X -> Y = {z : every w >= z with w in X is in Y}

which equals the brute-force union of all up-sets Z with Z & X <= Y (the
brute-force form survives here only as a test oracle).  Over an implicative
upper semilattice the join and arrow also have the elementwise forms
{x+y} and {z : forall x in X, z+x in Y}; both are verified against the mask
forms exhaustively in the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import get_kernels
from .errors import CapExceeded, HostMismatch, NotDownwardClosed
from .order import ImplicativeUsl, Poset, Preorder

UPSET_CAP = 10 ** 6
_FILTER_SCAN_LIMIT = 22          # above this, 2**size scans give way to DFS


def _same_host(a: Preorder, b: Preorder) -> bool:
    return a is b or a == b


@dataclass(frozen=True)
class UpSet:
    """Upward-closed subset of a host poset, stored as a bitmask."""

    host: Preorder
    mask: int

    def __post_init__(self):
        up = self.host.up_masks
        closure = 0
        for i in range(self.host.size):
            if self.mask >> i & 1:
                closure |= int(up[i])
        if closure != self.mask:
            raise ValueError(f"mask {self.mask:#x} is not upward closed over its host")

    def members(self) -> list[int]:
        return [i for i in range(self.host.size) if self.mask >> i & 1]

    def minimal_elements(self) -> list[int]:
        """Antichain view: members with no strictly smaller member."""
        down = self.host.leq.T
        out = []
        for i in self.members():
            if not any(down[i, j] and j != i and self.mask >> j & 1
                       for j in range(self.host.size)):
                out.append(i)
        return out

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)


@dataclass(frozen=True)
class DownSet:
    """Downward-closed subset of a host poset."""

    host: Preorder
    mask: int

    def __post_init__(self):
        down = self.host.leq.T
        for i in range(self.host.size):
            if self.mask >> i & 1:
                for j in range(self.host.size):
                    if down[i, j] and not self.mask >> j & 1:
                        raise NotDownwardClosed(i, j)

    def members(self) -> list[int]:
        return [i for i in range(self.host.size) if self.mask >> i & 1]

    def complement_mask(self) -> int:
        return self.host.full_mask & ~self.mask

    def __contains__(self, i: int) -> bool:
        return bool(self.mask >> i & 1)


def downward_closure(p: Preorder, members) -> DownSet:
    down = p.leq.T
    mask = 0
    for i in members:
        for j in range(p.size):
            if down[i, j]:
                mask |= 1 << j
    return DownSet(p, mask)


def upward_closure(p: Preorder, members) -> UpSet:
    """Least up-set containing the given members."""
    mask = 0
    for i in members:
        mask |= int(p.up_masks[i])
    return UpSet(p, mask)


def principal_upset(p: Preorder, i: int) -> UpSet:
    return UpSet(p, int(p.up_masks[i]))


def enumerate_upset_masks(p: Preorder, cap: int = UPSET_CAP) -> np.ndarray:
    """All up-set masks of the host, sorted ascending (deterministic indices).

    Small carriers are filtered with the backend kernel over all 2**size
    subsets; larger ones fall back to a backtracking enumeration that only
    visits valid up-sets.  Raises CapExceeded when the count passes `cap`.
    """
    if p.size <= _FILTER_SCAN_LIMIT:
        masks = get_kernels().filter_upset_masks(p.up_masks, p.size)
        if masks.shape[0] > cap:
            raise CapExceeded("up-set enumeration", int(masks.shape[0]), cap)
        return masks
    return _enumerate_upsets_dfs(p, cap)


def _enumerate_upsets_dfs(p: Preorder, cap: int) -> np.ndarray:
    sym = p.leq & p.leq.T & ~np.eye(p.size, dtype=bool)
    if sym.any():
        # up-sets of a preorder are unions of equivalence classes; enumerate
        # on the quotient poset and expand class masks back.
        from .order import quotient_to_poset
        q, class_map = quotient_to_poset(p)
        expand = [0] * q.size
        for elem, cls in enumerate(class_map):
            expand[cls] |= 1 << elem
        masks = []
        for qm in _enumerate_upsets_dfs(q, cap) if q.size > _FILTER_SCAN_LIMIT \
                else get_kernels().filter_upset_masks(q.up_masks, q.size):
            qm = int(qm)
            mask = 0
            for c in range(q.size):
                if qm >> c & 1:
                    mask |= expand[c]
            masks.append(mask)
        if len(masks) > cap:
            raise CapExceeded("up-set enumeration", len(masks), cap)
        return np.array(sorted(masks), dtype=np.uint64)
    # Poset case: decide membership top-down.  Elements nearer the top have
    # strictly smaller up-sets, so ascending popcount order guarantees every
    # strict upper of i is decided before i, making "include i" legal iff
    # all strict uppers are already in the mask.
    n = p.size
    up = [int(m) for m in p.up_masks]
    order = sorted(range(n), key=lambda i: (bin(up[i]).count("1"), i))
    found: list[int] = []

    def rec(k: int, mask: int):
        if k == n:
            found.append(mask)
            if len(found) > cap:
                raise CapExceeded("up-set enumeration", len(found), cap)
            return
        i = order[k]
        rec(k + 1, mask)                       # exclude i
        strict = up[i] & ~(1 << i)
        if strict & mask == strict:
            rec(k + 1, mask | (1 << i))        # include i

    rec(0, 0)
    return np.array(sorted(found), dtype=np.uint64)


def enumerate_upsets(p: Preorder, cap: int = UPSET_CAP) -> list[UpSet]:
    return [UpSet(p, int(m)) for m in enumerate_upset_masks(p, cap)]


def upset_meet(x: UpSet, y: UpSet) -> UpSet:
    """Greatest lower bound in the reverse-inclusion order: set union."""
    if not _same_host(x.host, y.host):
        raise HostMismatch()
    return UpSet(x.host, x.mask | y.mask)


def upset_join(x: UpSet, y: UpSet) -> UpSet:
    """Least upper bound in the reverse-inclusion order: set intersection."""
    if not _same_host(x.host, y.host):
        raise HostMismatch()
    return UpSet(x.host, x.mask & y.mask)


def upset_arrow(x: UpSet, y: UpSet) -> UpSet:
    """Closed-form co-implication {z : forall w >= z, w in X -> w in Y}."""
    if not _same_host(x.host, y.host):
        raise HostMismatch()
    return UpSet(x.host, arrow_mask(x.host, x.mask, y.mask))


def arrow_mask(p: Preorder, xmask: int, ymask: int) -> int:
    out = 0
    for z in range(p.size):
        if int(p.up_masks[z]) & xmask & ~ymask == 0:
            out |= 1 << z
    return out


def upset_arrow_bruteforce(x: UpSet, y: UpSet, cap: int = UPSET_CAP) -> UpSet:
    """Oracle form: union of all up-sets Z with Z & X below Y."""
    if not _same_host(x.host, y.host):
        raise HostMismatch()
    acc = 0
    for z in enumerate_upset_masks(x.host, cap):
        z = int(z)
        if z & x.mask & ~y.mask == 0:
            acc |= z
    return UpSet(x.host, acc)


def usl_upset_join(u: ImplicativeUsl, x: UpSet, y: UpSet) -> UpSet:
    """Elementwise join {a+b : a in X, b in Y}; equals the intersection."""
    if not (_same_host(x.host, u.poset) and _same_host(y.host, u.poset)):
        raise HostMismatch()
    mask = 0
    for a in x.members():
        for b in y.members():
            mask |= 1 << int(u.join[a, b])
    return UpSet(x.host, mask)


def usl_upset_arrow(u: ImplicativeUsl, x: UpSet, y: UpSet) -> UpSet:
    """Elementwise arrow {z : forall a in X, z+a in Y}."""
    if not (_same_host(x.host, u.poset) and _same_host(y.host, u.poset)):
        raise HostMismatch()
    mask = 0
    xs = x.members()
    for z in range(u.size):
        if all(y.mask >> int(u.join[z, a]) & 1 for a in xs):
            mask |= 1 << z
    return UpSet(x.host, mask)
