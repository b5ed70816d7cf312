"""Pure-numpy kernel implementations.

Reference semantics for the numba backend: every function here must return
bit-identical results to its _kernels_numba twin (witnesses are always the
lexicographically first violating tuple in (a, b, c) scan order).  Masks are
uint64 bitsets over poset carriers (size <= 63); tables are int32 row-major.
"""

from __future__ import annotations

import numpy as np

BACKEND = "numpy"


def _none3() -> np.ndarray:
    return np.array([-1, -1, -1], dtype=np.int64)


def filter_upset_masks(up_masks: np.ndarray, size: int) -> np.ndarray:
    """All upward-closed subsets of a carrier, as sorted uint64 masks.

    Scans every subset of the carrier; callers guard 2**size beforehand.
    A mask m is up-closed iff the union of up[i] over i in m equals m.
    """
    total = 1 << size
    masks = np.arange(total, dtype=np.uint64)
    closure = np.zeros(total, dtype=np.uint64)
    one = np.uint64(1)
    for i in range(size):
        bit = ((masks >> np.uint64(i)) & one).astype(bool)
        closure |= np.where(bit, up_masks[i], np.uint64(0))
    return masks[closure == masks]


def upset_arrow_masks(row_masks: np.ndarray, col_masks: np.ndarray,
                      up_masks: np.ndarray, size: int) -> np.ndarray:
    """arrow_mask[i,j] = {z : up[z] & X_i & ~Y_j == 0} over up-set masks."""
    r, c = row_masks.shape[0], col_masks.shape[0]
    out = np.zeros((r, c), dtype=np.uint64)
    chunk = max(1, (1 << 22) // max(c, 1))
    for lo in range(0, r, chunk):
        hi = min(r, lo + chunk)
        xi = row_masks[lo:hi, None]
        notyj = ~col_masks[None, :]
        acc = np.zeros((hi - lo, c), dtype=np.uint64)
        for z in range(size):
            ok = (np.uint64(up_masks[z]) & xi & notyj) == np.uint64(0)
            acc |= np.where(ok, np.uint64(1) << np.uint64(z), np.uint64(0))
        out[lo:hi] = acc
    return out


def check_glb(leq: np.ndarray, meet: np.ndarray) -> np.ndarray:
    """First (a,b,c) where meet[a,b] is not the greatest lower bound.

    c == -1 flags a bound violation (meet[a,b] not below a and b); otherwise
    c is a common lower bound not below meet[a,b].  All -1 when the table is
    correct.
    """
    m = leq.shape[0]
    rng = np.arange(m)
    lb = leq.astype(bool)
    for a in range(m):
        g = meet[a]
        bound_bad = ~(lb[g, a] & lb[g, rng])
        wit = (lb[:, a:a + 1] & lb) & ~lb[:, g]
        wit_any = wit.any(axis=0)
        bad = bound_bad | wit_any
        if bad.any():
            b = int(np.nonzero(bad)[0][0])
            if bound_bad[b]:
                return np.array([a, b, -1], dtype=np.int64)
            c = int(np.nonzero(wit[:, b])[0][0])
            return np.array([a, b, c], dtype=np.int64)
    return _none3()


def check_lub(leq: np.ndarray, join: np.ndarray) -> np.ndarray:
    """First (a,b,c) where join[a,b] is not the least upper bound (dual of check_glb)."""
    m = leq.shape[0]
    rng = np.arange(m)
    lb = leq.astype(bool)
    for a in range(m):
        j = join[a]
        bound_bad = ~(lb[a, j] & lb[rng, j])
        wit = (lb[a][:, None] & lb.T) & ~lb[j].T
        wit_any = wit.any(axis=0)
        bad = bound_bad | wit_any
        if bad.any():
            b = int(np.nonzero(bad)[0][0])
            if bound_bad[b]:
                return np.array([a, b, -1], dtype=np.int64)
            c = int(np.nonzero(wit[:, b])[0][0])
            return np.array([a, b, c], dtype=np.int64)
    return _none3()


def check_distributivity(meet: np.ndarray, join: np.ndarray) -> np.ndarray:
    """First (a,b,c) violating a ^ (b v c) == (a ^ b) v (a ^ c)."""
    m = meet.shape[0]
    for a in range(m):
        lhs = meet[a][join]                       # [b, c]
        rhs = join[np.ix_(meet[a], meet[a])]      # [b, c]
        viol = lhs != rhs
        if viol.any():
            b, c = np.argwhere(viol)[0]
            return np.array([a, int(b), int(c)], dtype=np.int64)
    return _none3()


def check_residuation(leq: np.ndarray, join: np.ndarray, arrow: np.ndarray) -> np.ndarray:
    """First (a,b,c) violating (b <= a v c) <=> (a->b <= c)."""
    m = leq.shape[0]
    lb = leq.astype(bool)
    for a in range(m):
        lhs = lb[:, join[a]]          # [b, c] : b <= join[a, c]
        rhs = lb[arrow[a]]            # [b, c] : arrow[a, b] <= c
        viol = lhs != rhs
        if viol.any():
            b, c = np.argwhere(viol)[0]
            return np.array([a, int(b), int(c)], dtype=np.int64)
    return _none3()


def check_meet_arrow_law(meet: np.ndarray, join: np.ndarray, arrow: np.ndarray) -> np.ndarray:
    """First (a,b,c) violating (a ^ b) -> c == (a->c) v (b->c)."""
    m = meet.shape[0]
    for a in range(m):
        lhs = arrow[meet[a]]                      # [b, c]
        rhs = join[arrow[a][None, :], arrow]      # [b, c]
        viol = lhs != rhs
        if viol.any():
            b, c = np.argwhere(viol)[0]
            return np.array([a, int(b), int(c)], dtype=np.int64)
    return _none3()


def meet_irreducible_flags(leq: np.ndarray, meet: np.ndarray) -> np.ndarray:
    """flags[x] = 1 iff no y,z > x exist with x == meet[y,z] (raw predicate)."""
    m = leq.shape[0]
    strict = leq.astype(bool) & ~np.eye(m, dtype=bool)
    flags = np.ones(m, dtype=np.uint8)
    for x in range(m):
        above = np.nonzero(strict[x])[0]
        if above.size and (meet[np.ix_(above, above)] == x).any():
            flags[x] = 0
    return flags


def join_irreducible_flags(leq: np.ndarray, join: np.ndarray) -> np.ndarray:
    """flags[x] = 1 iff no y,z < x exist with x == join[y,z] (raw predicate)."""
    m = leq.shape[0]
    strict = leq.astype(bool) & ~np.eye(m, dtype=bool)
    flags = np.ones(m, dtype=np.uint8)
    for x in range(m):
        below = np.nonzero(strict[:, x])[0]
        if below.size and (join[np.ix_(below, below)] == x).any():
            flags[x] = 0
    return flags


def identity_scan(code: np.ndarray, arg: np.ndarray, meet: np.ndarray, join: np.ndarray,
                  arrow: np.ndarray, top: int, bottom: int, n_atoms: int, size: int,
                  start: int, stop: int) -> int:
    """First valuation index in [start, stop) whose value is not `bottom`.

    Valuation index k encodes atom values in mixed radix `size`, atom 0 the
    most significant digit.  The program is a postfix stack machine:
      code 0: push atom arg[t];  1: AND (lattice join);  2: OR (lattice meet);
      3: IMP (arrow);  4: NEG (arrow to top);  5: push constant arg[t].
    The bottom element is the "valid" value; returns -1 when every valuation
    in range is valid.
    """
    if start >= stop:
        return -1
    idx = np.arange(start, stop, dtype=np.int64)
    digits = []
    for j in range(n_atoms):
        power = size ** (n_atoms - 1 - j)
        digits.append(((idx // power) % size).astype(np.int64))
    stack: list[np.ndarray] = []
    n = idx.shape[0]
    for t in range(code.shape[0]):
        op = int(code[t])
        if op == 0:
            stack.append(digits[int(arg[t])])
        elif op == 5:
            stack.append(np.full(n, int(arg[t]), dtype=np.int64))
        elif op == 4:
            x = stack.pop()
            stack.append(arrow[x, top].astype(np.int64))
        else:
            y = stack.pop()
            x = stack.pop()
            table = join if op == 1 else (meet if op == 2 else arrow)
            stack.append(table[x, y].astype(np.int64))
    vals = stack.pop()
    bad = np.nonzero(vals != bottom)[0]
    return int(idx[bad[0]]) if bad.size else -1
