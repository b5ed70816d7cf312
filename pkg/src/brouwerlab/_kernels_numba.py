"""Numba @njit kernel implementations.

Same signatures and same deterministic results as _kernels_numpy; see that
module for the contracts.  Loops are written scalar-style so numba compiles
them to tight machine code; nogil lets chunked scans overlap across threads.
"""

from __future__ import annotations

import numpy as np
from numba import njit

BACKEND = "numba"

_JIT = dict(cache=False, nogil=True)


@njit(**_JIT)
def filter_upset_masks(up_masks, size):
    total = np.int64(1) << size
    out = np.empty(total, np.uint64)
    k = 0
    for raw in range(total):
        m = np.uint64(raw)
        cl = np.uint64(0)
        for i in range(size):
            if (m >> np.uint64(i)) & np.uint64(1):
                cl |= up_masks[i]
        if cl == m:
            out[k] = m
            k += 1
    return out[:k].copy()


@njit(**_JIT)
def upset_arrow_masks(row_masks, col_masks, up_masks, size):
    r = row_masks.shape[0]
    c = col_masks.shape[0]
    out = np.zeros((r, c), np.uint64)
    for i in range(r):
        xi = row_masks[i]
        for j in range(c):
            noty = ~col_masks[j]
            acc = np.uint64(0)
            for z in range(size):
                if up_masks[z] & xi & noty == np.uint64(0):
                    acc |= np.uint64(1) << np.uint64(z)
            out[i, j] = acc
    return out


@njit(**_JIT)
def check_glb(leq, meet):
    m = leq.shape[0]
    res = np.empty(3, np.int64)
    for a in range(m):
        for b in range(m):
            g = meet[a, b]
            if leq[g, a] == 0 or leq[g, b] == 0:
                res[0], res[1], res[2] = a, b, -1
                return res
            for c in range(m):
                if leq[c, a] and leq[c, b] and leq[c, g] == 0:
                    res[0], res[1], res[2] = a, b, c
                    return res
    res[0], res[1], res[2] = -1, -1, -1
    return res


@njit(**_JIT)
def check_lub(leq, join):
    m = leq.shape[0]
    res = np.empty(3, np.int64)
    for a in range(m):
        for b in range(m):
            j = join[a, b]
            if leq[a, j] == 0 or leq[b, j] == 0:
                res[0], res[1], res[2] = a, b, -1
                return res
            for c in range(m):
                if leq[a, c] and leq[b, c] and leq[j, c] == 0:
                    res[0], res[1], res[2] = a, b, c
                    return res
    res[0], res[1], res[2] = -1, -1, -1
    return res


@njit(**_JIT)
def check_distributivity(meet, join):
    m = meet.shape[0]
    res = np.empty(3, np.int64)
    for a in range(m):
        for b in range(m):
            for c in range(m):
                if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                    res[0], res[1], res[2] = a, b, c
                    return res
    res[0], res[1], res[2] = -1, -1, -1
    return res


@njit(**_JIT)
def check_residuation(leq, join, arrow):
    m = leq.shape[0]
    res = np.empty(3, np.int64)
    for a in range(m):
        for b in range(m):
            ab = arrow[a, b]
            for c in range(m):
                lhs = leq[b, join[a, c]]
                rhs = leq[ab, c]
                if lhs != rhs:
                    res[0], res[1], res[2] = a, b, c
                    return res
    res[0], res[1], res[2] = -1, -1, -1
    return res


@njit(**_JIT)
def check_meet_arrow_law(meet, join, arrow):
    m = meet.shape[0]
    res = np.empty(3, np.int64)
    for a in range(m):
        for b in range(m):
            ab = meet[a, b]
            for c in range(m):
                if arrow[ab, c] != join[arrow[a, c], arrow[b, c]]:
                    res[0], res[1], res[2] = a, b, c
                    return res
    res[0], res[1], res[2] = -1, -1, -1
    return res


@njit(**_JIT)
def meet_irreducible_flags(leq, meet):
    m = leq.shape[0]
    flags = np.ones(m, np.uint8)
    for x in range(m):
        done = False
        for y in range(m):
            if done:
                break
            if y == x or leq[x, y] == 0:
                continue
            for z in range(m):
                if z == x or leq[x, z] == 0:
                    continue
                if meet[y, z] == x:
                    flags[x] = 0
                    done = True
                    break
    return flags


@njit(**_JIT)
def join_irreducible_flags(leq, join):
    m = leq.shape[0]
    flags = np.ones(m, np.uint8)
    for x in range(m):
        done = False
        for y in range(m):
            if done:
                break
            if y == x or leq[y, x] == 0:
                continue
            for z in range(m):
                if z == x or leq[z, x] == 0:
                    continue
                if join[y, z] == x:
                    flags[x] = 0
                    done = True
                    break
    return flags


@njit(**_JIT)
def identity_scan(code, arg, meet, join, arrow, top, bottom, n_atoms, size, start, stop):
    nops = code.shape[0]
    stack = np.empty(nops + 1, np.int64)
    digits = np.empty(max(n_atoms, 1), np.int64)
    for k in range(start, stop):
        rem = k
        for j in range(n_atoms - 1, -1, -1):
            digits[j] = rem % size
            rem //= size
        sp = 0
        for t in range(nops):
            op = code[t]
            if op == 0:
                stack[sp] = digits[arg[t]]
                sp += 1
            elif op == 5:
                stack[sp] = arg[t]
                sp += 1
            elif op == 4:
                stack[sp - 1] = arrow[stack[sp - 1], top]
            else:
                y = stack[sp - 1]
                x = stack[sp - 2]
                sp -= 1
                if op == 1:
                    stack[sp - 1] = join[x, y]
                elif op == 2:
                    stack[sp - 1] = meet[x, y]
                else:
                    stack[sp - 1] = arrow[x, y]
        if stack[0] != bottom:
            return k
    return -1
