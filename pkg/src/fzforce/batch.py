"""Vectorised loopless closure kernels over every labelled digraph of a given order.

Row ``c`` of :func:`code_out_masks` is the digraph ``digraph_from_code(n, c)``.
These kernels exist for the exhaustive ``n <= 5`` sweeps (2**20 digraphs),
where the scalar engine is too slow; they are cross-checked against it.
"""

from __future__ import annotations

import itertools

import numpy as np

__all__ = [
    "code_out_masks",
    "oriented_out_masks",
    "in_masks_of",
    "batch_closure",
    "batch_zfs_table",
    "batch_is_critical",
    "batch_is_stalled",
    "batch_extremal_flags",
    "popcounts",
]


def _dtype(n: int):
    if n <= 8:
        return np.uint8
    if n <= 16:
        return np.uint16
    return np.int64


def popcounts(n: int) -> np.ndarray:
    return np.array([bin(m).count("1") for m in range(1 << n)], dtype=np.int8)


def code_out_masks(n: int, codes: np.ndarray | None = None) -> np.ndarray:
    """Out-neighbour bitsets, shape ``(len(codes), n)``, for digraph codes."""
    if codes is None:
        codes = np.arange(1 << (n * (n - 1)), dtype=np.int64)
    out = np.zeros((len(codes), n), dtype=np.int64)
    k = 0
    for u in range(n):
        for v in range(n):
            if u == v:
                continue
            out[:, u] |= ((codes >> k) & 1) << v
            k += 1
    return out.astype(_dtype(n))


def oriented_out_masks(n: int) -> np.ndarray:
    """Out-neighbour bitsets for all ``3**C(n,2)`` oriented-graph codes."""
    pairs = list(itertools.combinations(range(n), 2))
    codes = np.arange(3 ** len(pairs), dtype=np.int64)
    out = np.zeros((len(codes), n), dtype=np.int64)
    rest = codes.copy()
    for i, j in pairs:
        digit = rest % 3
        rest //= 3
        out[:, i] |= (digit == 1).astype(np.int64) << j
        out[:, j] |= (digit == 2).astype(np.int64) << i
    return out.astype(_dtype(n))


def in_masks_of(out: np.ndarray) -> np.ndarray:
    n = out.shape[1]
    inn = np.zeros_like(out)
    for u in range(n):
        for v in range(n):
            inn[:, v] |= (((out[:, u] >> v) & 1) << u).astype(out.dtype)
    return inn


def _single_bit(x: np.ndarray) -> np.ndarray:
    return (x != 0) & ((x & (x - x.dtype.type(1))) == 0)


def batch_closure(out: np.ndarray, s: int) -> np.ndarray:
    """Loopless closure of the fixed start set ``s`` in every digraph."""
    n = out.shape[1]
    filled = np.full(out.shape[0], s, dtype=out.dtype)
    while True:
        before = filled.copy()
        for v in range(n):
            e = out[:, v] & ~filled
            fire = (((filled >> v) & 1) == 1) & _single_bit(e)
            filled = np.where(fire, filled | e, filled)
        if np.array_equal(before, filled):
            return filled


def batch_zfs_table(out: np.ndarray) -> np.ndarray:
    """Boolean ``(N, 2**n)``: column ``s`` tells whether bitset ``s`` is a ZFS."""
    n = out.shape[1]
    full = (1 << n) - 1
    table = np.zeros((out.shape[0], 1 << n), dtype=bool)
    for s in range(1 << n):
        table[:, s] = batch_closure(out, s) == full
    return table


def batch_is_critical(out: np.ndarray, w: int) -> np.ndarray:
    n = out.shape[1]
    if w == 0:
        return np.zeros(out.shape[0], dtype=bool)
    ok = np.ones(out.shape[0], dtype=bool)
    for v in range(n):
        if w >> v & 1:
            continue
        ok &= ~_single_bit(out[:, v] & w)
    return ok


def batch_is_stalled(out: np.ndarray, s: int) -> np.ndarray:
    n = out.shape[1]
    ok = np.ones(out.shape[0], dtype=bool)
    for v in range(n):
        if not s >> v & 1:
            continue
        ok &= ~_single_bit(out[:, v] & (((1 << n) - 1) & ~s))
    return ok


def batch_extremal_flags(inn: np.ndarray) -> np.ndarray:
    """Vectorised in-neighbourhood tests; column 0/1/2 = F is n-1 / n-2 / n-3."""
    n = inn.shape[1]
    full = (1 << n) - 1
    src = (inn == 0).any(axis=1)
    twin = np.zeros(inn.shape[0], dtype=bool)
    for u, v in itertools.combinations(range(n), 2):
        twin |= (inn[:, u] & (full ^ 1 << v)) == (inn[:, v] & (full ^ 1 << u))
    triple = np.zeros(inn.shape[0], dtype=bool)
    for u, v, w in itertools.combinations(range(n), 3):
        bu, bv, bw = 1 << u, 1 << v, 1 << w
        a = (inn[:, u] & (full ^ (bv | bw)) & ~(inn[:, v] | inn[:, w])) == 0
        b = (inn[:, v] & (full ^ (bu | bw)) & ~(inn[:, u] | inn[:, w])) == 0
        c = (inn[:, w] & (full ^ (bu | bv)) & ~(inn[:, u] | inn[:, v])) == 0
        triple |= a & b & c
    flags = np.zeros((inn.shape[0], 3), dtype=bool)
    flags[:, 0] = src
    flags[:, 1] = ~src & twin
    flags[:, 2] = ~src & ~twin & triple
    return flags
