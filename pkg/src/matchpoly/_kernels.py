"""Dense numpy kernels over the 2^(n^2) cube of edge masks.

Bit layout matches :mod:`matchpoly.bitgraph`: masks are integers whose bit
``(i-1)*n + (j-1)`` is edge ``(i, j)``, so a mask doubles as an index into any
of the dense tables below.  The tables for n <= 4 are tiny and cached; n = 5
work (33.5M masks) is chunked so the resident set stays a few hundred MiB.

Thread counts come from the caller (CLI ``--threads`` or MATCHPOLY_THREADS);
chunks are assembled in index order, so results never depend on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

CHUNK_BITS = 22  # 4M masks per chunk: the sweet spot between calls and cache


def default_threads() -> int:
    env = os.environ.get("MATCHPOLY_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def map_chunks(fn: Callable[[int, int], object], total: int,
               threads: int | None = None, chunk: int = 1 << CHUNK_BITS) -> list:
    """Apply ``fn(lo, hi)`` over [0, total) in fixed chunks, results in order."""
    ranges = _chunk_ranges(total, chunk)
    t = threads if threads is not None else default_threads()
    if t <= 1 or len(ranges) <= 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=t) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))


def popcount_array(arr: np.ndarray) -> np.ndarray:
    out = np.zeros(arr.shape, dtype=np.int64)
    a = arr.astype(np.int64, copy=True)
    while a.any():
        out += a & 1
        a >>= 1
    return out


# ---------------------------------------------------------------------------
# Perfect-matching truth table
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _column_transition_table(n: int) -> np.ndarray:
    """T[S, r] = bitset of column sets S|{c} reachable by matching one more
    left vertex with neighbour row r."""
    size = 1 << n
    t = np.zeros((size, size), dtype=np.uint32)
    for s in range(size):
        free = [c for c in range(n) if not (s >> c) & 1]
        for r in range(size):
            acc = 0
            for c in free:
                if (r >> c) & 1:
                    acc |= 1 << (s | (1 << c))
            t[s, r] = acc
    return t


@lru_cache(maxsize=None)
def truth_table(n: int) -> np.ndarray:
    """uint8 array of length 2^(n^2): 1 iff the mask's graph has a perfect
    matching.

    Row-profile DP: after processing left vertices 1..k the state is the set
    of right-vertex subsets they can be matched onto, a 2^n-bit set that fits
    a uint32 for n <= 5.  The last row is specialized to the single full-set
    bit, which keeps the big level cheap.
    """
    if n > 5:
        raise ValueError("dense truth tables stop at n=5")
    size = 1 << n
    full = size - 1
    trans = _column_transition_table(n)
    level = np.array([1], dtype=np.uint32)  # only the empty set reachable
    for _ in range(n - 1):
        width = level.shape[0]
        nxt = np.zeros(size * width, dtype=np.uint32)
        rows = nxt.reshape(size, width)
        for s in range(size):
            sel = ((level >> np.uint32(s)) & np.uint32(1)).astype(bool)
            tr = trans[s]
            for r in range(size):
                if tr[r]:
                    rows[r][sel] |= tr[r]
        level = nxt
    width = level.shape[0]
    out = np.zeros(size * width, dtype=np.uint8)
    rows = out.reshape(size, width)
    need_bit = [((level >> np.uint32(full ^ (1 << c))) & np.uint32(1)).astype(np.uint8)
                for c in range(n)]
    for r in range(size):
        acc = np.zeros(width, dtype=np.uint8)
        for c in range(n):
            if (r >> c) & 1:
                acc |= need_bit[c]
        rows[r] = acc
    out.flags.writeable = False
    return out


# ---------------------------------------------------------------------------
# Row/column deletion on vectors of masks
# ---------------------------------------------------------------------------

def remove_row(masks: np.ndarray, n: int, i: int) -> np.ndarray:
    """Drop 0-based row ``i`` from masks of n rows of n bits."""
    low = masks & ((1 << (n * i)) - 1)
    high = (masks >> (n * (i + 1))) << (n * i)
    return low | high


def remove_col(masks: np.ndarray, n_rows: int, n_cols: int, j: int) -> np.ndarray:
    """Drop 0-based column ``j`` from masks of n_rows rows of n_cols bits."""
    out = np.zeros_like(masks)
    rowfull = (1 << n_cols) - 1
    low = (1 << j) - 1
    keep_high = ((1 << (n_cols - 1)) - 1) & ~low
    for r in range(n_rows):
        row = (masks >> (n_cols * r)) & rowfull
        out |= ((row & low) | ((row >> 1) & keep_high)) << ((n_cols - 1) * r)
    return out


# ---------------------------------------------------------------------------
# Matching-covered membership
# ---------------------------------------------------------------------------

def mc_flags_for_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Boolean MC membership for an arbitrary vector of masks.

    MC == nonempty, has a perfect matching, and every present edge is
    allowed; the allowed test for edge (i, j) is a perfect matching of the
    graph with row i and column j deleted, read off the (n-1)-table.
    """
    masks = np.asarray(masks, dtype=np.int32 if n * n <= 31 else np.int64)
    flags = truth_table(n)[masks].astype(bool)
    if n > 1:
        small = truth_table(n - 1)
        for i in range(n):
            rowless = remove_row(masks, n, i)
            for j in range(n):
                reduced = remove_col(rowless, n - 1, n, j)
                present = ((masks >> (n * i + j)) & 1).astype(bool)
                flags &= ~present | small[reduced].astype(bool)
    flags &= masks != 0
    return flags


def mc_flags_for_range(n: int, lo: int, hi: int) -> np.ndarray:
    """Boolean MC membership for the contiguous mask range [lo, hi)."""
    dtype = np.int32 if n * n <= 31 else np.int64
    return mc_flags_for_masks(n, np.arange(lo, hi, dtype=dtype))


@lru_cache(maxsize=None)
def mc_table(n: int) -> np.ndarray:
    """Dense boolean MC_n membership table, n <= 4."""
    if n > 4:
        raise ValueError("dense MC tables stop at n=4; use mc_flags_for_range")
    out = mc_flags_for_range(n, 0, 1 << (n * n))
    out.flags.writeable = False
    return out


@lru_cache(maxsize=None)
def mc_masks(n: int) -> np.ndarray:
    """Sorted int64 array of all MC_n masks, n <= 4."""
    out = np.nonzero(mc_table(n))[0].astype(np.int64)
    out.flags.writeable = False
    return out


def stream_mc_masks(n: int, threads: int | None = None) -> Iterator[np.ndarray]:
    """Yield sorted int64 arrays of MC_n masks, chunk by chunk.

    n <= 4 serves straight from the cached table; n = 5 runs the chunked
    filter, lazily when single-threaded and as an ordered parallel map
    otherwise.
    """
    if n <= 4:
        yield mc_masks(n)
        return
    total = 1 << (n * n)

    def work(lo: int, hi: int) -> np.ndarray:
        flags = mc_flags_for_range(n, lo, hi)
        return np.nonzero(flags)[0].astype(np.int64) + lo

    t = threads if threads is not None else default_threads()
    if t <= 1:
        for lo, hi in _chunk_ranges(total, 1 << CHUNK_BITS):
            yield work(lo, hi)
    else:
        yield from map_chunks(work, total, threads=t)


def count_mc_masks(n: int, threads: int | None = None) -> int:
    if n <= 4:
        return int(mc_table(n).sum())
    counts = map_chunks(lambda lo, hi: int(mc_flags_for_range(n, lo, hi).sum()),
                        1 << (n * n), threads)
    return sum(counts)


# ---------------------------------------------------------------------------
# Component counts / cyclomatic numbers on vectors of masks
# ---------------------------------------------------------------------------

def component_counts(n: int, masks: np.ndarray) -> np.ndarray:
    """|C(G)| for each mask, counting all 2n vertices.

    Left rows are merged to their component's right-neighbour closure by
    repeated pairwise union sweeps (n sweeps suffice: each sweep halves the
    number of separate pieces along any merge chain).
    """
    rowfull = (1 << n) - 1
    rows = [((masks >> (n * i)) & rowfull).astype(np.int64) for i in range(n)]
    nonzero = [r != 0 for r in rows]
    for _ in range(n):
        for i in range(n):
            for j in range(i + 1, n):
                overlap = (rows[i] & rows[j]) != 0
                union = rows[i] | rows[j]
                rows[i] = np.where(overlap, union, rows[i])
                rows[j] = np.where(overlap, union, rows[j])
    covered = rows[0].copy()
    for i in range(1, n):
        covered |= rows[i]
    iso_right = n - popcount_array(covered)
    iso_left = np.zeros(len(masks), dtype=np.int64)
    for nz in nonzero:
        iso_left += (~nz).astype(np.int64)
    distinct = np.zeros(len(masks), dtype=np.int64)
    for i in range(n):
        first = nonzero[i].astype(np.int64)
        for j in range(i):
            first = np.where(nonzero[j] & (rows[j] == rows[i]), 0, first)
        distinct += first
    return distinct + iso_left + iso_right


def chi_values(n: int, masks: np.ndarray) -> np.ndarray:
    """Cyclomatic numbers |E| - 2n + |C| for each mask."""
    return popcount_array(masks) - 2 * n + component_counts(n, masks)


@lru_cache(maxsize=None)
def chi_table(n: int) -> np.ndarray:
    """Dense cyclomatic-number table for all masks, n <= 4."""
    if n > 4:
        raise ValueError("dense chi tables stop at n=4; use chi_values")
    out = chi_values(n, np.arange(1 << (n * n), dtype=np.int64)).astype(np.int8)
    out.flags.writeable = False
    return out


# ---------------------------------------------------------------------------
# In-place subset transforms (one pass per variable)
# ---------------------------------------------------------------------------

def _passes(values: np.ndarray, nvars: int, op: Callable[[np.ndarray, np.ndarray], None]) -> None:
    for v in range(nvars):
        step = 1 << v
        view = values.reshape(-1, 2 * step)
        op(view[:, step:], view[:, :step])


def mobius_transform(values: np.ndarray, nvars: int) -> None:
    """In place: values[S] <- sum_{T subseteq S} (-1)^{|S \\ T|} values[T]."""
    def op(hi, lo):
        hi -= lo
    _passes(values, nvars, op)


def zeta_transform(values: np.ndarray, nvars: int) -> None:
    """In place: values[S] <- sum_{T subseteq S} values[T]."""
    def op(hi, lo):
        hi += lo
    _passes(values, nvars, op)


def superset_sum_transform(values: np.ndarray, nvars: int) -> None:
    """In place: values[S] <- sum_{T supseteq S} values[T]."""
    def op(hi, lo):
        lo += hi
    _passes(values, nvars, op)


def check_transform_headroom(values: np.ndarray) -> None:
    """Guard against int64 overflow: every intermediate of the transforms is
    a +/-1 combination of distinct inputs, so the l1 norm bounds everything."""
    l1 = int(np.abs(values.astype(np.int64, copy=False)).sum())
    if l1 >= 1 << 62:
        raise OverflowError("transform values exceed the int64 fast path")


def supergraph_masks(n: int, base: int, lo: int, hi: int) -> np.ndarray:
    """Masks base | spread(k) for k in [lo, hi), spreading counter bits over
    the zero bits of ``base`` in ascending bit order."""
    free = [b for b in range(n * n) if not (base >> b) & 1]
    ks = np.arange(lo, hi, dtype=np.int64)
    out = np.full(hi - lo, base, dtype=np.int64)
    for pos, b in enumerate(free):
        out |= ((ks >> pos) & 1) << b
    return out
