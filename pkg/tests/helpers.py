"""Brute-force oracles, deliberately independent of the package internals.

Everything here works from first principles (permutation scans, union-find,
subset enumeration) so that agreement with the package is evidence, not
circularity.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from matchpoly import BipartiteGraph


def graphs(n: int):
    for mask in range(1 << (n * n)):
        yield BipartiteGraph(n, mask)


def nonempty_graphs(n: int):
    for mask in range(1, 1 << (n * n)):
        yield BipartiteGraph(n, mask)


def oracle_has_pm(n: int, mask: int) -> bool:
    rows = [(mask >> (n * i)) & ((1 << n) - 1) for i in range(n)]
    return any(all((rows[i] >> perm[i]) & 1 for i in range(n))
               for perm in itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def perm_masks(n: int) -> tuple[int, ...]:
    """Masks of all perfect matchings of K_{n,n}."""
    out = []
    for perm in itertools.permutations(range(n)):
        m = 0
        for i, j in enumerate(perm):
            m |= 1 << (n * i + j)
        out.append(m)
    return tuple(out)


def oracle_pm_union(n: int, mask: int) -> int:
    """Union of all perfect matchings contained in the graph."""
    out = 0
    for pm in perm_masks(n):
        if pm & ~mask == 0:
            out |= pm
    return out


def oracle_is_mc_by_subsets(n: int, mask: int) -> bool:
    """Literal definition: some nonempty subset of the graph's matchings
    unions to the whole edge set."""
    pms = [pm for pm in perm_masks(n) if pm & ~mask == 0]
    for r in range(1, 1 << len(pms)):
        union = 0
        rr = r
        while rr:
            low = rr & -rr
            union |= pms[low.bit_length() - 1]
            rr ^= low
        if union == mask:
            return True
    return False


def oracle_chi(n: int, mask: int) -> int:
    """Cyclomatic number via union-find over all 2n vertices."""
    parent = list(range(2 * n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = 0
    for i in range(n):
        for j in range(n):
            if (mask >> (n * i + j)) & 1:
                edges += 1
                a, b = find(i), find(n + j)
                if a != b:
                    parent[a] = b
    comps = len({find(x) for x in range(2 * n)})
    return edges - 2 * n + comps


def oracle_evaluate(terms: dict[int, int], mask: int) -> int:
    return sum(c for s, c in terms.items() if s & ~mask == 0)
