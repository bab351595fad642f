"""The bipartite-perfect-matching function and its three polynomial faces.

``bpm_truth`` is the function itself; ``primal_polynomial`` is its exact
{0,1}-basis representation built straight from the matching-covered
enumeration (coefficient (-1)^chi); ``dual_polynomial`` flips the roles of
0 and 1.  Around these sit the structural classifiers that explain which dual
coefficients vanish (total order, Hall-violator covers, umbrellas), exact
counting formulas, and the decision-tree lower bounds the polynomials imply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels
from .bitgraph import (
    BipartiteGraph,
    connected_components,
    has_perfect_matching,
    union_of_perfect_matchings,
)
from .caps import require_hard
from .matchcov import is_matching_covered
from .polyalg import MultilinearPoly, TruthTable, deg2, dualize


# ---------------------------------------------------------------------------
# Truth table and the two polynomials
# ---------------------------------------------------------------------------

def bpm_truth(n: int, threads: int | None = None) -> TruthTable:
    """Truth table of "the mask's graph has a perfect matching" over all
    2^(n^2) masks; n <= 5."""
    require_hard("truth-table", n)
    return TruthTable(n, _kernels.truth_table(n))


def primal_polynomial(n: int, threads: int | None = None) -> MultilinearPoly:
    """The {0,1}-basis polynomial, built from the matching-covered graphs.

    One term per MC graph with coefficient (-1)^chi; no interpolation is
    involved, which is exactly what lets the test suite compare this against
    the interpolation of :func:`bpm_truth` as two independent routes.
    """
    require_hard("poly-primal", n)
    mask_blocks: list[np.ndarray] = []
    coeff_blocks: list[np.ndarray] = []
    for block in _kernels.stream_mc_masks(n, threads):
        if block.size == 0:
            continue
        if n <= 4:
            chi = _kernels.chi_table(n)[block].astype(np.int64)
        else:
            chi = _kernels.chi_values(n, block)
        mask_blocks.append(block)
        coeff_blocks.append(np.where(chi % 2 == 0, 1, -1).astype(np.int64))
    if not mask_blocks:
        return MultilinearPoly.zero(n)
    return MultilinearPoly(n, np.concatenate(mask_blocks), np.concatenate(coeff_blocks))


def dual_polynomial(n: int, threads: int | None = None) -> MultilinearPoly:
    """Polynomial of x -> 1 - BPM(1-x), via the superset-sum dualization."""
    require_hard("poly-dual", n)
    return dualize(primal_polynomial(n, threads))


# ---------------------------------------------------------------------------
# Total-order classification
# ---------------------------------------------------------------------------

class TotalOrderClass(Enum):
    NOT_TOTALLY_ORDERED = "NotTotallyOrdered"
    STRICTLY_TOTALLY_ORDERED = "StrictlyTotallyOrdered"
    TOTALLY_ORDERED_NON_STRICT = "TotallyOrderedNonStrict"

    def __str__(self) -> str:
        return self.value


def classify_total_order(g: BipartiteGraph) -> TotalOrderClass:
    """Do the left neighbourhoods form a containment chain?

    Sorting by degree descending is enough: any valid chain ordering is
    degree-sorted, and equal degrees inside a chain force equal sets.  Strict
    means every containment is proper and the smallest set is nonempty.
    """
    rows = sorted((g.row(i) for i in range(1, g.n + 1)),
                  key=lambda r: -r.bit_count())
    strict = rows[-1] != 0
    for hi, lo in zip(rows, rows[1:]):
        if lo & ~hi:
            return TotalOrderClass.NOT_TOTALLY_ORDERED
        if lo == hi:
            strict = False
    return (TotalOrderClass.STRICTLY_TOTALLY_ORDERED if strict
            else TotalOrderClass.TOTALLY_ORDERED_NON_STRICT)


# ---------------------------------------------------------------------------
# Dual coefficients, one graph at a time
# ---------------------------------------------------------------------------

def dual_coefficient(g: BipartiteGraph, threads: int | None = None) -> int:
    """Exact dual coefficient of a nonempty graph, n <= 5.

    Streams the matching-covered supergraphs of g and applies the signed
    count (-1)^(|E|+1) * sum (-1)^chi, so no dense dual polynomial is ever
    materialized; at n <= 4 the dense MC/chi tables short-circuit the scan.
    """
    n = g.n
    if g.is_empty:
        raise ValueError("dual coefficients are defined for nonempty graphs")
    require_hard("dual-coefficient", n)
    free = n * n - g.edge_count
    sign = -1 if g.edge_count % 2 == 0 else 1  # (-1)^(|E|+1)
    total = 0
    chunk = 1 << _kernels.CHUNK_BITS
    for lo in range(0, 1 << free, chunk):
        hi = min(lo + chunk, 1 << free)
        sups = _kernels.supergraph_masks(n, g.mask, lo, hi)
        if n <= 4:
            flags = _kernels.mc_table(n)[sups]
            covered = sups[flags]
            chi = _kernels.chi_table(n)[covered].astype(np.int64)
        else:
            flags = _kernels.mc_flags_for_masks(n, sups)
            covered = sups[flags]
            chi = _kernels.chi_values(n, covered)
        if covered.size:
            total += int(np.where(chi % 2 == 0, 1, -1).sum())
    return sign * total


# ---------------------------------------------------------------------------
# Hall violators and their covers
# ---------------------------------------------------------------------------

def enumerate_hall_violators(n: int) -> list[BipartiteGraph]:
    """All complete bipartite K_{X,Y} with |X| + |Y| = n + 1, ascending by
    mask.  Their presence in the complement is what blocks a matching."""
    if n < 2:
        raise ValueError("Hall violators need n >= 2")
    masks = []
    for xs in range(1, 1 << n):
        ky = n + 1 - xs.bit_count()
        if not (1 <= ky <= n):
            continue
        row_positions = [i for i in range(n) if (xs >> i) & 1]
        for ys in range(1, 1 << n):
            if ys.bit_count() != ky:
                continue
            m = 0
            for i in row_positions:
                m |= ys << (n * i)
            masks.append(m)
    return [BipartiteGraph(n, m) for m in sorted(masks)]


def is_hvc(g: BipartiteGraph) -> bool:
    """Is g a union of Hall violators it contains?

    Equivalent to every edge lying inside some contained violator: for edge
    (a, b), scan the subsets Y of N(a) through b and test whether the set of
    left vertices dominating Y is large enough to reach |X| + |Y| = n + 1.
    """
    if g.is_empty:
        raise ValueError("HVC membership is defined for nonempty graphs")
    n = g.n
    rows = [g.row(i) for i in range(1, n + 1)]
    for a in range(n):
        row = rows[a]
        j = row
        while j:
            bbit = j & -j
            # enumerate Y subseteq row with b in Y
            rest = row ^ bbit
            covered = False
            ys = rest
            while True:  # iterate submasks of rest, descending, plus bbit
                y = ys | bbit
                ky = y.bit_count()
                if ky <= n:
                    kx = sum(1 for r in rows if r & y == y)
                    if kx + ky >= n + 1:
                        covered = True
                        break
                if ys == 0:
                    break
                ys = (ys - 1) & rest
            if not covered:
                return False
            j ^= bbit
    return True


def hvc_lower_bound_witness(n: int) -> BipartiteGraph:
    """The dense Hall-violator-covered graph whose whole up-set stays covered.

    For n = 2k: all edges from the first k left vertices, plus all edges into
    the first k-1 right vertices.  Missing edges each extend to a violator,
    so every supergraph is covered too; that up-set check runs exhaustively
    for n <= 4 before the witness is returned.  Odd n is rejected.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("the witness construction is defined for even n >= 2")
    k = n // 2
    full_row = (1 << n) - 1
    low_cols = (1 << (k - 1)) - 1
    mask = 0
    for i in range(k):
        mask |= full_row << (n * i)
    for i in range(k, n):
        mask |= low_cols << (n * i)
    witness = BipartiteGraph(n, mask)
    if not is_hvc(witness):
        raise RuntimeError("witness construction failed its own HVC membership")
    if n <= 4:
        free = n * n - witness.edge_count
        for sup in _kernels.supergraph_masks(n, mask, 0, 1 << free).tolist():
            if not is_hvc(BipartiteGraph(n, sup)):
                raise RuntimeError(f"supergraph {sup:#x} of the witness left HVC_{n}")
    return witness


# ---------------------------------------------------------------------------
# Counting
# ---------------------------------------------------------------------------

def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind, S(m, k) = k*S(m-1, k) + S(m-1, k-1)."""
    if k < 0 or m < 0 or k > m:
        raise ValueError("need 0 <= k <= m")
    row = [1] + [0] * k  # row for m = 0
    for i in range(1, m + 1):
        new = [0] * (k + 1)
        for j in range(1, min(i, k) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return row[k]


def fubini(m: int) -> int:
    """Ordered Bell number: sum over k of k! * S(m, k)."""
    return sum(math.factorial(k) * stirling2(m, k) for k in range(m + 1))


def totally_ordered_count(n: int) -> int:
    """Number of totally ordered graphs in K_{n,n}:
    sum over k of ((k-1)! * S(n+1, k))^2."""
    if n < 1:
        raise ValueError("n must be positive")
    return sum((math.factorial(k - 1) * stirling2(n + 1, k)) ** 2
               for k in range(1, n + 2))


def pm_probability(n: int, threads: int | None = None) -> Fraction:
    """Probability a uniform subgraph of K_{n,n} has a perfect matching.

    Evaluated as the exact dyadic sum over matching-covered graphs of
    (-1)^chi / 2^|E|, then cross-checked against the direct truth-table count
    (two genuinely different computations; a mismatch raises)."""
    require_hard("truth-table", n)
    nn = n * n
    numerator = 0
    for block in _kernels.stream_mc_masks(n, threads):
        if block.size == 0:
            continue
        if n <= 4:
            chi = _kernels.chi_table(n)[block].astype(np.int64)
        else:
            chi = _kernels.chi_values(n, block)
        sizes = _kernels.popcount_array(block)
        for parity, sgn in ((0, 1), (1, -1)):
            counts = np.bincount(sizes[chi % 2 == parity], minlength=nn + 1)
            numerator += sgn * sum(int(c) << (nn - e)
                                   for e, c in enumerate(counts.tolist()) if c)
    value = Fraction(numerator, 1 << nn)
    direct = Fraction(int(_kernels.truth_table(n).sum()), 1 << nn)
    if value != direct:
        raise RuntimeError(
            f"matching-covered sum gives {value}, truth table gives {direct}")
    return value


# ---------------------------------------------------------------------------
# Decision-tree lower bounds
# ---------------------------------------------------------------------------

def _log3(x: int) -> float:
    return math.log(x) / math.log(3)


@dataclass(frozen=True)
class BoundsReport:
    """Query-complexity lower bounds extracted from the two polynomials.

    Count-based fields are None above n = 4, where only the factorial bound
    2*log3(n!) stays cheap to state.
    """

    n: int
    deg2_value: int | None
    xor_lb: int | None
    and_lb: float | None
    or_lb_mon: float | None
    or_lb_factorial: float
    monomial_count_primal: int | None
    monomial_count_dual: int | None

    def to_json_dict(self) -> dict:
        def fmt(x):
            if isinstance(x, float):
                return float(f"{x:.12g}")
            return x
        return {
            "n": self.n,
            "deg2": self.deg2_value,
            "xor_lb": self.xor_lb,
            "and_lb": fmt(self.and_lb),
            "or_lb_mon": fmt(self.or_lb_mon),
            "or_lb_factorial": fmt(self.or_lb_factorial),
            "monomials_primal": self.monomial_count_primal,
            "monomials_dual": self.monomial_count_dual,
        }


def bounds_report(n: int, threads: int | None = None) -> BoundsReport:
    """XOR/AND/OR decision-tree lower bounds at side size n.

    xor = the GF(2) degree (evasiveness number), and = log3 of the primal
    monomial count, or = log3 of the dual monomial count plus the closed-form
    2*log3(n!) that needs no enumeration.
    """
    or_factorial = 2 * _log3(math.factorial(n))
    if n > 4:
        return BoundsReport(n, None, None, None, None, or_factorial, None, None)
    primal = primal_polynomial(n, threads)
    dual = dual_polynomial(n, threads)
    d2 = deg2(primal)
    return BoundsReport(
        n=n,
        deg2_value=d2,
        xor_lb=d2,
        and_lb=_log3(len(primal)),
        or_lb_mon=_log3(len(dual)),
        or_lb_factorial=or_factorial,
        monomial_count_primal=len(primal),
        monomial_count_dual=len(dual),
    )


# ---------------------------------------------------------------------------
# Structure of graphs with a matching outside MC_n
# ---------------------------------------------------------------------------

def appendix_a_zero_test(g: BipartiteGraph) -> bool:
    """Structural certificate that a matchable non-MC graph has dual
    coefficient zero.

    Looks at the union of all perfect matchings of g: either some component
    of that union is not a complete bipartite graph, or all are and some
    ordered component pair has a partially-filled slice of cross edges in g.
    Either pattern yields a wildcard edge, hence the zero coefficient.
    """
    if not has_perfect_matching(g):
        raise ValueError("test requires a graph with a perfect matching")
    if is_matching_covered(g):
        raise ValueError("test requires a graph outside MC_n")
    n = g.n
    union = union_of_perfect_matchings(g)
    comps = _nontrivial_components(union)
    for lefts, rights in comps:
        want = _bits(rights)
        for i in lefts:
            if union.row(i) != want:
                return True  # component is not complete bipartite
    for l1, r1 in comps:
        for l2, r2 in comps:
            if (l1, r1) == (l2, r2):
                continue
            slice_bits = _bits(r2)
            total = len(l1) * len(r2)
            present = sum((g.row(i) & slice_bits).bit_count() for i in l1)
            if 0 < present < total:
                return True  # proper nonempty cross slice
    return False


def _nontrivial_components(g: BipartiteGraph) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    return [(ls, rs) for ls, rs in connected_components(g) if ls and rs]


def _bits(indices: tuple[int, ...]) -> int:
    m = 0
    for j in indices:
        m |= 1 << (j - 1)
    return m


# ---------------------------------------------------------------------------
# Coefficient-grouped monomial summaries
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _side_permutations(n: int) -> tuple[tuple[int, ...], ...]:
    import itertools
    return tuple(itertools.permutations(range(n)))


@lru_cache(maxsize=None)
def _row_permute_table(n: int) -> np.ndarray:
    """table[p, r] = the n-bit row r with its columns permuted by
    permutation index p."""
    perms = _side_permutations(n)
    table = np.zeros((len(perms), 1 << n), dtype=np.int64)
    for p, tau in enumerate(perms):
        for r in range(1 << n):
            out = 0
            for j in range(n):
                if (r >> j) & 1:
                    out |= 1 << tau[j]
            table[p, r] = out
    return table


def _transpose_mask(n: int, mask: int) -> int:
    out = 0
    for i in range(n):
        for j in range(n):
            if (mask >> (n * i + j)) & 1:
                out |= 1 << (n * j + i)
    return out


def canonical_form(g: BipartiteGraph) -> int:
    """Smallest mask reachable by permuting the two sides independently and
    optionally swapping them: a full isomorphism invariant for subgraphs of
    K_{n,n}."""
    n = g.n
    rowfull = (1 << n) - 1
    perms = _side_permutations(n)
    col_table = _row_permute_table(n)
    best = g.mask
    for mask in (g.mask, _transpose_mask(n, g.mask)):
        rows = [(mask >> (n * i)) & rowfull for i in range(n)]
        for sigma in perms:
            picked = [rows[sigma[i]] for i in range(n)]
            for p in range(len(perms)):
                cand = 0
                tab = col_table[p]
                for i in range(n):
                    cand |= int(tab[picked[i]]) << (n * i)
                if cand < best:
                    best = cand
    return best


def monomial_summary(p: MultilinearPoly) -> list[dict]:
    """Group a polynomial's monomials by coefficient value.

    One row per distinct coefficient, ascending, with the number of monomials
    carrying it and the number of isomorphism classes (independent side
    permutations plus side swap) among their graphs.  Coefficients are
    isomorphism-invariant here, so the classes partition each group.
    """
    groups: dict[int, set[int]] = {}
    counts: dict[int, int] = {}
    for mask, coeff in p.items():
        counts[coeff] = counts.get(coeff, 0) + 1
        groups.setdefault(coeff, set()).add(
            canonical_form(BipartiteGraph(p.n, mask)))
    return [
        {"coeff": c, "monomials": counts[c], "isomorphism_classes": len(groups[c])}
        for c in sorted(counts)
    ]


# ---------------------------------------------------------------------------
# Claim driver
# ---------------------------------------------------------------------------

def verify_theorem(n: int, which: str):
    """Run one named verification claim at side size n; see
    :mod:`matchpoly.verify` for the registry."""
    from . import verify
    return verify.run_claim(which, n)
