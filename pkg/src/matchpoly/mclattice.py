"""The lattice of matching-covered graphs (MC_n plus the empty bottom).

Ordered by edge-set containment this is a bounded graded lattice; node ranks
are cyclomatic number + 1, Moebius numbers alternate as (-1)^rank, and the
join/meet are edge union and the union of common contained perfect matchings.
Construction double-checks the rank/Moebius structure: Moebius numbers are
computed from the defining recursion and then verified against the sign
pattern, so building the lattice is itself a test of the theory.

Beyond the lattice object this module hosts the machinery for reasoning about
arbitrary graphs through their minimal matching-covered supergraphs: umbrellas
and the wildcard / surplus edge conditions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .bitgraph import BipartiteGraph, union_of_perfect_matchings
from .caps import require_hard
from .matchcov import is_matching_covered


@dataclass(frozen=True, eq=False)
class McLattice:
    """Immutable lattice: nodes ascending by mask (bottom first, top last)."""

    n: int
    masks: np.ndarray        # int64, strictly ascending, masks[0] == 0
    rank: np.ndarray         # int16 per node
    mobius: np.ndarray       # int64 per node
    cover_edges: np.ndarray  # int32 (k, 2): node indices (lower, upper)

    def __len__(self) -> int:
        return len(self.masks)

    def node_index(self, mask: int) -> int:
        idx = int(np.searchsorted(self.masks, mask))
        if idx >= len(self.masks) or self.masks[idx] != mask:
            raise ValueError(f"mask {mask:#x} is not a lattice node")
        return idx

    def is_node(self, mask: int) -> bool:
        idx = int(np.searchsorted(self.masks, mask))
        return idx < len(self.masks) and self.masks[idx] == mask

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return int(self.masks[-1])

    def graphs(self) -> Iterator[BipartiteGraph]:
        for m in self.masks.tolist():
            yield BipartiteGraph(self.n, m)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "nodes": [
                {"mask": f"{int(m):#x}", "rank": int(r), "mobius": int(mu)}
                for m, r, mu in zip(self.masks, self.rank, self.mobius)
            ],
            "cover_edges": [[int(a), int(b)] for a, b in self.cover_edges],
        }

    def to_dot(self) -> str:
        """Hasse diagram in DOT, one layer per rank, bottom at the bottom."""
        lines = [f"digraph mc_lattice_n{self.n} {{",
                 "  rankdir=BT;",
                 "  node [shape=box, fontname=\"monospace\"];"]
        for r in range(int(self.rank.max()) + 1):
            layer = np.nonzero(self.rank == r)[0]
            if layer.size == 0:
                continue
            decls = " ".join(
                f"\"{int(self.masks[i]):#x}\" [label=\"{int(self.masks[i]):#x}\\nrk {r}\"];"
                for i in layer)
            lines.append(f"  {{ rank=same; {decls} }}")
        for a, b in self.cover_edges:
            lines.append(f"  \"{int(self.masks[a]):#x}\" -> \"{int(self.masks[b]):#x}\";")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_lattice(n: int, threads: int | None = None) -> McLattice:
    """Materialize (MC_n + bottom, containment) with ranks, Moebius numbers
    and covering edges; n <= 4.

    Covers are containment pairs one rank apart (validated against the
    no-intermediate definition by the test suite at n <= 3).  Moebius numbers
    come from the bottom-up recursion and are then checked against
    (-1)^rank; a mismatch would falsify the Eulerian structure and raises.
    """
    require_hard("lattice", n)
    masks = np.concatenate([np.zeros(1, dtype=np.int64), _kernels.mc_masks(n)])
    chi = _kernels.chi_table(n)
    rank = np.zeros(len(masks), dtype=np.int16)
    rank[1:] = chi[masks[1:]].astype(np.int16) + 1

    # Moebius recursion in popcount order: mu(x) = -sum_{z subset x} mu(z)
    mobius = np.zeros(len(masks), dtype=np.int64)
    order = np.argsort(_kernels.popcount_array(masks), kind="stable")
    done_masks = np.empty(len(masks), dtype=np.int64)
    done_mu = np.empty(len(masks), dtype=np.int64)
    for count, idx in enumerate(order.tolist()):
        m = int(masks[idx])
        if count == 0:
            mu = 1
        else:
            below = (done_masks[:count] & ~m) == 0
            mu = -int(done_mu[:count][below].sum())
        mobius[idx] = mu
        done_masks[count] = m
        done_mu[count] = mu
    expected = np.where(rank % 2 == 0, 1, -1).astype(np.int64)
    if not np.array_equal(mobius, expected):
        bad = int(np.nonzero(mobius != expected)[0][0])
        raise RuntimeError(
            f"Moebius number at node {int(masks[bad]):#x} is {int(mobius[bad])}, "
            f"not (-1)^rank; the lattice is not behaving as an Eulerian one")

    # covers: containment + rank gap one, scanned rank layer against layer
    by_rank = [np.nonzero(rank == r)[0] for r in range(int(rank.max()) + 1)]
    pairs: list[tuple[int, int]] = []
    for r in range(len(by_rank) - 1):
        lows, highs = by_rank[r], by_rank[r + 1]
        if lows.size == 0 or highs.size == 0:
            continue
        low_masks = masks[lows]
        for hi_idx in highs.tolist():
            hm = int(masks[hi_idx])
            contained = (low_masks & ~hm) == 0
            pairs.extend((int(lo), hi_idx) for lo in lows[contained])
    cover_edges = np.array(sorted(pairs), dtype=np.int32).reshape(-1, 2)

    for arr in (masks, rank, mobius, cover_edges):
        arr.flags.writeable = False
    return McLattice(n, masks, rank, mobius, cover_edges)


def _require_node(g: BipartiteGraph) -> None:
    if not g.is_empty and not is_matching_covered(g):
        raise ValueError(f"{g} is not a lattice node (neither empty nor matching-covered)")


def join(g1: BipartiteGraph, g2: BipartiteGraph) -> BipartiteGraph:
    """Least upper bound: the edge-set union."""
    if g1.n != g2.n:
        raise ValueError("join needs graphs of the same side size")
    _require_node(g1)
    _require_node(g2)
    return BipartiteGraph(g1.n, g1.mask | g2.mask)


def meet(g1: BipartiteGraph, g2: BipartiteGraph) -> BipartiteGraph:
    """Greatest lower bound: the union of all perfect matchings lying in both
    graphs, i.e. of the matchings of their edge intersection."""
    if g1.n != g2.n:
        raise ValueError("meet needs graphs of the same side size")
    _require_node(g1)
    _require_node(g2)
    return union_of_perfect_matchings(BipartiteGraph(g1.n, g1.mask & g2.mask))


def interval_mobius_sum(lat: McLattice, g: BipartiteGraph | int) -> int:
    """Sum of Moebius numbers over all nodes above (and including) ``g``.

    Zero for every node except the top: the signature fact of an Eulerian
    lattice, and the engine behind the vanishing dual coefficients.
    """
    mask = g.mask if isinstance(g, BipartiteGraph) else int(g)
    lat.node_index(mask)
    above = (mask & ~lat.masks) == 0
    return int(lat.mobius[above].sum())


# ---------------------------------------------------------------------------
# Umbrellas, wildcard and surplus edges
# ---------------------------------------------------------------------------

def _mc_supergraph_masks(g: BipartiteGraph) -> np.ndarray:
    require_hard("umbrella", g.n)
    table = _kernels.mc_table(g.n)
    free = g.n * g.n - g.edge_count
    sups = _kernels.supergraph_masks(g.n, g.mask, 0, 1 << free)
    return sups[table[sups]]


def umbrella(g: BipartiteGraph) -> list[BipartiteGraph]:
    """Minimal matching-covered supergraphs of ``g`` (an antichain); n <= 4."""
    if g.is_empty:
        raise ValueError("umbrellas are defined for nonempty graphs")
    sups = _mc_supergraph_masks(g)
    order = np.argsort(_kernels.popcount_array(sups), kind="stable")
    minimal: list[int] = []
    for m in sups[order].tolist():
        if not any((u & ~m) == 0 for u in minimal):
            minimal.append(m)
    return [BipartiteGraph(g.n, m) for m in sorted(minimal)]


def has_incomplete_umbrella(g: BipartiteGraph) -> bool:
    """True iff some edge of K_{n,n} appears in no umbrella member.

    An empty umbrella (no matching-covered supergraph at all) counts as
    incomplete, which keeps the implication toward vanishing dual
    coefficients valid in the vacuous case.
    """
    if g.is_empty:
        raise ValueError("umbrellas are defined for nonempty graphs")
    union = 0
    for h in umbrella(g):
        union |= h.mask
    return union != (1 << (g.n * g.n)) - 1


def is_wildcard_edge(g: BipartiteGraph, a: int, b: int) -> bool:
    """True iff dropping (a, b) from any matching-covered supergraph of
    g + (a, b) lands back in MC_n; vacuously true with no such supergraph.

    (a, b) must be a non-edge of g.  Evaluated by scanning supergraph masks
    against the dense MC table, so n <= 4.
    """
    if g.has_edge(a, b):
        raise ValueError(f"({a},{b}) is an edge of the graph; wildcard edges are non-edges")
    require_hard("umbrella", g.n)
    ebit = 1 << ((a - 1) * g.n + (b - 1))
    base = BipartiteGraph(g.n, g.mask | ebit)
    table = _kernels.mc_table(g.n)
    sups = _kernels.supergraph_masks(g.n, base.mask, 0, 1 << (g.n * g.n - base.edge_count))
    covered = sups[table[sups]]
    return bool(np.all(table[covered ^ ebit]))


def is_surplus_edge(g: BipartiteGraph, a: int, b: int) -> bool:
    """Hall-with-surplus on the left sets that pin down (a, b).

    True iff every proper left subset X containing a with b outside N(X)
    has |N(X)| > |X|; a non-edge-only notion like wildcard edges.
    """
    if g.has_edge(a, b):
        raise ValueError(f"({a},{b}) is an edge of the graph; surplus edges are non-edges")
    n = g.n
    rows = [g.row(i) for i in range(1, n + 1)]
    abit = 1 << (a - 1)
    bbit = 1 << (b - 1)
    for xs in range(1 << n):
        if not xs & abit or xs == (1 << n) - 1:
            continue
        nb = 0
        for i in range(n):
            if (xs >> i) & 1:
                nb |= rows[i]
        if not nb & bbit and nb.bit_count() <= xs.bit_count():
            return False
    return True
