"""Size caps for the exponential-scale operations.

Everything here is driven by one table so the limits, and the memory they
protect against, are documented in a single place.  Library functions enforce
the ``hard`` column; the CLI additionally keeps ``n`` at or below ``default``
unless ``--allow-large`` is passed.

The dominant cost is always a dense buffer of ``2**(n*n)`` machine words:

    n=4 ->   65_536 entries (int64 buffer:   0.5 MiB)
    n=5 -> 33_554_432 entries (int64 buffer: 256 MiB)

and lattice construction additionally materializes all matching-covered
graphs (|MC_4| = 7_443, |MC_5| ~ 6.1e6).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimitError


@dataclass(frozen=True)
class Cap:
    default: int
    hard: int
    note: str


CAPS: dict[str, Cap] = {
    "truth-table": Cap(4, 5, "dense 2^(n^2) byte table; n=5 -> 32 MiB"),
    "interpolate": Cap(4, 5, "dense 2^(n^2) int64 transform buffer; n=5 -> 256 MiB"),
    "poly-primal": Cap(4, 5, "streams MC_n; |MC_5| ~ 6.1e6 terms (~100 MiB sparse)"),
    "poly-dual": Cap(4, 5, "dense 2^(n^2) int64 superset-sum buffer; n=5 -> 256 MiB"),
    "poly-fourier": Cap(4, 4, "dense int64 buffer plus dyadic numerators"),
    "dual-coefficient": Cap(4, 5, "streams 2^(n^2-|E|) supergraph masks"),
    "enumerate-mc": Cap(4, 5, "streams 2^(n^2) masks through the MC filter"),
    "lattice": Cap(4, 4, "materializes MC_n plus pairwise cover scans; n=4 -> 7_444 nodes"),
    "lattice-dot": Cap(3, 3, "readability cap; 50 nodes / 135 edges at n=3"),
    "umbrella": Cap(4, 4, "enumerates MC supergraph masks of the argument"),
}


def require(op: str, n: int, allow_large: bool = False) -> None:
    """Raise :class:`ResourceLimitError` if ``n`` exceeds the cap for ``op``.

    ``allow_large=True`` lifts the limit from ``default`` to ``hard``; nothing
    lifts ``hard``.
    """
    cap = CAPS[op]
    limit = cap.hard if allow_large else cap.default
    if n > cap.hard:
        raise ResourceLimitError(
            f"{op}: n={n} exceeds the hard cap n<={cap.hard} ({cap.note})")
    if n > limit:
        raise ResourceLimitError(
            f"{op}: n={n} exceeds the default cap n<={cap.default}; "
            f"pass allow_large/--allow-large to go up to n<={cap.hard} ({cap.note})")


def require_hard(op: str, n: int) -> None:
    """Library-level check: only the hard cap applies."""
    require(op, n, allow_large=True)
