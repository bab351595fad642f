"""Exact sparse multilinear polynomial algebra over the n^2 edge variables.

Three coefficient bases appear here:

* the {0,1} basis (``MultilinearPoly``, signed integer coefficients),
* its dual with 0 and 1 swapped (also ``MultilinearPoly``),
* the {1,-1} basis (``DyadicPoly``): every coefficient is an integer
  numerator over one shared power-of-two denominator, which is exact because
  the basis change only ever divides by two.

Monomials are keyed by edge-set bitmask (layout of :mod:`matchpoly.bitgraph`),
so a polynomial's term mask doubles as the mask of the graph its monomial
corresponds to.  Transforms run as one in-place dense pass per variable;
coefficients stay in the int64 fast path, guarded by an l1-norm headroom check
(an overflow would need an l1 norm of 2^62, far beyond any n <= 5 object).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np

from . import _kernels
from .bitgraph import BipartiteGraph
from .caps import require_hard


def _as_readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.flags.writeable = False
    return arr


class TruthTable:
    """Dense Boolean function table over all 2^(n^2) edge masks."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: np.ndarray):
        if bits.shape != (1 << (n * n),):
            raise ValueError(f"truth table for n={n} needs 2^{n * n} bits, got {bits.shape}")
        vals = np.asarray(bits, dtype=np.uint8)
        if vals.size and not np.all((vals == 0) | (vals == 1)):
            raise ValueError("truth table entries must be 0 or 1")
        self.n = n
        self.bits = _as_readonly(vals)

    def __getitem__(self, mask: int) -> int:
        return int(self.bits[mask])

    def popcount(self) -> int:
        return int(self.bits.sum())

    def dual(self) -> "TruthTable":
        """Table of x -> 1 - f(1 - x): reverse the index, flip the output."""
        full = len(self.bits) - 1
        return TruthTable(self.n, 1 - self.bits[full ^ np.arange(len(self.bits))])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, TruthTable) and self.n == other.n
                and np.array_equal(self.bits, other.bits))

    __hash__ = None  # type: ignore[assignment]


class MultilinearPoly:
    """Sparse integer-coefficient multilinear polynomial.

    Stored as parallel arrays (masks ascending, coefficients nonzero); two
    polynomials that agree as functions on the cube are identical here, which
    is what makes term-for-term comparisons meaningful.
    """

    __slots__ = ("n", "masks", "coeffs")

    def __init__(self, n: int, masks: np.ndarray, coeffs: np.ndarray):
        masks = np.asarray(masks, dtype=np.int64)
        coeffs = np.asarray(coeffs, dtype=np.int64)
        if masks.shape != coeffs.shape or masks.ndim != 1:
            raise ValueError("masks and coeffs must be parallel 1-d arrays")
        if masks.size:
            if masks.min() < 0 or masks.max() >= 1 << (n * n):
                raise ValueError("term mask outside the variable range")
            if np.any(np.diff(masks) <= 0):
                raise ValueError("term masks must be strictly ascending")
            if np.any(coeffs == 0):
                raise ValueError("zero coefficients may not be stored")
        self.n = n
        self.masks = _as_readonly(masks)
        self.coeffs = _as_readonly(coeffs)

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[int, int]) -> "MultilinearPoly":
        items = sorted((m, c) for m, c in terms.items() if c != 0)
        masks = np.fromiter((m for m, _ in items), dtype=np.int64, count=len(items))
        coeffs = np.fromiter((c for _, c in items), dtype=np.int64, count=len(items))
        return cls(n, masks, coeffs)

    @classmethod
    def zero(cls, n: int) -> "MultilinearPoly":
        return cls(n, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64))

    @property
    def nvars(self) -> int:
        return self.n * self.n

    @property
    def terms(self) -> dict[int, int]:
        return {int(m): int(c) for m, c in zip(self.masks, self.coeffs)}

    def coeff(self, mask: int) -> int:
        idx = int(np.searchsorted(self.masks, mask))
        if idx < len(self.masks) and self.masks[idx] == mask:
            return int(self.coeffs[idx])
        return 0

    def items(self) -> Iterator[tuple[int, int]]:
        for m, c in zip(self.masks, self.coeffs):
            yield int(m), int(c)

    def __len__(self) -> int:
        return len(self.masks)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, MultilinearPoly) and self.n == other.n
                and np.array_equal(self.masks, other.masks)
                and np.array_equal(self.coeffs, other.coeffs))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MultilinearPoly(n={self.n}, terms={len(self)})"


class DyadicPoly:
    """Multilinear polynomial whose coefficients are numerator / 2^k with one
    shared exponent k, normalized so some numerator is odd (or k = 0)."""

    __slots__ = ("n", "shared_exponent", "masks", "numerators")

    def __init__(self, n: int, shared_exponent: int, masks: np.ndarray, numerators: np.ndarray):
        masks = np.asarray(masks, dtype=np.int64)
        numerators = np.asarray(numerators, dtype=np.int64)
        if masks.shape != numerators.shape or masks.ndim != 1:
            raise ValueError("masks and numerators must be parallel 1-d arrays")
        if shared_exponent < 0:
            raise ValueError("shared exponent must be nonnegative")
        if masks.size:
            if np.any(np.diff(masks) <= 0):
                raise ValueError("term masks must be strictly ascending")
            if np.any(numerators == 0):
                raise ValueError("zero numerators may not be stored")
            # pull common powers of two into the exponent
            odd = numerators | 0
            shift = 0
            while shift < shared_exponent and not np.any(odd & 1):
                odd >>= 1
                shift += 1
            if shift:
                numerators = numerators >> shift
                shared_exponent -= shift
        else:
            shared_exponent = 0
        self.n = n
        self.shared_exponent = shared_exponent
        self.masks = _as_readonly(masks)
        self.numerators = _as_readonly(numerators)

    def coeff(self, mask: int) -> Fraction:
        idx = int(np.searchsorted(self.masks, mask))
        if idx < len(self.masks) and self.masks[idx] == mask:
            return Fraction(int(self.numerators[idx]), 1 << self.shared_exponent)
        return Fraction(0)

    def items(self) -> Iterator[tuple[int, int]]:
        for m, c in zip(self.masks, self.numerators):
            yield int(m), int(c)

    def __len__(self) -> int:
        return len(self.masks)

    def evaluate_signs(self, negative_mask: int) -> Fraction:
        """Exact value at the +/-1 point whose -1 coordinates are the set bits
        of ``negative_mask``."""
        parity = _kernels.popcount_array(self.masks & negative_mask) & 1
        total = int(np.where(parity == 1, -self.numerators, self.numerators).sum())
        return Fraction(total, 1 << self.shared_exponent)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, DyadicPoly) and self.n == other.n
                and self.shared_exponent == other.shared_exponent
                and np.array_equal(self.masks, other.masks)
                and np.array_equal(self.numerators, other.numerators))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"DyadicPoly(n={self.n}, terms={len(self)}, /2^{self.shared_exponent})"


# ---------------------------------------------------------------------------
# Transforms
# ---------------------------------------------------------------------------

def interpolate(table: TruthTable) -> MultilinearPoly:
    """The unique multilinear polynomial representing the table.

    Signed subset (Moebius) transform, one in-place pass per variable:
    a_S = sum over T subseteq S of (-1)^{|S minus T|} f(T).
    """
    n = table.n
    require_hard("interpolate", n)
    buf = table.bits.astype(np.int64)
    _kernels.check_transform_headroom(buf)
    _kernels.mobius_transform(buf, n * n)
    nz = np.nonzero(buf)[0]
    return MultilinearPoly(n, nz.astype(np.int64), buf[nz])


def evaluate_all(p: MultilinearPoly) -> np.ndarray:
    """Dense vector of p's values on every 0/1 input, by subset-sum."""
    require_hard("interpolate", p.n)
    buf = np.zeros(1 << p.nvars, dtype=np.int64)
    buf[p.masks] = p.coeffs
    _kernels.check_transform_headroom(buf)
    _kernels.zeta_transform(buf, p.nvars)
    return buf


def to_truth_table(p: MultilinearPoly) -> TruthTable:
    """Evaluate everywhere and repackage; rejects non-0/1-valued polynomials."""
    vals = evaluate_all(p)
    if vals.size and (vals.min() < 0 or vals.max() > 1):
        raise ValueError("polynomial is not 0/1-valued on the cube")
    return TruthTable(p.n, vals.astype(np.uint8))


def _require_boolean(p: MultilinearPoly, assume_boolean: bool) -> None:
    if assume_boolean:
        return
    vals = evaluate_all(p)
    if vals.size and (vals.min() < 0 or vals.max() > 1):
        bad = int(np.nonzero((vals < 0) | (vals > 1))[0][0])
        raise ValueError(
            f"polynomial is not 0/1-valued (value {int(vals[bad])} at mask {bad:#x})")


def evaluate(p: MultilinearPoly, g: BipartiteGraph | int) -> int:
    """Exact value of p on the 0/1 input given by a graph (or raw mask)."""
    mask = g.mask if isinstance(g, BipartiteGraph) else int(g)
    if isinstance(g, BipartiteGraph) and g.n != p.n:
        raise ValueError(f"graph has n={g.n}, polynomial has n={p.n}")
    inside = (p.masks & ~mask) == 0
    return int(p.coeffs[inside].sum())


def dualize(p: MultilinearPoly, assume_boolean: bool = False) -> MultilinearPoly:
    """Polynomial of the dual function x -> 1 - f(1-x).

    Superset sums with alternating signs: the dual coefficient at S is
    (-1)^{|S|+1} * sum over T supseteq S of a_T, plus 1 on the constant term.
    Requires a 0/1-valued input (checked densely unless attested).
    """
    require_hard("poly-dual", p.n)
    _require_boolean(p, assume_boolean)
    buf = np.zeros(1 << p.nvars, dtype=np.int64)
    buf[p.masks] = p.coeffs
    _kernels.check_transform_headroom(buf)
    _kernels.superset_sum_transform(buf, p.nvars)
    buf[0] = 1 - buf[0]
    nz = np.nonzero(buf)[0]
    vals = buf[nz]
    parity = _kernels.popcount_array(nz) & 1
    signed = np.where(parity == 1, vals, -vals)
    if nz.size and nz[0] == 0:
        signed[0] = vals[0]  # constant term already final
    return MultilinearPoly(p.n, nz.astype(np.int64), signed)


def to_fourier(p: MultilinearPoly, assume_boolean: bool = False) -> DyadicPoly:
    """Fourier expansion of the Boolean function represented by ``p``.

    In the {1,-1} basis with 1 encoding False, the coefficient at S is
    (-1)^{|S|-1} * sum over T supseteq S of a_T / 2^{|T|-1}, plus 1 on the
    constant term.  Everything is scaled by 2^{n^2-1} so the superset sums
    stay integral; the shared exponent is then reduced to normal form.
    """
    require_hard("poly-dual", p.n)
    _require_boolean(p, assume_boolean)
    nvars = p.nvars
    buf = np.zeros(1 << nvars, dtype=np.int64)
    weights = p.coeffs << (nvars - _kernels.popcount_array(p.masks))
    buf[p.masks] = weights
    _kernels.check_transform_headroom(buf)
    _kernels.superset_sum_transform(buf, nvars)
    buf[0] = (1 << (nvars - 1)) - buf[0]
    nz = np.nonzero(buf)[0]
    vals = buf[nz]
    parity = _kernels.popcount_array(nz) & 1
    signed = np.where(parity == 1, vals, -vals)
    if nz.size and nz[0] == 0:
        signed[0] = vals[0]
    return DyadicPoly(p.n, nvars - 1, nz.astype(np.int64), signed)


# ---------------------------------------------------------------------------
# Degrees and norms
# ---------------------------------------------------------------------------

def deg(p: MultilinearPoly) -> int | None:
    """Real degree: largest monomial size, None for the zero polynomial."""
    if not len(p):
        return None
    return int(_kernels.popcount_array(p.masks).max())


def deg2(p: MultilinearPoly) -> int | None:
    """Degree over GF(2): largest monomial with an odd coefficient.

    Reducing the integer coefficients mod 2 gives the GF(2) representation,
    so only parity matters.  None when every coefficient is even.
    """
    odd = (p.coeffs & 1) == 1
    if not np.any(odd):
        return None
    return int(_kernels.popcount_array(p.masks[odd]).max())


def monomial_count(p: MultilinearPoly) -> int:
    return len(p)


def l1_norm(p: MultilinearPoly) -> int:
    return int(np.abs(p.coeffs).sum()) if len(p) else 0


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _term_vars(n: int, mask: int) -> str:
    return " ".join(f"x_{{{b // n + 1},{b % n + 1}}}"
                    for b in range(n * n) if (mask >> b) & 1)


def _text_order(masks: np.ndarray) -> np.ndarray:
    degrees = _kernels.popcount_array(masks)
    return np.lexsort((masks, degrees))


def to_text(p: MultilinearPoly | DyadicPoly) -> str:
    """One term per line, sorted by (degree, mask); coefficient magnitude 1 is
    left implicit, dyadic coefficients print as reduced fractions."""
    if not len(p):
        return "0\n"
    dyadic = isinstance(p, DyadicPoly)
    lines = []
    order = _text_order(p.masks)
    for idx in order:
        mask = int(p.masks[idx])
        if dyadic:
            frac = Fraction(int(p.numerators[idx]), 1 << p.shared_exponent)
            sign = "-" if frac < 0 else "+"
            mag = abs(frac)
            coeff_str = "" if mag == 1 else (
                str(mag.numerator) if mag.denominator == 1
                else f"{mag.numerator}/{mag.denominator}")
        else:
            c = int(p.coeffs[idx])
            sign = "-" if c < 0 else "+"
            coeff_str = "" if abs(c) == 1 else str(abs(c))
        vars_str = _term_vars(p.n, mask)
        if not mask:
            body = coeff_str or "1"
        elif coeff_str:
            body = f"{coeff_str} {vars_str}"
        else:
            body = vars_str
        lines.append(f"{sign} {body}")
    return "\n".join(lines) + "\n"


def to_json_dict(p: MultilinearPoly | DyadicPoly, basis: str) -> dict:
    """JSON-ready document; terms ascending by mask.  Fourier documents carry
    the shared exponent and integer numerators at that scale."""
    n = p.n
    doc: dict = {"n": n, "basis": basis}
    if isinstance(p, DyadicPoly):
        doc["shared_exponent"] = p.shared_exponent
        values = p.numerators
    else:
        values = p.coeffs
    doc["terms"] = [
        {
            "mask": f"{int(m):#x}",
            "edges": [[b // n + 1, b % n + 1]
                      for b in range(n * n) if (int(m) >> b) & 1],
            "coeff": int(c),
        }
        for m, c in zip(p.masks, values)
    ]
    return doc
