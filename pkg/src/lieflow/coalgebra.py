"""The approximated coalgebra F_a and its banded invariant operators.

F_a has basis symbols f_n^m indexed by pairs of multi-indices. Its
formal coproduct (f_n^m splits through every intermediate index k) is
never materialized: it is only contracted against banded "regular"
operators, which keeps every sum finite.

Conventions fixed here and relied on throughout the package:

* a RegularOperator entry keyed (n, k) is the matrix element picked out
  by f_n^k, i.e. f_n^k(E_a^b) = delta(n,a) * delta(k,b);
* left-invariant operators act on the lower index of f_n^m,
  right-invariant operators act on the upper index (the row/column
  orientation: row modules carry the left action);
* the band metric is the sup over components of |n_i - k_i|;
* composing left applications multiplies matrices contravariantly:
  applying O2 after O1 realizes the product O1 @ O2 (row-of-O1 against
  column-of-O2), locked by a two-step regression test.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .multiindex import MultiIndex, sup_dist, sup_norm

#: Coefficients with magnitude at or below this are dropped after every
#: linear-combination step, preventing support blow-up from fp dust.
DEFAULT_PRUNE_EPS = 1e-15


@dataclass(frozen=True, order=True)
class BasisSymbol:
    """The basis symbol f_n^m: lower index n, upper index m."""

    lower: MultiIndex
    upper: MultiIndex

    def __post_init__(self):
        if self.lower.p != self.upper.p:
            raise ValueError("lower and upper indices must share dimension")

    @property
    def p(self) -> int:
        return self.lower.p

    def __repr__(self) -> str:
        return f"f_{self.lower}^{self.upper}"


def counit(s: BasisSymbol) -> complex:
    """Contraction of the formal coproduct with the identity: 1 iff n == m."""
    return 1.0 + 0j if s.lower == s.upper else 0j


class FaVector:
    """A finite complex linear combination of basis symbols.

    Immutable by convention: all operations return new vectors. Stored
    coefficients with magnitude <= the prune epsilon are dropped at
    construction time.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[BasisSymbol, complex] | None = None,
                 prune_eps: float = DEFAULT_PRUNE_EPS):
        cleaned: dict[BasisSymbol, complex] = {}
        if terms:
            for sym, c in terms.items():
                c = complex(c)
                if abs(c) > prune_eps:
                    cleaned[sym] = c
        dims = {s.p for s in cleaned}
        if len(dims) > 1:
            raise ValueError("all symbols in an FaVector must share dimension")
        self.terms = cleaned

    @classmethod
    def single(cls, s: BasisSymbol, coeff: complex = 1.0) -> "FaVector":
        return cls({s: coeff})

    @classmethod
    def zero(cls) -> "FaVector":
        return cls({})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[BasisSymbol, complex]]:
        return iter(self.terms.items())

    def __add__(self, other: "FaVector") -> "FaVector":
        out = dict(self.terms)
        for sym, c in other.terms.items():
            out[sym] = out.get(sym, 0j) + c
        return FaVector(out)

    def __sub__(self, other: "FaVector") -> "FaVector":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "FaVector":
        return FaVector({s: c * scalar for s, c in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, s: BasisSymbol) -> complex:
        return self.terms.get(s, 0j)

    def counit(self) -> complex:
        """Linear extension of the basis counit."""
        return sum((c for s, c in self.terms.items() if s.lower == s.upper), 0j)

    def norm_inf(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __eq__(self, other) -> bool:
        return isinstance(other, FaVector) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "FaVector(0)"
        parts = [f"{c:g}*{s}" for s, c in sorted(self.terms.items())]
        return "FaVector(" + " + ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        """Deterministic serialization, sorted by (lower, upper)."""
        out = []
        for s in sorted(self.terms):
            c = self.terms[s]
            out.append({"lower": s.lower.to_json(), "upper": s.upper.to_json(),
                        "re": c.real, "im": c.imag})
        return out


class RegularOperator:
    """A banded matrix over multi-index pairs: entries (row n, col k) -> C.

    Regularity means entries vanish outside the band sup_i |n_i - k_i| <= c.
    Contracting one leg of the formal coproduct against such a matrix
    yields a well-defined invariant operator on F_a.
    """

    __slots__ = ("entries", "band", "_by_row", "_by_col")

    def __init__(self, entries: Mapping[tuple[MultiIndex, MultiIndex], complex],
                 band: int | None = None):
        cleaned = {k: complex(v) for k, v in entries.items() if v != 0}
        widest = max((sup_dist(n, k) for n, k in cleaned), default=0)
        if band is None:
            band = widest
        elif widest > band:
            raise ValueError(f"entry outside declared band {band} (needs {widest})")
        self.entries = cleaned
        self.band = band
        by_row: dict[MultiIndex, list[tuple[MultiIndex, complex]]] = {}
        by_col: dict[MultiIndex, list[tuple[MultiIndex, complex]]] = {}
        for (n, k), v in cleaned.items():
            by_row.setdefault(n, []).append((k, v))
            by_col.setdefault(k, []).append((n, v))
        self._by_row = by_row
        self._by_col = by_col

    @classmethod
    def identity_on(cls, indices: Iterable[MultiIndex]) -> "RegularOperator":
        """Identity restricted to a finite index set (band 0)."""
        return cls({(n, n): 1.0 for n in indices}, band=0)

    def __call__(self, n: MultiIndex, k: MultiIndex) -> complex:
        """Matrix element f_n^k(O) = entries[(n, k)]."""
        return self.entries.get((n, k), 0j)

    def row(self, n: MultiIndex) -> list[tuple[MultiIndex, complex]]:
        return self._by_row.get(n, [])

    def col(self, k: MultiIndex) -> list[tuple[MultiIndex, complex]]:
        return self._by_col.get(k, [])

    def scaled(self, scalar: complex) -> "RegularOperator":
        return RegularOperator({k: v * scalar for k, v in self.entries.items()},
                               band=self.band)

    def plus_entry(self, n: MultiIndex, k: MultiIndex, v: complex) -> "RegularOperator":
        """A copy with v added at (n, k); the band widens if needed."""
        entries = dict(self.entries)
        entries[(n, k)] = entries.get((n, k), 0j) + v
        return RegularOperator(entries, band=max(self.band, sup_dist(n, k)))


def left_invariant_apply(op: RegularOperator, v: FaVector) -> FaVector:
    """Contract the second coproduct leg against op: f_n^m -> sum_k O(n,k) f_k^m.

    Only indices k within the band of n contribute, so the sum is finite.
    """
    out: dict[BasisSymbol, complex] = {}
    for sym, c in v.terms.items():
        for k, val in op.row(sym.lower):
            tgt = BasisSymbol(k, sym.upper)
            out[tgt] = out.get(tgt, 0j) + c * val
    return FaVector(out)


def right_invariant_apply(op: RegularOperator, v: FaVector) -> FaVector:
    """Contract the first coproduct leg against op: f_n^m -> sum_k O(k,m) f_n^k."""
    out: dict[BasisSymbol, complex] = {}
    for sym, c in v.terms.items():
        for k, val in op.col(sym.upper):
            tgt = BasisSymbol(sym.lower, k)
            out[tgt] = out.get(tgt, 0j) + c * val
    return FaVector(out)


def restrict_to_Fq(v: FaVector, q: int) -> FaVector:
    """Drop every term outside the finite coalgebra F_q (both sup-norms <= q)."""
    if q < 0:
        raise ValueError("q must be >= 0")
    return FaVector({s: c for s, c in v.terms.items()
                     if sup_norm(s.lower) <= q and sup_norm(s.upper) <= q})


def lowering_operator(p: int, i: int, index_cap: int) -> RegularOperator:
    """The i-th elementary lowering operator, materialized on the box
    sup_norm(n) <= index_cap: entries (n, n - i(1)) = n_i.

    This is the generator matrix behind the derivations d_i; lowering
    only shrinks indices, so a cap at the largest index present in the
    data makes the truncation exact.
    """
    from .multiindex import unit as unit_index, sub_checked

    e_i = unit_index(p, i)
    entries: dict[tuple[MultiIndex, MultiIndex], complex] = {}

    def boxes(dim: int):
        if dim == 0:
            yield ()
            return
        for head in range(index_cap + 1):
            for rest in boxes(dim - 1):
                yield (head,) + rest

    for tup in boxes(p):
        n = MultiIndex(tup)
        tgt = sub_checked(n, e_i)
        if tgt is not None and n[i - 1] != 0:
            entries[(n, tgt)] = float(n[i - 1])
    return RegularOperator(entries, band=1)
