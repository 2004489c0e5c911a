"""Analytic vector fields on C^p with finite monomial support.

A field A has components A^i(z) = sum_m a^i_m z^m (i = 1..p, finitely
many nonzero coefficients). Each component family realizes a Leibnitz
generator as the banded operator sending f_n^j to
n_i * sum_m a^i_m f_{n+m-i(1)}^j, and the associated derivation D_A is
the sum of those realized generators. The quantity
m(A) = sup_i sum_m |a^i_m| certifies a convergence radius 1/m(A) for the
exponential series built on D_A.

Fields with genuinely infinite series must be truncated by the caller;
everything here is exact on the truncated field, and bandedness of the
realization requires finite support anyway. Recentering a polynomial is
entire, so the shift point is unrestricted; only the flow time is ever
domain-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Mapping, Sequence

from .coalgebra import BasisSymbol, FaVector, RegularOperator
from .multiindex import MultiIndex, add, degree, sub_checked, sup_norm, unit, zero


@dataclass(frozen=True)
class VectorField:
    """p component coefficient maps, component i at position i-1."""

    p: int
    components: tuple[dict[MultiIndex, complex], ...]

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("dimension p must be >= 1")
        if len(self.components) != self.p:
            raise ValueError(f"expected {self.p} components, got {len(self.components)}")
        for comp in self.components:
            for m in comp:
                if m.p != self.p:
                    raise ValueError("monomial index dimension mismatch")

    @classmethod
    def from_coeffs(cls, p: int,
                    components: Sequence[Mapping[MultiIndex, complex]]) -> "VectorField":
        cleaned = tuple({m: complex(c) for m, c in comp.items() if c != 0}
                        for comp in components)
        return cls(p, cleaned)

    @classmethod
    def univariate(cls, coeffs: Mapping[int, complex]) -> "VectorField":
        """Convenience for p=1: {degree: coefficient}."""
        return cls.from_coeffs(1, [{MultiIndex((d,)): c for d, c in coeffs.items()}])

    def component(self, i: int) -> dict[MultiIndex, complex]:
        if not 1 <= i <= self.p:
            raise ValueError(f"component index {i} out of range 1..{self.p}")
        return self.components[i - 1]

    def band(self) -> int:
        """Largest sup-norm displacement |m - i(1)| over the support."""
        width = 0
        for i in range(1, self.p + 1):
            e_i = unit(self.p, i)
            for m in self.components[i - 1]:
                width = max(width, max(abs(mj - ej) for mj, ej in zip(m, e_i)))
        return width

    def max_monomial_degree(self) -> int:
        return max((degree(m) for comp in self.components for m in comp), default=0)

    def is_affine(self) -> bool:
        return self.max_monomial_degree() <= 1

    def to_json_dict(self) -> dict:
        comps = []
        for comp in self.components:
            comps.append([{"m": m.to_json(), "re": c.real, "im": c.imag}
                          for m, c in sorted(comp.items())])
        return {"p": self.p, "components": comps}

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "VectorField":
        p = int(data["p"])
        comps = []
        for entry in data["components"]:
            comp: dict[MultiIndex, complex] = {}
            for term in entry:
                m = MultiIndex(tuple(int(v) for v in term["m"]))
                c = complex(float(term.get("re", 0.0)), float(term.get("im", 0.0)))
                comp[m] = comp.get(m, 0j) + c
            comps.append(comp)
        return cls.from_coeffs(p, comps)


def m_norm(A: VectorField) -> float:
    """sup over components of the l1 coefficient norm; 1/m_norm is the
    certified convergence radius of the exponential pairing."""
    return max((sum(abs(c) for c in comp.values()) for comp in A.components),
               default=0.0) if A.components else 0.0


def eval_component(A: VectorField, i: int, z: Sequence[complex]) -> complex:
    """Evaluate A^i at a point of C^p."""
    if len(z) != A.p:
        raise ValueError("point dimension mismatch")
    total = 0j
    for m, c in A.component(i).items():
        term = c
        for zj, mj in zip(z, m):
            if mj:
                term *= zj ** mj
        total += term
    return total


def apply_DA(A: VectorField, s: BasisSymbol) -> FaVector:
    """The derivation D_A on a single symbol:
    f_n^j -> sum_i n_i sum_m a^i_m f_{n+m-i(1)}^j.

    The upper index rides along untouched; terms whose lowered index
    would leave N^p vanish (they only arise with factor n_i = 0 anyway).
    """
    out: dict[BasisSymbol, complex] = {}
    n = s.lower
    for i in range(1, A.p + 1):
        ni = n[i - 1]
        if ni == 0:
            continue
        e_i = unit(A.p, i)
        for m, c in A.components[i - 1].items():
            tgt = sub_checked(add(n, m), e_i)
            if tgt is None:
                continue
            sym = BasisSymbol(tgt, s.upper)
            out[sym] = out.get(sym, 0j) + ni * c
    return FaVector(out)


def apply_DA_vector(A: VectorField, v: FaVector) -> FaVector:
    """Linear extension of apply_DA."""
    out: dict[BasisSymbol, complex] = {}
    for s, c in v:
        for sym, coeff in apply_DA(A, s):
            out[sym] = out.get(sym, 0j) + c * coeff
    return FaVector(out)


def generator_action(A: VectorField, i: int) -> Callable[[BasisSymbol], FaVector]:
    """The realized generator X_A(l_i) at the symbol level, exact and
    uncapped; plugs into the tensor-algebra extension."""
    if not 1 <= i <= A.p:
        raise ValueError(f"component index {i} out of range 1..{A.p}")
    e_i = unit(A.p, i)
    comp = A.components[i - 1]

    def act(s: BasisSymbol) -> FaVector:
        ni = s.lower[i - 1]
        if ni == 0:
            return FaVector.zero()
        out: dict[BasisSymbol, complex] = {}
        for m, c in comp.items():
            tgt = sub_checked(add(s.lower, m), e_i)
            if tgt is None:
                continue
            sym = BasisSymbol(tgt, s.upper)
            out[sym] = out.get(sym, 0j) + ni * c
        return FaVector(out)

    return act


def generator_actions(A: VectorField) -> dict[int, Callable[[BasisSymbol], FaVector]]:
    return {i: generator_action(A, i) for i in range(1, A.p + 1)}


def generator_operator(A: VectorField, i: int, row_cap: int) -> RegularOperator:
    """Materialize X_A(l_i) as a banded matrix on rows with sup_norm <= cap:
    entries (n, n+m-i(1)) = n_i * a^i_m, summed over coinciding targets."""
    e_i = unit(A.p, i)
    comp = A.components[i - 1]
    entries: dict[tuple[MultiIndex, MultiIndex], complex] = {}

    def boxes(dim: int):
        if dim == 0:
            yield ()
            return
        for head in range(row_cap + 1):
            for rest in boxes(dim - 1):
                yield (head,) + rest

    for tup in boxes(A.p):
        n = MultiIndex(tup)
        ni = n[i - 1]
        if ni == 0:
            continue
        for m, c in comp.items():
            tgt = sub_checked(add(n, m), e_i)
            if tgt is None:
                continue
            key = (n, tgt)
            entries[key] = entries.get(key, 0j) + ni * c
    return RegularOperator(entries)


def shift(A: VectorField, x: Sequence[complex]) -> VectorField:
    """Recenter: the field A_x with A_x^i(z) = A^i(z + x).

    Each monomial is expanded about x with exact integer binomial
    coefficients, promoted to complex only when multiplied in, so the
    recentering is exact for finite support.
    """
    if len(x) != A.p:
        raise ValueError("shift point dimension mismatch")
    comps: list[dict[MultiIndex, complex]] = []
    for comp in A.components:
        out: dict[MultiIndex, complex] = {}
        for m, c in comp.items():
            _expand_monomial(m, tuple(x), c, out)
        comps.append({k: v for k, v in out.items() if v != 0})
    return VectorField(A.p, tuple(comps))


def _expand_monomial(m: MultiIndex, x: tuple[complex, ...], c: complex,
                     out: dict[MultiIndex, complex]) -> None:
    # (z+x)^m = sum_{k <= m} prod_j C(m_j, k_j) x_j^(m_j - k_j) z^k
    p = m.p
    ks = [range(mj + 1) for mj in m]

    def rec(j: int, prefix: tuple[int, ...], weight: complex) -> None:
        if j == p:
            key = MultiIndex(prefix)
            out[key] = out.get(key, 0j) + weight
            return
        for kj in ks[j]:
            w = weight * comb(m[j], kj)
            e = m[j] - kj
            if e:
                w = w * (x[j] ** e)
            rec(j + 1, prefix + (kj,), w)

    rec(0, (), c)


def zero_index(A: VectorField) -> MultiIndex:
    return zero(A.p)


def preserves_degree_filtration(A: VectorField, d: int) -> bool:
    """Structural check that D_A maps span{f_n^o : deg(n) <= d} into itself.

    True for every affine field: each move m - i(1) has degree <= 0.
    Checked by applying D_A to every symbol in the span and inspecting
    output degrees.
    """
    o = zero(A.p)

    def degree_box(dim: int, budget: int):
        if dim == 0:
            yield ()
            return
        for head in range(budget + 1):
            for rest in degree_box(dim - 1, budget - head):
                yield (head,) + rest

    for tup in degree_box(A.p, d):
        n = MultiIndex(tup)
        image = apply_DA(A, BasisSymbol(n, o))
        for sym, _ in image:
            if degree(sym.lower) > d:
                return False
    return True
