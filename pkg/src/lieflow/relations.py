"""Relation checks for the polynomial module induced by the lowering operators.

The row module M_o (symbols with upper index o) carries the product
relations f_n (x) f_m = f_{n+m}. A tensor element z supported on M_o is
certified as a relation by pairing it against every realized generator
word and contracting: all values must vanish. The elementary lowering
derivations commute, so sorted monomial words d_1^{n_1}..d_p^{n_p} are
enough, and the factorial bound caps the word length that can see a
given witness: words longer than deg(alpha) + deg(beta) + 2 pair to
zero against f_alpha (x) f_beta - f_{alpha+beta} anyway.

Membership is therefore certified up to a word-length cap; that is the
honest scope of the check, not an approximation of a deeper search.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping

from .coalgebra import BasisSymbol, FaVector, RegularOperator, left_invariant_apply
from .multiindex import MultiIndex, add, degree, sup_norm, unit, zero
from .tensor_algebra import (
    Action,
    TensorElement,
    apply_word,
    counit_T,
    lowering_actions,
    product,
)

VANISH_TOL = 1e-12


@dataclass(frozen=True)
class RelationWitness:
    """A candidate member of the relation ideal of M_o."""

    element: TensorElement
    max_word_len: int

    def __post_init__(self):
        for w, _ in self.element:
            for s in w:
                if any(e != 0 for e in s.upper):
                    raise ValueError("witness must live on the row module (upper = o)")


@dataclass(frozen=True)
class RelationReport:
    ok: bool
    max_deviation: float
    worst_word: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {"ok": self.ok, "max_deviation": self.max_deviation,
                "worst_word": list(self.worst_word) if self.worst_word else None}


def module_witness(alpha: MultiIndex, beta: MultiIndex) -> TensorElement:
    """f_alpha^o (x) f_beta^o - f_{alpha+beta}^o."""
    o = zero(alpha.p)
    fa = TensorElement.word(BasisSymbol(alpha, o))
    fb = TensorElement.word(BasisSymbol(beta, o))
    fab = TensorElement.word(BasisSymbol(add(alpha, beta), o))
    return product(fa, fb) - fab


def sorted_monomial_words(p: int, max_total: int) -> Iterable[tuple[int, ...]]:
    """Exponent tuples (n_1..n_p) with sum <= max_total, each standing for
    the sorted word d_1^{n_1}..d_p^{n_p}; commutativity of the lowering
    derivations makes these exhaustive."""
    def rec(dim: int, budget: int):
        if dim == 0:
            yield ()
            return
        for head in range(budget + 1):
            for rest in rec(dim - 1, budget - head):
                yield (head,) + rest

    yield from rec(p, max_total)


def _word_letters(exponents: tuple[int, ...]) -> tuple[int, ...]:
    letters: list[int] = []
    for i, n in enumerate(exponents, start=1):
        letters.extend([i] * n)
    return tuple(letters)


def check_relation(z: RelationWitness,
                   x: Mapping[int, Action] | None = None,
                   p: int | None = None) -> RelationReport:
    """Pair the witness against every sorted monomial word up to the cap.

    By default the pairing uses the exact lowering derivations; an
    alternative generator map may be supplied to probe non-canonical
    realizations.
    """
    if p is None:
        dims = {s.p for w, _ in z.element for s in w}
        if not dims:
            return RelationReport(True, 0.0, None)
        p = dims.pop()
    if x is None:
        x = lowering_actions(p)
    worst = 0.0
    worst_word: tuple[int, ...] | None = None
    for exponents in sorted_monomial_words(p, z.max_word_len):
        value = counit_T(apply_word(x, _word_letters(exponents), z.element))
        dev = abs(value)
        if dev > worst:
            worst = dev
            worst_word = exponents
    ok = worst <= VANISH_TOL
    return RelationReport(ok, worst, worst_word if not ok else None)


def epsilon_power_value(p: int, exponents: tuple[int, ...], alpha: MultiIndex) -> complex:
    """eps(d_1^{n_1}..d_p^{n_p} (f_alpha^o)), on the exact integer path."""
    e = TensorElement.word(BasisSymbol(alpha, zero(p)))
    return counit_T(apply_word(lowering_actions(p), _word_letters(exponents), e))


def multiindex_factorial(a: MultiIndex) -> int:
    out = 1
    for e in a:
        out *= factorial(e)
    return out


def lowering_generator_map(p: int, index_cap: int) -> dict[int, RegularOperator]:
    """The canonical generator map as banded matrices on the given box."""
    from .coalgebra import lowering_operator

    return {i: lowering_operator(p, i, index_cap) for i in range(1, p + 1)}


def uniqueness_probe(alternative: Mapping[int, RegularOperator], p: int,
                     max_degree: int = 3) -> bool:
    """Does an alternative generator map satisfy the normalization and
    induce the module relations at bounded degree?

    Requires x(l_i) f_o^o = 0 and x(l_i) f_{j(1)}^o = delta(i,j) f_o^o on
    the generators, then runs the relation check for every index pair of
    degree <= max_degree. Perturbations of the canonical lowering map
    fail one of the two stages; that is the bounded-degree shadow of its
    uniqueness.
    """
    o = zero(p)
    f_oo = BasisSymbol(o, o)
    for i in range(1, p + 1):
        op = alternative[i]
        if left_invariant_apply(op, FaVector.single(f_oo)):
            return False
        for j in range(1, p + 1):
            got = left_invariant_apply(op, FaVector.single(BasisSymbol(unit(p, j), o)))
            want = FaVector.single(f_oo) if i == j else FaVector.zero()
            if (got - want).norm_inf() > VANISH_TOL:
                return False
    for a_exp in sorted_monomial_words(p, max_degree):
        for b_exp in sorted_monomial_words(p, max_degree):
            alpha = MultiIndex(a_exp)
            beta = MultiIndex(b_exp)
            cap = degree(alpha) + degree(beta) + 2
            witness = RelationWitness(module_witness(alpha, beta), cap)
            if not check_relation(witness, x=alternative, p=p).ok:
                return False
    return True


def invariance_check(x: Mapping[int, RegularOperator], q_list: Iterable[int],
                     p: int) -> bool:
    """True iff every generator image maps each F_q into itself.

    This is the induced-module admissibility condition: the finite
    coalgebras F_q (both indices sup-bounded by q) must be invariant.
    """
    for q in q_list:
        symbols = []
        for n_tup in _box(p, q):
            for m_tup in _box(p, q):
                symbols.append(BasisSymbol(MultiIndex(n_tup), MultiIndex(m_tup)))
        for op in x.values():
            for s in symbols:
                image = left_invariant_apply(op, FaVector.single(s))
                for sym, _ in image:
                    if sup_norm(sym.lower) > q or sup_norm(sym.upper) > q:
                        return False
    return True


def _box(p: int, cap: int):
    if p == 0:
        yield ()
        return
    for head in range(cap + 1):
        for rest in _box(p - 1, cap):
            yield (head,) + rest


def collapse_row_words(e: TensorElement, p: int) -> FaVector:
    """Reduce by the module relation: a word of row symbols collapses to the
    single symbol at the sum of its lower indices (the empty word to f_o^o)."""
    o = zero(p)
    out: dict[BasisSymbol, complex] = {}
    for w, c in e:
        total = o
        for s in w:
            if any(v != 0 for v in s.upper):
                raise ValueError("collapse is defined on the row module only")
            total = add(total, s.lower)
        sym = BasisSymbol(total, o)
        out[sym] = out.get(sym, 0j) + c
    return FaVector(out)
