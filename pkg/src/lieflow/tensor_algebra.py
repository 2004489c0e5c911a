"""Finite elements of the tensor algebra over F_a and derivation extension.

A word is a tuple of basis symbols (the empty tuple is the unit); an
element is a finite linear combination of words. Realized Leibnitz
generators extend uniquely from F_a to tensor words: the grouplike acts
as the identity and each primitive acts as a derivation, hitting one
factor at a time. Word application composes with the first letter
outermost, so a word (l_a, l_b) acts as X(l_a) after X(l_b).

Only the left-invariant extension is implemented. The right-invariant
one reduces to it on the opposite coalgebra (swap the two legs of every
symbol), so nothing is lost; see the finite-dimensional duality harness
for the general-coproduct machinery. The extended operators are
themselves invariant on the tensor algebra, but no computable test for
that exists at this level, so it is documented, not asserted.
"""

from __future__ import annotations

from typing import Callable, Iterator, Mapping, Union

from .coalgebra import (
    DEFAULT_PRUNE_EPS,
    BasisSymbol,
    FaVector,
    RegularOperator,
    counit,
    left_invariant_apply,
)
from .leibnitz import GeneratorWord

TensorWord = tuple[BasisSymbol, ...]

#: An action is whatever can push a single basis symbol to an FaVector:
#: a RegularOperator (applied left-invariantly) or a bare callable.
Action = Union[RegularOperator, Callable[[BasisSymbol], FaVector]]


def _act(x: Action, s: BasisSymbol) -> FaVector:
    if isinstance(x, RegularOperator):
        return left_invariant_apply(x, FaVector.single(s))
    return x(s)


class TensorElement:
    """A finite complex linear combination of tensor words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[TensorWord, complex] | None = None,
                 prune_eps: float = DEFAULT_PRUNE_EPS):
        cleaned: dict[TensorWord, complex] = {}
        if terms:
            for w, c in terms.items():
                c = complex(c)
                if abs(c) > prune_eps:
                    cleaned[tuple(w)] = c
        dims = {s.p for w in cleaned for s in w}
        if len(dims) > 1:
            raise ValueError("all symbols in a TensorElement must share dimension")
        self.terms = cleaned

    @classmethod
    def unit(cls) -> "TensorElement":
        return cls({(): 1.0})

    @classmethod
    def word(cls, *symbols: BasisSymbol, coeff: complex = 1.0) -> "TensorElement":
        return cls({tuple(symbols): coeff})

    @classmethod
    def from_favector(cls, v: FaVector) -> "TensorElement":
        return cls({(s,): c for s, c in v})

    @classmethod
    def zero(cls) -> "TensorElement":
        return cls({})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[TensorWord, complex]]:
        return iter(self.terms.items())

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0j) + c
        return TensorElement(out)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (other * -1.0)

    def __mul__(self, scalar: complex) -> "TensorElement":
        return TensorElement({w: c * scalar for w, c in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, w: TensorWord) -> complex:
        return self.terms.get(tuple(w), 0j)

    def norm_inf(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def __eq__(self, other) -> bool:
        return isinstance(other, TensorElement) and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "TensorElement(0)"
        parts = []
        for w in sorted(self.terms):
            body = "1" if not w else "*".join(repr(s) for s in w)
            parts.append(f"{self.terms[w]:g}*{body}")
        return "TensorElement(" + " + ".join(parts) + ")"

    def to_json(self) -> list[dict]:
        out = []
        for w in sorted(self.terms):
            c = self.terms[w]
            out.append({
                "word": [{"lower": s.lower.to_json(), "upper": s.upper.to_json()} for s in w],
                "re": c.real, "im": c.imag,
            })
        return out


def product(a: TensorElement, b: TensorElement) -> TensorElement:
    """Bilinear concatenation of words; the empty word is neutral."""
    out: dict[TensorWord, complex] = {}
    for wa, ca in a.terms.items():
        for wb, cb in b.terms.items():
            w = wa + wb
            out[w] = out.get(w, 0j) + ca * cb
    return TensorElement(out)


def counit_T(e: TensorElement) -> complex:
    """The algebra-morphism counit: product of per-factor counits, extended
    linearly; the empty word has counit 1."""
    total = 0j
    for w, c in e.terms.items():
        val = c
        for s in w:
            if s.lower != s.upper:
                val = 0j
                break
        total += val
    return total


def extend_apply(x: Mapping[int, Action], l: int, e: TensorElement) -> TensorElement:
    """Apply the extension of realized generator l to a tensor element.

    Generator 0 is the identity. A primitive generator acts as a
    derivation: on a word of length n it is the sum over positions of the
    single-symbol action at that position, and it kills the empty word
    (counit 0). Word length is preserved.
    """
    if l == 0:
        return e
    action = x[l]
    out: dict[TensorWord, complex] = {}
    for w, c in e.terms.items():
        for j, s in enumerate(w):
            hit = _act(action, s)
            for sym, coeff in hit:
                nw = w[:j] + (sym,) + w[j + 1:]
                val = out.get(nw, 0j) + c * coeff
                out[nw] = val
    return TensorElement(out)


def apply_word(x: Mapping[int, Action], w: GeneratorWord | tuple[int, ...] | list[int],
               e: TensorElement) -> TensorElement:
    """Apply a generator word with the first letter outermost.

    apply_word([a, b], e) computes X(l_a)(X(l_b)(e)); the empty word is
    the identity.
    """
    indices = w.indices() if isinstance(w, GeneratorWord) else tuple(w)
    for l in reversed(indices):
        e = extend_apply(x, l, e)
    return e


def lowering_actions(p: int) -> dict[int, Callable[[BasisSymbol], FaVector]]:
    """The elementary lowering derivations as exact symbol-level actions:
    generator i sends f_n^m to n_i * f_{n - i(1)}^m.

    Unlike a materialized matrix these need no index cap; coefficients
    stay integer-valued, so identities involving factorials hold exactly.
    """
    from .multiindex import sub_checked, unit

    def make(i: int):
        def act(s: BasisSymbol) -> FaVector:
            ni = s.lower[i - 1]
            if ni == 0:
                return FaVector.zero()
            tgt = sub_checked(s.lower, unit(s.p, i))
            assert tgt is not None
            return FaVector.single(BasisSymbol(tgt, s.upper), float(ni))
        return act

    return {i: make(i) for i in range(1, p + 1)}
