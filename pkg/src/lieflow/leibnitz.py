"""The Leibnitz coalgebra of dimension p+1 and formal words over it.

Generators are numbered 0..p: generator 0 is grouplike (its coproduct is
l_0 (x) l_0, counit 1) and generators 1..p are primitive over it
(coproduct l_0 (x) l_i + l_i (x) l_0, counit 0). Realizing generator 0 as
the identity operator is what turns realized generator words into
iterated derivations.

Words may carry a field tag per letter so that several copies of the
coalgebra (one per vector field) live in a direct sum; the grouplike
generator is shared across summands, so its tag is ignored.

This coalgebra is dual to the algebra spanned by a unit k_0 and
elements k_1..k_p with k_i k_j = 0 for nonzero i, j; that algebra is
never reified here, the coproduct above carries all of its content.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence


def coproduct(g: int, p: int) -> list[tuple[int, int]]:
    """Coproduct of generator g as a list of index pairs with coefficient 1."""
    if not 0 <= g <= p:
        raise ValueError(f"generator index {g} out of range 0..{p}")
    if g == 0:
        return [(0, 0)]
    return [(0, g), (g, 0)]


def counit_L(g: int, p: int) -> complex:
    """1 on the grouplike generator, 0 on the primitives."""
    if not 0 <= g <= p:
        raise ValueError(f"generator index {g} out of range 0..{p}")
    return 1.0 + 0j if g == 0 else 0j


def iterated_coproduct(g: int, p: int, slots: int) -> dict[tuple[int, ...], int]:
    """Expand generator g into `slots` tensor legs by iterating the coproduct.

    Coassociativity makes the bracketing irrelevant; the result maps each
    leg-assignment tuple to its integer multiplicity. For a primitive
    generator this is the sum over placing it in one slot with the
    grouplike generator everywhere else.
    """
    if slots < 1:
        raise ValueError("need at least one slot")
    out: dict[tuple[int, ...], int] = {(g,): 1}
    for _ in range(slots - 1):
        nxt: dict[tuple[int, ...], int] = {}
        for legs, mult in out.items():
            head, rest = legs[0], legs[1:]
            for a, b in coproduct(head, p):
                key = (a, b) + rest
                nxt[key] = nxt.get(key, 0) + mult
        out = nxt
    return out


@dataclass(frozen=True)
class GeneratorWord:
    """A formal word over (possibly tagged) Leibnitz generators.

    The empty word is the algebra unit. The tag selects the direct
    summand (one copy of the coalgebra per vector field); letters with
    generator index 0 share the single grouplike across summands.
    """

    letters: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_indices(cls, indices: Iterable[int], tag: str = "") -> "GeneratorWord":
        return cls(tuple((tag, int(i)) for i in indices))

    def __len__(self) -> int:
        return len(self.letters)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for _, i in self.letters)

    def reversed(self) -> "GeneratorWord":
        return GeneratorWord(tuple(reversed(self.letters)))

    def counit(self, p: int) -> complex:
        """Multiplicative extension of the generator counit."""
        val = 1.0 + 0j
        for _, g in self.letters:
            val *= counit_L(g, p)
        return val

    def to_json(self) -> list[list]:
        return [[tag, idx] for tag, idx in self.letters]

    @classmethod
    def from_json(cls, data: Sequence[Sequence]) -> "GeneratorWord":
        return cls(tuple((str(t), int(i)) for t, i in data))


def word_coproduct(indices: Sequence[int], p: int,
                   drop_grouplike: bool = True) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    """Coproduct of a generator word, extended multiplicatively.

    Returns a map (left word, right word) -> multiplicity. With
    drop_grouplike, letters of index 0 are erased on both sides, which
    identifies the grouplike with the algebra unit the way every
    realization does; that is the normalization under which the power
    word d^n obeys the binomial formula
        coproduct(d^n) = sum over a+b=n of C(n, a) d^a (x) d^b.
    """
    pairs: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {((), ()): 1}
    for g in indices:
        nxt: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
        for (lw, rw), mult in pairs.items():
            for a, b in coproduct(g, p):
                la = lw if (drop_grouplike and a == 0) else lw + (a,)
                rb = rw if (drop_grouplike and b == 0) else rw + (b,)
                key = (la, rb)
                nxt[key] = nxt.get(key, 0) + mult
        pairs = nxt
    return pairs


def binomial_coproduct_reference(n: int) -> dict[tuple[int, int], int]:
    """The expected split multiplicities of a power word: {(a, n-a): C(n, a)}."""
    return {(a, n - a): comb(n, a) for a in range(n + 1)}
