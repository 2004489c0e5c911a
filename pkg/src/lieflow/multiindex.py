"""Multi-index arithmetic over N^p.

Multi-indices label both legs of the coalgebra basis symbols and the
rows/columns of banded operators. They are immutable and ordered
lexicographically, so they can serve as dict keys with a deterministic
iteration order after sorting.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class MultiIndex:
    """An element of N^p, stored densely as a tuple of non-negative ints."""

    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) < 1:
            raise ValueError("multi-index needs dimension p >= 1")
        if any(e < 0 for e in self.entries):
            raise ValueError(f"multi-index entries must be >= 0, got {self.entries}")

    @property
    def p(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return f"({','.join(str(e) for e in self.entries)})"

    def to_json(self) -> list[int]:
        return list(self.entries)


def mi(*entries: int) -> MultiIndex:
    """Shorthand constructor: mi(2, 0, 3) == MultiIndex((2, 0, 3))."""
    return MultiIndex(tuple(entries))


def _check_dims(a: MultiIndex, b: MultiIndex) -> None:
    if a.p != b.p:
        raise ValueError(f"dimension mismatch: {a.p} vs {b.p}")


def add(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    """Componentwise sum."""
    _check_dims(a, b)
    return MultiIndex(tuple(x + y for x, y in zip(a.entries, b.entries)))


def sub_checked(a: MultiIndex, b: MultiIndex) -> MultiIndex | None:
    """Componentwise difference, or None if any component would go negative.

    A None result means the corresponding term vanishes; lowering past
    zero is routine, not an error.
    """
    _check_dims(a, b)
    diff = tuple(x - y for x, y in zip(a.entries, b.entries))
    if any(d < 0 for d in diff):
        return None
    return MultiIndex(diff)


def degree(a: MultiIndex) -> int:
    """Entry sum."""
    return sum(a.entries)


def sup_norm(a: MultiIndex) -> int:
    """Max entry."""
    return max(a.entries)


def unit(p: int, i: int) -> MultiIndex:
    """The index (0,..,0,1,0,..,0) with the 1 in the i-th place, 1 <= i <= p."""
    if not 1 <= i <= p:
        raise ValueError(f"component index {i} out of range 1..{p}")
    return MultiIndex(tuple(1 if j == i - 1 else 0 for j in range(p)))


def zero(p: int) -> MultiIndex:
    """The index (0,..,0) of dimension p."""
    return MultiIndex((0,) * p)


def sup_dist(a: MultiIndex, b: MultiIndex) -> int:
    """Max over components of |a_i - b_i|; the band metric."""
    _check_dims(a, b)
    return max(abs(x - y) for x, y in zip(a.entries, b.entries))
