"""Path-sum evaluation, certified exponential series, and ODE flows.

The counit of a composed chain of field derivations admits two
evaluations: the direct one (apply each derivation, then contract) and
the path-sum over intermediate multi-indices, whose single-step factors
are counits of one derivation application. Their agreement is the
computational content of the composition law, and the factorial bound

    |eps(D_A1 o ... o D_An (f_beta^alpha))|
        <= (deg(alpha)+n)!/deg(alpha)! * m(A_1)...m(A_n) * deg(beta)

turns the exponential series into a certifiably convergent object for
|t| * m(A) < 1, with a geometric tail that this module uses as the one
and only truncation rule. Heuristic term-smallness is never consulted.

A sharper vanishing rule than the asserted one is visible here (a degree
count kills chains already when deg(beta) > deg(alpha) + n); only the
weaker deg(beta) > deg(alpha) + n + 1 statement is ever relied on.

Flows: the curve y_i(t) = x_i + eps(exp(t * D_{A_x})(f_{i(1)}^o)), with
A_x the field recentered at the start point x, solves dy/dt = A(y),
y(0) = x, inside the certified disc |t| < 1/m(A_x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .multiindex import MultiIndex, add, degree, sub_checked, sup_norm, unit, zero
from .vector_field import VectorField, apply_DA_vector, m_norm, shift
from .coalgebra import BasisSymbol, FaVector

DEFAULT_ORDER_CAP = 10000


class DomainError(ValueError):
    """A requested evaluation lies outside the certified convergence disc."""

    def __init__(self, message: str, radius: float):
        super().__init__(message)
        self.radius = radius


class CapError(ValueError):
    """The path-sum index cap cuts off a band-reachable intermediate index."""


class OrderCapError(RuntimeError):
    """The certified truncation order exceeds the configured order cap."""


@dataclass(frozen=True)
class ChainSpec:
    """A composition chain eps(D_A1 o ... o D_An (f_beta^alpha))."""

    fields: tuple[VectorField, ...]
    alpha: MultiIndex
    beta: MultiIndex

    def __post_init__(self):
        p = self.alpha.p
        if self.beta.p != p or any(A.p != p for A in self.fields):
            raise ValueError("chain fields and indices must share dimension")

    @property
    def n(self) -> int:
        return len(self.fields)


@dataclass(frozen=True)
class FlowRequest:
    field: VectorField
    x0: tuple[complex, ...]
    t: complex
    tol: float = 1e-9

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if len(self.x0) != self.field.p:
            raise ValueError("x0 dimension mismatch")


@dataclass(frozen=True)
class FlowResult:
    y: tuple[complex, ...]
    radius: float
    truncation_order: int
    tail_bound: float


def eps_chain_direct(c: ChainSpec) -> complex:
    """Apply the derivations right to left (innermost first), then contract.

    The upper index never moves, so the whole computation lives on row
    vectors with upper index alpha; the counit reads off the coefficient
    at lower index alpha.
    """
    v = FaVector.single(BasisSymbol(c.beta, c.alpha))
    for A in reversed(c.fields):
        v = apply_DA_vector(A, v)
        if not v:
            return 0j
    return v.counit()


def _chain_step(A: VectorField, lower: MultiIndex, upper: MultiIndex) -> complex:
    """eps(D_A(f_lower^upper)): the single-step path factor.

    Nonzero only when upper - lower + i(1) lands in the support of some
    component; the value is sum_i lower_i * a^i_{upper - lower + i(1)}.
    """
    total = 0j
    p = A.p
    for i in range(1, p + 1):
        ni = lower[i - 1]
        if ni == 0:
            continue
        m = sub_checked(add(upper, unit(p, i)), lower)
        if m is None:
            continue
        coeff = A.components[i - 1].get(m)
        if coeff:
            total += ni * coeff
    return total


def default_pathsum_cap(c: ChainSpec) -> int:
    """A sufficient cap: |alpha| + n * (max band) + |beta|."""
    max_band = max((A.band() for A in c.fields), default=0)
    return sup_norm(c.alpha) + c.n * max_band + sup_norm(c.beta)


def eps_chain_pathsum(c: ChainSpec, cap: int | None = None) -> complex:
    """The nested sum over intermediate indices of single-step counit factors.

    With k_0 = alpha, sums prod_j eps(D_Aj(f_{k_j}^{k_{j-1}})) over
    k_1..k_{n-1}, the final factor having fixed lower index beta. Must
    agree with eps_chain_direct; raises CapError if a band-reachable
    index with a nonzero step factor exceeds the cap.
    """
    n = c.n
    if n == 0:
        return 1.0 + 0j if c.alpha == c.beta else 0j
    if cap is None:
        cap = default_pathsum_cap(c)
    p = c.alpha.p

    def candidates(A: VectorField, k_prev: MultiIndex) -> set[MultiIndex]:
        # k = k_prev + i(1) - m over the support; exactly the indices with
        # a possibly nonzero step factor.
        found: set[MultiIndex] = set()
        for i in range(1, p + 1):
            e_i = unit(p, i)
            for m in A.components[i - 1]:
                k = sub_checked(add(k_prev, e_i), m)
                if k is not None and k[i - 1] != 0:
                    found.add(k)
        return found

    def recurse(j: int, k_prev: MultiIndex) -> complex:
        A = c.fields[j]
        if j == n - 1:
            return _chain_step(A, c.beta, k_prev)
        total = 0j
        for k in candidates(A, k_prev):
            factor = _chain_step(A, k, k_prev)
            if factor == 0:
                continue
            if sup_norm(k) > cap:
                raise CapError(
                    f"intermediate index {k} exceeds cap {cap}; "
                    f"needs at least {sup_norm(k)}")
            total += factor * recurse(j + 1, k)
        return total

    return recurse(0, c.alpha)


def chain_bound(c: ChainSpec) -> float:
    """(deg(alpha)+n)!/deg(alpha)! * prod m(A_j) * deg(beta)."""
    da = degree(c.alpha)
    value = float(degree(c.beta))
    for j in range(1, c.n + 1):
        value *= da + j
    for A in c.fields:
        value *= m_norm(A)
    return value


def chain_vanishes(c: ChainSpec) -> bool:
    """The asserted vanishing rule: deg(beta) > deg(alpha) + n + 1."""
    return degree(c.beta) > degree(c.alpha) + c.n + 1


def _moves(A: VectorField) -> list[list[tuple[tuple[int, ...], complex]]]:
    """Per component: lattice displacements m - i(1) with their coefficients."""
    p = A.p
    out: list[list[tuple[tuple[int, ...], complex]]] = []
    for i in range(1, p + 1):
        deltas = []
        for m, a in A.components[i - 1].items():
            delta = tuple(m[j] - (1 if j == i - 1 else 0) for j in range(p))
            deltas.append((delta, a))
        out.append(deltas)
    return out


def _geometric_order(d_beta: int, q: float, tol: float, order_cap: int) -> tuple[int, float]:
    """Smallest N with d_beta * q^(N+1) / (1-q) <= tol, plus that tail value."""
    if d_beta == 0 or q == 0.0:
        return 0, 0.0
    tail = d_beta * q / (1.0 - q)
    n = 0
    while tail > tol:
        n += 1
        tail *= q
        if n > order_cap:
            raise OrderCapError(
                f"certified truncation order exceeds cap {order_cap} "
                f"(q={q:.6g}, tol={tol:g})")
    return n, tail


def exp_pairing(A: VectorField, t: complex, beta: MultiIndex, tol: float,
                order_cap: int = DEFAULT_ORDER_CAP) -> tuple[complex, int, float]:
    """eps(exp(t*D_A)(f_beta^o)) with a rigorous geometric truncation.

    Requires |t| * m(A) < 1. The n-th term is bounded by
    deg(beta) * (|t| m(A))^n, so the order N is chosen from the geometric
    tail alone. Returns (value, order summed to, certified tail bound);
    the tail is exactly 0 when the series terminates on its own.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    m = m_norm(A)
    q = abs(t) * m
    if q >= 1.0:
        radius = math.inf if m == 0 else 1.0 / m
        raise DomainError(
            f"|t|*m(A) = {q:.6g} >= 1: outside the certified disc of radius "
            f"{radius:.12g}", radius)
    d_beta = degree(beta)
    n_max, tail = _geometric_order(d_beta, q, tol, order_cap)

    p = A.p
    o = (0,) * p
    moves = _moves(A)
    u: dict[tuple[int, ...], complex] = {beta.entries: 1.0 + 0j}
    value = u.get(o, 0j)
    order = 0
    for n in range(1, n_max + 1):
        scale = t / n
        nxt: dict[tuple[int, ...], complex] = {}
        for idx, cval in u.items():
            for ci in range(p):
                ni = idx[ci]
                if ni == 0:
                    continue
                base = cval * ni * scale
                for delta, a in moves[ci]:
                    tgt = tuple(x + d for x, d in zip(idx, delta))
                    nxt[tgt] = nxt.get(tgt, 0j) + base * a
        u = {k: v for k, v in nxt.items() if v != 0}
        if not u:
            return value, order, 0.0
        value += u.get(o, 0j)
        order = n
    return value, order, tail


def exp_pairing_composed(B: VectorField, t2: complex, A: VectorField, t1: complex,
                         beta: MultiIndex, tol: float,
                         order_cap: int = DEFAULT_ORDER_CAP) -> complex:
    """eps(exp(t2*D_B) o exp(t1*D_A) (f_beta^o)) as a truncated double series.

    Requires |t1| m(A) + |t2| m(B) < 1; the (n, m) term is bounded by
    deg(beta) * C(n+m, n) q2^n q1^m, so total orders beyond S contribute
    at most deg(beta) * (q1+q2)^(S+1) / (1 - q1 - q2).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    q1 = abs(t1) * m_norm(A)
    q2 = abs(t2) * m_norm(B)
    qs = q1 + q2
    if qs >= 1.0:
        radius = math.inf if qs == 0 else 1.0 / qs
        raise DomainError(
            f"|t1|*m(A) + |t2|*m(B) = {qs:.6g} >= 1: outside the certified "
            f"composition domain", radius)
    d_beta = degree(beta)
    s_max, _ = _geometric_order(d_beta, qs, tol, order_cap)

    p = A.p
    o = (0,) * p
    moves_a = _moves(A)
    moves_b = _moves(B)

    def step(row: dict[tuple[int, ...], complex], moves, scale: complex):
        nxt: dict[tuple[int, ...], complex] = {}
        for idx, cval in row.items():
            for ci in range(p):
                ni = idx[ci]
                if ni == 0:
                    continue
                base = cval * ni * scale
                for delta, a in moves[ci]:
                    tgt = tuple(x + d for x, d in zip(idx, delta))
                    nxt[tgt] = nxt.get(tgt, 0j) + base * a
        return {k: v for k, v in nxt.items() if v != 0}

    total = 0j
    u: dict[tuple[int, ...], complex] = {beta.entries: 1.0 + 0j}
    for m_ord in range(0, s_max + 1):
        if m_ord > 0:
            u = step(u, moves_a, t1 / m_ord)
            if not u:
                break
        w = u
        total += w.get(o, 0j)
        for n_ord in range(1, s_max - m_ord + 1):
            w = step(w, moves_b, t2 / n_ord)
            if not w:
                break
            total += w.get(o, 0j)
    return total


def flow(r: FlowRequest, order_cap: int = DEFAULT_ORDER_CAP) -> FlowResult:
    """Integrate dy/dt = A(y), y(0) = x0, by the certified exponential series.

    Recsummed per coordinate: y_i = x0_i + eps(exp(t*D_{A_x})(f_{i(1)}^o))
    with A_x the field recentered at x0. Valid for |t| * m(A_x) < 1.
    """
    A_x = shift(r.field, r.x0)
    m = m_norm(A_x)
    radius = math.inf if m == 0 else 1.0 / m
    if abs(r.t) * m >= 1.0:
        raise DomainError(
            f"|t|*m(A_x) = {abs(r.t) * m:.6g} >= 1: flow time outside the "
            f"certified disc of radius {radius:.12g}", radius)
    p = r.field.p
    ys = []
    order = 0
    tail = 0.0
    for i in range(1, p + 1):
        val, n_i, tail_i = exp_pairing(A_x, r.t, unit(p, i), r.tol, order_cap)
        ys.append(r.x0[i - 1] + val)
        order = max(order, n_i)
        tail = max(tail, tail_i)
    return FlowResult(y=tuple(ys), radius=radius, truncation_order=order,
                      tail_bound=tail)


def flow_radius(A: VectorField, x0: Sequence[complex]) -> tuple[float, float]:
    """(m(A_x), 1/m(A_x)) at the recentered field; radius is inf for m = 0."""
    m = m_norm(shift(A, tuple(x0)))
    return m, (math.inf if m == 0 else 1.0 / m)
