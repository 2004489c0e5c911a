"""Finite-dimensional duality harness.

Everything here is dense and tiny (dimensions <= 4, word lengths <= 4).
A finite coalgebra is a rank-3 coproduct tensor plus a counit vector; a
linear map from a coalgebra L into the invariant operators on a
coalgebra F is stored through the algebra identification: invariant
operators on the dual of an algebra E are exactly the translations by
elements of E, so the map is a (dim L) x (dim F) pairing matrix whose
row a holds the coordinates of the element realizing generator a. That
makes transposition literal matrix transposition, and the per-generator
operator matrices demanded by the action are derived views.

The duality identity evaluated on both sides,

    eps_F(pi_x(w)(z)) = eps_L(pi_y(rev z)(rev w)),

is the check that everything above is wired consistently; the two sides
share no code path beyond the coproduct tensors.

Random instances come from the duals of small unital associative
algebras pushed through random basis changes, so the coalgebra axioms
hold by construction rather than by rejection sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

import numpy as np

AXIOM_TOL = 1e-12


@dataclass(frozen=True)
class FiniteCoalgebra:
    """delta[a,b,c]: coefficient of e_b (x) e_c in the coproduct of e_a."""

    dim: int
    delta: np.ndarray
    eps: np.ndarray
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.delta.shape != (self.dim,) * 3:
            raise ValueError("coproduct tensor must have shape (dim, dim, dim)")
        if self.eps.shape != (self.dim,):
            raise ValueError("counit vector must have shape (dim,)")

    def coassociativity_residual(self) -> float:
        left = np.einsum("abc,bxy->axyc", self.delta, self.delta)
        right = np.einsum("abc,cxy->abxy", self.delta, self.delta)
        return float(np.max(np.abs(left - right)))

    def counit_residual(self) -> float:
        ident = np.eye(self.dim)
        left = np.einsum("abc,b->ac", self.delta, self.eps)
        right = np.einsum("abc,c->ab", self.delta, self.eps)
        return float(max(np.max(np.abs(left - ident)), np.max(np.abs(right - ident))))

    def validate(self, tol: float = AXIOM_TOL) -> None:
        r = max(self.coassociativity_residual(), self.counit_residual())
        if r > tol:
            raise ValueError(f"coalgebra axioms violated (residual {r:.3g})")

    def iterated_coproduct(self, legs: int) -> np.ndarray:
        """Delta^(legs-1): shape (dim,) + (dim,)*legs; legs >= 1."""
        key = ("cop", legs)
        if key not in self._cache:
            out = np.eye(self.dim, dtype=complex).reshape(self.dim, self.dim)
            for _ in range(legs - 1):
                # split the first leg once more
                out = np.einsum("bxy,ab...->axy...", self.delta, out)
            self._cache[key] = out
        return self._cache[key]

    def eps_power(self, legs: int) -> np.ndarray:
        """eps (x) ... (x) eps flattened to length dim**legs."""
        key = ("eps", legs)
        if key not in self._cache:
            if legs == 0:
                self._cache[key] = np.ones(1, dtype=complex)
            else:
                vecs = [self.eps.astype(complex)] * legs
                self._cache[key] = reduce(np.kron, vecs)
        return self._cache[key]


@dataclass(frozen=True)
class InvariantMap:
    """x: L -> Invd(F), stored as the pairing matrix of realizing elements."""

    source: FiniteCoalgebra
    target: FiniteCoalgebra
    pairing: np.ndarray
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.pairing.shape != (self.source.dim, self.target.dim):
            raise ValueError("pairing matrix shape must be (dim L, dim F)")

    def operator_matrix(self, a: int) -> np.ndarray:
        """The action of generator a on F: column c maps to
        sum_{b,k} delta_F[c,b,k] * pairing[a,b] at row k."""
        key = ("op", a)
        if key not in self._cache:
            self._cache[key] = np.einsum("cbk,b->kc", self.target.delta,
                                         self.pairing[a])
        return self._cache[key]

    def word_matrix(self, a: int, legs: int) -> np.ndarray:
        """The extension of generator a to (x)^legs F as a dense matrix:
        distribute the (legs-1)-fold coproduct over the factors."""
        key = ("word", a, legs)
        if key in self._cache:
            return self._cache[key]
        if legs == 0:
            # the extension on the unit is the counit scalar
            total = np.array([[self.source.eps[a]]], dtype=complex)
        else:
            cop = self.source.iterated_coproduct(legs)
            ops = [self.operator_matrix(b) for b in range(self.source.dim)]
            d = self.target.dim
            total = np.zeros((d ** legs, d ** legs), dtype=complex)
            for assignment in np.ndindex(*([self.source.dim] * legs)):
                coeff = cop[(a,) + assignment]
                if abs(coeff) <= 1e-300:
                    continue
                total += coeff * reduce(np.kron, [ops[b] for b in assignment])
        self._cache[key] = total
        return total


def transpose(x: InvariantMap) -> InvariantMap:
    """y: F -> Invd(L); literal transposition of the pairing matrix."""
    return InvariantMap(source=x.target, target=x.source,
                        pairing=x.pairing.T.copy())


def pi_apply(x: InvariantMap, w: Sequence[int], z: Sequence[int]) -> np.ndarray:
    """pi_x(w) applied to the basis word z, first letter of w outermost.

    Returns the coefficient array over (x)^len(z) F, flattened; for the
    empty z the array has one entry (the coefficient of the unit).
    """
    legs = len(z)
    d = x.target.dim
    if legs == 0:
        vec = np.ones(1, dtype=complex)
    else:
        vec = np.zeros(d ** legs, dtype=complex)
        flat = 0
        for c in z:
            flat = flat * d + c
        vec[flat] = 1.0
    for a in reversed(list(w)):
        vec = x.word_matrix(a, legs) @ vec
    return vec


def pairing_value(x: InvariantMap, w: Sequence[int], z: Sequence[int]) -> complex:
    """<w, z> = eps_F(pi_x(w)(z))."""
    vec = pi_apply(x, w, z)
    return complex(x.target.eps_power(len(z)) @ vec)


def duality_check(x: InvariantMap, w: Sequence[int],
                  z: Sequence[int]) -> tuple[complex, complex]:
    """Both sides of the duality identity; the caller asserts closeness."""
    lhs = pairing_value(x, w, z)
    y = transpose(x)
    rhs = pairing_value(y, list(reversed(z)), list(reversed(w)))
    return lhs, rhs


def _word_coproduct(C: FiniteCoalgebra, word: Sequence[int]):
    """Multiplicative extension of the coproduct to a basis word: yields
    ((left word, right word), coefficient) over all splittings."""
    d = C.dim
    r = len(word)
    for left in np.ndindex(*([d] * r)):
        for right in np.ndindex(*([d] * r)):
            coeff = 1.0 + 0j
            for t in range(r):
                coeff *= C.delta[word[t], left[t], right[t]]
                if coeff == 0:
                    break
            if coeff != 0:
                yield (left, right), coeff


def pairing_identity_residuals(x: InvariantMap, u_words: Sequence[Sequence[int]],
                               z_words: Sequence[Sequence[int]]) -> dict:
    """Residuals of the two multiplicativity identities of the pairing.

    (1) <u, z1.z2> = sum <u', z1><u'', z2>   (coproduct on the L side)
    (2) <u1.u2, z> = sum <u2, z'><u1, z''>   (coproduct on the F side,
        factors swapped)
    """
    worst1 = 0.0
    worst2 = 0.0
    for u in u_words:
        for z1 in z_words:
            for z2 in z_words:
                lhs = pairing_value(x, u, list(z1) + list(z2))
                rhs = 0j
                for (up, upp), coeff in _word_coproduct(x.source, u):
                    rhs += coeff * pairing_value(x, up, z1) * pairing_value(x, upp, z2)
                worst1 = max(worst1, abs(lhs - rhs))
    for u1 in u_words:
        for u2 in u_words:
            for z in z_words:
                lhs = pairing_value(x, list(u1) + list(u2), z)
                rhs = 0j
                for (zp, zpp), coeff in _word_coproduct(x.target, z):
                    rhs += coeff * pairing_value(x, u2, zp) * pairing_value(x, u1, zpp)
                worst2 = max(worst2, abs(lhs - rhs))
    return {"product_on_F": worst1, "product_on_L": worst2}


# ---------------------------------------------------------------------------
# instance generation

_BASE_ALGEBRAS: dict[str, tuple[np.ndarray, np.ndarray]] = {}


def _register_base_algebras() -> None:
    if _BASE_ALGEBRAS:
        return

    def alg(name, dim, products, unit):
        mult = np.zeros((dim, dim, dim), dtype=complex)
        for (i, j, k), v in products.items():
            mult[i, j, k] = v
        _BASE_ALGEBRAS[name] = (mult, np.array(unit, dtype=complex))

    alg("scalars", 1, {(0, 0, 0): 1}, [1])
    # truncated polynomials C[x]/x^k, basis 1, x, ..
    alg("dual_numbers", 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}, [1, 0])
    alg("poly3", 3, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1,
                     (0, 2, 2): 1, (2, 0, 2): 1, (1, 1, 2): 1}, [1, 0, 0])
    # group algebras of Z/2 and Z/3
    alg("z2", 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): 1}, [1, 0])
    alg("z3", 3, {(i, j, (i + j) % 3): 1 for i in range(3) for j in range(3)}, [1, 0, 0])
    # split C^2 and C^3
    alg("diag2", 2, {(i, i, i): 1 for i in range(2)}, [1, 1])
    alg("diag3", 3, {(i, i, i): 1 for i in range(3)}, [1, 1, 1])
    # 2x2 matrix algebra, basis E11, E12, E21, E22
    mat_products = {}
    def eid(r, c):
        return 2 * r + c
    for r in range(2):
        for c in range(2):
            for rr in range(2):
                for cc in range(2):
                    if c == rr:
                        mat_products[(eid(r, c), eid(rr, cc), eid(r, cc))] = 1
    alg("mat2", 4, mat_products, [1, 0, 0, 1])


def base_algebra_names(max_dim: int = 4) -> list[str]:
    _register_base_algebras()
    return sorted(name for name, (mult, _) in _BASE_ALGEBRAS.items()
                  if mult.shape[0] <= max_dim)


def dual_coalgebra(mult: np.ndarray, unit: np.ndarray) -> FiniteCoalgebra:
    """The coalgebra dual to a unital associative algebra:
    delta[a,b,c] = mult[b,c,a], eps = unit coordinates."""
    dim = mult.shape[0]
    delta = np.transpose(mult, (2, 0, 1)).copy()
    return FiniteCoalgebra(dim=dim, delta=delta, eps=unit.astype(complex).copy())


def random_coalgebra(rng: np.random.Generator, max_dim: int = 3) -> FiniteCoalgebra:
    """Dual of a random base algebra under a random unitary basis change.

    The axioms hold to machine precision by construction, and unitarity
    keeps the structure constants O(1) so that deviations in the duality
    sweep measure roundoff, not amplification.
    """
    _register_base_algebras()
    name = rng.choice(base_algebra_names(max_dim))
    mult, unit = _BASE_ALGEBRAS[name]
    dim = mult.shape[0]
    gauss = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    P, _ = np.linalg.qr(gauss)
    Pinv = P.conj().T
    mult_new = np.einsum("ai,bj,ijk,kc->abc", P, P, mult, Pinv)
    unit_new = np.linalg.solve(P.T, unit.astype(complex))
    return dual_coalgebra(mult_new, unit_new)


def random_invariant_map(rng: np.random.Generator,
                         max_dim: int = 3) -> InvariantMap:
    L = random_coalgebra(rng, max_dim)
    F = random_coalgebra(rng, max_dim)
    pairing = 0.5 * (rng.uniform(-1, 1, (L.dim, F.dim))
                     + 1j * rng.uniform(-1, 1, (L.dim, F.dim)))
    return InvariantMap(source=L, target=F, pairing=pairing)


def random_word(rng: np.random.Generator, dim: int, max_len: int = 4) -> list[int]:
    length = int(rng.integers(0, max_len + 1))
    return [int(rng.integers(0, dim)) for _ in range(length)]


def run_duality_report(trials: int, seed: int, max_dim: int = 3,
                       max_len: int = 4, tol: float = 1e-10) -> dict:
    """Seeded sweep of the duality identity; same seed, same report."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures: list[dict] = []
    for trial in range(trials):
        x = random_invariant_map(rng, max_dim)
        w = random_word(rng, x.source.dim, max_len)
        z = random_word(rng, x.target.dim, max_len)
        lhs, rhs = duality_check(x, w, z)
        dev = abs(lhs - rhs)
        worst = max(worst, dev)
        if dev > tol:
            failures.append({"trial": trial, "w": w, "z": z, "deviation": dev})
    return {"trials": trials, "max_abs_deviation": worst, "failures": failures}


def run_pairing_report(trials: int, seed: int, max_dim: int = 3,
                       max_len: int = 2, tol: float = 1e-10) -> dict:
    """Seeded sweep of the two pairing identities on short random words."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    failures: list[dict] = []
    for trial in range(trials):
        x = random_invariant_map(rng, max_dim)
        u_words = [random_word(rng, x.source.dim, max_len) for _ in range(2)]
        z_words = [random_word(rng, x.target.dim, max_len) for _ in range(2)]
        res = pairing_identity_residuals(x, u_words, z_words)
        dev = max(res.values())
        worst = max(worst, dev)
        if dev > tol:
            failures.append({"trial": trial, "residuals": res})
    return {"trials": trials, "max_abs_deviation": worst, "failures": failures}


# ---------------------------------------------------------------------------
# bridge instances shared with the infinite-dimensional side

def leibnitz_coalgebra(p: int) -> FiniteCoalgebra:
    """The (p+1)-dimensional coalgebra with one grouplike and p primitives."""
    dim = p + 1
    delta = np.zeros((dim, dim, dim), dtype=complex)
    delta[0, 0, 0] = 1
    for i in range(1, dim):
        delta[i, 0, i] = 1
        delta[i, i, 0] = 1
    eps = np.zeros(dim, dtype=complex)
    eps[0] = 1
    return FiniteCoalgebra(dim=dim, delta=delta, eps=eps)


def fa_box_coalgebra_op(q: int) -> tuple[FiniteCoalgebra, dict[tuple[int, int], int]]:
    """The opposite of the one-variable box coalgebra F_q (indices <= q).

    Left-invariant operators on F_q are right-invariant on the opposite
    coalgebra, which is what the harness machinery acts with; the index
    map sends (lower, upper) to the flattened basis slot.
    """
    side = q + 1
    index = {(n, m): n * side + m for n in range(side) for m in range(side)}
    dim = side * side
    delta = np.zeros((dim, dim, dim), dtype=complex)
    for n in range(side):
        for m in range(side):
            for k in range(side):
                delta[index[(n, m)], index[(n, k)], index[(k, m)]] = 1
    eps = np.zeros(dim, dtype=complex)
    for n in range(side):
        eps[index[(n, n)]] = 1
    return FiniteCoalgebra(dim=dim, delta=delta, eps=eps), index


def lowering_invariant_map(p: int, q: int) -> tuple[InvariantMap, dict[tuple[int, int], int]]:
    """The canonical lowering realization as a finite-dimensional instance
    (one variable): generator 0 realizes the identity, generator 1 the
    lowering matrix, both restricted to the box coalgebra."""
    if p != 1:
        raise ValueError("the bridge instance is built for one variable")
    L = leibnitz_coalgebra(p)
    F, index = fa_box_coalgebra_op(q)
    pairing = np.zeros((L.dim, F.dim), dtype=complex)
    for n in range(q + 1):
        pairing[0, index[(n, n)]] = 1
        if n >= 1:
            pairing[1, index[(n, n - 1)]] = n
    return InvariantMap(source=L, target=F, pairing=pairing), index
