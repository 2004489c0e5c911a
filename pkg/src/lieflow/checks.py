"""Seeded property-check suites behind the `check` endpoints.

Every suite draws all randomness from one numpy PCG64 generator seeded
by the caller, so identical seeds reproduce identical reports on any
platform. Random chain and field coefficients are dyadic rationals
(multiples of 1/16): every product along a path is then exactly
representable, so equalities that hold structurally (path-sum
agreement, vanishing) come out bit-exact rather than merely close.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .duality import run_duality_report, run_pairing_report
from .lie_analysis import (
    ChainSpec,
    FlowRequest,
    chain_bound,
    chain_vanishes,
    eps_chain_direct,
    eps_chain_pathsum,
    exp_pairing,
    flow,
)
from .multiindex import MultiIndex, add, degree, unit, zero
from .relations import (
    RelationWitness,
    check_relation,
    epsilon_power_value,
    module_witness,
    multiindex_factorial,
    sorted_monomial_words,
)
from .vector_field import (
    VectorField,
    eval_component,
    m_norm,
    preserves_degree_filtration,
    shift,
)


def _dyadic(rng: np.random.Generator) -> complex:
    re = int(rng.integers(-8, 9))
    im = int(rng.integers(-8, 9))
    if re == 0 and im == 0:
        re = 1
    return complex(re / 16.0, im / 16.0)


def random_multiindex(rng: np.random.Generator, p: int, sup_max: int) -> MultiIndex:
    return MultiIndex(tuple(int(v) for v in rng.integers(0, sup_max + 1, p)))


def random_field(rng: np.random.Generator, p: int, deg_max: int = 3,
                 max_terms: int = 3, affine: bool = False) -> VectorField:
    comps = []
    for _ in range(p):
        terms: dict[MultiIndex, complex] = {}
        for _ in range(int(rng.integers(1, max_terms + 1))):
            while True:
                m = random_multiindex(rng, p, 1 if affine else deg_max)
                if degree(m) <= (1 if affine else deg_max):
                    break
            terms[m] = _dyadic(rng)
        comps.append(terms)
    return VectorField.from_coeffs(p, comps)


def random_chain(rng: np.random.Generator, p_max: int = 2, n_max: int = 4,
                 deg_max: int = 3, sup_max: int = 4) -> ChainSpec:
    p = int(rng.integers(1, p_max + 1))
    n = int(rng.integers(1, n_max + 1))
    fields = tuple(random_field(rng, p, deg_max) for _ in range(n))
    alpha = random_multiindex(rng, p, sup_max)
    beta = random_multiindex(rng, p, sup_max)
    return ChainSpec(fields, alpha, beta)


def _result(name: str, trials: int, dev: float, tol: float, **extra) -> dict:
    out = {"name": name, "trials": trials, "max_abs_deviation": dev,
           "tol": tol, "ok": dev <= tol}
    out.update(extra)
    return out


def check_pathsum_equivalence(trials: int = 200, seed: int = 42) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        c = random_chain(rng)
        worst = max(worst, abs(eps_chain_direct(c) - eps_chain_pathsum(c)))
    return _result("pathsum_equivalence", trials, worst, 1e-10)


def check_chain_bound(trials: int = 200, seed: int = 42) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        c = random_chain(rng)
        excess = abs(eps_chain_direct(c)) - chain_bound(c)
        worst = max(worst, excess)
    return _result("chain_bound", trials, max(worst, 0.0), 0.0)


def check_chain_vanishing(trials: int = 50, seed: int = 42) -> dict:
    """Chains built to exceed the degree threshold must evaluate to exact 0."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        p = int(rng.integers(1, 3))
        n = int(rng.integers(1, 5))
        fields = tuple(random_field(rng, p, 3) for _ in range(n))
        alpha = random_multiindex(rng, p, 1)
        extra = degree(alpha) + n + 2 + int(rng.integers(0, 3))
        entries = [0] * p
        for _ in range(extra):
            entries[int(rng.integers(0, p))] += 1
        c = ChainSpec(fields, alpha, MultiIndex(tuple(entries)))
        assert chain_vanishes(c)
        worst = max(worst, abs(eps_chain_direct(c)))
    return _result("chain_vanishing", trials, worst, 0.0)


def _domain_sample(rng: np.random.Generator, heavy: bool):
    """A field, time, and index with |t| m(A) <= 0.9 (p=2 kept lighter)."""
    p = 1 if heavy or rng.uniform() < 0.6 else 2
    A = random_field(rng, p, deg_max=3 if p == 1 else 2)
    q = 0.9 if heavy else float(rng.uniform(0.05, 0.9 if p == 1 else 0.45))
    phase = float(rng.uniform(0, 2 * math.pi))
    t = q / m_norm(A) * complex(math.cos(phase), math.sin(phase))
    beta = random_multiindex(rng, p, 4 if p == 1 else 2)
    if degree(beta) == 0:
        beta = unit(p, 1)
    return A, t, beta


def check_exp_truncation(trials: int = 50, seed: int = 42, tol: float = 1e-9) -> dict:
    """The certified tail is honest: tightening tol a hundredfold moves the
    value by at most tol."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for trial in range(trials):
        A, t, beta = _domain_sample(rng, heavy=(trial < 2))
        coarse, _, _ = exp_pairing(A, t, beta, tol)
        fine, _, _ = exp_pairing(A, t, beta, tol / 100)
        worst = max(worst, abs(coarse - fine))
    return _result("exp_truncation_soundness", trials, worst, tol)


def check_exp_character(trials: int = 20, seed: int = 42, tol: float = 1e-9) -> dict:
    """Grouplike exponentials are characters on the row module:
    pairing at n+m factors into the product of pairings."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        p = int(rng.integers(1, 3))
        A = random_field(rng, p, deg_max=2)
        n = random_multiindex(rng, p, 2)
        m = random_multiindex(rng, p, 2)
        q = float(rng.uniform(0.05, 0.5))
        t = q / m_norm(A)
        joint, _, _ = exp_pairing(A, t, add(n, m), tol)
        left, _, _ = exp_pairing(A, t, n, tol)
        right, _, _ = exp_pairing(A, t, m, tol)
        worst = max(worst, abs(joint - left * right))
    return _result("exp_character", trials, worst, 10 * tol)


def check_flow_semigroup(trials: int = 20, seed: int = 42, tol: float = 1e-9) -> dict:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        p = int(rng.integers(1, 3))
        A = random_field(rng, p, deg_max=2)
        x0 = tuple(complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2))
                   for _ in range(p))
        scale = 1.0
        while True:
            m_at_x = m_norm(shift(A, x0))
            r = math.inf if m_at_x == 0 else 1.0 / m_at_x
            t1 = 0.2 * scale * (r if r < math.inf else 1.0)
            t2 = 0.15 * scale * (r if r < math.inf else 1.0)
            first = flow(FlowRequest(A, x0, t1, tol))
            m_at_y = m_norm(shift(A, first.y))
            if abs(t2) * m_at_y < 0.9 and abs(t1 + t2) * m_at_x < 0.9:
                break
            scale *= 0.5
        second = flow(FlowRequest(A, first.y, t2, tol))
        joint = flow(FlowRequest(A, x0, t1 + t2, tol))
        dev = max(abs(a - b) for a, b in zip(second.y, joint.y))
        worst = max(worst, dev)
    return _result("flow_semigroup", trials, worst, 10 * tol)


def check_shift(trials: int = 100, seed: int = 42) -> dict:
    """Recentering agrees with evaluation at shifted points, and composes
    additively, at relative precision 1e-12."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        p = int(rng.integers(1, 3))
        A = random_field(rng, p, deg_max=4)
        x = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(p))
        y = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(p))
        z = tuple(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(p))
        Ax = shift(A, x)
        for i in range(1, p + 1):
            lhs = eval_component(Ax, i, z)
            rhs = eval_component(A, i, tuple(a + b for a, b in zip(z, x)))
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        Axy = shift(Ax, y)
        direct = shift(A, tuple(a + b for a, b in zip(x, y)))
        for comp_a, comp_b in zip(Axy.components, direct.components):
            keys = set(comp_a) | set(comp_b)
            for k in keys:
                worst = max(worst, abs(comp_a.get(k, 0j) - comp_b.get(k, 0j)))
    return _result("shift_recentering", trials, worst, 1e-12)


def check_degree_filtration(trials: int = 10, seed: int = 42) -> dict:
    """Affine fields keep every degree-bounded row span invariant."""
    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(trials):
        p = int(rng.integers(1, 3))
        A = random_field(rng, p, affine=True)
        if not all(preserves_degree_filtration(A, d) for d in range(5)):
            bad += 1
    return _result("degree_filtration", trials, float(bad), 0.0)


def check_relations_sweep(p_max: int = 2, deg_max: int = 4) -> dict:
    """Module witnesses of bounded degree all certify as relations, the
    canonical counit-power identity is exact, and a planted false witness
    is rejected with its deviating word."""
    worst = 0.0
    pairs = 0
    for p in range(1, p_max + 1):
        for a_exp in sorted_monomial_words(p, deg_max):
            for b_exp in sorted_monomial_words(p, deg_max):
                alpha = MultiIndex(a_exp)
                beta = MultiIndex(b_exp)
                cap = degree(alpha) + degree(beta) + 2
                rep = check_relation(RelationWitness(module_witness(alpha, beta), cap), p=p)
                worst = max(worst, rep.max_deviation)
                pairs += 1
    # exact factorial identity on the integer path
    ident_dev = 0.0
    for p in range(1, p_max + 1):
        for a_exp in sorted_monomial_words(p, 6 if p == 1 else 4):
            alpha = MultiIndex(a_exp)
            for n_exp in sorted_monomial_words(p, 6 if p == 1 else 4):
                want = multiindex_factorial(alpha) if n_exp == a_exp else 0
                got = epsilon_power_value(p, n_exp, alpha)
                ident_dev = max(ident_dev, abs(got - want))
    # negative control: f_1 (x) f_1 - f_1 is not a relation
    from .coalgebra import BasisSymbol
    from .tensor_algebra import TensorElement, product
    f1 = TensorElement.word(BasisSymbol(MultiIndex((1,)), MultiIndex((0,))))
    false_witness = RelationWitness(product(f1, f1) - f1, 5)
    false_rep = check_relation(false_witness, p=1)
    ok = worst <= 1e-12 and ident_dev == 0.0 and not false_rep.ok
    return {"name": "induced_relations", "trials": pairs,
            "max_abs_deviation": worst, "tol": 1e-12, "ok": ok,
            "counit_power_identity_deviation": ident_dev,
            "false_witness": false_rep.to_json()}


def run_relations_report(p_max: int = 2, deg_max: int = 4) -> dict:
    rep = check_relations_sweep(p_max, deg_max)
    rep["p"] = p_max
    rep["maxdeg"] = deg_max
    return rep


def run_properties_report(seed: int = 42) -> dict:
    """The full invariant suite; one entry per property."""
    checks: list[Callable[[], dict]] = [
        lambda: check_pathsum_equivalence(seed=seed),
        lambda: check_chain_bound(seed=seed),
        lambda: check_chain_vanishing(seed=seed),
        lambda: check_exp_truncation(seed=seed),
        lambda: check_exp_character(seed=seed),
        lambda: check_flow_semigroup(seed=seed),
        lambda: check_shift(seed=seed),
        lambda: check_degree_filtration(seed=seed),
        lambda: check_relations_sweep(),
        lambda: _named(run_duality_report(200, seed), "duality_identity", 1e-10),
        lambda: _named(run_pairing_report(50, seed), "pairing_identities", 1e-10),
    ]
    results = [c() for c in checks]
    return {"seed": seed, "checks": results,
            "all_ok": all(r["ok"] for r in results)}


def _named(report: dict, name: str, tol: float) -> dict:
    return {"name": name, "trials": report["trials"],
            "max_abs_deviation": report["max_abs_deviation"], "tol": tol,
            "ok": report["max_abs_deviation"] <= tol and not report["failures"]}
