"""Orbital integrals: Monte Carlo engine, exact enumeration oracle, error
bounds, convergence experiment."""

from fractions import Fraction

import numpy as np
import pytest

from nonarch.characters import CharValue
from nonarch.errors import DimensionMismatch, LevelTooLow, TooLarge
from nonarch.orbital import (
    convergence_experiment,
    error_bound,
    exact_orbital_integral,
    full_rank_fraction,
    mc_orbital_integral,
    mc_orbital_multi,
    product_formula,
    verify_bound,
    verify_multiplicativity,
)
from nonarch.params import DeltaParam, OmegaParam
from nonarch.sampling import KIND_CONGRUENCE, KIND_TWO_SIDED, RandomStream


# -- product formula -------------------------------------------------------------


def test_product_formula_trivial(q3):
    assert product_formula(q3, KIND_TWO_SIDED, [0, 0], [0]) == CharValue.one()


def test_product_formula_bilinear(q3):
    # Theta(pi^-2) * Theta(pi^-1) = q^-3
    cv = product_formula(q3, KIND_TWO_SIDED, [1, 0], [1])
    assert cv == CharValue("+1", 6)


def test_product_formula_eps_flip(q3):
    a = product_formula(q3, KIND_CONGRUENCE, [1], [q3.one()])
    b = product_formula(q3, KIND_CONGRUENCE, [1], [q3.eps()])
    assert a == CharValue("+i", 1) and b == CharValue("-i", 1)


# -- error bounds ------------------------------------------------------------------


def test_full_rank_fraction():
    assert full_rank_fraction(4, 2, 3) == Fraction(80, 81) * Fraction(26, 27)


def test_error_bound_values():
    x = full_rank_fraction(4, 2, 3)
    b = error_bound(KIND_TWO_SIDED, 4, 2, 3)
    assert b.factorization == 2 * (1 - x * x)
    assert error_bound(KIND_CONGRUENCE, 4, 2, 3).factorization == 2 * (1 - x)
    # r = 1 forms
    assert error_bound(KIND_TWO_SIDED, 5, 1, 3).factorization == 2 * (
        2 * Fraction(1, 3**5) - Fraction(1, 3**10)
    )
    assert error_bound(KIND_CONGRUENCE, 5, 1, 3).factorization == Fraction(2, 3**5)


def test_error_bound_monotone_to_zero():
    prev = None
    for n in range(2, 12):
        b = float(error_bound(KIND_TWO_SIDED, n, 2, 3).factorization)
        if prev is not None:
            assert b < prev
        prev = b
    assert prev < 1e-3


def test_squared_deficit_constant_is_violated(q3):
    """The comparison bound must use the union form 2(1 - x^2): the
    superficially tighter 2(1 - x)^2 fails already at n = r = 1, where the
    integral is exactly -1/(q-1) while the kernel product is q^-1."""
    exact = exact_orbital_integral(q3, KIND_TWO_SIDED, [0], [1], level=1)
    assert exact == pytest.approx(-0.5, abs=1e-12)
    prod = product_formula(q3, KIND_TWO_SIDED, [0], [1]).to_complex(3)
    gap = abs(exact - prod)
    x = full_rank_fraction(1, 1, 3)
    squared_deficit = 2 * float(1 - x) ** 2
    union = 2 * float(1 - x * x)
    assert gap > squared_deficit  # 5/6 > 2/9
    assert gap <= union  # 5/6 <= 10/9


def test_union_bound_holds_exactly_at_small_sizes(q3):
    for kind in (KIND_TWO_SIDED, KIND_CONGRUENCE):
        for dv, av in ([(1,), (1,)], [(1, 0), (1,)], [(1, 1), (1, 1)]):
            exact = exact_orbital_integral(q3, kind, list(dv), list(av), level=2)
            prod = product_formula(q3, kind, list(dv), list(av)).to_complex(3)
            bound = float(error_bound(kind, len(dv), len(av), 3).factorization)
            assert abs(exact - prod) <= bound + 1e-12


# -- Monte Carlo engine ---------------------------------------------------------------


def test_mc_constant_integrand(q3):
    est = mc_orbital_integral(q3, KIND_TWO_SIDED, [0, 0], [0], 500, RandomStream(1))
    assert est.mean == 1.0 and est.stderr == 0.0


def test_mc_reproducible(q3):
    a = mc_orbital_integral(q3, KIND_TWO_SIDED, [1, 0], [1], 2000, RandomStream(5))
    b = mc_orbital_integral(q3, KIND_TWO_SIDED, [1, 0], [1], 2000, RandomStream(5))
    assert a.mean == b.mean and a.stderr == b.stderr


def test_mc_congruence_unit_level_is_constant(q3):
    # n=1, D=(pi^-1), A=(1): the integrand is constant e^{2 pi i/3} on units
    est = mc_orbital_integral(q3, KIND_CONGRUENCE, [1], [0], 400, RandomStream(3))
    assert est.mean == pytest.approx(np.exp(2j * np.pi / 3))
    assert est.stderr <= 1e-15


def test_mc_rank_guard(q3):
    with pytest.raises(DimensionMismatch):
        mc_orbital_integral(q3, KIND_TWO_SIDED, [1], [1, 1], 200, RandomStream(1))


def test_mc_multi_shares_draws(q3):
    ests = mc_orbital_multi(q3, KIND_CONGRUENCE, [1, 0], [[1], [1, 0]], 3000, RandomStream(9))
    single = mc_orbital_integral(q3, KIND_CONGRUENCE, [1, 0], [1], 3000, RandomStream(9))
    assert ests[0].mean == single.mean


def test_mc_matches_exact_small_cases(q3):
    rng = RandomStream(11)
    for kind, dv, av in (
        (KIND_TWO_SIDED, [1, 0], [1]),
        (KIND_CONGRUENCE, [1, 1], [1]),
    ):
        exact = exact_orbital_integral(q3, kind, dv, av, level=2)
        est = mc_orbital_integral(q3, kind, dv, av, 40_000, rng.child(kind))
        assert abs(est.mean - exact) <= 3 * est.stderr


def test_mc_laurent_matches_exact(l3):
    exact = exact_orbital_integral(l3, KIND_CONGRUENCE, [1, 0], [0], level=1)
    est = mc_orbital_integral(l3, KIND_CONGRUENCE, [1, 0], [0], 20_000, RandomStream(13))
    assert abs(est.mean - exact) <= 3 * est.stderr
    exact2 = exact_orbital_integral(l3, KIND_TWO_SIDED, [1, 0], [0, None], level=1)
    est2 = mc_orbital_integral(l3, KIND_TWO_SIDED, [1, 0], [0, None], 20_000, RandomStream(14))
    assert abs(est2.mean - exact2) <= 3 * est2.stderr + 1e-12


# -- exact oracle -----------------------------------------------------------------------


def test_exact_identity_case(q3):
    assert exact_orbital_integral(q3, KIND_TWO_SIDED, [0, 0], [0], level=1) == 1.0


def test_exact_congruence_worked_example(q3):
    val = exact_orbital_integral(q3, KIND_CONGRUENCE, [1], [0], level=1)
    assert val == pytest.approx(np.exp(2j * np.pi / 3), abs=1e-12)


def test_exact_level_guards(q3):
    with pytest.raises(LevelTooLow):
        exact_orbital_integral(q3, KIND_TWO_SIDED, [1], [1], level=1)
    with pytest.raises(TooLarge):
        exact_orbital_integral(q3, KIND_TWO_SIDED, [2, 2, 2], [2, 2, 2], level=4)


def test_exact_level_stability(q3):
    v1 = exact_orbital_integral(q3, KIND_CONGRUENCE, [1, 0], [0], level=1)
    v2 = exact_orbital_integral(q3, KIND_CONGRUENCE, [1, 0], [0], level=2)
    assert v1 == pytest.approx(v2, abs=1e-12)


def test_exact_permutation_invariance(q3):
    a = exact_orbital_integral(q3, KIND_TWO_SIDED, [1, 0], [1], level=2)
    b = exact_orbital_integral(q3, KIND_TWO_SIDED, [0, 1], [1], level=2)
    assert a == pytest.approx(b, abs=1e-12)


# -- cross-module identities -----------------------------------------------------------


def test_char_mu_equals_generator_kernel_product(q3):
    # for a -inf tail the closed characteristic function is exactly the
    # kernel product over the canonical diagonal generator, at any n
    from nonarch.orbital import generator_diagonal

    par = DeltaParam((3, 1, 1), None)
    for n in (3, 5, 7):
        D = generator_diagonal(q3, par, n)
        for ell in range(-4, 5):
            prod = product_formula(q3, KIND_TWO_SIDED, D, [ell])
            assert prod == par.char_single(ell)


def test_char_nu_equals_generator_kernel_product(q3):
    from nonarch.orbital import generator_diagonal

    om = OmegaParam(None, (2, 1), (0,))
    D = generator_diagonal(q3, om, 5)
    for ell in range(-3, 4):
        for u in (q3.one(), q3.eps()):
            x = u.shift(-ell)
            prod = product_formula(q3, KIND_CONGRUENCE, D, [x])
            assert prod == om.char_single(x)


def test_exact_oracle_against_field_level_enumeration(q3):
    # fully independent route: enumerate GL(2, F_3), lift each residue
    # matrix to exact field elements, evaluate chi(tr(g1 D g2 A)) with
    # element arithmetic, and average
    from nonarch.characters import chi
    from nonarch.matrices import MatF
    from nonarch.residue import enumerate_gl

    D = MatF.diagonal(q3, [q3.uniformizer_pow(-1), q3.one()])
    A = MatF.diagonal(q3, [q3.uniformizer_pow(0), q3.zero()])
    lifts = [
        MatF.from_rows(q3, [[q3.from_int(v) for v in row] for row in rows])
        for rows in enumerate_gl(2, 3)
    ]
    acc = 0j
    for g1 in lifts:
        for g2 in lifts:
            acc += chi((g1 @ D @ g2 @ A).trace())
    brute = acc / len(lifts) ** 2
    fast = exact_orbital_integral(q3, KIND_TWO_SIDED, [1, 0], [0], level=1)
    assert brute == pytest.approx(fast, abs=1e-9)

    acc = 0j
    for g in lifts:
        acc += chi((g @ D @ g.transpose() @ A).trace())
    brute_sym = acc / len(lifts)
    fast_sym = exact_orbital_integral(q3, KIND_CONGRUENCE, [1, 0], [0], level=1)
    assert brute_sym == pytest.approx(fast_sym, abs=1e-9)


# -- verification wrappers ----------------------------------------------------------------


def test_verify_bound_report(q3):
    rep = verify_bound(q3, KIND_TWO_SIDED, [1, 0, 0, 0], [1], 20_000, RandomStream(21))
    assert rep.passed
    payload = rep.to_json(3)
    assert payload["pass"] and payload["kind"] == KIND_TWO_SIDED
    assert "/" in payload["paper_bound"]


def test_verify_multiplicativity_report(q3):
    rep = verify_multiplicativity(q3, KIND_CONGRUENCE, [1, 0, 0, 0], [1, 2], 20_000, RandomStream(23))
    assert rep.passed


# -- convergence experiment ------------------------------------------------------------------


def test_convergence_haar_parameter_trivial(q3):
    rows = convergence_experiment(q3, DeltaParam((), 0), [2, 4], 2000, RandomStream(25))
    assert all(r.passed for r in rows)


def test_convergence_rank_one(q3):
    rows = convergence_experiment(q3, DeltaParam((1,), None), [2, 4, 8], 20_000, RandomStream(27))
    assert all(r.passed for r in rows)
    assert all(a.bound > b.bound for a, b in zip(rows, rows[1:]))
    rows = convergence_experiment(q3, OmegaParam(None, (1,), ()), [2, 4, 8], 20_000, RandomStream(29))
    assert all(r.passed for r in rows)
