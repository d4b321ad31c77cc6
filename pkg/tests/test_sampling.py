"""Seeded sampling: determinism, Haar measure, measure-family corners,
orbital pushes."""

import math

import pytest

from nonarch.field import FieldParams
from nonarch.characters import chi
from nonarch.matrices import MatF, singular_numbers, sym_diagonalize
from nonarch.orbital import empirical_charfun, measure_charfun_batch
from nonarch.params import DeltaParam, OmegaParam
from nonarch.residue import counting
from nonarch.sampling import (
    KIND_CONGRUENCE,
    KIND_TWO_SIDED,
    RandomStream,
    gl_acceptance_trial,
    haar_gl,
    orbital_push,
    sample_corner,
    sample_mu_corner,
    sample_nu_corner,
    uniform_integer,
)


# -- determinism ----------------------------------------------------------------


def test_same_path_reproduces(q3):
    a = uniform_integer(q3, RandomStream(42).child("x", 3))
    b = uniform_integer(q3, RandomStream(42).child("x", 3))
    c = uniform_integer(q3, RandomStream(42).child("x", 4))
    assert a == b
    assert a != c


def test_matrix_sampling_reproducible(q3):
    m1 = haar_gl(RandomStream(7).child("g"), q3, 3)
    m2 = haar_gl(RandomStream(7).child("g"), q3, 3)
    assert m1 == m2
    p = DeltaParam((1,), None)
    s1 = sample_mu_corner(q3, p, 3, RandomStream(7).child("m"))
    s2 = sample_corner(q3, p, 3, RandomStream(7).child("m"))
    assert s1 == s2


def test_distinct_seeds_differ(q3):
    assert haar_gl(RandomStream(1).child("g"), q3, 3) != haar_gl(RandomStream(2).child("g"), q3, 3)


# -- uniform integers -----------------------------------------------------------


@pytest.mark.parametrize("family", ["padic", "laurent"])
def test_uniform_digit_marginal(family):
    field = FieldParams(family, 3, 12)
    rng = RandomStream(3)
    count = 20_000
    hits = sum(1 for i in range(count) if uniform_integer(field, rng.child(i)).ord >= 1)
    p_hat = hits / count
    sigma = math.sqrt((1 / 3) * (2 / 3) / count)
    assert abs(p_hat - 1 / 3) <= 3 * sigma


def test_uniform_chi_average_vanishes(q3):
    rng = RandomStream(5)
    count = 20_000
    acc = 0j
    shift = -1
    for i in range(count):
        acc += chi(uniform_integer(q3, rng.child(i)).shift(shift))
    assert abs(acc / count) <= 3 / math.sqrt(count)


# -- Haar on GL -----------------------------------------------------------------


def test_haar_outputs_are_gl(q3):
    rng = RandomStream(11)
    for i in range(25):
        assert haar_gl(rng.child(i), q3, 4).is_gl()


def test_haar_unit_residue_uniform(q3):
    rng = RandomStream(13)
    count = 10_000
    freq = {1: 0, 2: 0}
    for i in range(count):
        g = haar_gl(rng.child(i), q3, 1)
        freq[g[0, 0].leading_digit()] += 1
    sigma = math.sqrt(0.25 / count)
    assert abs(freq[1] / count - 0.5) <= 3 * sigma


def test_rejection_acceptance_rate_matches_volume():
    field = FieldParams("padic", 2, 8)
    expected = float(counting(2, 1, 2)[2])  # 3/8
    attempts = 100_000
    ok = gl_acceptance_trial(RandomStream(17).child("acc"), field, 2, attempts)
    sigma = math.sqrt(expected * (1 - expected) / attempts)
    assert abs(ok / attempts - expected) <= 3 * sigma


# -- measure corners -------------------------------------------------------------


def test_mu_corner_support_and_zero(q3):
    rng = RandomStream(19)
    zero = sample_mu_corner(q3, DeltaParam((), None), 3, rng.child("z"))
    assert all(e.is_zero() for e in zero.entries)
    m = sample_mu_corner(q3, DeltaParam((1,), None), 2, rng.child("m"))
    assert all(e.is_zero() or e.ord >= -1 for e in m.entries)


def test_nu_corner_symmetric_and_rank_one(q3):
    rng = RandomStream(23)
    s = sample_nu_corner(q3, OmegaParam(0, (2,), (1,)), 4, rng.child("s"))
    assert s.is_symmetric()
    from nonarch.matrices import add_lenient

    r1 = sample_nu_corner(q3, OmegaParam(None, (0,), ()), 2, rng.child("r"))
    minor = add_lenient(r1[0, 0] * r1[1, 1], -(r1[0, 1] * r1[1, 0]))
    assert minor.is_vanishing() or minor.is_zero() or minor.ord > q3.precision - 3


def test_haar_tail_corner_matches_indicator(q3):
    # Haar-type parameter: empirical chi average at a non-integral argument
    rng = RandomStream(29)
    count = 4000
    samples = [sample_mu_corner(q3, DeltaParam((), 0), 2, rng.child(i)) for i in range(count)]
    A = MatF.diagonal(q3, [q3.uniformizer_pow(-1), q3.zero()])
    est = empirical_charfun(samples, A)
    assert abs(est.mean) <= 3 / math.sqrt(count)


def test_empirical_charfun_of_zero_samples(q3):
    samples = [MatF.zeros(q3, 2) for _ in range(10)]
    est = empirical_charfun(samples, MatF.diagonal(q3, [q3.uniformizer_pow(-1), q3.zero()]))
    assert est.mean == pytest.approx(1.0)
    assert est.stderr == 0.0


def test_nu_corner_single_factor_charfun(q3):
    rng = RandomStream(31)
    count = 4000
    om = OmegaParam(None, (0,), ())
    samples = [sample_nu_corner(q3, om, 2, rng.child(i)) for i in range(count)]
    x = q3.uniformizer_pow(-1)
    A = MatF.diagonal(q3, [x, q3.zero()])
    est = empirical_charfun(samples, A)
    closed = om.char_single(x).to_complex(3)
    assert abs(est.mean - closed) <= 3 / math.sqrt(count)


def test_batch_sampler_negative_head_entries(q3):
    # entries pi^-k with k < 0 live inside pi O_F; the batch window handles
    # the nonnegative scale correctly
    par = DeltaParam((-1,), None)
    probes = [[q3.uniformizer_pow(-ell)] for ell in (0, 2)]
    est0, est2 = measure_charfun_batch(q3, par, 2, 30_000, probes, RandomStream(53))
    assert abs(est0.mean - 1.0) <= 1e-12  # all mass in pi O_F
    closed = par.char_single(2).to_complex(3)
    assert abs(est2.mean - closed) <= 3 / math.sqrt(30_000)


def test_diagonal_entries_factorize(q3):
    # joint empirical charfun of (M11, M22) splits into the marginals
    par = DeltaParam((0,), None)
    probes = [
        [q3.uniformizer_pow(-1), q3.uniformizer_pow(-1)],
        [q3.uniformizer_pow(-1)],
        [q3.zero(), q3.uniformizer_pow(-1)],
    ]
    joint, m1, m2 = measure_charfun_batch(q3, par, 2, 40_000, probes, RandomStream(37))
    assert abs(joint.mean - m1.mean * m2.mean) <= 3 * (joint.stderr + m1.stderr + m2.stderr)


def test_corner_invariant_under_push(q3):
    # empirical charfun of samples equals that of pushed samples
    rng = RandomStream(41)
    count = 2500
    par = DeltaParam((1,), None)
    samples = [sample_mu_corner(q3, par, 2, rng.child("s", i)) for i in range(count)]
    pushed = [
        orbital_push(s, KIND_TWO_SIDED, rng.child("p", i)) for i, s in enumerate(samples)
    ]
    A = MatF.diagonal(q3, [q3.uniformizer_pow(0), q3.zero()])
    e1 = empirical_charfun(samples, A)
    e2 = empirical_charfun(pushed, A)
    assert abs(e1.mean - e2.mean) <= 3 * (e1.stderr + e2.stderr)


# -- orbital pushes ----------------------------------------------------------------


def test_push_zero_fixed(q3):
    z = MatF.zeros(q3, 3)
    assert all(e.is_zero() for e in orbital_push(z, KIND_TWO_SIDED, RandomStream(1)).entries)


def test_push_preserves_singular_numbers(q3):
    X = MatF.diagonal(q3, [q3.uniformizer_pow(-1), q3.from_int(2), q3.uniformizer_pow(2)])
    rng = RandomStream(43)
    for i in range(10):
        assert singular_numbers(orbital_push(X, KIND_TWO_SIDED, rng.child(i))) == (1, 0, -2)


def test_congruence_push_preserves_symmetry_and_classes(q3):
    X = MatF.diagonal(q3, [q3.eps(), q3.one(), q3.uniformizer_pow(1)])
    labels = sorted(sym_diagonalize(X).class_labels())
    rng = RandomStream(47)
    for i in range(10):
        pushed = orbital_push(X, KIND_CONGRUENCE, rng.child(i))
        assert pushed.is_symmetric()
        assert sorted(sym_diagonalize(pushed).class_labels()) == labels
