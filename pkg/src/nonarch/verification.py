"""Verification suites: each function checks one family of claims at its
stated tolerance and returns a report of per-check rows.  The CLI ``verify``
subcommand and the acceptance tests both run these, so their pass/fail is
the same by construction.

Statistical comparisons use three standard errors; exact comparisons use
1e-9 on complex values and exact equality on CharValues.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import orbital, params as params_mod, sampling
from .characters import KIND_BILINEAR, KIND_SQUARE, chi, theta_bruteforce, theta_closed
from .errors import TooLarge
from .field import FieldElement, FieldParams
from .matrices import MatF, singular_numbers, smith_normal_form, sym_diagonalize
from .params import DeltaParam, OmegaParam, canonicalize_omega, char_nu_raw, distinguishing_argument
from .residue import gauss_sum, gauss_sum_phase, legendre
from .sampling import KIND_CONGRUENCE, KIND_TWO_SIDED, RandomStream

EXACT_TOL = 1e-9


@dataclass
class Suite:
    name: str
    rows: list = dc_field(default_factory=list)
    seconds: float = 0.0

    def check(self, label: str, ok: bool, detail: str = ""):
        self.rows.append({"label": label, "pass": bool(ok), "detail": detail})

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.rows)

    def to_json(self) -> dict:
        # no timings here: reports must be byte-identical across reruns
        return {"suite": self.name, "pass": self.passed, "checks": self.rows}


def _timed(fn):
    def wrapper(*args, **kwargs) -> Suite:
        t0 = time.perf_counter()
        suite = fn(*args, **kwargs)
        suite.seconds = time.perf_counter() - t0
        return suite

    return wrapper


# ---------------------------------------------------------------------------
# identities: Gauss sums and kernel oracle equivalence (criteria 1-2)
# ---------------------------------------------------------------------------


@_timed
def verify_gauss_sums() -> Suite:
    s = Suite("gauss-sums")
    for p in (3, 5, 7, 11, 13):
        base = gauss_sum(1, p)
        ok_mag = all(abs(abs(gauss_sum(a, p).complex_value) ** 2 - p) <= EXACT_TOL for a in range(1, p))
        ok_sym = all(gauss_sum(a, p).symbolic == (legendre(a, p) * base.sign, base.rho) for a in range(1, p))
        rho_c, _ = gauss_sum_phase(p)
        comp = base.complex_value / rho_c
        ok_line = abs(comp.imag) <= EXACT_TOL
        s.check(f"p={p} |sum|^2 = p", ok_mag)
        s.check(f"p={p} twist identity", ok_sym)
        s.check(f"p={p} sum lies on rho_q * R", ok_line)
    return s


@_timed
def verify_kernel_oracles(ps=(3, 5, 7), ord_range=range(-3, 4)) -> Suite:
    s = Suite("kernel-oracles")
    for p in ps:
        field = FieldParams("padic", p, 12)
        eps = field.eps()
        worst = 0.0
        square_ids = True
        for ell in ord_range:
            for u in (field.one(), eps):
                x = u.shift(ell)
                for kind in (KIND_BILINEAR, KIND_SQUARE):
                    closed = theta_closed(x, kind).to_complex(p)
                    brute = theta_bruteforce(x, kind)
                    worst = max(worst, abs(closed - brute))
                a = theta_closed(x, KIND_SQUARE)
                b = theta_closed(x * eps, KIND_SQUARE)
                if a.mul(a) != b.mul(b) or a.mul(a).is_zero():
                    square_ids = False
        s.check(f"p={p} closed = brute (max gap {worst:.2e})", worst <= EXACT_TOL)
        s.check(f"p={p} theta(x)^2 = theta(eps x)^2 != 0", square_ids)
    # Laurent branch of the same identities at p=3
    field = FieldParams("laurent", 3, 10)
    eps = field.eps()
    worst = 0.0
    for ell in range(-2, 3):
        for u in (field.one(), eps):
            x = u.shift(ell)
            for kind in (KIND_BILINEAR, KIND_SQUARE):
                worst = max(worst, abs(theta_closed(x, kind).to_complex(3) - theta_bruteforce(x, kind)))
    s.check(f"laurent p=3 closed = brute (max gap {worst:.2e})", worst <= EXACT_TOL)
    return s


@_timed
def verify_ball_fourier(field: FieldParams) -> Suite:
    """Averages of chi(x y) over x in pi^l O_F equal the indicator of
    y in pi^-l O_F."""
    s = Suite("ball-fourier")
    p = field.p
    ok = True
    worst = 0.0
    for l in range(-2, 3):
        for ord_y in range(-3, 4):
            for u_digit in (1, 2 % p if p > 2 else 1):
                y = field.element(ord_y, [u_digit])
                m = max(0, -(l + ord_y))
                if m == 0:
                    avg = 1.0 + 0j
                else:
                    reps = np.arange(p**m, dtype=np.int64)
                    vals = []
                    for z in reps:
                        x = field.element(l, _digits_of(int(z), p, max(m, 1)))
                        vals.append(chi(x * y))
                    avg = complex(np.mean(vals))
                expected = 1.0 if ord_y >= -l else 0.0
                worst = max(worst, abs(avg - expected))
    s.check(f"indicator identity on the grid (max gap {worst:.2e})", worst <= EXACT_TOL)
    return s


def _digits_of(value: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        out.append(value % p)
        value //= p
    return out


# ---------------------------------------------------------------------------
# decompositions (criterion 3)
# ---------------------------------------------------------------------------


def _random_entry(field: FieldParams, rng: RandomStream) -> FieldElement:
    g = rng.generator
    if g.integers(10) == 0:
        return field.zero()
    k = int(g.integers(-3, 4))
    return sampling.uniform_integer(field, rng.child("u")).shift(k)


def _random_matrix(field: FieldParams, rng: RandomStream, n: int) -> MatF:
    return MatF.from_rows(
        field, [[_random_entry(field, rng.child(i, j)) for j in range(n)] for i in range(n)]
    )


def _random_symmetric(field: FieldParams, rng: RandomStream, n: int) -> MatF:
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            e = _random_entry(field, rng.child(i, j))
            rows[i][j] = e
            rows[j][i] = e
    return MatF.from_rows(field, rows)


@_timed
def verify_decompositions(field: FieldParams, rng: RandomStream, count: int = 1000, push_count: int = 100) -> Suite:
    s = Suite(f"decompositions[{field.spec_string()}]")
    ok_rec = ok_gl = ok_sorted = True
    for i in range(count):
        sub = rng.child("snf", i)
        n = int(sub.generator.integers(1, 6))
        A = _random_matrix(field, sub.child("mat"), n)
        res = smith_normal_form(A)
        ok_rec &= res.recompose().agrees(A)
        ok_gl &= res.a.is_gl() and res.b.is_gl()
        ok_sorted &= all(a >= b for a, b in zip(res.sing, res.sing[1:]))
    s.check(f"SNF recomposition x{count}", ok_rec)
    s.check("SNF witnesses in GL(n, O_F)", ok_gl)
    s.check("singular exponents non-increasing", ok_sorted)

    ok_rec = ok_gl = ok_cls = True
    for i in range(count):
        sub = rng.child("sym", i)
        n = int(sub.generator.integers(1, 6))
        A = _random_symmetric(field, sub.child("mat"), n)
        res = sym_diagonalize(A)
        ok_rec &= res.recompose().agrees(A)
        ok_gl &= res.g.is_gl()
        ok_cls &= all(lbl == ("zero",) or isinstance(lbl[0], int) for lbl in res.class_labels())
    s.check(f"symmetric diagonalization recomposition x{count}", ok_rec)
    s.check("congruence witnesses in GL(n, O_F)", ok_gl)
    s.check("diagonal entries are square-class representatives", ok_cls)

    base = _random_matrix(field, rng.child("base"), 4)
    sing0 = singular_numbers(base)
    ok_inv = True
    for i in range(push_count):
        pushed = sampling.orbital_push(base, KIND_TWO_SIDED, rng.child("push", i))
        ok_inv &= singular_numbers(pushed) == sing0
    s.check(f"Sing invariant under {push_count} two-sided pushes", ok_inv)

    sym_base = _random_symmetric(field, rng.child("symbase"), 4)
    labels0 = sorted(sym_diagonalize(sym_base).class_labels())
    ok_cls_inv = True
    for i in range(push_count // 4):
        pushed = sampling.orbital_push(sym_base, KIND_CONGRUENCE, rng.child("cpush", i))
        ok_cls_inv &= sorted(sym_diagonalize(pushed).class_labels()) == labels0
    s.check("square-class multiset invariant under congruence pushes", ok_cls_inv)
    return s


# ---------------------------------------------------------------------------
# orbital bounds (criteria 4-5)
# ---------------------------------------------------------------------------


def _bound_grid(n: int):
    # D entries with ord in [-2, 0]; an integer k stands for pi^-k
    ds = [
        (2, 1) + (0,) * (n - 2),
        (1,) * n,
        (2,) + (0,) * (n - 1),
        (0,) * n,
    ]
    return ds


@_timed
def verify_bounds(field: FieldParams, rng: RandomStream, n_samples: int = 100_000, ns=(4, 6, 8)) -> Suite:
    s = Suite("orbital-bounds")
    q = field.q
    a_sets = ((1,), (1, 1), (2, 1))
    for kind in (KIND_TWO_SIDED, KIND_CONGRUENCE):
        for n in ns:
            for di, dvals in enumerate(_bound_grid(n)):
                # shared Haar draws evaluate all A variants plus the rank-one
                # integrals feeding the multiplicativity comparison
                probes = [list(av) for av in a_sets] + [[1], [2]]
                ests = orbital.mc_orbital_multi(
                    field, kind, list(dvals), probes, n_samples, rng.child(kind, n, di)
                )
                rank_one = {1: ests[3], 2: ests[4]}
                for av, est in zip(a_sets, ests[:3]):
                    cv = orbital.product_formula(field, kind, list(dvals), list(av))
                    bounds = orbital.error_bound(kind, n, len(av), q)
                    gap = abs(est.mean - cv.to_complex(q))
                    ok = gap <= float(bounds.factorization) + 3 * est.stderr
                    row = orbital.BoundReport(
                        kind, n, len(av), est, cv, bounds.factorization, gap, ok
                    ).to_json(q)
                    s.rows.append(
                        {
                            "label": f"{kind} n={n} D={dvals} A={av}: gap {gap:.2e} <= "
                            f"{float(bounds.factorization):.2e}+3se",
                            "pass": ok,
                            "detail": "",
                            "report": row,
                        }
                    )
                    if len(av) >= 2:
                        prod = 1 + 0j
                        se = est.stderr
                        for a in av:
                            prod *= rank_one[a].mean
                            se += rank_one[a].stderr
                        mgap = abs(est.mean - prod)
                        ok = mgap <= float(bounds.multiplicativity) + 3 * se
                        s.check(
                            f"{kind} n={n} D={dvals} A={av}: uam gap {mgap:.2e} <= "
                            f"{float(bounds.multiplicativity):.2e}+3se",
                            ok,
                        )
    return s


@_timed
def verify_exact_oracle(field: FieldParams, rng: RandomStream, n_samples: int = 100_000) -> Suite:
    s = Suite("exact-oracle")
    q = field.q
    cases = [
        (KIND_TWO_SIDED, [1], [1], 2),
        (KIND_TWO_SIDED, [1, 0], [1], 2),
        (KIND_TWO_SIDED, [1, 0], [1, 1], 2),
        (KIND_CONGRUENCE, [1], [1], 2),
        (KIND_CONGRUENCE, [1, -1], [1], 2),
        (KIND_CONGRUENCE, [1, 1], [1, 0], 2),
    ]
    for kind, dv, av, level in cases:
        exact = orbital.exact_orbital_integral(field, kind, dv, av, level)
        est = orbital.mc_orbital_integral(field, kind, dv, av, n_samples, rng.child("mc", kind, tuple(dv), tuple(av)))
        gap_mc = abs(est.mean - exact)
        s.check(f"{kind} D={dv} A={av}: |MC - exact| {gap_mc:.2e} <= 3se", gap_mc <= 3 * est.stderr + 1e-12)
        cv = orbital.product_formula(field, kind, dv, av).to_complex(q)
        bound = float(orbital.error_bound(kind, len(dv), len(av), q).factorization)
        gap_cf = abs(exact - cv)
        s.check(f"{kind} D={dv} A={av}: |exact - product| {gap_cf:.2e} <= bound {bound:.2e}", gap_cf <= bound + EXACT_TOL)
        try:
            hi = orbital.exact_orbital_integral(field, kind, dv, av, level + 1)
        except TooLarge:
            hi = None
        if hi is not None:
            s.check(f"{kind} D={dv} A={av}: level stability", abs(exact - hi) <= 1e-12)
        perm = list(reversed(dv))
        s.check(
            f"{kind} D={dv}: permutation invariance",
            abs(exact - orbital.exact_orbital_integral(field, kind, perm, av, level)) <= 1e-12,
        )
    return s


# ---------------------------------------------------------------------------
# measure-sampler consistency (criterion 6)
# ---------------------------------------------------------------------------


@_timed
def verify_measure_charfun(field: FieldParams, rng: RandomStream, n_samples: int = 100_000, n: int = 6) -> Suite:
    s = Suite("measure-charfun")
    if field.family != "padic":
        return _verify_measure_charfun_exact(s, field, rng, min(n_samples, 4000), min(n, 3))
    tol = 3 / math.sqrt(n_samples)
    q = field.q

    par = DeltaParam((2, 1), -1)
    ells = list(range(-10, 10))
    probes = [[field.uniformizer_pow(-ell)] for ell in ells]
    ests = orbital.measure_charfun_batch(field, par, n, n_samples, probes, rng.child("mu"))
    worst = 0.0
    for ell, est in zip(ells, ests):
        closed = par.char_single(ell).to_complex(q)
        worst = max(worst, abs((est.mean - closed).real), abs((est.mean - closed).imag))
    s.check(f"two-sided family: 20 probes, worst component gap {worst:.2e} <= {tol:.2e}", worst <= tol)

    om = OmegaParam(-1, (1,), (0,))
    eps = field.eps()
    xs = []
    for ell in range(-2, 3):
        xs.append(field.uniformizer_pow(-ell))
        xs.append(eps.shift(-ell))
    for ell in range(3, 8):
        xs.append(field.uniformizer_pow(-ell))
        xs.append(eps.shift(-ell))
    probes_nu = [[x] for x in xs]
    ests = orbital.measure_charfun_batch(field, om, n, n_samples, probes_nu, rng.child("nu"))
    worst = 0.0
    for x, est in zip(xs, ests):
        closed = om.char_single(x).to_complex(q)
        worst = max(worst, abs((est.mean - closed).real), abs((est.mean - closed).imag))
    s.check(f"congruence family: 20 probes, worst component gap {worst:.2e} <= {tol:.2e}", worst <= tol)

    # empirical multiplicativity across two diagonal arguments
    for label, param, args in (
        ("two-sided", par, [field.uniformizer_pow(0), field.uniformizer_pow(-1)]),
        ("congruence", om, [field.uniformizer_pow(1), eps.shift(0)]),
    ):
        probes2 = [[args[0], args[1]], [args[0]], [args[1]]]
        joint, m1, m2 = orbital.measure_charfun_batch(
            field, param, n, n_samples, probes2, rng.child("mult", label)
        )
        gap = abs(joint.mean - m1.mean * m2.mean)
        budget = 3 * (joint.stderr + m1.stderr + m2.stderr)
        s.check(f"{label} multiplicativity: gap {gap:.2e} <= {budget:.2e}", gap <= budget)
    return s


def _verify_measure_charfun_exact(s: Suite, field: FieldParams, rng: RandomStream, n_samples: int, n: int) -> Suite:
    """Exact-path fallback (non-batched families): fewer samples, same checks."""
    q = field.q
    tol = 3 / math.sqrt(n_samples)
    par = DeltaParam((1,), None)
    samples = [sampling.sample_mu_corner(field, par, n, rng.child("mu", i)) for i in range(n_samples)]
    worst = 0.0
    for ell in range(-1, 3):
        A = MatF.diagonal(field, [field.uniformizer_pow(-ell)] + [field.zero()] * (n - 1))
        est = orbital.empirical_charfun(samples, A)
        closed = par.char_single(ell).to_complex(q)
        worst = max(worst, abs((est.mean - closed).real), abs((est.mean - closed).imag))
    s.check(f"two-sided family (exact path): worst gap {worst:.2e} <= {tol:.2e}", worst <= tol)
    om = OmegaParam(None, (0,), ())
    nsamples = [sampling.sample_nu_corner(field, om, n, rng.child("nu", i)) for i in range(n_samples)]
    worst = 0.0
    for ell in range(-1, 2):
        x = field.uniformizer_pow(-ell)
        A = MatF.diagonal(field, [x] + [field.zero()] * (n - 1))
        est = orbital.empirical_charfun(nsamples, A)
        closed = om.char_single(x).to_complex(q)
        worst = max(worst, abs((est.mean - closed).real), abs((est.mean - closed).imag))
    s.check(f"congruence family (exact path): worst gap {worst:.2e} <= {tol:.2e}", worst <= tol)
    return s


# ---------------------------------------------------------------------------
# convergence of orbital measures (criterion 7)
# ---------------------------------------------------------------------------


@_timed
def verify_convergence(field: FieldParams, rng: RandomStream, n_samples: int = 100_000, ns=(4, 8, 16)) -> Suite:
    s = Suite("orbital-convergence")
    rows = orbital.convergence_experiment(field, DeltaParam((1,), None), ns, n_samples, rng.child("mu"))
    for row in rows:
        s.check(f"two-sided n={row.n}: gap {row.max_gap:.2e} <= {row.bound:.2e}+3se", row.passed)
    bounds = [row.bound for row in rows]
    s.check("two-sided bound sequence strictly decreasing", all(a > b for a, b in zip(bounds, bounds[1:])))
    rows = orbital.convergence_experiment(field, OmegaParam(None, (1,), ()), ns, n_samples, rng.child("nu"))
    for row in rows:
        s.check(f"congruence n={row.n}: gap {row.max_gap:.2e} <= {row.bound:.2e}+3se", row.passed)
    bounds = [row.bound for row in rows]
    s.check("congruence bound sequence strictly decreasing", all(a > b for a, b in zip(bounds, bounds[1:])))
    return s


# ---------------------------------------------------------------------------
# uniqueness and semigroup (criteria 8-9)
# ---------------------------------------------------------------------------


def _random_delta(rng: RandomStream) -> DeltaParam:
    g = rng.generator
    tail = None if g.integers(2) == 0 else int(g.integers(-3, 3))
    low = -3 if tail is None else tail + 1
    head = sorted((int(v) for v in g.integers(low, 6, size=int(g.integers(0, 4)))), reverse=True)
    return DeltaParam(tuple(head), tail)


def _random_omega(rng: RandomStream) -> OmegaParam:
    g = rng.generator
    k = None if g.integers(2) == 0 else int(g.integers(-3, 4))
    low = (k + 1) if k is not None else -3
    kk = tuple(sorted((int(v) for v in g.integers(low, 6, size=int(g.integers(0, 4)))), reverse=True))
    pool = list(range(low, 6))
    g.shuffle(pool)
    take = int(g.integers(0, min(3, len(pool)) + 1))
    kkp = tuple(sorted(pool[:take], reverse=True))
    return OmegaParam(k, kk, kkp)


@_timed
def verify_uniqueness(field: FieldParams, rng: RandomStream, delta_pairs: int = 500, omega_pairs: int = 200) -> Suite:
    s = Suite("uniqueness")
    ok = True
    done = 0
    i = 0
    while done < delta_pairs:
        a = _random_delta(rng.child("da", i))
        b = _random_delta(rng.child("db", i))
        i += 1
        if a == b:
            continue
        ell = distinguishing_argument(a, b)
        ok &= a.char_single(ell) != b.char_single(ell)
        done += 1
    s.check(f"{delta_pairs} unequal Delta pairs separated at the constructed argument", ok)

    ok = True
    done = 0
    i = 0
    while done < omega_pairs:
        a = _random_omega(rng.child("oa", i))
        b = _random_omega(rng.child("ob", i))
        i += 1
        if a == b:
            continue
        ok &= params_mod.separate_omega(a, b, field) is not None
        done += 1
    s.check(f"{omega_pairs} unequal canonical Omega pairs separated on the probe grid", ok)

    ok_idem = ok_pres = True
    for i in range(60):
        raw = _random_omega(rng.child("canon", i))
        g = rng.child("noise", i).generator
        extra = [int(v) for v in g.integers(-3, 6, size=2)]
        kk_raw = tuple(sorted(raw.kk + (extra[0],) * 2, reverse=True))
        kkp_raw = tuple(sorted(raw.kkp + (extra[1],), reverse=True))
        canon = canonicalize_omega(raw.k, kk_raw, kkp_raw)
        ok_valid, _ = params_mod.validate(canon)
        ok_idem &= ok_valid and canonicalize_omega(canon.k, canon.kk, canon.kkp) == canon
        for x in params_mod.probe_grid(field):
            ok_pres &= char_nu_raw(field, raw.k, kk_raw, kkp_raw, x) == canon.char_single(x)
    s.check("canonicalize_omega idempotent and valid", ok_idem)
    s.check("canonicalize_omega preserves the characteristic function on the probe grid", ok_pres)
    return s


@_timed
def verify_semigroup(rng: RandomStream, pairs: int = 200, ell_lo: int = -4, ell_hi: int = 5) -> Suite:
    s = Suite("semigroup")
    a = DeltaParam((6, 2, 2), -3)
    b = DeltaParam((4, 3, 0, -1), None)
    merged = params_mod.convolve(a, b)
    s.check(
        "worked merge example equals (6,4,3,2,2,0,-1 | const -3)",
        merged == DeltaParam((6, 4, 3, 2, 2, 0, -1), -3),
    )
    ok_hom = ok_assoc = ok_comm = ok_ident = True
    for i in range(pairs):
        x = _random_delta(rng.child("x", i))
        y = _random_delta(rng.child("y", i))
        z = _random_delta(rng.child("z", i))
        xy = params_mod.convolve(x, y)
        for ell in range(ell_lo, ell_hi):
            ok_hom &= xy.char_single(ell) == x.char_single(ell).mul(y.char_single(ell))
        ok_assoc &= params_mod.convolve(xy, z) == params_mod.convolve(x, params_mod.convolve(y, z))
        ok_comm &= xy == params_mod.convolve(y, x)
        ok_ident &= params_mod.convolve(x, DeltaParam((), None)) == x
    s.check(f"char homomorphism on {pairs} pairs x 9 arguments", ok_hom)
    s.check("associative", ok_assoc)
    s.check("commutative", ok_comm)
    s.check("identity element", ok_ident)
    return s


# ---------------------------------------------------------------------------
# aggregation
# ---------------------------------------------------------------------------

DECOMPOSITION_FIELDS = (
    FieldParams("padic", 3, 12),
    FieldParams("padic", 5, 12),
    FieldParams("laurent", 3, 12),
)

SUITE_BUILDERS = {
    "identities": lambda field, rng, n_samples, trials: [
        verify_gauss_sums(),
        verify_kernel_oracles(),
        verify_ball_fourier(field),
    ],
    # the decomposition criterion pins its three fields, independent of --field
    "decompositions": lambda field, rng, n_samples, trials: [
        verify_decompositions(f, rng.child("dec", f.spec_string()), count=trials, push_count=max(10, trials // 10))
        for f in DECOMPOSITION_FIELDS
    ],
    "bounds": lambda field, rng, n_samples, trials: [
        verify_bounds(field, rng.child("bounds"), n_samples=n_samples),
        verify_exact_oracle(field, rng.child("oracle"), n_samples=n_samples),
    ],
    "multiplicativity": lambda field, rng, n_samples, trials: [
        verify_bounds(field, rng.child("bounds"), n_samples=n_samples, ns=(4, 6)),
    ],
    "charfun": lambda field, rng, n_samples, trials: [
        verify_measure_charfun(field, rng.child("charfun"), n_samples=n_samples)
    ],
    "converge": lambda field, rng, n_samples, trials: [
        verify_convergence(field, rng.child("conv"), n_samples=n_samples)
    ],
    "uniqueness": lambda field, rng, n_samples, trials: [
        verify_uniqueness(field, rng.child("uniq"))
    ],
    "semigroup": lambda field, rng, n_samples, trials: [verify_semigroup(rng.child("semi"))],
}

SUITE_ORDER = [
    "identities",
    "decompositions",
    "bounds",
    "charfun",
    "converge",
    "uniqueness",
    "semigroup",
]


def run_suites(names, field: FieldParams, seed: int, n_samples: int = 100_000, trials: int = 1000) -> list[Suite]:
    rng = RandomStream(seed)
    out = []
    for name in names:
        if name not in SUITE_BUILDERS:
            raise ValueError(f"unknown suite {name!r}")
        out.extend(SUITE_BUILDERS[name](field, rng.child(name), n_samples, trials))
    return out
