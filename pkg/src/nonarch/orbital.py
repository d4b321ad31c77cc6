"""Monte Carlo and exact orbital integrals with explicit error bounds.

The integrals are averages of chi(tr(g1 D g2 A)) over independent Haar pairs
(two-sided kind) or of chi(tr(g D g^t A)) over a single Haar matrix
(congruence kind), with D = diag(x_1..x_n) and A = diag(a_1..a_r, 0..).
Because the trace couples g only through the digit window of depth
K = max(-ord(a_i x_j)), all kernels work in O_F / pi^K with vectorized
integer arithmetic; draws are keyed by chunk index so results are
reproducible and independent of how chunks are scheduled.

Error bounds: writing x = prod_{w<r} (1 - q^{w-n}) (the full-rank fraction
of r x n digit matrices), the comparison of the integral with the kernel
product is bounded by 2(1 - x^2) for the two-sided kind and 2(1 - x) for
the congruence kind.  The two-sided constant is the honest union bound
|Mat^2 \\ S^2| <= #Mat^2 - #S^2; the superficially tighter form 2(1 - x)^2
double-counts and is exactly violated already at n = r = 1 (see the test
suite, which certifies the violation by enumeration).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .characters import KIND_BILINEAR, KIND_SQUARE, CharValue, charvalue_product, chi, theta_closed
from .errors import DimensionMismatch, LevelTooLow, PrecisionExhausted, TooLarge
from .field import FieldElement, FieldParams
from .matrices import MatF
from .params import DeltaParam, OmegaParam
from .sampling import KIND_CONGRUENCE, KIND_TWO_SIDED, RandomStream

_EXACT_ENUM_GUARD = 8_000_000
_EXACT_PAIR_GUARD = 40_000


# ---------------------------------------------------------------------------
# estimates and accumulation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class McEstimate:
    """Monte Carlo estimate of a complex mean with per-component standard
    errors; ``stderr`` combines them as sqrt(se_re^2 + se_im^2)."""

    mean: complex
    stderr: float
    n_samples: int
    seed: int
    stderr_re: float = 0.0
    stderr_im: float = 0.0


class _Acc:
    __slots__ = ("n", "sre", "sim", "sre2", "sim2")

    def __init__(self):
        self.n = 0
        self.sre = self.sim = self.sre2 = self.sim2 = 0.0

    def add(self, z: np.ndarray):
        re, im = np.real(z), np.imag(z)
        self.n += z.size
        self.sre += float(re.sum())
        self.sim += float(im.sum())
        self.sre2 += float((re * re).sum())
        self.sim2 += float((im * im).sum())

    def finalize(self, seed: int) -> McEstimate:
        n = self.n
        mean = complex(self.sre / n, self.sim / n)
        if n < 2:
            return McEstimate(mean, 0.0, n, seed)
        var_re = max(0.0, (self.sre2 - n * (self.sre / n) ** 2) / (n - 1))
        var_im = max(0.0, (self.sim2 - n * (self.sim / n) ** 2) / (n - 1))
        se_re = math.sqrt(var_re / n)
        se_im = math.sqrt(var_im / n)
        return McEstimate(mean, math.hypot(se_re, se_im), n, seed, se_re, se_im)


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def as_element(field: FieldParams, v) -> FieldElement:
    """Normalize a diagonal entry: FieldElement as-is, integer k means
    pi^-k, None means 0."""
    if isinstance(v, FieldElement):
        return v
    if v is None:
        return field.zero()
    return field.uniformizer_pow(-int(v))


def _check_window(p: int, K: int):
    # products of two residues mod p^K must stay inside int64
    if p ** (2 * K) >= 1 << 62:
        raise TooLarge(f"digit window p^{K} too deep for 64-bit kernels")


def _pair_data(field: FieldParams, D, A):
    """For each (i, j) with m_ij = -ord(a_i x_j) >= 1, the depth m_ij and the
    unit part of a_i x_j; plus the overall window K."""
    pairs = []
    K = 0
    for i, a in enumerate(A):
        for j, x in enumerate(D):
            prod = a * x
            if prod.is_zero() or prod.ord >= 0:
                continue
            m = -prod.ord
            if prod.rel < m:
                raise DimensionMismatch("argument product stores too few digits for chi")
            if field.family == "padic":
                unit = prod.unit % field.p**m
            else:
                unit = tuple(prod.digits[:m])
            pairs.append((i, j, m, unit))
            K = max(K, m)
    _check_window(field.p, K)
    return pairs, K


# ---------------------------------------------------------------------------
# batched Haar draws modulo pi^K
# ---------------------------------------------------------------------------


def _pow_mod_vec(base: np.ndarray, e: int, m: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % m
    while e:
        if e & 1:
            result = result * b % m
        b = b * b % m
        e >>= 1
    return result


def invertible_mask(mats: np.ndarray, p: int) -> np.ndarray:
    """Which matrices in the batch are invertible mod p (batched elimination)."""
    a = (mats % p).astype(np.int64).copy()
    B, n, _ = a.shape
    alive = np.ones(B, dtype=bool)
    idx = np.arange(B)
    for k in range(n):
        col = a[:, k:, k]
        nz = col != 0
        alive &= nz.any(axis=1)
        piv = nz.argmax(axis=1)
        rk = a[idx, k, :].copy()
        rp = a[idx, k + piv, :].copy()
        a[idx, k, :] = rp
        a[idx, k + piv, :] = rk
        pv = a[:, k, k]
        inv = _pow_mod_vec(pv, p - 2, p)
        if k + 1 < n:
            factor = a[:, k + 1 :, k] * inv[:, None] % p
            a[:, k + 1 :, k:] = (a[:, k + 1 :, k:] - factor[:, :, None] * a[:, None, k, k:]) % p
    return alive


def _haar_batch_padic(stream: RandomStream, n: int, p: int, K: int, count: int) -> np.ndarray:
    """(count, n, n) int64, uniform on residue matrices mod p^K that are
    invertible mod p (= Haar measure pushed to level K)."""
    m = p**K
    out = np.empty((count, n, n), dtype=np.int64)
    got = 0
    while got < count:
        batch = max(64, int((count - got) * 1.8) + 8)
        cand = stream.integers(m, size=(batch, n, n)).astype(np.int64)
        keep = cand[invertible_mask(cand, p)]
        take = min(count - got, len(keep))
        out[got : got + take] = keep[:take]
        got += take
    return out


def _haar_batch_laurent(stream: RandomStream, n: int, p: int, K: int, count: int) -> np.ndarray:
    """(count, n, n, K) digit arrays mod p, leading digit plane invertible."""
    out = np.empty((count, n, n, K), dtype=np.int64)
    got = 0
    while got < count:
        batch = max(64, int((count - got) * 1.8) + 8)
        cand = stream.integers(p, size=(batch, n, n, K)).astype(np.int64)
        keep = cand[invertible_mask(cand[..., 0], p)]
        take = min(count - got, len(keep))
        out[got : got + take] = keep[:take]
        got += take
    return out


# ---------------------------------------------------------------------------
# phase evaluation
# ---------------------------------------------------------------------------


def _phases_two_sided_padic(pairs, K, p, g1, g2):
    M = p**K
    s = np.zeros(len(g1), dtype=np.int64)
    for i, j, m, unit in pairs:
        c = (unit * p ** (K - m)) % M
        s = (s + c * (g1[:, i, j] * g2[:, j, i] % M)) % M
    return np.exp(2j * np.pi * s / M)


def _phases_congruence_padic(pairs, K, p, g):
    M = p**K
    s = np.zeros(len(g), dtype=np.int64)
    for i, j, m, unit in pairs:
        c = (unit * p ** (K - m)) % M
        s = (s + c * (g[:, i, j] * g[:, i, j] % M)) % M
    return np.exp(2j * np.pi * s / M)


def _phases_two_sided_laurent(pairs, p, g1, g2):
    d = np.zeros(len(g1), dtype=np.int64)
    for i, j, m, unit in pairs:
        for beta in range(m):
            for gamma in range(m - beta):
                alpha = m - 1 - beta - gamma
                u = unit[alpha]
                if u:
                    d = (d + u * g1[:, i, j, beta] * g2[:, j, i, gamma]) % p
    return np.exp(2j * np.pi * d / p)


def _phases_congruence_laurent(pairs, p, g):
    d = np.zeros(len(g), dtype=np.int64)
    for i, j, m, unit in pairs:
        for beta in range(m):
            for gamma in range(m - beta):
                alpha = m - 1 - beta - gamma
                u = unit[alpha]
                if u:
                    d = (d + u * g[:, i, j, beta] * g[:, i, j, gamma]) % p
    return np.exp(2j * np.pi * d / p)


# ---------------------------------------------------------------------------
# Monte Carlo integral
# ---------------------------------------------------------------------------


def mc_orbital_multi(
    field: FieldParams,
    kind: str,
    D,
    A_list,
    n_samples: int,
    rng: RandomStream,
    chunk_size: int = 16384,
) -> list[McEstimate]:
    """Monte Carlo estimates of the orbital integral at several argument
    matrices A from one shared stream of Haar draws.  The integrand is exact
    (windowed integer arithmetic); only the averaging is statistical."""
    D = [as_element(field, v) for v in D]
    A_list = [[as_element(field, v) for v in A] for A in A_list]
    n = len(D)
    if kind not in (KIND_TWO_SIDED, KIND_CONGRUENCE):
        raise ValueError(f"unknown kind {kind!r}")
    work = []  # (index, pairs, K_local)
    K = 1
    accs = []
    for idx, A in enumerate(A_list):
        if len(A) > n:
            raise DimensionMismatch(f"rank r={len(A)} exceeds n={n}")
        pairs, K_local = _pair_data(field, D, A)
        accs.append(_Acc() if pairs else None)
        if pairs:
            work.append((idx, pairs, K_local))
            K = max(K, K_local)
    p = field.p
    if work:
        for c, start in enumerate(range(0, n_samples, chunk_size)):
            cnt = min(chunk_size, n_samples - start)
            sub = rng.child("mc", c)
            if field.family == "padic":
                if kind == KIND_TWO_SIDED:
                    g1 = _haar_batch_padic(sub.child("g1"), n, p, K, cnt)
                    g2 = _haar_batch_padic(sub.child("g2"), n, p, K, cnt)
                    for idx, pairs, _ in work:
                        accs[idx].add(_phases_two_sided_padic(pairs, K, p, g1, g2))
                else:
                    g = _haar_batch_padic(sub.child("g"), n, p, K, cnt)
                    for idx, pairs, _ in work:
                        accs[idx].add(_phases_congruence_padic(pairs, K, p, g))
            else:
                if kind == KIND_TWO_SIDED:
                    g1 = _haar_batch_laurent(sub.child("g1"), n, p, K, cnt)
                    g2 = _haar_batch_laurent(sub.child("g2"), n, p, K, cnt)
                    for idx, pairs, _ in work:
                        accs[idx].add(_phases_two_sided_laurent(pairs, p, g1, g2))
                else:
                    g = _haar_batch_laurent(sub.child("g"), n, p, K, cnt)
                    for idx, pairs, _ in work:
                        accs[idx].add(_phases_congruence_laurent(pairs, p, g))
    return [
        acc.finalize(rng.seed) if acc is not None else McEstimate(1 + 0j, 0.0, n_samples, rng.seed)
        for acc in accs
    ]


def mc_orbital_integral(
    field: FieldParams,
    kind: str,
    D,
    A,
    n_samples: int,
    rng: RandomStream,
    chunk_size: int = 16384,
) -> McEstimate:
    """Single-argument form of :func:`mc_orbital_multi`."""
    return mc_orbital_multi(field, kind, D, [A], n_samples, rng, chunk_size)[0]


# ---------------------------------------------------------------------------
# closed-form product and error bounds
# ---------------------------------------------------------------------------


def product_formula(field: FieldParams, kind: str, D, A) -> CharValue:
    """The factorized limit: product over (i, j) of the kernel at a_i x_j
    (bilinear kernel for the two-sided action, square kernel for congruence)."""
    D = [as_element(field, v) for v in D]
    A = [as_element(field, v) for v in A]
    kernel = KIND_BILINEAR if kind == KIND_TWO_SIDED else KIND_SQUARE
    return charvalue_product(theta_closed(a * x, kernel) for a in A for x in D)


def full_rank_fraction(n: int, r: int, q: int) -> Fraction:
    """x = prod_{w<r} (1 - q^(w-n)): the fraction of r x n digit matrices of
    full residue rank."""
    x = Fraction(1)
    for w in range(r):
        x *= 1 - Fraction(1, q ** (n - w))
    return x


@dataclass(frozen=True)
class ErrorBounds:
    """Exact rational bounds for the orbital-integral comparison:

    * ``factorization``: |integral - kernel product|;
    * ``multiplicativity``: |joint integral - product of rank-one integrals|.
    """

    factorization: Fraction
    multiplicativity: Fraction


def error_bound(kind: str, n: int, r: int, q: int) -> ErrorBounds:
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    x = full_rank_fraction(n, r, q)
    x1 = full_rank_fraction(n, 1, q)
    if kind == KIND_TWO_SIDED:
        fact = 2 * (1 - x * x)
        mult = fact + r * 2 * (1 - x1 * x1)
    elif kind == KIND_CONGRUENCE:
        fact = 2 * (1 - x)
        mult = fact + r * 2 * Fraction(1, q**n)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return ErrorBounds(fact, mult)


# ---------------------------------------------------------------------------
# exact oracle: averaging over a finite level
# ---------------------------------------------------------------------------


def _enumerate_level_padic(n: int, p: int, level: int) -> np.ndarray:
    reps = p**level
    total = reps ** (n * n)
    if total > _EXACT_ENUM_GUARD:
        raise TooLarge(f"level-{level} enumeration has {total} matrices")
    arr = np.arange(total, dtype=np.int64)
    cols = [(arr // reps**t) % reps for t in range(n * n)]
    mats = np.stack(cols, axis=1).reshape(total, n, n)
    return mats[invertible_mask(mats, p)]


def _enumerate_level_laurent(n: int, p: int, level: int) -> np.ndarray:
    total = p ** (level * n * n)
    if total > _EXACT_ENUM_GUARD:
        raise TooLarge(f"level-{level} enumeration has {total} matrices")
    arr = np.arange(total, dtype=np.int64)
    cols = [(arr // p**t) % p for t in range(level * n * n)]
    mats = np.stack(cols, axis=1).reshape(total, n, n, level)
    return mats[invertible_mask(mats[..., 0], p)]


def exact_orbital_integral(field: FieldParams, kind: str, D, A, level: int) -> complex:
    """Exact value of the orbital integral by averaging the integrand over
    the invertible residue matrices mod pi^level (pairs of them for the
    two-sided kind).  Valid once level >= max(-ord(a_i x_j)): perturbing g
    by pi^level h moves the trace inside O_F, where chi is trivial, so Haar
    measure may be replaced by the uniform measure on the finite level."""
    D = [as_element(field, v) for v in D]
    A = [as_element(field, v) for v in A]
    n, r = len(D), len(A)
    if r > n:
        raise DimensionMismatch(f"rank r={r} exceeds n={n}")
    pairs, K = _pair_data(field, D, A)
    if not pairs:
        return 1 + 0j
    if level < K:
        raise LevelTooLow(f"level {level} < stability level {K}")
    p = field.p
    if field.family == "padic":
        mats = _enumerate_level_padic(n, p, level)
        E = len(mats)
        if kind == KIND_CONGRUENCE:
            return complex(_phases_congruence_padic(pairs, level, p, mats).mean())
        if E > _EXACT_PAIR_GUARD:
            raise TooLarge(f"{E}^2 integrand evaluations exceed the pair guard")
        M = p**level
        U = np.zeros((E, len(pairs)), dtype=np.int64)
        V = np.zeros((E, len(pairs)), dtype=np.int64)
        for t, (i, j, m, unit) in enumerate(pairs):
            c = (unit * p ** (level - m)) % M
            U[:, t] = mats[:, i, j] * c % M
            V[:, t] = mats[:, j, i]
        acc = 0j
        step = max(1, (1 << 22) // max(E, 1))
        for s in range(0, E, step):
            S = U[s : s + step] @ V.T % M
            acc += np.exp(2j * np.pi * S / M).sum()
        return complex(acc / (E * E))
    mats = _enumerate_level_laurent(n, p, level)
    E = len(mats)
    if kind == KIND_CONGRUENCE:
        return complex(_phases_congruence_laurent(pairs, p, mats).mean())
    if E > _EXACT_PAIR_GUARD:
        raise TooLarge(f"{E}^2 integrand evaluations exceed the pair guard")
    feats = []
    for t, (i, j, m, unit) in enumerate(pairs):
        for beta in range(m):
            feats.append((t, beta))
    U = np.zeros((E, len(feats)), dtype=np.int64)
    V = np.zeros((E, len(feats)), dtype=np.int64)
    for f, (t, beta) in enumerate(feats):
        i, j, m, unit = pairs[t]
        U[:, f] = mats[:, i, j, beta]
        h = np.zeros(E, dtype=np.int64)
        for gamma in range(m - beta):
            u = unit[m - 1 - beta - gamma]
            if u:
                h = (h + u * mats[:, j, i, gamma]) % p
        V[:, f] = h
    acc = 0j
    step = max(1, (1 << 22) // max(E, 1))
    for s in range(0, E, step):
        S = U[s : s + step] @ V.T % p
        acc += np.exp(2j * np.pi * S / p).sum()
    return complex(acc / (E * E))


# ---------------------------------------------------------------------------
# bound verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    kind: str
    n: int
    r: int
    estimate: McEstimate
    closed_form: CharValue
    bound: Fraction
    observed_gap: float
    passed: bool

    def to_json(self, q: int) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "r": self.r,
            "estimate": [self.estimate.mean.real, self.estimate.mean.imag],
            "stderr": self.estimate.stderr,
            "closed_form": self.closed_form.to_json(),
            "paper_bound": f"{self.bound.numerator}/{self.bound.denominator}",
            "pass": self.passed,
            "seed": self.estimate.seed,
        }


def verify_bound(field: FieldParams, kind: str, D, A, n_samples: int, rng: RandomStream) -> BoundReport:
    """|MC - kernel product| <= factorization bound + 3 * stderr."""
    D = [as_element(field, v) for v in D]
    A = [as_element(field, v) for v in A]
    est = mc_orbital_integral(field, kind, D, A, n_samples, rng)
    cv = product_formula(field, kind, D, A)
    bounds = error_bound(kind, len(D), len(A), field.q)
    gap = abs(est.mean - cv.to_complex(field.q))
    passed = gap <= float(bounds.factorization) + 3 * est.stderr
    return BoundReport(kind, len(D), len(A), est, cv, bounds.factorization, gap, passed)


@dataclass(frozen=True)
class MultiplicativityReport:
    kind: str
    n: int
    r: int
    joint: McEstimate
    rank_one_product: complex
    bound: Fraction
    observed_gap: float
    passed: bool


def verify_multiplicativity(
    field: FieldParams, kind: str, D, A, n_samples: int, rng: RandomStream
) -> MultiplicativityReport:
    """|joint MC - product of rank-one MCs| <= multiplicativity bound plus
    three combined standard errors."""
    D = [as_element(field, v) for v in D]
    A = [as_element(field, v) for v in A]
    joint = mc_orbital_integral(field, kind, D, A, n_samples, rng.child("joint"))
    prod = 1 + 0j
    se_total = joint.stderr
    for i, a in enumerate(A):
        one = mc_orbital_integral(field, kind, D, [a], n_samples, rng.child("rank1", i))
        prod *= one.mean
        se_total += one.stderr
    bounds = error_bound(kind, len(D), len(A), field.q)
    gap = abs(joint.mean - prod)
    passed = gap <= float(bounds.multiplicativity) + 3 * se_total
    return MultiplicativityReport(kind, len(D), len(A), joint, prod, bounds.multiplicativity, gap, passed)


# ---------------------------------------------------------------------------
# empirical characteristic functions of matrix samples
# ---------------------------------------------------------------------------


def empirical_charfun(samples, A: MatF) -> McEstimate:
    """Mean of chi(tr(A M)) over a list of sampled matrices (exact path)."""
    if not samples:
        raise ValueError("no samples")
    n = samples[0].rows
    if A.rows > n or A.cols > n:
        raise DimensionMismatch("argument larger than the samples")
    acc = _Acc()
    vals = [_chi_trace(A, M) for M in samples]
    acc.add(np.asarray(vals, dtype=complex))
    return acc.finalize(0)


def _chi_trace(A: MatF, M: MatF) -> complex:
    """chi(tr(A M)); a partial sum cancelling its whole window with certified
    ord >= 0 lies in O_F, where chi is trivial, so it may be dropped."""
    params = M.params
    t = params.zero()
    for i in range(A.rows):
        for j in range(A.cols):
            a = A[i, j]
            if a.is_zero():
                continue
            term = a * M[j, i]
            try:
                t = t + term
            except PrecisionExhausted as exc:
                if exc.guaranteed_ord is None or exc.guaranteed_ord < 0:
                    raise
                t = params.zero()
    return chi(t)


# -- batched corner sampling (same measures, windowed integer arithmetic) ----


def _corner_batch_padic(field, param, n, count, window, scale, stream):
    p = field.p
    M = p**window
    out = np.zeros((count, n, n), dtype=np.int64)
    if isinstance(param, DeltaParam):
        for t, k in enumerate(param.head):
            g = stream.child("x", t)
            X = g.integers(M, size=(count, n)).astype(np.int64)
            Y = stream.child("y", t).integers(M, size=(count, n)).astype(np.int64)
            c = pow(p, scale - k, M)
            out = (out + c * (X[:, :, None] * Y[:, None, :] % M)) % M
        if param.tail is not None:
            Z = stream.child("z").integers(M, size=(count, n, n)).astype(np.int64)
            out = (out + pow(p, scale - param.tail, M) * Z) % M
        return out
    eps = field.eps().unit % M
    for t, k in enumerate(param.kk):
        X = stream.child("x", t).integers(M, size=(count, n)).astype(np.int64)
        c = pow(p, scale - k, M)
        out = (out + c * (X[:, :, None] * X[:, None, :] % M)) % M
    for t, k in enumerate(param.kkp):
        Y = stream.child("y", t).integers(M, size=(count, n)).astype(np.int64)
        c = eps * pow(p, scale - k, M) % M
        out = (out + c * (Y[:, :, None] * Y[:, None, :] % M)) % M
    if param.k is not None:
        H = stream.child("h").integers(M, size=(count, n, n)).astype(np.int64)
        iu = np.triu_indices(n)
        Hs = np.zeros_like(H)
        Hs[:, iu[0], iu[1]] = H[:, iu[0], iu[1]]
        Hs[:, iu[1], iu[0]] = H[:, iu[0], iu[1]]
        out = (out + pow(p, scale - param.k, M) * Hs) % M
    return out


def measure_charfun_batch(
    field: FieldParams,
    param,
    n: int,
    n_samples: int,
    probes,
    rng: RandomStream,
    chunk_size: int = 16384,
) -> list[McEstimate]:
    """Empirical characteristic function of corner samples at diagonal probe
    arguments.  ``probes`` is a list of lists of FieldElements (one diagonal
    argument per probe, entry i multiplying the (i, i) corner coefficient).

    The sampled corner is represented by its digit window scaled by
    pi^scale, wide enough for the deepest probe; the evaluation of chi is
    exact.  Only the padic family is batched; callers needing the Laurent
    family use the exact path.
    """
    if field.family != "padic":
        raise ValueError("batched corner sampling supports the padic family; use sample_corner for laurent")
    scale = param.support_bound()
    probes = [[as_element(field, a) for a in diag] for diag in probes]
    depth = 1
    for diag in probes:
        for a in diag:
            if not a.is_zero():
                depth = max(depth, -a.ord + scale)
    window = depth
    p = field.p
    _check_window(p, window)
    accs = [_Acc() for _ in probes]
    for c, start in enumerate(range(0, n_samples, chunk_size)):
        cnt = min(chunk_size, n_samples - start)
        corners = _corner_batch_padic(field, param, n, cnt, window, scale, rng.child("corner", c))
        for pi_idx, diag in enumerate(probes):
            phase = np.zeros(cnt, dtype=float)
            for i, a in enumerate(diag):
                if a.is_zero():
                    continue
                m = -a.ord + scale
                if m <= 0:
                    continue
                mod = p**m
                unit = a.unit % mod
                phase += 2 * np.pi * (unit * (corners[:, i, i] % mod) % mod) / mod
            accs[pi_idx].add(np.exp(1j * phase))
    return [a.finalize(rng.seed) for a in accs]


# ---------------------------------------------------------------------------
# convergence of orbital measures to the classified limits
# ---------------------------------------------------------------------------


def generator_diagonal(field: FieldParams, param, n: int) -> list[FieldElement]:
    """The canonical diagonal generator at size n: head entries pi^-k_i
    (eps-twisted for the strictly-decreasing block), padded by the tail
    value pi^-k (or zero for a -inf tail)."""
    diag = []
    if isinstance(param, DeltaParam):
        diag = [field.uniformizer_pow(-k) for k in param.head]
        pad = field.zero() if param.tail is None else field.uniformizer_pow(-param.tail)
    elif isinstance(param, OmegaParam):
        diag = [field.uniformizer_pow(-k) for k in param.kk]
        diag += [field.eps().shift(-k) for k in param.kkp]
        pad = field.zero() if param.k is None else field.uniformizer_pow(-param.k)
    else:
        raise DimensionMismatch("unknown parameter kind")
    if len(diag) > n:
        raise DimensionMismatch(f"generator needs n >= {len(diag)}")
    return diag + [pad] * (n - len(diag))


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    max_gap: float
    bound: float
    passed: bool


def convergence_experiment(
    field: FieldParams,
    param,
    n_list,
    n_samples: int,
    rng: RandomStream,
    ell_range=range(-2, 4),
) -> list[ConvergenceRow]:
    """Push the canonical generators by Haar and compare the empirical
    characteristic function against the closed form of the limit measure at
    rank-one probe arguments; gaps must clear the rank-one bound plus Monte
    Carlo noise, with the bound sequence strictly decreasing in n."""
    two_sided = isinstance(param, DeltaParam)
    kind = KIND_TWO_SIDED if two_sided else KIND_CONGRUENCE
    q = field.q
    rows = []
    for n in n_list:
        D = generator_diagonal(field, param, n)
        bound = float(error_bound(kind, n, 1, q).factorization)
        probes = []
        closed_vals = []
        for ell in ell_range:
            args = [field.uniformizer_pow(-ell)]
            if not two_sided:
                args.append(field.eps().shift(-ell))
            for a in args:
                probes.append([a])
                closed_vals.append(
                    param.char_single(ell).to_complex(q) if two_sided else param.char_single(a).to_complex(q)
                )
        ests = mc_orbital_multi(field, kind, D, probes, n_samples, rng.child("conv", n))
        max_gap = max(abs(est.mean - cv) for est, cv in zip(ests, closed_vals))
        max_noise = max(est.stderr for est in ests)
        rows.append(ConvergenceRow(n, max_gap, bound, max_gap <= bound + 3 * max_noise))
    return rows
