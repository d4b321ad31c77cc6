"""Finite descriptions of the two ergodic-measure parameter spaces, their
closed-form characteristic functions, the convolution semigroup, and the
constructive uniqueness arguments.

* :class:`DeltaParam` describes a non-increasing sequence in Z u {-inf}: a
  finite head followed by a constant tail (``tail = k``) or by -inf
  (``tail = None``).  It parametrizes the two-sided-invariant measures on
  full matrix space.
* :class:`OmegaParam` = (k; kk, kkp) with kk a non-increasing and kkp a
  strictly decreasing finite list in Z_{>k}; it parametrizes the congruence-
  invariant measures on symmetric matrix space (non-dyadic fields).

Sequences with infinitely many distinct finite entries have no finite
description and are out of scope; ``truncate_rule`` builds finite-head
approximants for such rules.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Sequence

from .characters import KIND_SQUARE, CharValue, charvalue_product, theta_closed
from .errors import EqualParams, InvalidParam
from .field import FieldElement, FieldParams


def _is_nonincreasing(xs: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(xs, xs[1:]))


def _is_strictly_decreasing(xs: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(xs, xs[1:]))


@dataclass(frozen=True)
class DeltaParam:
    """head + eventually-constant tail (``tail=k``) or eventually -inf
    (``tail=None``).  Head entries equal to a constant tail are absorbed at
    construction, so equality of descriptions is equality of sequences."""

    head: tuple = ()
    tail: int | None = None

    def __post_init__(self):
        head = tuple(int(k) for k in self.head)
        if self.tail is not None:
            head = tuple(k for k in head if k != self.tail)
        object.__setattr__(self, "head", head)

    # -- sequence view -------------------------------------------------------
    def entry(self, j: int) -> int | None:
        """j-th sequence entry (1-based); None encodes -inf."""
        if j <= len(self.head):
            return self.head[j - 1]
        return self.tail

    @property
    def limit(self) -> int | None:
        return self.tail

    def support_bound(self) -> int:
        """max(0, largest entry): every sampled corner entry has ord >= -bound."""
        cand = [0, *self.head]
        if self.tail is not None:
            cand.append(self.tail)
        return max(cand)

    # -- characteristic function ----------------------------------------------
    def char_single(self, ell: int) -> CharValue:
        """Value at the rank-one argument pi^-ell e_11: zero when the constant
        tail contributes infinitely many positive terms, else q to minus the
        finite head sum (stored as half_exp = 2 * sum)."""
        if self.tail is not None and self.tail + ell >= 1:
            return CharValue.zero()
        total = sum(k + ell for k in self.head if k + ell >= 1)
        return CharValue("+1", 2 * total)

    def char(self, ells: Sequence[int]) -> list[CharValue]:
        ok, msg = validate(self)
        if not ok:
            raise InvalidParam(msg)
        return [self.char_single(int(l)) for l in ells]

    # -- serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {"head": list(self.head), "tail": "neginf" if self.tail is None else {"const": self.tail}}

    @classmethod
    def from_json(cls, obj: dict) -> "DeltaParam":
        tail = obj.get("tail", "neginf")
        return cls(tuple(obj.get("head", ())), None if tail == "neginf" else int(tail["const"]))


@dataclass(frozen=True)
class OmegaParam:
    """(k; kk, kkp) with kk non-increasing, kkp strictly decreasing, all
    entries > k.  ``k=None`` encodes k = -inf."""

    k: int | None = None
    kk: tuple = ()
    kkp: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "kk", tuple(int(v) for v in self.kk))
        object.__setattr__(self, "kkp", tuple(int(v) for v in self.kkp))

    def support_bound(self) -> int:
        cand = [0, *self.kk, *self.kkp]
        if self.k is not None:
            cand.append(self.k)
        return max(cand)

    # -- characteristic function ----------------------------------------------
    def char_single(self, x: FieldElement) -> CharValue:
        """indicator(pi^-k x integral) * prod theta(pi^-k_n x)
        * prod theta(eps pi^-k'_n x), evaluated exactly."""
        params = x.params
        params.require_nondyadic("the symmetric family")
        if self.k is not None and not x.is_zero() and x.ord - self.k < 0:
            return CharValue.zero()
        eps = params.eps()
        factors = [theta_closed(x.shift(-kn), KIND_SQUARE) for kn in self.kk]
        factors += [theta_closed((x * eps).shift(-kn), KIND_SQUARE) for kn in self.kkp]
        return charvalue_product(factors)

    def char(self, xs: Sequence[FieldElement]) -> list[CharValue]:
        ok, msg = validate(self)
        if not ok:
            raise InvalidParam(msg)
        return [self.char_single(x) for x in xs]

    # -- serialization -----------------------------------------------------------
    def to_json(self) -> dict:
        return {"k": "neginf" if self.k is None else self.k, "kk": list(self.kk), "kkp": list(self.kkp)}

    @classmethod
    def from_json(cls, obj: dict) -> "OmegaParam":
        k = obj.get("k", "neginf")
        return cls(None if k == "neginf" else int(k), tuple(obj.get("kk", ())), tuple(obj.get("kkp", ())))


def char_mu(p: DeltaParam, ells: Sequence[int]) -> list[CharValue]:
    """Characteristic function of the two-sided family at pi^-ell e_11."""
    return p.char(ells)


def char_nu(p: OmegaParam, xs: Sequence[FieldElement]) -> list[CharValue]:
    """Characteristic function of the congruence family at x e_11."""
    return p.char(xs)


def param_from_json(obj: dict):
    """Dispatch on the wire schema: Delta payloads carry "head", Omega "kk"."""
    if "head" in obj or "tail" in obj:
        return DeltaParam.from_json(obj)
    if "kk" in obj or "kkp" in obj or "k" in obj:
        return OmegaParam.from_json(obj)
    raise InvalidParam(f"unrecognized parameter payload: {obj}")


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def validate(p) -> tuple[bool, str | None]:
    """Check the defining invariants; returns (ok, first violated clause)."""
    if isinstance(p, DeltaParam):
        if not all(isinstance(k, int) for k in p.head):
            return False, "head entries must be integers"
        if not _is_nonincreasing(p.head):
            return False, "head is not non-increasing"
        if p.tail is not None and p.head and p.head[-1] <= p.tail:
            return False, "head entries must exceed the constant tail"
        return True, None
    if isinstance(p, OmegaParam):
        if not _is_nonincreasing(p.kk):
            return False, "kk is not non-increasing"
        if not _is_strictly_decreasing(p.kkp):
            return False, "kkp is not strictly decreasing"
        if p.k is not None:
            if any(v <= p.k for v in p.kk):
                return False, "kk entries must be > k"
            if any(v <= p.k for v in p.kkp):
                return False, "kkp entries must be > k"
        return True, None
    return False, f"not a parameter object: {type(p).__name__}"


def _require_valid(p):
    ok, msg = validate(p)
    if not ok:
        raise InvalidParam(msg)


# ---------------------------------------------------------------------------
# semigroup (measure convolution)
# ---------------------------------------------------------------------------


def convolve(a, b):
    """Parameter of the convolution of the two measures.

    Delta case: the tail limit is the max of the two limits and the head
    merges every entry above it.  Omega case: merge componentwise, then
    re-canonicalize so the result is a valid description.
    """
    if isinstance(a, DeltaParam) and isinstance(b, DeltaParam):
        _require_valid(a)
        _require_valid(b)
        if a.tail is None and b.tail is None:
            tail = None
        elif a.tail is None:
            tail = b.tail
        elif b.tail is None:
            tail = a.tail
        else:
            tail = max(a.tail, b.tail)
        merged = [k for k in a.head + b.head if tail is None or k > tail]
        return DeltaParam(tuple(sorted(merged, reverse=True)), tail)
    if isinstance(a, OmegaParam) and isinstance(b, OmegaParam):
        _require_valid(a)
        _require_valid(b)
        if a.k is None and b.k is None:
            k = None
        elif a.k is None:
            k = b.k
        elif b.k is None:
            k = a.k
        else:
            k = max(a.k, b.k)
        return canonicalize_omega(k, a.kk + b.kk, a.kkp + b.kkp)
    raise InvalidParam("convolve needs two parameters of the same kind")


def oplus(a, b):
    """Alias for :func:`convolve` (the semigroup operation)."""
    return convolve(a, b)


def canonicalize_omega(k: int | None, kk_raw: Sequence[int], kkp_raw: Sequence[int]) -> OmegaParam:
    """Unique description with the same characteristic function:

    * entries <= k are dropped (they are absorbed by the Haar factor),
    * repeated kkp levels migrate to kk in pairs (two eps-twisted rank-one
      factors at one level equal two plain ones: theta(x)^2 = theta(eps x)^2),
    * both lists are re-sorted.

    Idempotent on canonical input.
    """
    kk = [int(v) for v in kk_raw if k is None or int(v) > k]
    kkp = [int(v) for v in kkp_raw if k is None or int(v) > k]
    counts = Counter(kkp)
    kkp_new = []
    for v, m in counts.items():
        kk.extend([v] * (2 * (m // 2)))
        if m % 2 == 1:
            kkp_new.append(v)
    return OmegaParam(k, tuple(sorted(kk, reverse=True)), tuple(sorted(kkp_new, reverse=True)))


def char_nu_raw(field: FieldParams, k: int | None, kk: Sequence[int], kkp: Sequence[int], x: FieldElement) -> CharValue:
    """Characteristic-function value of a possibly non-canonical (k, kk, kkp)
    triple, evaluated directly as the indicator times the kernel products.
    Used to certify that canonicalization preserves the measure."""
    field.require_nondyadic("the symmetric family")
    if k is not None and not x.is_zero() and x.ord - k < 0:
        return CharValue.zero()
    eps = field.eps()
    factors = [theta_closed(x.shift(-int(kn)), KIND_SQUARE) for kn in kk]
    factors += [theta_closed((x * eps).shift(-int(kn)), KIND_SQUARE) for kn in kkp]
    return charvalue_product(factors)


# ---------------------------------------------------------------------------
# constructive uniqueness
# ---------------------------------------------------------------------------


def distinguishing_argument(a: DeltaParam, b: DeltaParam) -> int:
    """An integer ell with a.char_single(ell) != b.char_single(ell), built as
    1 - k at the first index where the sequences differ (larger side)."""
    _require_valid(a)
    _require_valid(b)
    depth = max(len(a.head), len(b.head)) + 1
    for j in range(1, depth + 1):
        ka, kb = a.entry(j), b.entry(j)
        if ka == kb:
            continue
        ka_cmp = float("-inf") if ka is None else ka
        kb_cmp = float("-inf") if kb is None else kb
        bigger = ka if ka_cmp > kb_cmp else kb
        return 1 - int(bigger)
    raise EqualParams("the two parameters describe the same sequence")


def probe_grid(field: FieldParams, ell_range=range(-4, 7)) -> list[FieldElement]:
    """Arguments u * pi^-ell, u in {1, eps}, covering every separation the
    uniqueness construction needs for parameters supported in the window."""
    eps = field.eps()
    out = []
    for ell in ell_range:
        out.append(field.uniformizer_pow(-ell))
        out.append(eps.shift(-ell))
    return out


def separate_omega(a: OmegaParam, b: OmegaParam, field: FieldParams, ell_range=range(-4, 7)) -> FieldElement | None:
    """A probe argument where the two characteristic functions differ, or
    None if the grid does not separate them."""
    for x in probe_grid(field, ell_range):
        if a.char_single(x) != b.char_single(x):
            return x
    return None


# ---------------------------------------------------------------------------
# finite-description helper
# ---------------------------------------------------------------------------


def truncate_rule(rule: Callable[[int], int | None], depth: int) -> DeltaParam:
    """Finite-head approximant of a sequence given by a rule j -> entry
    (None for -inf).  The value at any fixed argument ell depends only on
    entries > -ell, so approximants converge as depth grows."""
    head = []
    for j in range(1, depth + 1):
        v = rule(j)
        if v is None:
            break
        head.append(int(v))
    if not _is_nonincreasing(head):
        raise InvalidParam("rule is not non-increasing on the truncated range")
    return DeltaParam(tuple(head), None)
