"""Truncated-precision arithmetic in a non-Archimedean local field.

Two families are supported, both with prime residue field F_p:

* ``padic``   -- the p-adic numbers Q_p, uniformizer p, digits in {0,...,p-1};
* ``laurent`` -- formal Laurent series F_p((t)), uniformizer t, coefficient
  digits in {0,...,p-1} with no carries.

A nonzero element is stored as ``pi^ord * unit`` where the unit part carries
``rel`` known digits (1 <= rel <= precision) with nonzero leading digit, so
the valuation is always exact (capped-relative semantics).  Addition that
cancels the entire digit window raises :class:`PrecisionExhausted` carrying a
certified lower bound on the valuation of the true result; nothing is ever
silently padded.

All values are immutable and hashable; operations are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime
from sympy.ntheory.residue_ntheory import sqrt_mod

from .errors import (
    DivisionByZero,
    DyadicField,
    InvalidParam,
    NotIntegral,
    PrecisionExhausted,
)
from .residue import ResidueElement, legendre

ORD_INF = math.inf

_FAMILIES = ("padic", "laurent")


def _vp(n: int, p: int) -> int:
    """Multiplicity of p in a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class FieldParams:
    """Description of the ambient field: family, residue prime and the global
    digit precision.  v1 keeps q = p (prime residue fields only)."""

    family: str
    p: int
    precision: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise InvalidParam(f"unknown field family {self.family!r}")
        if not isprime(self.p):
            raise InvalidParam(f"residue characteristic must be prime, got {self.p}")
        if self.precision < 1:
            raise InvalidParam("precision must be >= 1")

    # -- basic facts ------------------------------------------------------
    @property
    def q(self) -> int:
        return self.p

    @property
    def is_dyadic(self) -> bool:
        return self.p == 2

    def require_nondyadic(self, what: str = "this operation"):
        if self.is_dyadic:
            raise DyadicField(f"{what} requires an odd residue characteristic")

    @property
    def zero_ord_threshold(self) -> int:
        """Valuation above which a fully-cancelled window may be treated as 0."""
        return self.precision - 2

    @property
    def nonsquare_unit_digit(self) -> int:
        """Smallest digit in {2,...,p-1} that is a nonsquare mod p."""
        self.require_nondyadic("a nonsquare unit")
        for c in range(2, self.p):
            if legendre(c, self.p) == -1:
                return c
        raise AssertionError("unreachable: F_p (p odd) always has a nonsquare")

    # -- element constructors --------------------------------------------
    def zero(self) -> "FieldElement":
        return FieldElement(self, ORD_INF, None, 0)

    def one(self) -> "FieldElement":
        return self.uniformizer_pow(0)

    def uniformizer_pow(self, k: int) -> "FieldElement":
        """pi^k, exact to the full window."""
        unit = 1 if self.family == "padic" else (1,) + (0,) * (self.precision - 1)
        return FieldElement(self, k, unit, self.precision)

    def from_int(self, n: int) -> "FieldElement":
        """The image of the rational integer n.  Exact in Q_p; reduced mod p
        to a constant in F_p((t))."""
        if self.family == "padic":
            if n == 0:
                return self.zero()
            v = _vp(n, self.p)
            unit = (n // self.p**v) % self.p**self.precision
            return FieldElement(self, v, unit, self.precision)
        c = n % self.p
        if c == 0:
            return self.zero()
        return FieldElement(self, 0, (c,) + (0,) * (self.precision - 1), self.precision)

    def element(self, ord: int, digits) -> "FieldElement":
        """Element pi^ord * (d_0 + d_1 pi + ...) from an explicit digit list,
        taken to be the complete expansion (missing digits are zero)."""
        digits = [int(d) % self.p for d in digits]
        lead = next((i for i, d in enumerate(digits) if d != 0), None)
        if lead is None:
            return self.zero()
        digits = digits[lead : lead + self.precision]
        rel = self.precision
        digits = digits + [0] * (rel - len(digits))
        if self.family == "padic":
            unit = sum(d * self.p**i for i, d in enumerate(digits))
        else:
            unit = tuple(digits)
        return FieldElement(self, ord + lead, unit, rel)

    def eps(self) -> "FieldElement":
        """The fixed nonsquare unit: lift of the smallest nonsquare residue."""
        return self.from_int(self.nonsquare_unit_digit)

    def spec_string(self) -> str:
        return f"{self.family}:p={self.p},prec={self.precision}"


def parse_field_spec(spec: str) -> FieldParams:
    """Parse ``padic:p=<p>,prec=<N>`` / ``laurent:p=<p>,prec=<N>``."""
    try:
        family, rest = spec.split(":", 1)
        kv = dict(item.split("=") for item in rest.split(","))
        return FieldParams(family.strip(), int(kv["p"]), int(kv["prec"]))
    except (ValueError, KeyError) as exc:
        raise InvalidParam(f"bad field spec {spec!r}: expected e.g. padic:p=3,prec=12") from exc


class FieldElement:
    """Immutable field element: exact valuation plus a known-digit window.

    Besides ordinary elements and the exact zero there is a third state, a
    *certified vanishing* value ``O(pi^g)`` (``unit is None``, ``rel == 0``,
    ``ord == g``): everything known is that the value lies in pi^g O_F.
    Plain ``+`` never produces it (full cancellation raises
    PrecisionExhausted); it arises only from the lenient accumulation used
    inside matrix products and samplers, where a transiently cancelled
    partial sum is sound to carry as a residual bound.
    """

    __slots__ = ("params", "ord", "unit", "rel")

    def __init__(self, params: FieldParams, ord, unit, rel: int):
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "ord", ord)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "rel", rel)

    def __setattr__(self, *args):
        raise AttributeError("FieldElement is immutable")

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.ord == ORD_INF

    def is_vanishing(self) -> bool:
        """Certified to lie in pi^ord O_F with no digit known."""
        return self.unit is None and self.ord != ORD_INF

    @property
    def abs_prec(self):
        """The element is known modulo pi^abs_prec."""
        return ORD_INF if self.is_zero() else self.ord + self.rel

    @property
    def digits(self) -> tuple[int, ...]:
        """Known digits d_0..d_{rel-1} of the unit part (d_0 != 0)."""
        if self.is_zero() or self.is_vanishing():
            return ()
        if self.params.family == "padic":
            u, p, out = self.unit, self.params.p, []
            for _ in range(self.rel):
                out.append(u % p)
                u //= p
            return tuple(out)
        return self.unit

    def leading_digit(self) -> int:
        if self.is_zero():
            raise DivisionByZero("zero has no leading digit")
        if self.is_vanishing():
            raise PrecisionExhausted("no digit of a vanishing value is known", guaranteed_ord=self.ord)
        return self.unit % self.params.p if self.params.family == "padic" else self.unit[0]

    def _truncate_abs(self, new_abs: int) -> "FieldElement":
        """Forget digits at or beyond position new_abs (requires ord < new_abs)."""
        if new_abs >= self.abs_prec:
            return self
        rel = new_abs - self.ord
        if self.params.family == "padic":
            return FieldElement(self.params, self.ord, self.unit % self.params.p**rel, rel)
        return FieldElement(self.params, self.ord, self.unit[:rel], rel)

    def _check_same(self, other: "FieldElement"):
        if not isinstance(other, FieldElement) or other.params != self.params:
            raise TypeError("operands must share FieldParams")

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return (
            self.params == other.params
            and self.ord == other.ord
            and self.rel == other.rel
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.params, self.ord, self.rel, self.unit))

    def __repr__(self):
        if self.is_zero():
            return f"<0 in {self.params.spec_string()}>"
        if self.is_vanishing():
            return f"<O(pi^{self.ord}) in {self.params.spec_string()}>"
        return f"<ord={self.ord} digits={self.digits} in {self.params.spec_string()}>"

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check_same(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.is_vanishing() or other.is_vanishing():
            if self.is_vanishing() and other.is_vanishing():
                return FieldElement(self.params, min(self.ord, other.ord), None, 0)
            hidden, visible = (self, other) if self.is_vanishing() else (other, self)
            if visible.ord >= hidden.ord:
                return FieldElement(self.params, hidden.ord, None, 0)
            return visible._truncate_abs(hidden.ord)
        p, prm = self.params.p, self.params
        v = min(self.ord, other.ord)
        abs_ = min(self.abs_prec, other.abs_prec)
        w = abs_ - v
        if prm.family == "padic":
            m = p**w
            s = (self.unit * p ** (self.ord - v) + other.unit * p ** (other.ord - v)) % m
            if s == 0:
                raise PrecisionExhausted(guaranteed_ord=abs_)
            t = _vp(s, p)
            return FieldElement(prm, v + t, s // p**t, w - t)
        coeffs = [0] * w
        for src in (self, other):
            off = src.ord - v
            for i in range(min(src.rel, w - off)):
                coeffs[off + i] = (coeffs[off + i] + src.unit[i]) % p
        lead = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if lead is None:
            raise PrecisionExhausted(guaranteed_ord=abs_)
        return FieldElement(prm, v + lead, tuple(coeffs[lead:]), w - lead)

    def __neg__(self) -> "FieldElement":
        if self.is_zero() or self.is_vanishing():
            return self
        prm, p = self.params, self.params.p
        if prm.family == "padic":
            return FieldElement(prm, self.ord, p**self.rel - self.unit, self.rel)
        return FieldElement(prm, self.ord, tuple((-c) % p for c in self.unit), self.rel)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return self + (-other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check_same(other)
        if self.is_zero() or other.is_zero():
            return self.params.zero()
        if self.is_vanishing() or other.is_vanishing():
            return FieldElement(self.params, self.ord + other.ord, None, 0)
        prm = self.params
        rel = min(self.rel, other.rel)
        if prm.family == "padic":
            unit = (self.unit * other.unit) % prm.p**rel
            return FieldElement(prm, self.ord + other.ord, unit, rel)
        p = prm.p
        a, b = self.unit, other.unit
        out = [0] * rel
        for i in range(rel):
            ai = a[i]
            if ai:
                for j in range(rel - i):
                    out[i + j] = (out[i + j] + ai * b[j]) % p
        return FieldElement(prm, self.ord + other.ord, tuple(out), rel)

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("cannot invert 0")
        if self.is_vanishing():
            raise PrecisionExhausted("cannot invert a value not distinguishable from 0", guaranteed_ord=self.ord)
        prm = self.params
        if prm.family == "padic":
            unit = pow(self.unit, -1, prm.p**self.rel)
            return FieldElement(prm, -self.ord, unit, self.rel)
        p, u, rel = prm.p, self.unit, self.rel
        inv0 = pow(u[0], p - 2, p)
        out = [inv0] + [0] * (rel - 1)
        for k in range(1, rel):
            acc = sum(u[i] * out[k - i] for i in range(1, k + 1)) % p
            out[k] = (-inv0 * acc) % p
        return FieldElement(prm, -self.ord, tuple(out), rel)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return self * other.inverse()

    def shift(self, k: int) -> "FieldElement":
        """Multiply by pi^k (exact)."""
        if self.is_zero():
            return self
        return FieldElement(self.params, self.ord + k, self.unit, self.rel)

    # -- comparisons at available precision ---------------------------------
    def agrees(self, other: "FieldElement") -> bool:
        """True when the two elements coincide on the overlap of their known
        digit windows.  A vanishing value O(pi^g) agrees with anything of
        valuation >= g (including zero); an exact zero and a visible value
        never agree."""
        self._check_same(other)
        if self.is_vanishing() or other.is_vanishing():
            if self.is_vanishing() and other.is_vanishing():
                return True
            hidden, rest = (self, other) if self.is_vanishing() else (other, self)
            return rest.is_zero() or rest.ord >= hidden.ord
        if self.is_zero() and other.is_zero():
            return True
        if self.is_zero() or other.is_zero():
            return False
        try:
            self - other
        except PrecisionExhausted:
            return True
        return False

    # -- queries used throughout -------------------------------------------
    def abs_q(self) -> Fraction:
        """|x| = q^(-ord) as an exact rational (0 for the zero element)."""
        if self.is_zero():
            return Fraction(0)
        if self.is_vanishing():
            raise PrecisionExhausted("absolute value not determined", guaranteed_ord=self.ord)
        q, k = self.params.q, self.ord
        return Fraction(1, q**k) if k >= 0 else Fraction(q ** (-k))

    def residue(self) -> ResidueElement:
        """Reduction mod pi of an integral element."""
        if self.is_zero():
            return ResidueElement(0, self.params.p)
        if self.is_vanishing():
            if self.ord >= 1:
                return ResidueElement(0, self.params.p)
            raise PrecisionExhausted("residue not determined", guaranteed_ord=self.ord)
        if self.ord < 0:
            raise NotIntegral(f"ord = {self.ord} < 0")
        if self.ord > 0:
            return ResidueElement(0, self.params.p)
        return ResidueElement(self.leading_digit(), self.params.p)

    # -- serialization -------------------------------------------------------
    def to_json(self) -> dict:
        if self.is_zero():
            return {"ord": None, "digits": []}
        return {"ord": int(self.ord), "digits": list(self.digits)}

    @classmethod
    def from_json(cls, params: FieldParams, obj: dict) -> "FieldElement":
        if obj.get("ord") is None:
            return params.zero()
        digits = list(obj.get("digits", []))
        if not digits:
            return cls(params, int(obj["ord"]), None, 0)
        return params.element(int(obj["ord"]), digits)


# ---------------------------------------------------------------------------
# quotient map pi: C_q <-> F_q
# ---------------------------------------------------------------------------


def reduce_element(x: FieldElement) -> ResidueElement:
    """x mod pi*O_F for x in O_F; raises NotIntegral below the integers."""
    return x.residue()


def lift_residue(params: FieldParams, r: ResidueElement | int) -> FieldElement:
    """Canonical representative in C_q = {0,...,p-1} of a residue class."""
    value = r.value if isinstance(r, ResidueElement) else int(r) % params.p
    return params.from_int(value)


def ord_abs(x: FieldElement) -> tuple[object, Fraction]:
    """(ord_F(x), |x|) with |x| = q^(-ord) exact; (inf, 0) for x = 0."""
    return (x.ord, x.abs_q())


def _require_resolved(x: FieldElement, what: str):
    if x.is_vanishing():
        raise PrecisionExhausted(f"{what} needs a resolved element", guaranteed_ord=x.ord)


# ---------------------------------------------------------------------------
# square roots and square classes (non-dyadic only)
# ---------------------------------------------------------------------------


def _canonical_residue_sqrt(a0: int, p: int) -> int:
    """The residue square root whose representative is <= (p-1)/2."""
    r = sqrt_mod(a0, p)
    return min(r, p - r)


def hensel_sqrt(x: FieldElement) -> FieldElement | None:
    """Square root of x by Newton lifting from the residue field, or None
    when x is a nonsquare (odd valuation, or nonsquare unit part).

    The returned root beta satisfies beta^2 = x on the full stored window,
    ord(beta) = ord(x)/2, and has leading digit <= (p-1)/2 (canonical choice).
    Each Newton step at least doubles the number of correct digits.
    """
    prm = x.params
    prm.require_nondyadic("hensel_sqrt")
    if x.is_zero():
        return x
    _require_resolved(x, "hensel_sqrt")
    if x.ord % 2 != 0:
        return None
    p = prm.p
    a0 = x.leading_digit()
    if legendre(a0, p) != 1:
        return None
    rel = x.rel
    if prm.family == "padic":
        u = x.unit
        root = _canonical_residue_sqrt(a0, p)
        known = 1
        while known < rel:
            known = min(2 * known, rel)
            m = p**known
            root = (root + (u % m) * pow(root, -1, m)) * pow(2, -1, m) % m
        if root % p > (p - 1) // 2:
            root = p**rel - root
        return FieldElement(prm, x.ord // 2, root, rel)
    # Laurent: Newton on truncated power series, coefficientwise mod p.
    u = x.unit
    inv2 = pow(2, p - 2, p)
    root = [_canonical_residue_sqrt(a0, p)] + [0] * (rel - 1)
    known = 1
    while known < rel:
        known = min(2 * known, rel)
        r_el = FieldElement(prm, 0, tuple(root), rel)
        u_el = FieldElement(prm, 0, u, rel)
        upd = (r_el + u_el * r_el.inverse()) * prm.from_int(inv2)
        root = list(upd.digits) + [0] * (rel - len(upd.digits))
    if root[0] > (p - 1) // 2:
        root = [(-c) % p for c in root]
    return FieldElement(prm, x.ord // 2, tuple(root), rel)


def square_class(x: FieldElement) -> tuple[FieldElement, FieldElement]:
    """Representative of x modulo unit squares, with a witness.

    Returns (rep, g) with rep in {pi^k} U {eps*pi^k} U {0} and g^2 * rep = x
    to the stored precision; rep = pi^ord(x) when the unit part of x is a
    square, eps*pi^ord(x) otherwise.
    """
    prm = x.params
    prm.require_nondyadic("square_class")
    if x.is_zero():
        return prm.zero(), prm.one()
    _require_resolved(x, "square_class")
    nonsquare = legendre(x.leading_digit(), prm.p) == -1
    rep = prm.eps().shift(x.ord) if nonsquare else prm.uniformizer_pow(x.ord)
    witness = hensel_sqrt(x / rep)
    assert witness is not None
    return rep, witness


def square_class_label(x: FieldElement):
    """Hashable label of the square class: ('zero',) or (ord, is_eps_class)."""
    if x.is_zero():
        return ("zero",)
    _require_resolved(x, "square_class_label")
    return (x.ord, legendre(x.leading_digit(), x.params.p) == -1)


def nonsquare_unit(params: FieldParams) -> FieldElement:
    """The fixed nonsquare unit eps (lift of the smallest nonsquare digit)."""
    return params.eps()
