"""Arithmetic in the prime residue field F_p, quadratic Gauss sums, and the
matrix-counting formulas over F_q that feed the orbital error bounds.

Gauss sums are returned both as floating complex numbers (direct summation)
and symbolically as sign * rho_q * sqrt(q), where rho_q is 1 for q = 1 mod 4
and i for q = 3 mod 4.  The symbolic form is exact and feeds CharValue
arithmetic without floating drift.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DyadicField, TooLarge

ENUM_GUARD = 10**8


@dataclass(frozen=True)
class ResidueElement:
    """An element of F_p, stored as its canonical representative in [0, p)."""

    value: int
    p: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError(f"residue modulus must be >= 2, got {self.p}")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "ResidueElement":
        if isinstance(other, ResidueElement):
            if other.p != self.p:
                raise ValueError("mixed residue moduli")
            return other
        return ResidueElement(int(other), self.p)

    def __add__(self, other):
        o = self._coerce(other)
        return ResidueElement(self.value + o.value, self.p)

    def __sub__(self, other):
        o = self._coerce(other)
        return ResidueElement(self.value - o.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return ResidueElement(self.value * o.value, self.p)

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return ResidueElement(-self.value, self.p)

    def inverse(self) -> "ResidueElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in F_p")
        return ResidueElement(pow(self.value, self.p - 2, self.p), self.p)

    def is_zero(self) -> bool:
        return self.value == 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"ResidueElement({self.value}, F_{self.p})"


def legendre(a: ResidueElement | int, p: int | None = None) -> int:
    """Quadratic character of F_p extended by 0 at 0: +1 on nonzero squares,
    -1 on nonsquares (Euler's criterion)."""
    if isinstance(a, ResidueElement):
        value, p = a.value, a.p
    else:
        if p is None:
            raise TypeError("legendre(int, p) needs the modulus")
        value = a % p
    if value == 0:
        return 0
    e = pow(value, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def additive_character(a: ResidueElement | int, x: ResidueElement | int, p: int | None = None) -> complex:
    """tau_a(x) = exp(2*pi*i*a*x/p); tau_0 is the trivial character."""
    if isinstance(a, ResidueElement):
        p = a.p
        a = a.value
    if isinstance(x, ResidueElement):
        x = x.value
    if p is None:
        raise TypeError("additive_character needs the modulus")
    return cmath.exp(2j * cmath.pi * ((a * x) % p) / p)


def gauss_sum_phase(q: int) -> tuple[complex, str]:
    """The fourth-root-of-unity constant of the quadratic Gauss sum:
    (1, '1') for q = 1 mod 4 and (i, 'i') for q = 3 mod 4."""
    if q % 2 == 0:
        raise DyadicField("gauss_sum_phase needs odd q")
    return (1 + 0j, "1") if q % 4 == 1 else (1j, "i")


@dataclass(frozen=True)
class GaussSumResult:
    """sum_{x in F_p} exp(2*pi*i*a*x^2/p), numerically and as sign*rho*sqrt(p)."""

    complex_value: complex
    sign: int  # +1 or -1
    rho: str  # '1' or 'i'
    p: int

    @property
    def symbolic(self) -> tuple[int, str]:
        return (self.sign, self.rho)


def gauss_sum(a: ResidueElement | int, p: int | None = None) -> GaussSumResult:
    """Direct-summation quadratic Gauss sum for the standard character
    tau(x) = exp(2*pi*i*x/p), twisted by a != 0."""
    if isinstance(a, ResidueElement):
        value, p = a.value, a.p
    else:
        if p is None:
            raise TypeError("gauss_sum(int, p) needs the modulus")
        value = a % p
    if p % 2 == 0:
        raise DyadicField("Gauss sums are computed for odd p only")
    if value == 0:
        raise ValueError("gauss_sum requires a != 0")
    total = sum(cmath.exp(2j * cmath.pi * ((value * x * x) % p) / p) for x in range(p))
    rho_c, rho_s = gauss_sum_phase(p)
    ratio = total / (rho_c * p**0.5)
    sign = 1 if ratio.real > 0 else -1
    if abs(ratio - sign) > 1e-9:
        raise ArithmeticError(f"Gauss sum for p={p}, a={value} is not sign*rho*sqrt(p): {total}")
    return GaussSumResult(total, sign, rho_s, p)


def counting(n: int, r: int, q: int) -> tuple[int, int, Fraction]:
    """Cardinalities behind the Haar sampler and the error bounds:

    * #GL(n, F_q) = prod_{j<n} (q^n - q^j),
    * #S(r x n)   = prod_{w<r} (q^n - q^w)  (full-rank r x n digit matrices),
    * vol(GL(n, O_F)) = prod_{j=1..n} (1 - q^-j) as an exact rational.
    """
    if not (1 <= r <= n):
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    gl_count = 1
    for j in range(n):
        gl_count *= q**n - q**j
    s_count = 1
    for w in range(r):
        s_count *= q**n - q**w
    volume = Fraction(gl_count, q ** (n * n))
    return gl_count, s_count, volume


def _det_mod(rows: list[list[int]], p: int) -> int:
    """Determinant mod p by Gaussian elimination on a small copy."""
    n = len(rows)
    a = [[v % p for v in row] for row in rows]
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det = (det * a[k][k]) % p
        inv = pow(a[k][k], p - 2, p)
        for i in range(k + 1, n):
            if a[i][k]:
                f = (a[i][k] * inv) % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


def enumerate_gl(n: int, q: int):
    """Yield every invertible n x n matrix over F_q exactly once, as a tuple
    of row tuples.  Streaming; total count matches counting(n, n, q)."""
    if q ** (n * n) > ENUM_GUARD:
        raise TooLarge(f"q^(n^2) = {q**(n*n)} exceeds the enumeration guard {ENUM_GUARD}")
    for flat in itertools.product(range(q), repeat=n * n):
        rows = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
        if _det_mod(rows, q) != 0:
            yield tuple(tuple(row) for row in rows)
