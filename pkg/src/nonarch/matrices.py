"""Dense matrices over the field: Smith normal form over the valuation ring
(singular numbers) and symmetric congruence diagonalization, both with
recomposition witnesses in GL(n, O_F).

Elimination entries that cancel to the full digit window are replaced by an
exact zero only when the certified valuation clears the zero threshold
(precision - 2); otherwise PrecisionExhausted propagates to the caller.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from collections import defaultdict
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    NotSymmetric,
    PrecisionExhausted,
)
from .field import FieldElement, FieldParams, ORD_INF, hensel_sqrt, square_class, square_class_label
from .residue import _det_mod, legendre

NEG_INF = -math.inf


class MatF:
    """Immutable dense matrix of FieldElements sharing one FieldParams."""

    __slots__ = ("params", "rows", "cols", "entries")

    def __init__(self, params: FieldParams, rows: int, cols: int, entries):
        entries = tuple(entries)
        if len(entries) != rows * cols:
            raise DimensionMismatch(f"{rows}x{cols} matrix needs {rows*cols} entries")
        for e in entries:
            if e.params != params:
                raise DimensionMismatch("all entries must share FieldParams")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, *args):
        raise AttributeError("MatF is immutable")

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rows(cls, params: FieldParams, rows) -> "MatF":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(params, n, m, [e for r in rows for e in r])

    @classmethod
    def zeros(cls, params: FieldParams, rows: int, cols: int | None = None) -> "MatF":
        cols = rows if cols is None else cols
        z = params.zero()
        return cls(params, rows, cols, [z] * (rows * cols))

    @classmethod
    def identity(cls, params: FieldParams, n: int) -> "MatF":
        one, zero = params.one(), params.zero()
        return cls(params, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, params: FieldParams, diag) -> "MatF":
        diag = list(diag)
        n = len(diag)
        zero = params.zero()
        return cls(params, n, n, [diag[i] if i == j else zero for i in range(n) for j in range(n)])

    # -- access ---------------------------------------------------------------
    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other):
        if not isinstance(other, MatF):
            return NotImplemented
        return (
            self.params == other.params
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"<MatF {self.rows}x{self.cols} over {self.params.spec_string()}>"

    # -- algebra ---------------------------------------------------------------
    def __matmul__(self, other: "MatF") -> "MatF":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = self.params.zero()
                for k in range(self.cols):
                    acc = add_lenient(acc, ri[k] * other[k, j])
                out.append(acc)
        return MatF(self.params, self.rows, other.cols, out)

    def __add__(self, other: "MatF") -> "MatF":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in add")
        return MatF(self.params, self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatF") -> "MatF":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch in sub")
        return MatF(self.params, self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, c: FieldElement) -> "MatF":
        return MatF(self.params, self.rows, self.cols, [c * e for e in self.entries])

    def transpose(self) -> "MatF":
        return MatF(self.params, self.cols, self.rows, [self[j, i] for i in range(self.cols) for j in range(self.rows)])

    @property
    def T(self) -> "MatF":
        return self.transpose()

    def trace(self) -> FieldElement:
        if self.rows != self.cols:
            raise DimensionMismatch("trace needs a square matrix")
        acc = self.params.zero()
        for i in range(self.rows):
            acc = add_lenient(acc, self[i, i])
        return acc

    def det(self) -> FieldElement:
        """Determinant by Gaussian elimination with maximal-|.| pivoting."""
        if self.rows != self.cols:
            raise DimensionMismatch("det needs a square matrix")
        n = self.rows
        w = [[_resolve_entry(e, self.params) for e in row] for row in self.to_lists()]
        acc = self.params.one()
        sign = 1
        for k in range(n):
            piv = _argmin_ord(w, k, n)
            if piv is None:
                return self.params.zero()
            i0, j0 = piv
            if i0 != k:
                w[k], w[i0] = w[i0], w[k]
                sign = -sign
            if j0 != k:
                for r in range(n):
                    w[r][k], w[r][j0] = w[r][j0], w[r][k]
                sign = -sign
            pivot = w[k][k]
            acc = acc * pivot
            inv = pivot.inverse()
            for i in range(k + 1, n):
                if w[i][k].is_zero():
                    continue
                f = w[i][k] * inv
                w[i][k] = self.params.zero()
                for j in range(k + 1, n):
                    w[i][j] = _sub_entry(w[i][j], f * w[k][j], self.params)
        return acc if sign == 1 else -acc

    # -- GL membership ----------------------------------------------------------
    def residue_rows(self):
        """Integer matrix of residues mod pi; requires integral entries."""
        out = []
        for i in range(self.rows):
            out.append([int(e.residue()) for e in self.row(i)])
        return out

    def is_gl(self) -> bool:
        """Membership in GL(n, O_F): integral entries and unit determinant
        (equivalently: invertible residue matrix)."""
        if self.rows != self.cols:
            return False
        if any((not e.is_zero()) and e.ord < 0 for e in self.entries):
            return False
        return _det_mod(self.residue_rows(), self.params.p) != 0

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def agrees(self, other: "MatF") -> bool:
        """Entrywise agreement to the available precision."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        return all(a.agrees(b) for a, b in zip(self.entries, other.entries))

    # -- serialization -------------------------------------------------------------
    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, params: FieldParams, obj: dict) -> "MatF":
        entries = [FieldElement.from_json(params, e) for e in obj["entries"]]
        return cls(params, int(obj["rows"]), int(obj["cols"]), entries)


# ---------------------------------------------------------------------------
# helpers shared by the decompositions
# ---------------------------------------------------------------------------


def _sub_entry(a: FieldElement, b: FieldElement, params: FieldParams) -> FieldElement:
    """a - b, substituting an exact zero when the whole window cancels with a
    certified valuation beyond the zero threshold."""
    try:
        return a - b
    except PrecisionExhausted as exc:
        if exc.guaranteed_ord is not None and exc.guaranteed_ord > params.zero_ord_threshold:
            return params.zero()
        raise


def _add_entry(a: FieldElement, b: FieldElement, params: FieldParams) -> FieldElement:
    try:
        return a + b
    except PrecisionExhausted as exc:
        if exc.guaranteed_ord is not None and exc.guaranteed_ord > params.zero_ord_threshold:
            return params.zero()
        raise


def add_lenient(a: FieldElement, b: FieldElement) -> FieldElement:
    """a + b, turning a fully-cancelled window into the certified vanishing
    value O(pi^g) instead of raising.  Sound inside accumulations: the bound
    survives subsequent additions and products."""
    try:
        return a + b
    except PrecisionExhausted as exc:
        return FieldElement(a.params, exc.guaranteed_ord, None, 0)


def _resolve_entry(e: FieldElement, params: FieldParams) -> FieldElement:
    """Decompositions need every entry either visible or exactly zero; a
    vanishing entry is taken as zero when its certified valuation clears the
    threshold, and is a precision failure otherwise."""
    if not e.is_vanishing():
        return e
    if e.ord > params.zero_ord_threshold:
        return params.zero()
    raise PrecisionExhausted("entry not resolved at working precision", guaranteed_ord=e.ord)


def _argmin_ord(w, k: int, n: int):
    """Position (i, j), i,j >= k, of the entry of maximal |.| (minimal ord);
    lexicographically smallest on ties; None when the block is zero."""
    best = None
    best_ord = ORD_INF
    for i in range(k, n):
        for j in range(k, n):
            e = w[i][j]
            if not e.is_zero() and e.ord < best_ord:
                best_ord = e.ord
                best = (i, j)
    return best


# ---------------------------------------------------------------------------
# Smith normal form over the valuation ring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SNFResult:
    """A = a * diag(pi^-k_1, ..., pi^-k_n) * b with a, b in GL(n, O_F) and the
    non-increasing singular exponents ``sing`` (k_i = -inf encodes a zero)."""

    a: MatF
    sing: tuple
    b: MatF

    def diagonal(self) -> MatF:
        params = self.a.params
        diag = [params.zero() if k == NEG_INF else params.uniformizer_pow(-int(k)) for k in self.sing]
        return MatF.diagonal(params, diag)

    def recompose(self) -> MatF:
        return self.a @ self.diagonal() @ self.b


def smith_normal_form(A: MatF) -> SNFResult:
    """Diagonalize by two-sided GL(O_F) moves: pivot on a maximal-|.| entry,
    move it to the corner and clear its row and column with unit multipliers
    (every quotient by the pivot lies in O_F), then recurse."""
    if A.rows != A.cols:
        raise DimensionMismatch("square matrices only")
    params, n = A.params, A.rows
    w = [[_resolve_entry(e, params) for e in row] for row in A.to_lists()]
    a = MatF.identity(params, n).to_lists()
    b = MatF.identity(params, n).to_lists()
    sing: list = [NEG_INF] * n
    for k in range(n):
        piv = _argmin_ord(w, k, n)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != k:
            w[k], w[i0] = w[i0], w[k]
            for r in range(n):  # a <- a * P swaps columns k, i0
                a[r][k], a[r][i0] = a[r][i0], a[r][k]
        if j0 != k:
            for r in range(n):
                w[r][k], w[r][j0] = w[r][j0], w[r][k]
            b[k], b[j0] = b[j0], b[k]
        pivot = w[k][k]
        inv = pivot.inverse()
        for i in range(k + 1, n):
            if w[i][k].is_zero():
                continue
            f = w[i][k] * inv
            w[i][k] = params.zero()
            for j in range(k + 1, n):
                w[i][j] = _sub_entry(w[i][j], f * w[k][j], params)
            for r in range(n):  # a <- a * (I + f e_{ik}): col k += f * col i
                a[r][k] = a[r][k] + f * a[r][i]
        for j in range(k + 1, n):
            if w[k][j].is_zero():
                continue
            g = w[k][j] * inv
            w[k][j] = params.zero()
            for r in range(n):  # b <- (I + g e_{kj}) b: row k += g * row j
                b[k][r] = b[k][r] + g * b[j][r]
        sing[k] = -pivot.ord
        # fold the pivot's unit part into a: column k of a times unit
        unit = pivot.shift(-pivot.ord)
        for r in range(n):
            a[r][k] = a[r][k] * unit
    return SNFResult(MatF.from_rows(params, a), tuple(sing), MatF.from_rows(params, b))


def singular_numbers(A: MatF) -> tuple:
    """The complete two-sided orbit invariant of A."""
    return smith_normal_form(A).sing


# ---------------------------------------------------------------------------
# symmetric congruence diagonalization (non-dyadic)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymDiagResult:
    """A = g * diag(x_1, ..., x_n) * g^t with g in GL(n, O_F) and each x_i a
    square-class representative (pi^-k, eps*pi^-k, or 0)."""

    g: MatF
    diag_entries: tuple

    def diagonal(self) -> MatF:
        return MatF.diagonal(self.g.params, list(self.diag_entries))

    def recompose(self) -> MatF:
        return self.g @ self.diagonal() @ self.g.transpose()

    def class_labels(self) -> tuple:
        return tuple(square_class_label(x) for x in self.diag_entries)


def _diag_argmin(w, k: int, n: int):
    best, best_ord = None, ORD_INF
    for i in range(k, n):
        e = w[i][i]
        if not e.is_zero() and e.ord < best_ord:
            best_ord, best = e.ord, i
    return best, best_ord


@lru_cache(maxsize=None)
def _eps_sum_of_squares(params: FieldParams) -> tuple[FieldElement, FieldElement]:
    """(a, b) with a^2 + b^2 = eps; exists for every odd p because the circle
    x^2 + y^2 = c has points over F_p for every unit c, and a is a unit, so
    the residue solution lifts."""
    p = params.p
    eps0 = params.nonsquare_unit_digit
    for b0 in range(p):
        c = (eps0 - b0 * b0) % p
        if c != 0 and legendre(c, p) == 1:
            b = params.from_int(b0)
            a = hensel_sqrt(params.from_int(eps0 - b0 * b0))
            return a, b
    raise AssertionError("unreachable: eps is a sum of two squares mod p")


def sym_diagonalize(A: MatF) -> SymDiagResult:
    """Congruence diagonalization: bring a maximal-|.| entry to the diagonal
    (adding one row/column pair to another when only an off-diagonal entry
    attains the maximum, which keeps the value since |2| = 1), clear the
    first row and column by the Schur-complement move, recurse, and reduce
    the diagonal to square-class representatives."""
    params = A.params
    params.require_nondyadic("symmetric diagonalization")
    if A.rows != A.cols:
        raise DimensionMismatch("square matrices only")
    if not A.is_symmetric():
        raise NotSymmetric("input must equal its transpose exactly")
    n = A.rows
    w = [[_resolve_entry(e, params) for e in row] for row in A.to_lists()]
    g = MatF.identity(params, n).to_lists()

    def g_colop(dst: int, src: int, f: FieldElement):
        # g <- g * (I + f e_{src,dst}) : col dst += f * col src
        for r in range(n):
            g[r][dst] = g[r][dst] + f * g[r][src]

    for k in range(n):
        piv = _argmin_ord(w, k, n)
        if piv is None:
            break
        i0, j0 = piv
        min_ord = w[i0][j0].ord
        di, diag_ord = _diag_argmin(w, k, n)
        if di is None or diag_ord > min_ord:
            # off-diagonal maximum: W <- E W E^t with E = I + e_{i0 j0}
            i, j = i0, j0
            for r in range(n):
                w[i][r] = _add_entry(w[i][r], w[j][r], params)
            for r in range(n):
                w[r][i] = _add_entry(w[r][i], w[r][j], params)
            g_colop(j, i, -params.one())  # g <- g * E^{-1} = g * (I - e_{ij})
            di = i
        # move the chosen diagonal pivot to position (k, k)
        if di != k:
            w[k], w[di] = w[di], w[k]
            for r in range(n):
                w[r][k], w[r][di] = w[r][di], w[r][k]
            for r in range(n):
                g[r][k], g[r][di] = g[r][di], g[r][k]
        x = w[k][k]
        inv = x.inverse()
        factors = [params.zero() if w[i][k].is_zero() else w[i][k] * inv for i in range(k + 1, n)]
        # Schur step: after the row pass row_i -= f_i * row_k the eliminated
        # column is zero, so the matching column pass is a no-op on the block.
        for idx, i in enumerate(range(k + 1, n)):
            f = factors[idx]
            if f.is_zero():
                continue
            for j in range(k + 1, n):
                w[i][j] = _sub_entry(w[i][j], f * w[k][j], params)
        for i in range(k + 1, n):  # exact zeros by construction
            w[i][k] = params.zero()
            w[k][i] = params.zero()
        for idx, i in enumerate(range(k + 1, n)):
            if not factors[idx].is_zero():
                g_colop(k, i, factors[idx])

    diag = [w[i][i] for i in range(n)]
    reps = []
    for i, d in enumerate(diag):
        rep, wit = square_class(d)
        reps.append(rep)
        for r in range(n):
            g[r][i] = g[r][i] * wit
    # Canonical form: at most one eps-twisted entry per level.  Two of them
    # are congruent to two plain entries via h = [[a, b], [-b, a]] with
    # a^2 + b^2 = eps (det h = eps, a unit), since h h^t = diag(eps, eps).
    by_level = defaultdict(list)
    for i, rep in enumerate(reps):
        lbl = square_class_label(rep)
        if lbl != ("zero",) and lbl[1]:
            by_level[lbl[0]].append(i)
    a_el, b_el = (None, None)
    for level, idxs in by_level.items():
        while len(idxs) >= 2:
            i, j = idxs.pop(), idxs.pop()
            if a_el is None:
                a_el, b_el = _eps_sum_of_squares(params)
            reps[i] = params.uniformizer_pow(level)
            reps[j] = params.uniformizer_pow(level)
            for r in range(n):
                ci, cj = g[r][i], g[r][j]
                g[r][i] = a_el * ci - b_el * cj
                g[r][j] = b_el * ci + a_el * cj
    # deterministic order: descending |.| (ascending ord), plain class first
    def sort_key(i):
        lbl = square_class_label(reps[i])
        if lbl == ("zero",):
            return (1, 0, 0)
        return (0, lbl[0], 1 if lbl[1] else 0)

    order = sorted(range(n), key=sort_key)
    reps = [reps[i] for i in order]
    g = [[g[r][order[c]] for c in range(n)] for r in range(n)]
    return SymDiagResult(MatF.from_rows(params, g), tuple(reps))
