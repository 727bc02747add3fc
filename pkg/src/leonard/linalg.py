"""Dense square matrices over exact scalars.

Also holds the two Askey-Wilson computations that need matrices: the
residuals of the relations for a given coefficient tuple, and the linear
solve that recovers the tuple from a matrix pair.  The solve never looks at
parameter arrays, so it serves as an independent check on the closed-form
coefficient formulas.
"""

from __future__ import annotations

from typing import Sequence

from .aw_relations import AW_NAMES, AwCoefficients
from .errors import DimensionMismatch, Inconsistent, ParseError, Underdetermined
from .exact_field import Fraction, Scalar, as_scalar, format_scalar, parse_scalar


class Matrix:
    """Immutable square matrix; supports ``+``, ``-``, ``@`` and scalar ``*``."""

    __slots__ = ("_rows",)

    def __init__(self, rows: Sequence[Sequence]):
        rows = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("matrix order must be at least 1")
        if any(len(row) != n for row in rows):
            raise DimensionMismatch(f"matrix is not square: row lengths {[len(r) for r in rows]}")
        self._rows = rows

    @property
    def order(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple:
        return self._rows

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._rows)
        return f"Matrix([{body}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def _check(self, other: Matrix) -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected a Matrix, got {type(other).__name__}")
        if other.order != self.order:
            raise DimensionMismatch(f"orders differ: {self.order} vs {other.order}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self._rows])

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        cols = list(zip(*other._rows))
        return Matrix([[_dot(r, c) for c in cols] for r in self._rows])

    def __mul__(self, c) -> Matrix:
        if isinstance(c, Matrix):
            return NotImplemented
        c = as_scalar(c)
        return Matrix([[c * a for a in r] for r in self._rows])

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._rows for x in row)

    def first_nonzero(self):
        """``(row, col, value)`` of the first nonzero entry in row-major order, or None."""
        for i, row in enumerate(self._rows):
            for j, x in enumerate(row):
                if x != 0:
                    return i, j, x
        return None

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self._rows)))

    def to_json(self) -> dict:
        return {"order": self.order, "entries": [[format_scalar(x) for x in r] for r in self._rows]}

    @classmethod
    def from_json(cls, obj: dict, field: str = "rational") -> Matrix:
        if not isinstance(obj, dict) or "entries" not in obj:
            raise ParseError("matrix must be a JSON object with 'entries'")
        entries = obj["entries"]
        if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
            raise ParseError("matrix 'entries' must be a list of rows")
        m = cls([[parse_scalar(x, field) for x in row] for row in entries])
        if "order" in obj and obj["order"] != m.order:
            raise DimensionMismatch(f"declared order {obj['order']} but {m.order} rows given")
        return m


def _dot(r, c):
    total = Fraction(0)
    for a, b in zip(r, c):
        if a and b:
            total = total + a * b
    return total


def identity(n: int) -> Matrix:
    return Matrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])


def zeros(n: int) -> Matrix:
    return Matrix([[Fraction(0)] * n for _ in range(n)])


def mat_add(x: Matrix, y: Matrix) -> Matrix:
    return x + y


def mat_sub(x: Matrix, y: Matrix) -> Matrix:
    return x - y


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return x @ y


def scalar_mul(c, x: Matrix) -> Matrix:
    return c * x


def is_irreducible_tridiagonal(x: Matrix) -> bool:
    n = x.order
    for i in range(n):
        for j in range(n):
            off = abs(i - j)
            if off > 1 and x[i, j] != 0:
                return False
            if off == 1 and x[i, j] == 0:
                return False
    return True


def _relation_terms(a: Matrix, b: Matrix):
    """Products appearing in the relations, keyed for reuse."""
    aa, bb = a @ a, b @ b
    ab, ba = a @ b, b @ a
    return {
        "A": a, "B": b, "AA": aa, "BB": bb, "AB": ab, "BA": ba,
        "AAB": aa @ b, "BAA": b @ aa, "ABA": ab @ a,
        "BBA": bb @ a, "ABB": a @ bb, "BAB": ba @ b,
    }


def aw_residuals(a: Matrix, a_star: Matrix, k: AwCoefficients) -> tuple[Matrix, Matrix]:
    """Left side minus right side of each relation; both zero iff (a, a_star) satisfies k."""
    a._check(a_star)
    p = _relation_terms(a, a_star)
    one = identity(a.order)
    b, g, gs, r, rs, w, e, es = k.as_tuple()
    first = (p["AAB"] - b * p["ABA"] + p["BAA"] - g * (p["AB"] + p["BA"]) - r * p["B"]
             - gs * p["AA"] - w * p["A"] - e * one)
    second = (p["BBA"] - b * p["BAB"] + p["ABB"] - gs * (p["BA"] + p["AB"]) - rs * p["A"]
              - g * p["BB"] - w * p["B"] - es * one)
    return first, second


def solve_linear(rows: list[list], rhs: list) -> list:
    """Unique solution of ``rows @ x = rhs`` by exact Gauss-Jordan elimination.

    Raises Inconsistent when there is no solution and Underdetermined when
    there are infinitely many.
    """
    m = [list(r) + [v] for r, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        lead = m[top][col]
        m[top] = [x / lead for x in m[top]]
        for i in range(len(m)):
            if i != top and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[top])]
        pivots.append(col)
        top += 1
    for i in range(top, len(m)):
        if m[i][ncols] != 0:
            raise Inconsistent("the linear system has no solution", {"rank": top})
    if top < ncols:
        free = [c for c in range(ncols) if c not in pivots]
        raise Underdetermined(
            f"solution space has dimension {len(free)}", {"rank": top, "free_columns": free}
        )
    return [m[i][ncols] for i in range(ncols)]


def solve_aw_coefficients(a: Matrix, a_star: Matrix, pinned_beta: Scalar | None = None) -> AwCoefficients:
    """Recover the Askey-Wilson tuple satisfied by ``(a, a_star)``.

    Every entry of both relations is one linear equation in the eight
    coefficients.  The tuple is unique for order >= 4; for order 3 beta has to
    be pinned; for order <= 2 the solve always reports Underdetermined.
    """
    a._check(a_star)
    n = a.order
    if n <= 2:
        raise Underdetermined(f"order {n}: several coefficients can be chosen freely", {"order": n})
    p = _relation_terms(a, a_star)
    one = identity(n)
    zero = zeros(n)
    # column matrices per unknown (beta, gamma, gamma*, rho, rho*, omega, eta, eta*)
    first_cols = [p["ABA"], p["AB"] + p["BA"], p["AA"], p["B"], zero, p["A"], one, zero]
    first_rhs = p["AAB"] + p["BAA"]
    second_cols = [p["BAB"], p["BB"], p["BA"] + p["AB"], zero, p["A"], p["B"], zero, one]
    second_rhs = p["BBA"] + p["ABB"]

    rows, rhs = [], []
    for cols, target in ((first_cols, first_rhs), (second_cols, second_rhs)):
        for i in range(n):
            for j in range(n):
                row = [c[i, j] for c in cols]
                value = target[i, j]
                if pinned_beta is not None:
                    value = value - as_scalar(pinned_beta) * row[0]
                    row = row[1:]
                rows.append(row)
                rhs.append(value)
    try:
        x = solve_linear(rows, rhs)
    except Underdetermined as exc:
        names = AW_NAMES[1:] if pinned_beta is not None else AW_NAMES
        free = [names[c] for c in exc.detail["free_columns"]]
        raise Underdetermined(f"{exc.message}; free coefficients: {', '.join(free)}",
                              {"free": free}) from None
    except Inconsistent as exc:
        raise Inconsistent("the pair satisfies no Askey-Wilson relations", exc.detail) from None
    if pinned_beta is not None:
        x = [as_scalar(pinned_beta)] + x
    return AwCoefficients(*x)
