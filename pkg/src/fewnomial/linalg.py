"""Exact rational linear algebra.

Everything here works on :class:`fractions.Fraction` entries.  Eliminations
are fraction-free (Bareiss) on rows cleared of denominators, so intermediate
growth stays polynomial.  Pivots are the first nonzero entry in a column.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence


class LinAlgError(ValueError):
    pass


class ShapeError(LinAlgError):
    pass


class SingularMatrixError(LinAlgError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"singular system: rank {rank} < {size}")
        self.rank = rank


def as_fraction(x) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings exactly (floats are rejected)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ShapeError("ragged matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(tuple(tuple(as_fraction(x) for x in r) for r in rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "RationalMatrix":
        if not cols:
            raise ShapeError("no columns")
        return cls.from_rows(zip(*cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.entries)

    def submatrix(self, columns: Sequence[int]) -> "RationalMatrix":
        """Columns picked by 0-based index, in the given order."""
        return RationalMatrix(tuple(tuple(r[j] for j in columns) for r in self.entries))

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries)))

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            oc = other.transpose().entries
            return RationalMatrix(
                tuple(tuple(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in oc) for r in self.entries)
            )
        vec = tuple(as_fraction(x) for x in other)
        if len(vec) != self.cols:
            raise ShapeError(f"cannot multiply {self.shape} by a vector of length {len(vec)}")
        return tuple(sum((a * b for a, b in zip(r, vec)), Fraction(0)) for r in self.entries)

    def scale_columns(self, factors: Sequence) -> "RationalMatrix":
        f = [as_fraction(x) for x in factors]
        return RationalMatrix(tuple(tuple(a * s for a, s in zip(r, f)) for r in self.entries))

    def with_ones_row(self) -> "RationalMatrix":
        """Prepend a row of ones (the affine lift of a point configuration)."""
        return RationalMatrix((tuple(Fraction(1) for _ in range(self.cols)),) + self.entries)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_fraction(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "RationalMatrix":
        m = cls.from_rows(data["entries"])
        if m.rows != data.get("rows", m.rows) or m.cols != data.get("cols", m.cols):
            raise ShapeError("declared shape does not match entries")
        return m

    def to_floats(self) -> list[list[float]]:
        return [[float(x) for x in r] for r in self.entries]


def _rows(m) -> list[list[Fraction]]:
    if isinstance(m, RationalMatrix):
        return [list(r) for r in m.entries]
    return [[as_fraction(x) for x in r] for r in m]


def _clear_denominators(rows: list[list[Fraction]]) -> tuple[list[list[int]], list[int]]:
    ints, scales = [], []
    for r in rows:
        s = lcm(*(x.denominator for x in r)) if r else 1
        ints.append([int(x * s) for x in r])
        scales.append(s)
    return ints, scales


def _bareiss(a: list[list[int]]) -> tuple[list[list[int]], list[int], int]:
    """In-place fraction-free row echelon form.

    Returns the echelon rows, the pivot columns and the permutation sign.
    Every division below is exact.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    pivots: list[int] = []
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nrows):
            ai = a[i]
            f = ai[c]
            for j in range(c + 1, ncols):
                ai[j] = (piv * ai[j] - f * a[r][j]) // prev
            ai[c] = 0
        # rows above r+1 that were skipped for zero columns keep their scale;
        # Bareiss needs the divisor to be the last pivot used
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots, sign


def determinant(m) -> Fraction:
    rows = _rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    ints, scales = _clear_denominators(rows)
    ech, pivots, sign = _bareiss(ints)
    if len(pivots) < n:
        return Fraction(0)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * ech[n - 1][n - 1], denom)


def rank(m) -> int:
    rows = _rows(m)
    if not rows or not rows[0]:
        return 0
    ints, _ = _clear_denominators(rows)
    return len(_bareiss(ints)[1])


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    ints, _ = _clear_denominators(rows)
    ech, pivots, _ = _bareiss(ints)
    red = [[Fraction(x) for x in ech[i]] for i in range(len(pivots))]
    for i, c in enumerate(pivots):
        p = red[i][c]
        red[i] = [x / p for x in red[i]]
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def kernel_basis(m) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel, one vector per free column (that entry is 1)."""
    rows = _rows(m)
    if not rows:
        raise ShapeError("empty matrix")
    ncols = len(rows[0])
    red, pivots = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(tuple(v))
    return basis


def solve(m, b) -> tuple[Fraction, ...]:
    """Unique solution of ``m x = b`` for square nonsingular ``m``."""
    rows = _rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("solve needs a square matrix")
    rhs = [as_fraction(x) for x in b]
    if len(rhs) != n:
        raise ShapeError("right-hand side has the wrong length")
    aug = [r + [v] for r, v in zip(rows, rhs)]
    red, pivots = _rref(aug)
    piv_in_a = [c for c in pivots if c < n]
    if len(piv_in_a) < n:
        raise SingularMatrixError(len(piv_in_a), n)
    return tuple(red[i][n] for i in range(n))


def inverse(m) -> RationalMatrix:
    rows = _rows(m)
    n = len(rows)
    cols = [solve(rows, [int(i == j) for i in range(n)]) for j in range(n)]
    return RationalMatrix.from_columns(cols)


def signed_minors(m) -> list[Fraction]:
    """The values ``(-1)^i minor(M, i)`` for ``i = 1..d+1`` of a d x (d+1) matrix."""
    rows = _rows(m)
    d = len(rows)
    if d == 0 or any(len(r) != d + 1 for r in rows):
        raise ShapeError("signed minors need a d x (d+1) matrix")
    out = []
    for i in range(1, d + 2):
        sub = [r[: i - 1] + r[i:] for r in rows]
        out.append((-1) ** i * determinant(sub))
    return out


# ---------------------------------------------------------------------------
# exact LP feasibility


@dataclass(frozen=True)
class LinearProgram:
    """Constraints ``<a, x> >= b`` over free rational variables."""

    nvars: int
    constraints: tuple[tuple[tuple[Fraction, ...], Fraction], ...]

    @classmethod
    def from_pairs(cls, nvars: int, pairs: Iterable[tuple[Sequence, object]]) -> "LinearProgram":
        cons = []
        for a, b in pairs:
            a = tuple(as_fraction(x) for x in a)
            if len(a) != nvars:
                raise ShapeError("constraint has the wrong number of coefficients")
            cons.append((a, as_fraction(b)))
        return cls(nvars, tuple(cons))

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        return all(sum((ai * xi for ai, xi in zip(a, x)), Fraction(0)) >= b for a, b in self.constraints)


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    point: tuple[Fraction, ...] | None = None
    # Farkas multipliers y >= 0 with sum y_i a_i = 0 and sum y_i b_i > 0
    certificate: tuple[Fraction, ...] | None = None

    def __bool__(self):
        return self.feasible


def check_farkas(lp: LinearProgram, y: Sequence[Fraction]) -> bool:
    if len(y) != len(lp.constraints) or any(v < 0 for v in y):
        return False
    combo = [Fraction(0)] * lp.nvars
    rhs = Fraction(0)
    for v, (a, b) in zip(y, lp.constraints):
        for j in range(lp.nvars):
            combo[j] += v * a[j]
        rhs += v * b
    return all(c == 0 for c in combo) and rhs > 0


def lp_feasible(lp: LinearProgram) -> LPResult:
    """Phase-1 simplex with Bland's rule, exact throughout.

    Standard form: x = x+ - x-, a.x - s = b, rows negated where b < 0, one
    artificial per row.  Minimises the sum of artificials.
    """
    m = len(lp.constraints)
    n = lp.nvars
    if m == 0:
        return LPResult(True, tuple(Fraction(0) for _ in range(n)))
    # columns: x+ (n), x- (n), slack (m), artificial (m)
    ncol = 2 * n + 2 * m
    art0 = 2 * n + m
    tab: list[list[Fraction]] = []
    flips = []
    for i, (a, b) in enumerate(lp.constraints):
        sgn = -1 if b < 0 else 1
        flips.append(sgn)
        row = [Fraction(0)] * (ncol + 1)
        for j in range(n):
            row[j] = sgn * a[j]
            row[n + j] = -sgn * a[j]
        row[2 * n + i] = Fraction(-sgn)
        row[art0 + i] = Fraction(1)
        row[ncol] = sgn * b
        tab.append(row)
    basis = [art0 + i for i in range(m)]
    cost = [Fraction(0)] * art0 + [Fraction(1)] * m

    def reduced_costs():
        rc = list(cost) + [Fraction(0)]
        for i, bv in enumerate(basis):
            cb = cost[bv]
            if cb:
                rc = [r - cb * t for r, t in zip(rc, tab[i])]
        return rc

    rc = reduced_costs()
    for _ in range(100000):
        enter = next((j for j in range(ncol) if rc[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][ncol] / tab[i][enter]
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise RuntimeError("phase-1 LP reported unbounded; this cannot happen")
        r = best[1]
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        f = rc[enter]
        rc = [x - f * y for x, y in zip(rc, tab[r])]
        basis[r] = enter
    else:
        raise RuntimeError("simplex iteration limit reached")

    objective = -rc[ncol]
    if objective == 0:
        vals = [Fraction(0)] * ncol
        for i, bv in enumerate(basis):
            vals[bv] = tab[i][ncol]
        x = tuple(vals[j] - vals[n + j] for j in range(n))
        assert lp.satisfied_by(x)
        return LPResult(True, x)

    # duals y = c_B B^{-1}; the artificial columns of the final tableau hold B^{-1}
    y = []
    for i in range(m):
        col = art0 + i
        y.append(sum((cost[bv] * tab[k][col] for k, bv in enumerate(basis)), Fraction(0)))
    cert = tuple(flips[i] * y[i] for i in range(m))
    assert check_farkas(lp, cert)
    return LPResult(False, certificate=cert)
