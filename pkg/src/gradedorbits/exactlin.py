"""Exact integer and rational linear algebra.

Everything in this package computes over Z or Q with arbitrary precision;
there is no floating point anywhere.  All values are immutable after
construction, so they are safe to share across threads.

The shared matrix text format used by the CLI and the case fixtures writes
rows separated by ';' and entries by ',', e.g. ``"0,1;0,0"``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd


class CompositeCharacteristic(ValueError):
    """Raised when a field characteristic is neither 0 nor prime."""


class NotNilpotent(ValueError):
    """Raised when a matrix expected to be nilpotent is not."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# integer matrices


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        tup = tuple(tuple(int(x) for x in row) for row in rows)
        if not tup:
            return IntMatrix(0, 0, ())
        ncols = len(tup[0])
        if any(len(r) != ncols for r in tup):
            raise ValueError("ragged rows")
        return IntMatrix(len(tup), ncols, tup)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def zeros(r: int, c: int) -> "IntMatrix":
        return IntMatrix(r, c, tuple((0,) * c for _ in range(r)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = tuple(zip(*other.entries)) if other.entries else ()
        out = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.entries
        )
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.entries, other.entries)
            ),
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(
            self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries)
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(a == 0 for row in self.entries for a in row)

    def diagonal(self) -> tuple:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def is_diagonal(self) -> bool:
        return all(
            self.entries[i][j] == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )


def parse_matrix_text(text: str) -> IntMatrix:
    """Parse the shared ';'/',' matrix text format."""
    rows = [r for r in text.strip().split(";")]
    return IntMatrix.from_rows([[int(x) for x in row.split(",")] for row in rows])


def format_matrix_text(m: IntMatrix) -> str:
    return ";".join(",".join(str(a) for a in row) for row in m.entries)


def det_int(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SNFResult:
    """Diagonalisation U*M*V = diag(invariant_factors), U and V unimodular."""

    invariant_factors: tuple
    transform_left: IntMatrix
    transform_right: IntMatrix


def smith_normal_form(m: IntMatrix) -> SNFResult:
    """Smith normal form by elementary row/column reduction.

    Pivots are chosen by smallest absolute value.  A repair pass restores the
    divisibility chain d1 | d2 | ... whenever diagonalisation breaks it.
    Arbitrary-precision integers keep intermediate growth exact.
    """
    r, c = m.rows, m.cols
    a = [list(row) for row in m.entries]
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_addmul(i, j, q):
        # row i += q * row j
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def col_addmul(i, j, q):
        # col i += q * col j
        for row in a:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    k = min(r, c)

    def diagonalize():
        for t in range(k):
            while True:
                pivot = None
                best = None
                for i in range(t, r):
                    for j in range(t, c):
                        x = a[i][j]
                        if x != 0 and (best is None or abs(x) < best):
                            best = abs(x)
                            pivot = (i, j)
                if pivot is None:
                    return
                pi, pj = pivot
                if pi != t:
                    row_swap(pi, t)
                if pj != t:
                    col_swap(pj, t)
                clean = True
                for i in range(t + 1, r):
                    if a[i][t] != 0:
                        q = a[i][t] // a[t][t]
                        row_addmul(i, t, -q)
                        if a[i][t] != 0:
                            clean = False
                for j in range(t + 1, c):
                    if a[t][j] != 0:
                        q = a[t][j] // a[t][t]
                        col_addmul(j, t, -q)
                        if a[t][j] != 0:
                            clean = False
                if clean:
                    break
            if a[t][t] < 0:
                row_neg(t)

    diagonalize()
    # repair the divisibility chain
    while True:
        # push zero diagonal entries to the end
        for i in range(k):
            if a[i][i] == 0:
                for j in range(i + 1, k):
                    if a[j][j] != 0:
                        row_swap(i, j)
                        col_swap(i, j)
                        break
        bad = None
        for i in range(k - 1):
            di, dj = a[i][i], a[i + 1][i + 1]
            if di != 0 and dj % di != 0:
                bad = i
                break
        if bad is None:
            break
        col_addmul(bad, bad + 1, 1)
        diagonalize()

    factors = tuple(a[i][i] for i in range(k))
    return SNFResult(
        factors,
        IntMatrix.from_rows(u),
        IntMatrix.from_rows(v),
    )


def invariant_factors(m: IntMatrix) -> tuple:
    return smith_normal_form(m).invariant_factors


def prime_factors(n: int) -> frozenset:
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return frozenset(out)


def torsion_primes_of_quotient(rows, ambient: int) -> frozenset:
    """Primes dividing the torsion of Z^ambient modulo the row span."""
    rows = [tuple(r) for r in rows]
    if not rows:
        return frozenset()
    facs = invariant_factors(IntMatrix.from_rows(rows))
    out = set()
    for d in facs:
        if d not in (0, 1):
            out |= prime_factors(d)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Hermite form and integer span membership (used for Z-closure tests)


def hermite_rows(rows) -> tuple:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns a canonical tuple of echelon rows with positive pivots; entries
    above a pivot are reduced into [0, pivot).
    """
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    ncols = len(work[0])
    out = []
    for col in range(ncols):
        while True:
            nz = sorted(
                (r for r in work if r[col] != 0), key=lambda r: abs(r[col])
            )
            if len(nz) <= 1:
                break
            pivot = nz[0]
            for r in nz[1:]:
                q = r[col] // pivot[col]
                for k in range(ncols):
                    r[k] -= q * pivot[k]
        nz = [r for r in work if r[col] != 0]
        if nz:
            pivot = nz[0]
            work.remove(pivot)
            if pivot[col] < 0:
                pivot = [-x for x in pivot]
            out.append(pivot)
        work = [r for r in work if any(r)]
    for idx in range(len(out) - 1, -1, -1):
        row = out[idx]
        j = next(i for i, x in enumerate(row) if x != 0)
        for above in range(idx):
            q = out[above][j] // row[j]
            if q:
                out[above] = [a - q * b for a, b in zip(out[above], row)]
    return tuple(tuple(r) for r in out)


def _xgcd(a: int, b: int):
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def in_hermite_span(hnf, vec) -> bool:
    """Whether ``vec`` lies in the lattice given by Hermite rows ``hnf``."""
    v = list(vec)
    for row in hnf:
        j = next(i for i, x in enumerate(row) if x != 0)
        if v[j] != 0:
            if v[j] % row[j] != 0:
                return False
            q = v[j] // row[j]
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


# ---------------------------------------------------------------------------
# rational elimination (Gaussian, exact)


def _rref(rows):
    """Reduced row echelon form over Q.  Returns (rows, pivot_columns)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, nrows):
            if mat[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        pv = mat[rank][col]
        mat[rank] = [x / pv for x in mat[rank]]
        for i in range(nrows):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat, pivots


def _primitive(vec):
    """Clear denominators and divide by the content; first nonzero > 0."""
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def nullspace(rows):
    """Primitive integer basis of the right kernel of a rational matrix."""
    if not rows:
        return ()
    ncols = len(rows[0])
    mat, pivots = _rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [Fraction(0)] * ncols
        vec[j] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -mat[r][j]
        basis.append(_primitive(vec))
    return tuple(basis)


def solve_linear(rows, rhs):
    """One exact solution of ``rows * x = rhs`` over Q, or None.

    Free variables are set to 0, which makes the answer deterministic.
    """
    if not rows:
        return ()
    ncols = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    mat, pivots = _rref(aug)
    if ncols in pivots:
        return None
    sol = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = mat[r][ncols]
    return tuple(sol)


def rank_rational(rows) -> int:
    _, pivots = _rref(rows) if rows else ([], [])
    return len(pivots)


def _rref_mod_p(rows, p):
    mat = [[x % p for x in row] for row in rows]
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(rank, nrows):
            if mat[i][col] % p != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(nrows):
            if i != rank and mat[i][col] % p != 0:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat, pivots


def rank_and_kernel(m: IntMatrix, field_char: int):
    """Rank and a right-kernel basis over Q (char 0) or F_p (char p).

    Over char 0 the kernel vectors are primitive integer vectors; over F_p
    they have entries in [0, p).
    """
    if field_char == 0:
        rows = [list(r) for r in m.entries]
        if not rows:
            return 0, tuple(
                tuple(1 if i == j else 0 for j in range(m.cols))
                for i in range(m.cols)
            )
        mat, pivots = _rref(rows)
        kern = nullspace(rows)
        return len(pivots), kern
    if not is_prime(field_char):
        raise CompositeCharacteristic(f"{field_char} is neither 0 nor prime")
    p = field_char
    rows = [list(r) for r in m.entries]
    if not rows:
        return 0, tuple(
            tuple(1 if i == j else 0 for j in range(m.cols)) for i in range(m.cols)
        )
    mat, pivots = _rref_mod_p(rows, p)
    ncols = m.cols
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        vec = [0] * ncols
        vec[j] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = (-mat[r][j]) % p
        basis.append(tuple(vec))
    return len(pivots), tuple(basis)


# ---------------------------------------------------------------------------
# rational matrices: integer matrix plus a common denominator


@dataclass(frozen=True)
class RatMatrix:
    """Rational matrix stored as integer entries over one denominator."""

    rows: int
    cols: int
    num: tuple
    den: int

    @staticmethod
    def from_rows(rows, den: int = 1) -> "RatMatrix":
        flat = []
        denom = int(den)
        ints = []
        for row in rows:
            out = []
            for x in row:
                f = Fraction(x)
                out.append(f)
            ints.append(out)
        for row in ints:
            for f in row:
                denom = denom * f.denominator // gcd(denom, f.denominator)
        tup = tuple(tuple(int(f * denom) for f in row) for row in ints)
        m = RatMatrix(len(tup), len(tup[0]) if tup else 0, tup, denom)
        return m._normalized()

    @staticmethod
    def from_int(m: IntMatrix) -> "RatMatrix":
        return RatMatrix(m.rows, m.cols, m.entries, 1)

    @staticmethod
    def zeros(r: int, c: int) -> "RatMatrix":
        return RatMatrix(r, c, tuple((0,) * c for _ in range(r)), 1)

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix.from_int(IntMatrix.identity(n))

    def _normalized(self) -> "RatMatrix":
        g = abs(self.den)
        for row in self.num:
            for x in row:
                g = gcd(g, abs(x))
                if g == 1:
                    break
        if g in (0, 1):
            g = 1
        sign = 1 if self.den > 0 else -1
        if g == 1 and sign == 1:
            return self
        return RatMatrix(
            self.rows,
            self.cols,
            tuple(tuple(sign * x // g for x in row) for row in self.num),
            sign * self.den // g,
        )

    def entry(self, i: int, j: int) -> Fraction:
        return Fraction(self.num[i][j], self.den)

    def flat(self) -> tuple:
        return tuple(
            Fraction(x, self.den) for row in self.num for x in row
        )

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        d = self.den * other.den // gcd(self.den, other.den)
        a, b = d // self.den, d // other.den
        ent = tuple(
            tuple(a * x + b * y for x, y in zip(r1, r2))
            for r1, r2 in zip(self.num, other.num)
        )
        return RatMatrix(self.rows, self.cols, ent, d)._normalized()

    def __neg__(self) -> "RatMatrix":
        return RatMatrix(
            self.rows, self.cols, tuple(tuple(-x for x in r) for r in self.num), self.den
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        return self + (-other)

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = tuple(zip(*other.num)) if other.num else ()
        ent = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in ot)
            for row in self.num
        )
        return RatMatrix(self.rows, other.cols, ent, self.den * other.den)._normalized()

    def scale(self, c) -> "RatMatrix":
        f = Fraction(c)
        ent = tuple(tuple(x * f.numerator for x in row) for row in self.num)
        return RatMatrix(self.rows, self.cols, ent, self.den * f.denominator)._normalized()

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows, tuple(zip(*self.num)), self.den)

    def trace(self) -> Fraction:
        return Fraction(sum(self.num[i][i] for i in range(self.rows)), self.den)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.num for x in row)

    def is_integer(self) -> bool:
        return self.den == 1

    def to_int_matrix(self) -> IntMatrix:
        if self.den != 1:
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols, self.num)

    def support(self) -> frozenset:
        return frozenset(
            (i, j)
            for i in range(self.rows)
            for j in range(self.cols)
            if self.num[i][j] != 0
        )

    def text(self) -> str:
        if self.den == 1:
            return ";".join(",".join(str(x) for x in row) for row in self.num)
        return ";".join(
            ",".join(str(Fraction(x, self.den)) for x in row) for row in self.num
        )


def bracket(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    """Lie bracket [a, b] = ab - ba."""
    return a * b - b * a


def rat_inverse(m: RatMatrix) -> RatMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    cols = []
    rows = [[m.entry(i, j) for j in range(n)] for i in range(n)]
    for k in range(n):
        rhs = [Fraction(1) if i == k else Fraction(0) for i in range(n)]
        sol = solve_linear(rows, rhs)
        if sol is None:
            raise ValueError("singular matrix")
        cols.append(sol)
    return RatMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])


def matrix_power_rank_sequence(num_rows, dim: int):
    """Ranks of N^0, N^1, ..., N^dim for an integer matrix N."""
    power = IntMatrix.identity(dim)
    n = IntMatrix.from_rows(num_rows)
    ranks = []
    for _ in range(dim + 1):
        ranks.append(rank_rational([list(r) for r in power.entries]))
        power = power * n
    return ranks, power


# ---------------------------------------------------------------------------
# partitions


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive integers."""

    parts: tuple

    @staticmethod
    def of(parts) -> "Partition":
        tup = tuple(int(x) for x in parts)
        if any(x <= 0 for x in tup):
            raise ValueError("parts must be positive")
        if any(tup[i] < tup[i + 1] for i in range(len(tup) - 1)):
            raise ValueError("parts must be weakly decreasing")
        return Partition(tup)

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def transpose(self) -> "Partition":
        if not self.parts:
            return Partition(())
        out = []
        for k in range(1, self.parts[0] + 1):
            out.append(sum(1 for p in self.parts if p >= k))
        return Partition(tuple(out))

    def label(self) -> str:
        """Exponential notation, e.g. [2,1^2]."""
        if not self.parts:
            return "[]"
        pieces = []
        for value, grp in itertools.groupby(self.parts):
            count = len(list(grp))
            pieces.append(f"{value}^{count}" if count > 1 else f"{value}")
        return "[" + ",".join(pieces) + "]"

    @staticmethod
    def all_of(n: int):
        """All partitions of n in descending lexicographic order."""

        def gen(remaining, bound):
            if remaining == 0:
                yield ()
                return
            for first in range(min(remaining, bound), 0, -1):
                for rest in gen(remaining - first, first):
                    yield (first,) + rest

        return tuple(Partition(p) for p in gen(n, n))


def jordan_matrix(partition: Partition) -> IntMatrix:
    """Block-diagonal nilpotent Jordan matrix with the given block sizes."""
    n = partition.weight
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for part in partition.parts:
        for i in range(part - 1):
            rows[offset + i][offset + i + 1] = 1
        offset += part
    return IntMatrix.from_rows(rows)


def nilpotent_jordan_partition(n) -> Partition:
    """Jordan type of a nilpotent rational matrix.

    The number of parts >= k equals rank(N^(k-1)) - rank(N^k); denominators
    do not change ranks of powers, so the integer numerator matrix is used.
    """
    if isinstance(n, RatMatrix):
        mat = n
    elif isinstance(n, IntMatrix):
        mat = RatMatrix.from_int(n)
    else:
        mat = RatMatrix.from_rows(n)
    if mat.rows != mat.cols:
        raise ValueError("matrix must be square")
    dim = mat.rows
    ranks, final = matrix_power_rank_sequence(mat.num, dim)
    if not final.is_zero():
        raise NotNilpotent("matrix is not nilpotent")
    transpose_parts = []
    for k in range(1, dim + 1):
        count = ranks[k - 1] - ranks[k]
        if count == 0:
            break
        transpose_parts.append(count)
    if not transpose_parts:
        return Partition(())
    return Partition(tuple(transpose_parts)).transpose()
