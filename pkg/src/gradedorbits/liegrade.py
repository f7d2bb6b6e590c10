"""Matrix realizations of sl_n and sp_2n with diagonal cocharacter gradings.

A cocharacter is stored as its integer weight vector w; the grading places
a matrix cell (i, j) in degree w_i - w_j.  On top of the grading this
module builds graded sl2-triples (e in g_n, h in g_0, f in g_-n), the
second grading coming from the triple's semisimple element, the canonical
parabolic/nilradical/Levi attached to a graded nilpotent, and the rigidity
test comparing the two gradings.

Everything is exact; all returned values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactlin import (
    IntMatrix,
    RatMatrix,
    bracket,
    nilpotent_jordan_partition,
    nullspace,
    rat_inverse,
    solve_linear,
)


class BadForm(ValueError):
    """Symplectic form that is not invertible antisymmetric."""


class NoTriple(ValueError):
    """No graded sl2-triple through the given element."""


class NonIntegralWeights(ValueError):
    """Semisimple element with non-integral spectrum (broken triple)."""


class NotSimultaneouslyDiagonal(ValueError):
    """Basis change for h does not commute with the ambient grading."""


@dataclass(frozen=True)
class Cocharacter:
    weights: tuple

    @staticmethod
    def of(weights) -> "Cocharacter":
        return Cocharacter(tuple(int(w) for w in weights))

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class MatrixLieAlgebra:
    kind: str  # "sl" or "sp"
    dim_ambient: int
    basis: tuple  # RatMatrix
    form: IntMatrix | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def contains(self, m: RatMatrix) -> bool:
        if self.kind == "sl":
            return m.trace() == 0
        b = RatMatrix.from_int(self.form)
        return (m.transpose() * b + b * m).is_zero()


@dataclass(frozen=True)
class GradedComponent:
    degree: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class Sl2Triple:
    e: RatMatrix
    h: RatMatrix
    f: RatMatrix

    def bracket_relations_hold(self) -> bool:
        return (
            (bracket(self.h, self.e) - self.e.scale(2)).is_zero()
            and (bracket(self.h, self.f) + self.f.scale(2)).is_zero()
            and (bracket(self.e, self.f) - self.h).is_zero()
        )

    @staticmethod
    def zero(d: int) -> "Sl2Triple":
        z = RatMatrix.zeros(d, d)
        return Sl2Triple(z, z, z)


@dataclass(frozen=True)
class ParabolicDatum:
    chi: Cocharacter
    chi_prime: Cocharacter
    degree: int
    basis_change: RatMatrix
    p_basis: tuple
    n_basis: tuple
    l_basis: tuple
    indicator: IntMatrix  # sign(n) * (n*m - 2*m') per cell
    levi_blocks: tuple  # coordinate classes, first-occurrence order

    @property
    def levi_block_shape(self) -> tuple:
        return tuple(len(b) for b in self.levi_blocks)

    def mask(self, which: str) -> IntMatrix:
        d = len(self.chi.weights)
        pick = {
            "p": lambda s: s >= 0,
            "n": lambda s: s > 0,
            "l": lambda s: s == 0,
        }[which]
        return IntMatrix.from_rows(
            [
                [1 if pick(self.indicator.entries[i][j]) else 0 for j in range(d)]
                for i in range(d)
            ]
        )


def standard_symplectic_form(d: int) -> IntMatrix:
    """The block form [[0, I], [-I, 0]]."""
    if d % 2 != 0:
        raise BadForm("ambient dimension must be even")
    m = d // 2
    rows = [[0] * d for _ in range(d)]
    for i in range(m):
        rows[i][m + i] = 1
        rows[m + i][i] = -1
    return IntMatrix.from_rows(rows)


def _unit_matrix(d, i, j):
    rows = [[0] * d for _ in range(d)]
    rows[i][j] = 1
    return RatMatrix.from_rows(rows)


def build_algebra(kind: str, d: int, form: IntMatrix | None = None) -> MatrixLieAlgebra:
    kind = kind.lower()
    if kind == "sl":
        basis = []
        for i in range(d):
            for j in range(d):
                if i != j:
                    basis.append(_unit_matrix(d, i, j))
        for i in range(d - 1):
            rows = [[0] * d for _ in range(d)]
            rows[i][i] = 1
            rows[i + 1][i + 1] = -1
            basis.append(RatMatrix.from_rows(rows))
        return MatrixLieAlgebra("sl", d, tuple(basis))
    if kind == "sp":
        b = form if form is not None else standard_symplectic_form(d)
        if b.rows != d or b.cols != d:
            raise BadForm("form size does not match ambient dimension")
        if (b + b.transpose()).is_zero() is False:
            raise BadForm("form is not antisymmetric")
        from .exactlin import det_int

        if det_int(b) == 0:
            raise BadForm("form is degenerate")
        # solve M^T B + B M = 0 entrywise for the d*d unknown entries of M
        rows = []
        for i in range(d):
            for j in range(d):
                coeff = [Fraction(0)] * (d * d)
                # (M^T B)_{ij} = sum_k M_{ki} B_{kj};  (B M)_{ij} = sum_k B_{ik} M_{kj}
                for k in range(d):
                    coeff[k * d + i] += b.entries[k][j]
                    coeff[k * d + j] += b.entries[i][k]
                rows.append(coeff)
        kern = nullspace(rows)
        basis = tuple(
            RatMatrix.from_rows([vec[r * d : (r + 1) * d] for r in range(d)])
            for vec in kern
        )
        return MatrixLieAlgebra("sp", d, basis, b)
    raise ValueError(f"unsupported algebra type {kind!r}")


def validate_cocharacter(alg: MatrixLieAlgebra, chi: Cocharacter) -> None:
    if len(chi) != alg.dim_ambient:
        raise ValueError("cocharacter length does not match ambient dimension")
    if alg.kind == "sl" and sum(chi.weights) != 0:
        raise ValueError("sl cocharacter weights must sum to zero")
    if alg.kind == "sp" and alg.form == standard_symplectic_form(alg.dim_ambient):
        m = alg.dim_ambient // 2
        for i in range(m):
            if chi.weights[m + i] != -chi.weights[i]:
                raise ValueError("sp cocharacter must satisfy w[i+m] = -w[i]")


def weight_matrix(chi: Cocharacter) -> IntMatrix:
    w = chi.weights
    return IntMatrix.from_rows([[wi - wj for wj in w] for wi in w])


def _subspace_in_cells(basis, allowed) -> tuple:
    """Basis of the span of ``basis`` supported inside the cell set."""
    if not basis:
        return ()
    d = basis[0].rows
    forbidden = [
        (i, j) for i in range(d) for j in range(d) if (i, j) not in allowed
    ]
    if not forbidden:
        return tuple(basis)
    rows = [
        [m.entry(i, j) for m in basis]
        for (i, j) in forbidden
    ]
    combos = nullspace(rows)
    out = []
    for combo in combos:
        acc = RatMatrix.zeros(d, d)
        for c, m in zip(combo, basis):
            if c:
                acc = acc + m.scale(c)
        out.append(acc)
    return tuple(out)


def graded_component(alg: MatrixLieAlgebra, chi: Cocharacter, n: int) -> GradedComponent:
    validate_cocharacter(alg, chi)
    w = chi.weights
    d = alg.dim_ambient
    allowed = {
        (i, j) for i in range(d) for j in range(d) if w[i] - w[j] == n
    }
    return GradedComponent(n, _subspace_in_cells(alg.basis, allowed))


def coordinates_in_span(basis, m: RatMatrix):
    """Coefficients of m in the given basis, or None."""
    if not basis:
        return None if not m.is_zero() else ()
    rows = [
        [b.flat()[k] for b in basis]
        for k in range(len(m.flat()))
    ]
    return solve_linear(rows, list(m.flat()))


def in_span(basis, m: RatMatrix) -> bool:
    return coordinates_in_span(basis, m) is not None


def is_nilpotent_matrix(m: RatMatrix) -> bool:
    try:
        nilpotent_jordan_partition(m)
    except ValueError:
        return False
    return True


def _solve_triple(x, g0_basis, gm_basis, d):
    """Solve [x, f] = h, [h, x] = 2x for h in span(g0), f in span(gm)."""
    s, t = len(g0_basis), len(gm_basis)
    if t == 0 or s == 0:
        return None
    rows = []
    rhs = []
    brackets_f = [bracket(x, fb) for fb in gm_basis]
    brackets_h = [bracket(hb, x) for hb in g0_basis]
    for i in range(d):
        for j in range(d):
            # equation 1: sum_c c_k [x, F_k] - sum_b b_i H_i = 0
            row = [-hb.entry(i, j) for hb in g0_basis] + [
                bf.entry(i, j) for bf in brackets_f
            ]
            rows.append(row)
            rhs.append(Fraction(0))
            # equation 2: sum_b b_i [H_i, x] = 2x
            row2 = [bh.entry(i, j) for bh in brackets_h] + [Fraction(0)] * t
            rows.append(row2)
            rhs.append(2 * x.entry(i, j))
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    h = RatMatrix.zeros(d, d)
    for c, hb in zip(sol[:s], g0_basis):
        if c:
            h = h + hb.scale(c)
    return h


def _solve_f(x, h, gm_basis, d):
    rows = []
    rhs = []
    br_x = [bracket(x, fb) for fb in gm_basis]
    br_h = [bracket(h, fb) for fb in gm_basis]
    for i in range(d):
        for j in range(d):
            rows.append([b.entry(i, j) for b in br_x])
            rhs.append(h.entry(i, j))
            rows.append(
                [bh.entry(i, j) + 2 * fb.entry(i, j) for bh, fb in zip(br_h, gm_basis)]
            )
            rhs.append(Fraction(0))
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    f = RatMatrix.zeros(d, d)
    for c, fb in zip(sol, gm_basis):
        if c:
            f = f + fb.scale(c)
    return f


def adapted_sl2_triple(
    alg: MatrixLieAlgebra, chi: Cocharacter, n: int, x: RatMatrix
) -> Sl2Triple:
    """Graded sl2-triple (e=x, h, f) with e in g_n, h in g_0, f in g_-n.

    The construction solves [x, f0] = h, [h, x] = 2x as one linear
    feasibility problem, then re-solves for f with [h, f] = -2f adjoined
    (projecting onto the -2 eigenspace of ad h), and verifies the bracket
    relations exactly.  A toral h (diagonal, inside g_0) is preferred when
    one exists, which keeps reported weight vectors deterministic.
    """
    if n == 0:
        raise ValueError("degree must be nonzero")
    validate_cocharacter(alg, chi)
    if x.is_zero():
        raise NoTriple("the zero element admits no sl2-triple")
    g_n = graded_component(alg, chi, n)
    if not in_span(g_n.basis, x):
        raise ValueError("x does not lie in the requested graded component")
    if not is_nilpotent_matrix(x):
        raise NoTriple("x is not nilpotent")
    d = alg.dim_ambient
    g0 = graded_component(alg, chi, 0)
    gm = graded_component(alg, chi, -n)
    diag_cells = {(i, i) for i in range(d)}
    g0_diag = _subspace_in_cells(g0.basis, diag_cells)
    for h_basis in (g0_diag, g0.basis):
        if not h_basis:
            continue
        h = _solve_triple(x, h_basis, gm.basis, d)
        if h is None:
            continue
        f = _solve_f(x, h, gm.basis, d)
        if f is None:
            continue
        triple = Sl2Triple(x, h, f)
        if triple.bracket_relations_hold():
            return triple
    raise NoTriple("the graded triple equations are infeasible")


# ---------------------------------------------------------------------------
# the second grading and the canonical parabolic


def _blocks_by_weight(weights):
    blocks = {}
    for i, w in enumerate(weights):
        blocks.setdefault(w, []).append(i)
    return blocks


def chi_prime(triple: Sl2Triple, chi: Cocharacter | None = None):
    """Weights of the triple's h, with the change of basis that diagonalises
    it block-by-block inside the chi-grading.

    Returns (cocharacter, basis_change).  When h is already diagonal the
    basis change is the identity and the weights are the diagonal entries.
    """
    h = triple.h
    d = h.rows
    diagonal = all(h.num[i][j] == 0 for i in range(d) for j in range(d) if i != j)
    if diagonal:
        weights = []
        for i in range(d):
            v = h.entry(i, i)
            if v.denominator != 1:
                raise NonIntegralWeights("h has a non-integer diagonal entry")
            weights.append(int(v))
        return Cocharacter.of(weights), RatMatrix.identity(d)

    if chi is None:
        block_lists = [list(range(d))]
    else:
        if len(chi) != d:
            raise ValueError("cocharacter length mismatch")
        block_lists = list(_blocks_by_weight(chi.weights).values())
        for idx in block_lists:
            others = [j for j in range(d) if j not in idx]
            for i in idx:
                for j in others:
                    if h.num[i][j] != 0 or h.num[j][i] != 0:
                        raise NotSimultaneouslyDiagonal(
                            "h does not preserve the grading blocks"
                        )
    col_vectors = [None] * d
    weights = [None] * d
    for idx in block_lists:
        k = len(idx)
        sub = [[h.entry(i, j) for j in idx] for i in idx]
        found = []
        for m in range(-d, d + 1):
            shifted = [
                [sub[a][b] - (m if a == b else 0) for b in range(k)] for a in range(k)
            ]
            for vec in nullspace(shifted):
                found.append((m, vec))
        if len(found) != k:
            raise NonIntegralWeights("h is not diagonalisable with integer spectrum")
        for pos, (m, vec) in zip(idx, found):
            col = [Fraction(0)] * d
            for a, i in enumerate(idx):
                col[i] = Fraction(vec[a])
            col_vectors[pos] = col
            weights[pos] = m
    p = RatMatrix.from_rows(
        [[col_vectors[j][i] for j in range(d)] for i in range(d)]
    )
    return Cocharacter.of(weights), p


def conjugate(m: RatMatrix, p: RatMatrix) -> RatMatrix:
    return rat_inverse(p) * m * p


def _indicator_matrix(chi_w, chip_w, n) -> IntMatrix:
    sign = 1 if n > 0 else -1
    d = len(chi_w)
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            m = chip_w[i] - chip_w[j]
            mp = chi_w[i] - chi_w[j]
            row.append(sign * (n * m - 2 * mp))
        rows.append(row)
    return IntMatrix.from_rows(rows)


def canonical_parabolic(
    alg: MatrixLieAlgebra, chi: Cocharacter, triple: Sl2Triple, n: int
) -> ParabolicDatum:
    """Parabolic, nilradical and Levi attached to a graded triple.

    In a basis where both gradings are diagonal, a cell of bidegree
    (m', m) = (chi-weight, h-weight) goes to the parabolic when
    sign(n)*(n*m - 2*m') >= 0, to the nilradical when strict, and to the
    Levi on equality.
    """
    if n == 0:
        raise ValueError("degree must be nonzero")
    validate_cocharacter(alg, chi)
    chip, p = chi_prime(triple, chi)
    d = alg.dim_ambient
    identity = all(
        p.num[i][j] == (p.den if i == j else 0) for i in range(d) for j in range(d)
    )
    if identity:
        new_basis = alg.basis
    else:
        p_inv = rat_inverse(p)
        new_basis = tuple(p_inv * m * p for m in alg.basis)
    indicator = _indicator_matrix(chi.weights, chip.weights, n)
    cells = {
        "p": set(),
        "n": set(),
        "l": set(),
    }
    for i in range(d):
        for j in range(d):
            s = indicator.entries[i][j]
            if s >= 0:
                cells["p"].add((i, j))
            if s > 0:
                cells["n"].add((i, j))
            if s == 0:
                cells["l"].add((i, j))
    p_basis = _subspace_in_cells(new_basis, cells["p"])
    n_basis = _subspace_in_cells(new_basis, cells["n"])
    l_basis = _subspace_in_cells(new_basis, cells["l"])
    # Levi blocks: coordinates with equal potential sign(n)*(n*w' - 2*w)
    sign = 1 if n > 0 else -1
    potential = [
        sign * (n * chip.weights[i] - 2 * chi.weights[i]) for i in range(d)
    ]
    blocks = []
    seen = {}
    for i, phi in enumerate(potential):
        if phi in seen:
            blocks[seen[phi]].append(i)
        else:
            seen[phi] = len(blocks)
            blocks.append([i])
    return ParabolicDatum(
        chi=chi,
        chi_prime=chip,
        degree=n,
        basis_change=p,
        p_basis=p_basis,
        n_basis=n_basis,
        l_basis=l_basis,
        indicator=indicator,
        levi_blocks=tuple(tuple(b) for b in blocks),
    )


@dataclass(frozen=True)
class RigidityReport:
    is_rigid: bool
    witness: tuple | None  # (m, m') of the first violated cell, row-major


def check_n_rigid(alg_or_basis, chi: Cocharacter, triple: Sl2Triple, n: int) -> RigidityReport:
    """The h-grading refines the cocharacter grading exactly.

    A supported cell of bidegree (m, m') is compatible iff 2*m' = n*m; the
    first incompatible cell (row-major, in the diagonalising basis) is
    returned as the witness.  Triple placement (e in g_n, h in g_0,
    f in g_-n) is part of the check.
    """
    if isinstance(alg_or_basis, MatrixLieAlgebra):
        basis = alg_or_basis.basis
    else:
        basis = tuple(alg_or_basis)
    if not basis:
        return RigidityReport(True, None)
    d = basis[0].rows
    chip, p = chi_prime(triple, chi)
    identity = all(
        p.num[i][j] == (p.den if i == j else 0) for i in range(d) for j in range(d)
    )
    if identity:
        new_basis = basis
        e, h, f = triple.e, triple.h, triple.f
    else:
        p_inv = rat_inverse(p)
        new_basis = tuple(p_inv * m * p for m in basis)
        e, h, f = (conjugate(m, p) for m in (triple.e, triple.h, triple.f))
    w = chi.weights
    wp = chip.weights
    # triple placement inside the graded pieces
    for mat, expected in ((e, n), (h, 0), (f, -n)):
        for (i, j) in mat.support():
            if w[i] - w[j] != expected:
                return RigidityReport(False, (wp[i] - wp[j], w[i] - w[j]))
    support = set()
    for m in new_basis:
        support |= m.support()
    for i in range(d):
        for j in range(d):
            if (i, j) not in support:
                continue
            m = wp[i] - wp[j]
            mp = w[i] - w[j]
            if 2 * mp != n * m:
                return RigidityReport(False, (m, mp))
    return RigidityReport(True, None)
