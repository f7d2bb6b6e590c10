"""Root data for the classical types SL(n) and Sp(2m), with closed-subsystem
enumeration and the four prime classifiers (bad, torsion, pretty good
exclusions, rather good exclusions).

Lattice conventions
-------------------
SL(n): the character lattice is Z^n modulo the diagonal copy of Z; it is
presented concretely as Z^n together with the extra relation row (1,...,1),
so quotient torsion is read off a stacked integer matrix.  The cocharacter
lattice is the trace-zero sublattice of Z^n, with basis e_i - e_(i+1).

Sp(2m): characters and cocharacters are both Z^m (the standard maximal
torus diag(t_1..t_m, t_1^-1..t_m^-1)); roots are +-e_i+-e_j and +-2e_i.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .exactlin import (
    hermite_rows,
    in_hermite_span,
    prime_factors,
    solve_linear,
    torsion_primes_of_quotient,
)


class UnsupportedType(ValueError):
    pass


class TooLarge(ValueError):
    """Closed-subsystem enumeration guard exceeded."""


@dataclass(frozen=True)
class RootDatum:
    label: str
    ambient_rank: int
    roots: tuple  # integer vectors in the X presentation
    coroots: tuple  # parallel integer vectors in the Y presentation
    x_relations: tuple  # extra relation rows presenting X as a quotient
    y_basis: tuple  # basis rows of Y inside the ambient lattice

    @property
    def rank(self) -> int:
        return self.ambient_rank

    def pairing(self, x, y) -> int:
        return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class ClosedSubsystem:
    member_indices: tuple


@dataclass(frozen=True)
class PrimeReport:
    good_excluded: tuple  # the bad primes
    torsion: tuple
    pretty_good_excluded: tuple
    rather_good_excluded: tuple

    @property
    def good_description(self) -> str:
        if not self.good_excluded:
            return "all primes are good"
        return "all primes outside {%s}" % ", ".join(map(str, self.good_excluded))

    def as_dict(self) -> dict:
        return {
            "good_excluded": list(self.good_excluded),
            "torsion": list(self.torsion),
            "pretty_good_excluded": list(self.pretty_good_excluded),
            "rather_good_excluded": list(self.rather_good_excluded),
        }


def _unit(n, i):
    return tuple(1 if j == i else 0 for j in range(n))


def standard_root_datum(kind: str, n: int) -> RootDatum:
    kind = kind.lower()
    if kind == "sl":
        if n < 2:
            raise UnsupportedType("SL needs n >= 2")
        roots = []
        for i in range(n):
            for j in range(n):
                if i != j:
                    vec = tuple(
                        (1 if k == i else 0) - (1 if k == j else 0) for k in range(n)
                    )
                    roots.append(vec)
        coroots = list(roots)  # e_i - e_j is its own coroot under the dot pairing
        y_basis = tuple(
            tuple(
                (1 if k == i else 0) - (1 if k == i + 1 else 0) for k in range(n)
            )
            for i in range(n - 1)
        )
        return RootDatum(
            label=f"SL({n})",
            ambient_rank=n,
            roots=tuple(roots),
            coroots=tuple(coroots),
            x_relations=((1,) * n,),
            y_basis=y_basis,
        )
    if kind == "sp":
        if n < 2 or n % 2 != 0:
            raise UnsupportedType("Sp needs even n >= 2")
        m = n // 2
        roots = []
        coroots = []
        for i in range(m):
            for j in range(m):
                if i == j:
                    continue
                vec = tuple(
                    (1 if k == i else 0) - (1 if k == j else 0) for k in range(m)
                )
                roots.append(vec)
                coroots.append(vec)
        for i, j in itertools.combinations(range(m), 2):
            for s in (1, -1):
                vec = tuple(
                    s * ((1 if k == i else 0) + (1 if k == j else 0)) for k in range(m)
                )
                roots.append(vec)
                coroots.append(vec)
        for i in range(m):
            for s in (1, -1):
                roots.append(tuple(2 * s * (1 if k == i else 0) for k in range(m)))
                coroots.append(tuple(s * (1 if k == i else 0) for k in range(m)))
        return RootDatum(
            label=f"Sp({n})",
            ambient_rank=m,
            roots=tuple(roots),
            coroots=tuple(coroots),
            x_relations=(),
            y_basis=tuple(_unit(m, i) for i in range(m)),
        )
    raise UnsupportedType(f"unsupported type {kind!r}")


# ---------------------------------------------------------------------------
# closed subsystems


def _closure_of(vectors, indices) -> tuple:
    """Indices of all vectors lying in the integer span of the selection."""
    if not indices:
        return ()
    hnf = hermite_rows([vectors[i] for i in indices])
    return tuple(i for i, v in enumerate(vectors) if in_hermite_span(hnf, v))


def _closed_families(vectors) -> tuple:
    """All subsets closed under 'every listed vector in the span belongs'.

    Every closed family is a join of singleton closures, so the fixpoint of
    pairwise joins starting from those closures enumerates all of them.
    """
    families = {(): ()}
    work = [()]
    for i in range(len(vectors)):
        cl = _closure_of(vectors, (i,))
        if cl not in families:
            families[cl] = cl
            work.append(cl)
    singles = [f for f in families if f]
    while work:
        base = work.pop()
        for s in singles:
            joined = _closure_of(vectors, tuple(sorted(set(base) | set(s))))
            if joined not in families:
                families[joined] = joined
                work.append(joined)
    return tuple(sorted(families, key=lambda t: (len(t), t)))


def closed_subsystems(rd: RootDatum) -> tuple:
    if len(rd.roots) > 48:
        raise TooLarge("root system too large for closed-subsystem enumeration")
    return tuple(ClosedSubsystem(f) for f in _closed_families(rd.roots))


# ---------------------------------------------------------------------------
# prime classifiers


def _coords_in_basis(basis, vec):
    rows = [[basis[j][i] for j in range(len(basis))] for i in range(len(vec))]
    sol = solve_linear(rows, [int(x) for x in vec])
    if sol is None or any(f.denominator != 1 for f in sol):
        raise ValueError("vector not in the integer span of the basis")
    return tuple(int(f) for f in sol)


def x_quotient_rows(rd: RootDatum, indices) -> tuple:
    """Rows presenting X / (Z * selected roots) as a cokernel."""
    return tuple(rd.roots[i] for i in indices) + rd.x_relations


def y_quotient_rows(rd: RootDatum, indices) -> tuple:
    """Rows presenting Y / (Z * selected coroots), in Y-basis coordinates."""
    return tuple(_coords_in_basis(rd.y_basis, rd.coroots[i]) for i in indices)


def _bad_primes(rd: RootDatum) -> frozenset:
    """Primes dividing a coefficient of the highest root of some factor."""
    roots = rd.roots
    if not roots:
        return frozenset()
    n = rd.ambient_rank
    big = 2 * max(abs(x) for v in roots for x in v) * n + 1
    weights = [big ** (n - 1 - i) for i in range(n)]

    def height(v):
        return sum(w * x for w, x in zip(weights, v))

    positives = [v for v in roots if height(v) > 0]
    pos_set = set(positives)
    simples = []
    for alpha in positives:
        is_sum = False
        for beta in positives:
            gamma = tuple(a - b for a, b in zip(alpha, beta))
            if gamma in pos_set:
                is_sum = True
                break
        if not is_sum:
            simples.append(alpha)
    # connected components of the simple system under non-orthogonality
    coroot_of = {r: c for r, c in zip(rd.roots, rd.coroots)}
    remaining = list(range(len(simples)))
    components = []
    while remaining:
        comp = [remaining.pop(0)]
        grew = True
        while grew:
            grew = False
            for k in list(remaining):
                if any(
                    rd.pairing(simples[k], coroot_of[simples[c]]) != 0 for c in comp
                ):
                    comp.append(k)
                    remaining.remove(k)
                    grew = True
        components.append(comp)
    bad = set()
    for comp in components:
        comp_simples = [simples[k] for k in comp]
        hnf = hermite_rows(comp_simples)
        comp_pos = [v for v in positives if in_hermite_span(hnf, v)]
        highest = max(comp_pos, key=height)
        rows = [[comp_simples[j][i] for j in range(len(comp_simples))] for i in range(n)]
        sol = solve_linear(rows, list(highest))
        for f in sol:
            if f.denominator != 1:
                raise ValueError("highest root not integral on the simple basis")
            bad |= prime_factors(int(f))
    bad.discard(1)
    return frozenset(bad)


def prime_report(rd: RootDatum) -> PrimeReport:
    """Bad primes, torsion primes, and the pretty-good / rather-good exclusions.

    The X-side quantification runs over subsystems closed inside the root
    list; the Y-side runs over subsystems closed inside the coroot list.
    The two closures genuinely differ (a coroot span can be closed while the
    matching root span is not), and both sides are needed to exhaust the
    quantifier over arbitrary subsets.
    """
    root_closed = _closed_families(rd.roots)
    coroot_closed = _closed_families(rd.coroots)

    x_side = set()
    for fam in root_closed:
        x_side |= torsion_primes_of_quotient(x_quotient_rows(rd, fam), rd.ambient_rank)
    y_side = set()
    for fam in coroot_closed:
        y_side |= torsion_primes_of_quotient(
            y_quotient_rows(rd, fam), len(rd.y_basis)
        )

    bad = _bad_primes(rd)
    full = tuple(range(len(rd.roots)))
    center = torsion_primes_of_quotient(x_quotient_rows(rd, full), rd.ambient_rank)
    return PrimeReport(
        good_excluded=tuple(sorted(bad)),
        torsion=tuple(sorted(y_side)),
        pretty_good_excluded=tuple(sorted(x_side | y_side)),
        rather_good_excluded=tuple(sorted(bad | center)),
    )
