"""Compactly supported cohomology of simple space expressions, rank-1 local
systems on punctured lines, counting polynomials, and stalk tables for
parabolically induced cuspidal local systems.

Space expressions are trees over: point, affine space, projective space,
a projective line minus m points (the 2-punctured case is a torus), and
disjoint unions.  Each expression has a counting polynomial (its number of
points over F_q for split forms) and a compactly supported cohomology.

Stalk convention: the table entry of an orbit at degree d is the rank of
H_c^(d + s) of the cuspidal fiber part, where s is the dimension of the
cuspidal orbit inside the inducing Levi.  The convention tag
"shift-by-dimC" names this shift.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .exactlin import IntMatrix, Partition, is_prime, parse_matrix_text


class UnknownCase(ValueError):
    pass


STALK_CONVENTION = "shift-by-dimC"


# ---------------------------------------------------------------------------
# space expressions


@dataclass(frozen=True)
class Pt:
    pass


@dataclass(frozen=True)
class Aff:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("affine dimension must be >= 0")


@dataclass(frozen=True)
class Proj:
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("projective dimension must be >= 0")


@dataclass(frozen=True)
class ProjLineMinus:
    points: int

    def __post_init__(self):
        if self.points < 1:
            raise ValueError("need at least one removed point")


@dataclass(frozen=True)
class Disjoint:
    children: tuple

    def __post_init__(self):
        if len(self.children) < 2:
            raise ValueError("disjoint union needs at least two children")


def torus() -> ProjLineMinus:
    return ProjLineMinus(2)


def parse_space(text: str):
    """Parse an s-expression such as ``(disjoint (proj 2) (aff 2))``."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()

    def read(pos):
        if tokens[pos] != "(":
            raise ValueError(f"expected '(' at token {pos}")
        head = tokens[pos + 1]
        pos += 2
        args = []
        while tokens[pos] != ")":
            if tokens[pos] == "(":
                child, pos = read(pos)
                args.append(child)
            else:
                args.append(tokens[pos])
                pos += 1
        pos += 1
        if head == "pt":
            return Pt(), pos
        if head == "aff":
            return Aff(int(args[0])), pos
        if head == "proj":
            return Proj(int(args[0])), pos
        if head == "torus":
            return torus(), pos
        if head == "projline-minus":
            return ProjLineMinus(int(args[0])), pos
        if head == "disjoint":
            return Disjoint(tuple(args)), pos
        raise ValueError(f"unknown space constructor {head!r}")

    expr, end = read(0)
    if end != len(tokens):
        raise ValueError("trailing tokens in space expression")
    return expr


def render_space(expr) -> str:
    if isinstance(expr, Pt):
        return "(pt)"
    if isinstance(expr, Aff):
        return f"(aff {expr.k})"
    if isinstance(expr, Proj):
        return f"(proj {expr.k})"
    if isinstance(expr, ProjLineMinus):
        return "(torus)" if expr.points == 2 else f"(projline-minus {expr.points})"
    if isinstance(expr, Disjoint):
        return "(disjoint " + " ".join(render_space(c) for c in expr.children) + ")"
    raise TypeError(f"not a space expression: {expr!r}")


# ---------------------------------------------------------------------------
# counting polynomials


@dataclass(frozen=True)
class Poly:
    """Integer polynomial in q, coefficients in ascending degree."""

    coeffs: tuple

    @staticmethod
    def of(coeffs) -> "Poly":
        cs = list(int(c) for c in coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly.of([x + y for x, y in zip(a, b)])

    def __call__(self, q: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * q + c
        return total

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(f"{c}")
            else:
                qk = "q" if k == 1 else f"q^{k}"
                if c == 1:
                    terms.append(qk)
                elif c == -1:
                    terms.append(f"-{qk}")
                else:
                    terms.append(f"{c}{qk}")
        out = terms[0]
        for t in terms[1:]:
            out += t if t.startswith("-") else "+" + t
        return out


def counting_polynomial(expr) -> Poly:
    if isinstance(expr, Pt):
        return Poly.of([1])
    if isinstance(expr, Aff):
        return Poly.of([0] * expr.k + [1])
    if isinstance(expr, Proj):
        return Poly.of([1] * (expr.k + 1))
    if isinstance(expr, ProjLineMinus):
        return Poly.of([1 - expr.points, 1])
    if isinstance(expr, Disjoint):
        total = Poly.of([])
        for c in expr.children:
            total = total + counting_polynomial(c)
        return total
    raise TypeError(f"not a space expression: {expr!r}")


# ---------------------------------------------------------------------------
# compactly supported cohomology


def _add_ranks(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in sorted(out.items()) if v}


def hc_constant(expr) -> dict:
    """Compactly supported cohomology with constant coefficients."""
    if isinstance(expr, Pt):
        return {0: 1}
    if isinstance(expr, Aff):
        return {2 * expr.k: 1}
    if isinstance(expr, Proj):
        return {2 * i: 1 for i in range(expr.k + 1)}
    if isinstance(expr, ProjLineMinus):
        out = {2: 1}
        if expr.points > 1:
            out[1] = expr.points - 1
        return dict(sorted(out.items()))
    if isinstance(expr, Disjoint):
        out: dict = {}
        for c in expr.children:
            out = _add_ranks(out, hc_constant(c))
        return out
    raise TypeError(f"not a space expression: {expr!r}")


def _scalar_is_one(scalar: int, char_l: int) -> bool:
    if char_l == 0:
        return scalar == 1
    return (scalar - 1) % char_l == 0


def _scalar_is_zero(scalar: int, char_l: int) -> bool:
    if char_l == 0:
        return scalar == 0
    return scalar % char_l == 0


def hc_rank1_torus(monodromy: int, char_l: int) -> dict:
    """Compactly supported cohomology of a torus with a rank-1 system.

    Computed from the kernel and cokernel of multiplication by
    (monodromy - 1) on a one-dimensional space: zero in all degrees unless
    the scalar is 1 in the field, in which case it is the constant answer.
    """
    if char_l != 0 and not is_prime(char_l):
        raise ValueError("characteristic must be 0 or prime")
    if _scalar_is_zero(monodromy, char_l):
        raise ValueError("monodromy scalar must be invertible")
    kernel = 1 if _scalar_is_one(monodromy, char_l) else 0
    cokernel = kernel
    out = {}
    if kernel:
        out[1] = kernel
    if cokernel:
        out[2] = cokernel
    return out


def _hc_punctured_line(points: int, scalars, char_l: int) -> dict:
    """Rank-1 system on a projective line minus ``points`` points, one
    monodromy scalar per free loop (points - 1 of them)."""
    if len(scalars) != points - 1:
        raise ValueError("need one monodromy scalar per free loop")
    if points == 2:
        return hc_rank1_torus(scalars[0], char_l)
    if all(_scalar_is_one(s, char_l) for s in scalars):
        return hc_constant(ProjLineMinus(points))
    out = {}
    if points - 2:
        out[1] = points - 2
    return out


def hc_local_system(expr, monodromy, char_l: int) -> dict:
    """Cohomology of a rank-1 local system; ``monodromy`` supplies one
    scalar per free loop of each non-simply-connected component, in
    traversal order.  Simply connected components force the constant sheaf.
    """
    scalars = list(monodromy)

    def walk(node) -> dict:
        if isinstance(node, Disjoint):
            out: dict = {}
            for c in node.children:
                out = _add_ranks(out, walk(c))
            return out
        if isinstance(node, ProjLineMinus):
            need = node.points - 1
            if len(scalars) < need:
                raise ValueError("not enough monodromy scalars")
            mine = [scalars.pop(0) for _ in range(need)]
            return _hc_punctured_line(node.points, mine, char_l)
        return hc_constant(node)

    out = walk(expr)
    if scalars:
        raise ValueError("unused monodromy scalars")
    return out


# ---------------------------------------------------------------------------
# case data and stalk tables


@dataclass(frozen=True)
class LocalSystemSpec:
    """Rank-1 local system data: one monodromy scalar per free loop."""

    monodromy: tuple
    characteristic: int

    def __post_init__(self):
        if self.characteristic != 0 and not is_prime(self.characteristic):
            raise ValueError("characteristic must be 0 or prime")
        for s in self.monodromy:
            if _scalar_is_zero(s, self.characteristic):
                raise ValueError("monodromy scalars must be invertible")


@dataclass(frozen=True)
class FiberDatum:
    partition: Partition
    representative: IntMatrix
    full_fiber: object
    zero_part: object | None
    cuspidal_part: object | None
    monodromy: tuple
    zero_part_twisted_pair: bool = False


@dataclass(frozen=True)
class CaseData:
    name: str
    group: str
    ambient_dim: int
    form: IntMatrix | None
    flag_kind: str
    levi_label: str
    levi_orbit_dim: int
    orbits: tuple


def load_case(name: str) -> CaseData:
    name = name.lower()
    if name not in ("sp4", "sl4"):
        raise UnknownCase(f"unknown case {name!r}")
    raw = json.loads(
        resources.files("gradedorbits.cases").joinpath(f"{name}.json").read_text()
    )
    orbits = []
    for rec in raw["orbits"]:
        orbits.append(
            FiberDatum(
                partition=Partition.of(rec["partition"]),
                representative=parse_matrix_text(rec["representative"]),
                full_fiber=parse_space(rec["full_fiber"]),
                zero_part=parse_space(rec["zero_part"]) if rec.get("zero_part") else None,
                cuspidal_part=(
                    parse_space(rec["cuspidal_part"]) if rec.get("cuspidal_part") else None
                ),
                monodromy=tuple(rec.get("monodromy", ())),
                zero_part_twisted_pair=bool(rec.get("zero_part_twisted_pair", False)),
            )
        )
    return CaseData(
        name=raw["name"],
        group=raw["group"],
        ambient_dim=raw["ambient_dim"],
        form=parse_matrix_text(raw["form"]) if raw.get("form") else None,
        flag_kind=raw["flag_kind"],
        levi_label=raw["levi_label"],
        levi_orbit_dim=raw["levi_orbit_dim"],
        orbits=tuple(orbits),
    )


@dataclass(frozen=True)
class StalkTable:
    convention: str
    columns: dict  # orbit label -> {degree: rank}

    def parity_violations(self) -> tuple:
        out = []
        for label, col in self.columns.items():
            parities = {d % 2 for d in col}
            if len(parities) > 1:
                out.append(label)
        return tuple(out)

    def as_dict(self) -> dict:
        return {
            "convention": self.convention,
            "columns": {
                label: {str(d): r for d, r in sorted(col.items())}
                for label, col in self.columns.items()
            },
        }


def stalk_table(case: CaseData, char_l: int, allow_char_two: bool = False) -> StalkTable:
    """Stalk ranks of the induced cuspidal local system, per orbit column.

    Degrees follow the shift-by-dimC convention: the entry at degree d is
    the rank of H_c^(d + levi_orbit_dim) of the cuspidal fiber part with
    the recorded monodromy.  Characteristic 2 breaks the standing
    invertibility hypothesis and must be requested explicitly.
    """
    if char_l != 0 and not is_prime(char_l):
        raise ValueError("characteristic must be 0 or prime")
    if char_l == 2 and not allow_char_two:
        raise ValueError(
            "characteristic 2 violates the standing hypothesis; "
            "request it explicitly to exhibit the anomaly"
        )
    columns = {}
    for orbit in case.orbits:
        label = orbit.partition.label()
        if orbit.cuspidal_part is None:
            columns[label] = {}
            continue
        system = LocalSystemSpec(orbit.monodromy, char_l)
        ranks = hc_local_system(orbit.cuspidal_part, system.monodromy, char_l)
        columns[label] = {
            deg - case.levi_orbit_dim: r for deg, r in sorted(ranks.items())
        }
    return StalkTable(STALK_CONVENTION, columns)
