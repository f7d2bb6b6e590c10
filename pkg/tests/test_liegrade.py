import pytest

from gradedorbits.exactlin import IntMatrix, RatMatrix, bracket
from gradedorbits.liegrade import (
    BadForm,
    Cocharacter,
    NoTriple,
    Sl2Triple,
    adapted_sl2_triple,
    build_algebra,
    canonical_parabolic,
    check_n_rigid,
    chi_prime,
    graded_component,
    in_span,
    standard_symplectic_form,
    weight_matrix,
)


def unit(d, i, j, value=1):
    rows = [[0] * d for _ in range(d)]
    rows[i][j] = value
    return RatMatrix.from_rows(rows)


WORKED_CHI = Cocharacter.of([1, 0, 0, -1])
# x with cells (2,1) and (4,3): a degree -1 nilpotent of Jordan type [2,2]
WORKED_X = RatMatrix.from_rows(
    [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0]]
)

WEIGHT_MATRIX_EXPECTED = [
    [0, 1, 1, 2],
    [-1, 0, 0, 1],
    [-1, 0, 0, 1],
    [-2, -1, -1, 0],
]

CHI_PRIME_WEIGHT_MATRIX = [
    [0, -2, 0, -2],
    [2, 0, 2, 0],
    [0, -2, 0, -2],
    [2, 0, 2, 0],
]

COMBINED_INDICATOR = [
    [0, 0, 2, 2],
    [0, 0, 2, 2],
    [-2, -2, 0, 0],
    [-2, -2, 0, 0],
]


def test_build_algebra_dimensions():
    assert build_algebra("sl", 2).dimension == 3
    assert build_algebra("sl", 4).dimension == 15
    sp4 = build_algebra("sp", 4)
    assert sp4.dimension == 10
    for m in sp4.basis:
        assert sp4.contains(m)


def test_sp_bracket_closed():
    sp4 = build_algebra("sp", 4)
    for a in sp4.basis[:4]:
        for b in sp4.basis[:4]:
            assert sp4.contains(bracket(a, b))


def test_bad_form_rejected():
    sym = IntMatrix.identity(4)
    with pytest.raises(BadForm):
        build_algebra("sp", 4, sym)
    degenerate = IntMatrix.zeros(4, 4)
    with pytest.raises(BadForm):
        build_algebra("sp", 4, degenerate)


def test_weight_matrix_examples():
    assert weight_matrix(WORKED_CHI).entries == tuple(
        tuple(r) for r in WEIGHT_MATRIX_EXPECTED
    )
    assert weight_matrix(Cocharacter.of([0, 0, 0])).is_zero()
    assert weight_matrix(Cocharacter.of([-1, 1, -1, 1])).entries == tuple(
        tuple(r) for r in CHI_PRIME_WEIGHT_MATRIX
    )


def test_graded_component_dimensions():
    sl4 = build_algebra("sl", 4)
    assert graded_component(sl4, WORKED_CHI, 2).dimension == 1
    assert graded_component(sl4, WORKED_CHI, -1).dimension == 4
    assert graded_component(sl4, WORKED_CHI, 99).dimension == 0
    g0 = graded_component(sl4, WORKED_CHI, 0)
    assert g0.dimension == 5


@pytest.mark.parametrize(
    "kind,d,weights",
    [("sl", 4, (1, 0, 0, -1)), ("sp", 4, (2, 1, -2, -1))],
)
def test_bracket_respects_grading(kind, d, weights):
    alg = build_algebra(kind, d)
    chi = Cocharacter.of(weights)
    spread = max(weights) - min(weights)
    comps = {
        n: graded_component(alg, chi, n) for n in range(-spread, spread + 1)
    }
    degs = [n for n, c in comps.items() if c.dimension > 0]
    total = sum(comps[n].dimension for n in degs)
    assert total == alg.dimension
    for a in degs:
        for b in degs:
            target = comps.get(a + b)
            target_basis = target.basis if target else ()
            for x in comps[a].basis:
                for y in comps[b].basis:
                    z = bracket(x, y)
                    if z.is_zero():
                        continue
                    assert in_span(target_basis, z)


def test_adapted_triple_worked_example():
    sl4 = build_algebra("sl", 4)
    triple = adapted_sl2_triple(sl4, WORKED_CHI, -1, WORKED_X)
    assert triple.bracket_relations_hold()
    assert triple.h.num == ((-1, 0, 0, 0), (0, 1, 0, 0), (0, 0, -1, 0), (0, 0, 0, 1))
    weights, change = chi_prime(triple, WORKED_CHI)
    assert weights.weights == (-1, 1, -1, 1)
    assert change == RatMatrix.identity(4)
    assert weight_matrix(weights).entries == tuple(
        tuple(r) for r in CHI_PRIME_WEIGHT_MATRIX
    )
    # placement
    g1 = graded_component(sl4, WORKED_CHI, 1)
    g0 = graded_component(sl4, WORKED_CHI, 0)
    assert in_span(g0.basis, triple.h)
    assert in_span(g1.basis, triple.f)


def test_adapted_triple_sl2():
    sl2 = build_algebra("sl", 2)
    chi = Cocharacter.of([1, -1])
    triple = adapted_sl2_triple(sl2, chi, 2, unit(2, 0, 1))
    assert triple.h.num == ((1, 0), (0, -1))
    assert triple.f.num == ((0, 0), (1, 0))


def test_adapted_triple_zero_rejected():
    sl4 = build_algebra("sl", 4)
    with pytest.raises(NoTriple):
        adapted_sl2_triple(sl4, WORKED_CHI, -1, RatMatrix.zeros(4, 4))


def test_adapted_triple_degree_zero_rejected():
    sl4 = build_algebra("sl", 4)
    with pytest.raises(ValueError):
        adapted_sl2_triple(sl4, WORKED_CHI, 0, WORKED_X)


def test_chi_prime_standard_jordan_two_two():
    e = RatMatrix.from_rows([[0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    f = e.transpose()
    h = RatMatrix.from_rows(
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    )
    triple = Sl2Triple(e, h, f)
    assert triple.bracket_relations_hold()
    weights, change = chi_prime(triple)
    assert weights.weights == (1, -1, 1, -1)
    assert change == RatMatrix.identity(4)


def test_canonical_parabolic_worked_example():
    sl4 = build_algebra("sl", 4)
    triple = adapted_sl2_triple(sl4, WORKED_CHI, -1, WORKED_X)
    datum = canonical_parabolic(sl4, WORKED_CHI, triple, -1)
    assert datum.indicator.entries == tuple(tuple(r) for r in COMBINED_INDICATOR)
    assert datum.levi_blocks == ((0, 1), (2, 3))
    assert datum.levi_block_shape == (2, 2)
    # bracket closures
    for a in datum.p_basis:
        for b in datum.p_basis:
            assert in_span(datum.p_basis, bracket(a, b)) or bracket(a, b).is_zero()
        for b in datum.n_basis:
            z = bracket(a, b)
            assert z.is_zero() or in_span(datum.n_basis, z)
    for a in datum.l_basis:
        for b in datum.l_basis:
            z = bracket(a, b)
            assert z.is_zero() or in_span(datum.l_basis, z)
    # l + n = p as vector spaces
    assert len(datum.p_basis) == len(datum.l_basis) + len(datum.n_basis)
    assert in_span(datum.p_basis, WORKED_X)
    for part in (triple.e, triple.h, triple.f):
        assert in_span(datum.l_basis, part)
    # dim p + dim opposite parabolic = dim g + dim l
    from gradedorbits.liegrade import _subspace_in_cells

    opp_cells = {
        (i, j)
        for i in range(4)
        for j in range(4)
        if datum.indicator.entries[i][j] <= 0
    }
    transformed = sl4.basis  # identity change here
    opposite = _subspace_in_cells(transformed, opp_cells)
    assert len(datum.p_basis) + len(opposite) == sl4.dimension + len(datum.l_basis)
    # cells partition
    d = 4
    for i in range(d):
        for j in range(d):
            s = datum.indicator.entries[i][j]
            assert (s > 0) + (s == 0) + (s < 0) == 1


def test_canonical_parabolic_single_hom_orbit():
    sl4 = build_algebra("sl", 4)
    x = unit(4, 1, 0)
    triple = adapted_sl2_triple(sl4, WORKED_CHI, -1, x)
    datum = canonical_parabolic(sl4, WORKED_CHI, triple, -1)
    assert datum.levi_blocks == ((0, 1), (2,), (3,))
    assert datum.levi_block_shape == (2, 1, 1)
    rep = check_n_rigid(datum.l_basis, WORKED_CHI, triple, -1)
    assert rep.is_rigid


def test_canonical_parabolic_rejects_degree_zero():
    sl4 = build_algebra("sl", 4)
    triple = adapted_sl2_triple(sl4, WORKED_CHI, -1, WORKED_X)
    with pytest.raises(ValueError):
        canonical_parabolic(sl4, WORKED_CHI, triple, 0)


def test_rigidity_full_algebra_fails_with_witness():
    sl4 = build_algebra("sl", 4)
    triple = adapted_sl2_triple(sl4, WORKED_CHI, -1, WORKED_X)
    rep = check_n_rigid(sl4, WORKED_CHI, triple, -1)
    assert not rep.is_rigid
    assert rep.witness == (0, 1)


def test_rigidity_levi_holds():
    sl4 = build_algebra("sl", 4)
    triple = adapted_sl2_triple(sl4, WORKED_CHI, -1, WORKED_X)
    datum = canonical_parabolic(sl4, WORKED_CHI, triple, -1)
    rep = check_n_rigid(datum.l_basis, WORKED_CHI, triple, -1)
    assert rep.is_rigid
    assert rep.witness is None


def test_rigidity_sl2_principal():
    sl2 = build_algebra("sl", 2)
    chi = Cocharacter.of([1, -1])
    triple = adapted_sl2_triple(sl2, chi, 2, unit(2, 0, 1))
    rep = check_n_rigid(sl2, chi, triple, 2)
    assert rep.is_rigid


def test_standard_form_matches_block_shape():
    b = standard_symplectic_form(4)
    assert b.entries == ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def test_triple_well_defined_on_orbit():
    # conjugating x by a degree-zero permutation gives a conjugate triple
    sl4 = build_algebra("sl", 4)
    g = RatMatrix.from_rows(
        [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    )  # swaps the two weight-zero coordinates
    conjugated = g * WORKED_X * g  # g is its own inverse
    t1 = adapted_sl2_triple(sl4, WORKED_CHI, -1, WORKED_X)
    t2 = adapted_sl2_triple(sl4, WORKED_CHI, -1, conjugated)
    assert t2.bracket_relations_hold()
    w1, _ = chi_prime(t1, WORKED_CHI)
    w2, _ = chi_prime(t2, WORKED_CHI)
    assert sorted(w1.weights) == sorted(w2.weights)
