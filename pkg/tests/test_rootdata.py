import itertools
import random

import pytest

from gradedorbits.exactlin import hermite_rows, in_hermite_span
from gradedorbits.rootdata import (
    ClosedSubsystem,
    RootDatum,
    TooLarge,
    UnsupportedType,
    closed_subsystems,
    prime_report,
    standard_root_datum,
)


def test_root_counts():
    assert len(standard_root_datum("sl", 4).roots) == 12
    assert len(standard_root_datum("sp", 4).roots) == 8
    sl2 = standard_root_datum("sl", 2)
    assert set(sl2.roots) == {(1, -1), (-1, 1)}


def test_unsupported_type():
    with pytest.raises(UnsupportedType):
        standard_root_datum("so", 4)
    with pytest.raises(UnsupportedType):
        standard_root_datum("sp", 3)


@pytest.mark.parametrize("kind,n", [("sl", 2), ("sl", 3), ("sl", 4), ("sp", 4)])
def test_root_datum_axioms(kind, n):
    rd = standard_root_datum(kind, n)
    roots = set(rd.roots)
    for alpha, alphav in zip(rd.roots, rd.coroots):
        assert rd.pairing(alpha, alphav) == 2
        assert tuple(-x for x in alpha) in roots
    # reflections permute the root set
    for alpha, alphav in zip(rd.roots, rd.coroots):
        for beta in rd.roots:
            c = rd.pairing(beta, alphav)
            image = tuple(b - c * a for b, a in zip(beta, alpha))
            assert image in roots


def test_closed_subsystems_sl2():
    rd = standard_root_datum("sl", 2)
    subs = closed_subsystems(rd)
    assert len(subs) == 2
    sizes = sorted(len(s.member_indices) for s in subs)
    assert sizes == [0, 2]


def test_closed_subsystems_sp4_contains_long_a1a1():
    rd = standard_root_datum("sp", 4)
    long_roots = {(2, 0), (-2, 0), (0, 2), (0, -2)}
    target = tuple(
        sorted(i for i, r in enumerate(rd.roots) if r in long_roots)
    )
    subs = {s.member_indices for s in closed_subsystems(rd)}
    assert target in subs


def test_closed_subsystems_sl4_sizes():
    rd = standard_root_datum("sl", 4)
    sizes = {len(s.member_indices) for s in closed_subsystems(rd)}
    assert sizes == {0, 2, 4, 6, 12}


@pytest.mark.parametrize("kind,n", [("sp", 4), ("sl", 4)])
def test_closure_idempotence(kind, n):
    rd = standard_root_datum(kind, n)
    for sub in closed_subsystems(rd):
        if not sub.member_indices:
            continue
        hnf = hermite_rows([rd.roots[i] for i in sub.member_indices])
        inside = {i for i, r in enumerate(rd.roots) if in_hermite_span(hnf, r)}
        assert inside == set(sub.member_indices)


def test_closed_subsystems_include_empty_and_full():
    rd = standard_root_datum("sp", 4)
    fams = {s.member_indices for s in closed_subsystems(rd)}
    assert () in fams
    assert tuple(range(8)) in fams


def test_guard():
    huge = RootDatum(
        label="big",
        ambient_rank=1,
        roots=tuple((k,) for k in range(1, 50)),
        coroots=tuple((k,) for k in range(1, 50)),
        x_relations=(),
        y_basis=((1,),),
    )
    with pytest.raises(TooLarge):
        closed_subsystems(huge)


def test_prime_report_sl4():
    rep = prime_report(standard_root_datum("sl", 4))
    assert rep.pretty_good_excluded == (2,)
    assert rep.rather_good_excluded == (2,)
    assert rep.good_excluded == ()
    assert rep.torsion == ()


def test_prime_report_sp4():
    rep = prime_report(standard_root_datum("sp", 4))
    assert rep.good_excluded == (2,)
    assert rep.torsion == (2,)
    assert rep.pretty_good_excluded == (2,)
    assert rep.rather_good_excluded == (2,)


def test_prime_report_sl2():
    rep = prime_report(standard_root_datum("sl", 2))
    assert rep.torsion == ()
    assert rep.rather_good_excluded == (2,)


def test_pretty_good_contains_full_system_torsion():
    for kind, n in [("sl", 3), ("sl", 4), ("sp", 4)]:
        rep = prime_report(standard_root_datum(kind, n))
        assert set(rep.pretty_good_excluded) >= set(rep.torsion)
        assert set(rep.pretty_good_excluded) >= set(rep.good_excluded)
        assert set(rep.rather_good_excluded) >= set(rep.good_excluded)


def test_prime_report_invariant_under_root_order():
    rd = standard_root_datum("sp", 4)
    rng = random.Random(3)
    order = list(range(len(rd.roots)))
    rng.shuffle(order)
    shuffled = RootDatum(
        label=rd.label,
        ambient_rank=rd.ambient_rank,
        roots=tuple(rd.roots[i] for i in order),
        coroots=tuple(rd.coroots[i] for i in order),
        x_relations=rd.x_relations,
        y_basis=rd.y_basis,
    )
    assert prime_report(shuffled) == prime_report(rd)
