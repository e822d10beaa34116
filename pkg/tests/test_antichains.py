import pytest
from hypothesis import given, settings

from oracles import brute_width, powerset_antichains, random_posets
from rootposet.antichains import (
    H_TABLE, check_distribution_identities, count_antichains, dominated_by, enumerate_antichains,
    is_antichain, maximal_antichains_of_size, several_maximal_examples, size_distribution,
    verify_main_theorem, width,
)
from rootposet.dynkin import default_diagrams, dynkin_diagram, parse_diagram
from rootposet.lemma import min_chain_cover
from rootposet.poset import Poset, build_poset, level_profile

SMALL = [d for d in default_diagrams() if build_poset(d).size <= 20]


def P(name):
    return build_poset(parse_diagram(name))


def test_is_antichain_trivial():
    p = P("A3")
    assert is_antichain(p, [0])
    lo, hi = p.covers[0]
    assert not is_antichain(p, [lo, hi])
    assert is_antichain(p, [])


@pytest.mark.parametrize("d", default_diagrams(), ids=str)
def test_phi_h_is_antichain(d):
    p = build_poset(d)
    h = level_profile(p).h
    assert h == H_TABLE.get(d.name, H_TABLE.get(d.family))
    assert is_antichain(p, p.level_set(h)) and len(p.level_set(h)) == d.rank - 1


def test_enumerate_a2():
    p = P("A2")
    assert list(enumerate_antichains(p)) == [(), (0,), (0, 1), (1,), (2,)]
    assert count_antichains(p) == 5


def test_several_maximal_examples():
    three, claw = several_maximal_examples()
    assert count_antichains(three, 2) == 3
    assert len(maximal_antichains_of_size(three, 2)) == 3
    assert len(maximal_antichains_of_size(claw, 2)) == 3
    assert width(three)[0] == width(claw)[0] == 3


def test_only_simple_roots_of_full_size():
    p = P("E6")
    assert list(enumerate_antichains(p, 6)) == [tuple(p.simple_roots)]


@pytest.mark.parametrize("d", SMALL, ids=str)
def test_enumeration_matches_powerset(d):
    p = build_poset(d)
    assert sorted(enumerate_antichains(p)) == powerset_antichains(p)


@settings(max_examples=80, deadline=None)
@given(random_posets(max_size=12))
def test_enumeration_random(p):
    got = list(enumerate_antichains(p))
    assert got == sorted(got)  # lexicographic order
    assert sorted(got) == powerset_antichains(p)
    for t in range(p.size + 1):
        assert list(enumerate_antichains(p, t)) == powerset_antichains(p, t)
    w, wit = width(p)
    assert w == brute_width(p) == len(min_chain_cover(p))
    assert len(wit) == w and is_antichain(p, wit)


def test_width_values():
    for d in default_diagrams():
        p = build_poset(d)
        w, wit = width(p)
        assert w == d.rank and is_antichain(p, wit)
    assert width(P("A3"), [])[0] == 0


def test_f4_incomparable_sets_small():
    p = P("F4")
    for z in range(p.size):
        if p.heights[z] >= 6:
            assert width(p, p.incomparable_set(z))[0] <= 2


def test_domination():
    p = P("B5")
    phi2, phi3 = p.level_set(2), p.level_set(3)
    assert dominated_by(p, phi2, phi2)
    assert dominated_by(p, phi2, phi3)
    assert not dominated_by(p, phi3, phi2)
    e6 = P("E6")
    top = maximal_antichains_of_size(e6, 5)
    assert len(top) == 1 and dominated_by(e6, e6.level_set(4), top[0])


@pytest.mark.parametrize("d", [d for d in default_diagrams() if d.name != "E6"], ids=str)
def test_main_theorem_regular(d):
    rep = verify_main_theorem(d)
    p = build_poset(d)
    assert rep.passed and rep.maximal_list == [tuple(sorted(p.level_set(rep.h)))]


def test_main_theorem_e6():
    rep = verify_main_theorem(parse_diagram("E6"))
    assert rep.passed and not rep.equals_phi_h and rep.unique
    ex = rep.e6_exception
    assert ex.heights == [4, 5] and ex.ok


def test_specific_theorem_cases():
    b5 = verify_main_theorem(parse_diagram("B5"))
    assert b5.h == 3 and b5.equals_phi_h
    e7 = verify_main_theorem(parse_diagram("E7"))
    assert e7.h == 5 and e7.equals_phi_h


def test_distribution_small():
    assert size_distribution(P("A2")).counts == (1, 3, 1)
    three, _ = several_maximal_examples()
    assert size_distribution(three).counts == (1, 3, 3, 1)


@pytest.mark.parametrize("d", default_diagrams(), ids=str)
def test_distribution_identities(d):
    p = build_poset(d)
    res = check_distribution_identities(p)
    assert all(res.values()), res


def test_e8_distribution():
    dist = size_distribution(P("E8"))
    assert dist.counts == (1, 120, 1540, 6120, 9518, 6120, 1540, 120, 1)
    assert dist.total == 25080  # the Catalan number of E8


def test_maximal_trivial():
    chain = Poset.from_covers(3, [(0, 1), (1, 2)])
    assert maximal_antichains_of_size(chain, 1) == [(2,)]
    assert maximal_antichains_of_size(chain, 2) == []
