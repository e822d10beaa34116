import pytest

from rootposet.antichains import enumerate_antichains, size_distribution
from rootposet.dynkin import default_diagrams, dynkin_diagram, parse_diagram
from rootposet.poset import build_poset
from rootposet.symmetry import (
    automorphism_count_unrestricted, automorphism_group, find_isomorphism,
    induced_antichain_action, is_automorphism, nonreconstruction, preserves_structure,
)


def P(name):
    return build_poset(parse_diagram(name))


def test_f4_trivial_group():
    assert automorphism_group(P("F4")).order == 1


def test_f4_ideal_group():
    p = P("F4")
    g = automorphism_group(p, within=p.ideal(p.level_set(5)))
    assert g.order == 2 and len(g.generators) == 1


def test_f4_action_and_antichains():
    p = P("F4")
    sub, back = p.induced(p.ideal(p.level_set(5)))
    phi = automorphism_group(sub).generators[0]
    assert not induced_antichain_action(sub, phi, 3).is_identity
    ident = tuple(range(sub.size))
    assert induced_antichain_action(sub, ident, 3).is_identity
    in_ideal = {tuple(back[i] for i in a) for a in enumerate_antichains(sub, 3)}
    assert set(enumerate_antichains(p, 3)) == in_ideal
    assert nonreconstruction(p, 5, 3).holds


@pytest.mark.parametrize("n", range(2, 9))
def test_type_a_flip(n):
    p = build_poset(dynkin_diagram("A", n))
    g = automorphism_group(p)
    assert g.order == 2
    # the flip reverses the coefficient vector
    flip = tuple(p.root_index(r.coeffs[::-1]) for r in p.elements)
    assert is_automorphism(p, flip) and flip in g.elements


def test_d4_triality():
    assert automorphism_group(P("D4")).order == 6


@pytest.mark.parametrize("d", [d for d in default_diagrams() if build_poset(d).size <= 40], ids=str)
def test_unrestricted_crosscheck(d):
    p = build_poset(d)
    assert automorphism_count_unrestricted(p) == automorphism_group(p).order


@pytest.mark.parametrize("name", ["D4", "E6", "A5", "G2", "B2"])
def test_automorphisms_preserve_structure(name):
    p = P(name)
    dist = size_distribution(p)
    for phi in automorphism_group(p).elements:
        assert is_automorphism(p, phi) and preserves_structure(p, phi)
        assert all(p.heights[i] == p.heights[phi[i]] for i in range(p.size))
        assert size_distribution(p).counts == dist.counts


def test_isomorphism_between_b_and_c():
    assert find_isomorphism(P("B5"), P("C5")) is not None
    assert find_isomorphism(P("B5"), P("D5")) is None
