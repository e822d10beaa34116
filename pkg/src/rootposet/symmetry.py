"""Poset isomorphisms and automorphism groups by graded backtracking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import networkx as nx

from .antichains import Antichain, enumerate_antichains
from .poset import Poset

Permutation = tuple[int, ...]


def _signature(p: Poset, i: int, graded: bool) -> tuple:
    down = bin(p.below[i]).count("1")
    up = bin(p.above[i]).count("1")
    if not graded:
        return (down, up)
    lower = sum(1 for lo, hi in p.covers if hi == i)
    upper = sum(1 for lo, hi in p.covers if lo == i)
    return (p.grade[i], down, up, lower, upper)


def isomorphisms(p: Poset, q: Poset, graded: bool = True) -> Iterator[Permutation]:
    """Yield every order isomorphism ``p -> q`` as a tuple ``phi[i]``.

    With ``graded`` the candidates for ``i`` are restricted to elements of
    the same grade and cover degrees; every order isomorphism preserves
    these, so the restriction only prunes.
    """
    if p.size != q.size:
        return
    n = p.size
    sig_p = [_signature(p, i, graded) for i in range(n)]
    sig_q = [_signature(q, i, graded) for i in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return
    buckets: dict[tuple, list[int]] = {}
    for j, s in enumerate(sig_q):
        buckets.setdefault(s, []).append(j)
    # small buckets first, then by grade so neighbours get fixed early
    order = sorted(range(n), key=lambda i: (len(buckets[sig_p[i]]), p.grade[i], i))
    phi = [-1] * n
    used = [False] * n

    def extend(k: int) -> Iterator[Permutation]:
        if k == n:
            yield tuple(phi)
            return
        i = order[k]
        for j in buckets[sig_p[i]]:
            if used[j]:
                continue
            ok = True
            for prev in order[:k]:
                pj = phi[prev]
                if p.leq[prev, i] != q.leq[pj, j] or p.leq[i, prev] != q.leq[j, pj]:
                    ok = False
                    break
            if not ok:
                continue
            phi[i] = j
            used[j] = True
            yield from extend(k + 1)
            used[j] = False
            phi[i] = -1

    yield from extend(0)


def find_isomorphism(p: Poset, q: Poset) -> Permutation | None:
    return next(isomorphisms(p, q), None)


def is_automorphism(p: Poset, phi: Permutation) -> bool:
    n = p.size
    if sorted(phi) != list(range(n)):
        return False
    return all(p.leq[i, j] == p.leq[phi[i], phi[j]] for i in range(n) for j in range(n))


def _compose(a: Permutation, b: Permutation) -> Permutation:
    """(a o b)[i] = a[b[i]]."""
    return tuple(a[i] for i in b)


def generated_group(generators: Iterable[Permutation], n: int) -> set[Permutation]:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    gens = list(generators)
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = _compose(s, g)
                if h not in group:
                    group.add(h)
                    nxt.append(h)
        frontier = nxt
    return group


@dataclass
class AutomorphismGroup:
    generators: list[Permutation]
    order: int
    elements: list[Permutation]
    host_indices: list[int] | None = None

    def is_trivial(self) -> bool:
        return self.order == 1


def automorphism_group(p: Poset, within: Iterable[int] | None = None) -> AutomorphismGroup:
    """Full automorphism group of ``p`` (or of the subposet on ``within``).

    For a subposet the permutations act on the induced poset's own indices;
    ``host_indices`` maps them back to the host indices.
    """
    host_idx = None
    if within is not None:
        p, host_idx = p.induced(within)
    elements = sorted(isomorphisms(p, p))
    gens: list[Permutation] = []
    closure = {tuple(range(p.size))}
    for phi in elements:
        if phi not in closure:
            gens.append(phi)
            closure = generated_group(gens, p.size)
    assert len(closure) == len(elements), "automorphisms are not closed under composition"
    for phi in gens:
        assert is_automorphism(p, phi)
    return AutomorphismGroup(gens, len(elements), elements, host_idx)


def hasse_digraph(p: Poset) -> nx.DiGraph:
    g = nx.DiGraph()
    g.add_nodes_from(range(p.size))
    g.add_edges_from(p.covers)
    return g


def automorphism_count_unrestricted(p: Poset) -> int:
    """Independent count via VF2 on the Hasse digraph, no grading assumed."""
    g = hasse_digraph(p)
    return sum(1 for _ in nx.algorithms.isomorphism.DiGraphMatcher(g, g).isomorphisms_iter())


@dataclass
class AntichainAction:
    antichains: list[Antichain]
    permutation: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.permutation))

    def moved(self) -> list[tuple[Antichain, Antichain]]:
        return [(self.antichains[i], self.antichains[j])
                for i, j in enumerate(self.permutation) if i != j]


def induced_antichain_action(p: Poset, phi: Permutation, t: int) -> AntichainAction:
    """The permutation ``A -> phi(A)`` of the t-antichains of ``p``."""
    pool = list(enumerate_antichains(p, t))
    pos = {a: k for k, a in enumerate(pool)}
    perm = tuple(pos[tuple(sorted(phi[i] for i in a))] for a in pool)
    return AntichainAction(pool, perm)


def preserves_structure(p: Poset, phi: Permutation) -> bool:
    """Grade is preserved and antichains are mapped onto antichains."""
    if any(p.grade[i] != p.grade[phi[i]] for i in range(p.size)):
        return False
    pool = set(enumerate_antichains(p))
    return all(tuple(sorted(phi[i] for i in a)) in pool for a in pool)


@dataclass
class NonReconstruction:
    """Two posets with the same t-antichains but different symmetry.

    If the t-antichains of P coincide with those of an ideal I, an
    automorphism of I moving some t-antichain permutes the t-antichains of
    P nontrivially; if P itself has no nontrivial automorphism, that
    permutation cannot come from P, so P is not recoverable from its
    t-antichains together with their symmetries.
    """

    diagram: str
    t: int
    level: int
    poset_aut_order: int
    ideal_aut_order: int
    action_nontrivial: bool
    same_antichains: bool
    moved_example: tuple[Antichain, Antichain] | None

    @property
    def holds(self) -> bool:
        return (self.poset_aut_order == 1 and self.ideal_aut_order > 1
                and self.action_nontrivial and self.same_antichains)

    def statement(self) -> str:
        verdict = "holds" if self.holds else "fails"
        return (f"{self.diagram}: Aut(P) has order {self.poset_aut_order}, "
                f"Aut(ideal(Phi_{self.level})) has order {self.ideal_aut_order}, "
                f"its action on {self.t}-antichains is "
                f"{'non-identity' if self.action_nontrivial else 'identity'}, "
                f"A_{self.t}(P) {'=' if self.same_antichains else '!='} A_{self.t}(I); "
                f"non-reconstructibility {verdict}")


def nonreconstruction(p, level: int, t: int) -> NonReconstruction:
    """Check the ideal-symmetry argument for the ideal generated by a height level."""
    ideal_elems = sorted(p.ideal(p.level_set(level)))
    sub, back = p.induced(ideal_elems)
    g_full = automorphism_group(p)
    g_ideal = automorphism_group(sub)
    moved = None
    nontrivial = False
    for phi in g_ideal.elements:
        act = induced_antichain_action(sub, phi, t)
        if not act.is_identity:
            nontrivial = True
            a, b = act.moved()[0]
            moved = (tuple(back[i] for i in a), tuple(back[i] for i in b))
            break
    in_ideal = {tuple(back[i] for i in a) for a in enumerate_antichains(sub, t)}
    same = set(enumerate_antichains(p, t)) == in_ideal
    return NonReconstruction(p.diagram.name, t, level, g_full.order, g_ideal.order,
                             nontrivial, same, moved)
