"""Chain covers and the ideal/coideal witness for the exceptional types.

A witness consists of an antichain X whose ideal I and an antichain Y
whose coideal J split the poset (after removing a few small elements),
chain covers of I and J of minimum size, and two maps f, g : Y -> X with
f(y), g(y) < y such that the bipartite graph on X u Y with the edges
y-f(y), y-g(y) is a forest.  From that data every z in J has an
incomparable set of width at most |X| - 2, so X is the unique maximal
|X|-antichain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .antichains import (
    Antichain, enumerate_antichains, is_antichain, maximal_antichains_of_size, width,
)
from .dynkin import DynkinDiagram
from .errors import ConclusionFailure, WitnessNotFound
from .poset import Poset, RootPoset, build_poset, iter_bits, level_profile, to_mask


@dataclass
class ChainCover:
    chains: list[list[int]]

    def __len__(self) -> int:
        return len(self.chains)

    def chain_of(self, element: int) -> int:
        for k, c in enumerate(self.chains):
            if element in c:
                return k
        raise KeyError(element)

    def is_valid(self, p: Poset, target: Iterable[int]) -> bool:
        seen: list[int] = [x for c in self.chains for x in c]
        if len(seen) != len(set(seen)) or set(seen) != set(target):
            return False
        return all(p.is_chain(c) for c in self.chains)


def min_chain_cover(p: Poset, subset: Iterable[int] | None = None) -> ChainCover:
    """Minimum chain cover (Dilworth) via maximum matching on the strict order.

    Each matched pair (x, y) makes y the successor of x in its chain.  The
    size is checked against ``width``.
    """
    elems = list(range(p.size)) if subset is None else sorted(set(subset))
    mask = to_mask(elems)
    g = nx.Graph()
    left = [("L", x) for x in elems]
    g.add_nodes_from(left)
    g.add_nodes_from(("R", y) for y in elems)
    for x in elems:
        for y in iter_bits(p.above[x] & mask & ~(1 << x)):
            g.add_edge(("L", x), ("R", y))
    matching = nx.bipartite.hopcroft_karp_matching(g, top_nodes=left)
    succ = {x: matching[("L", x)][1] for x in elems if ("L", x) in matching}
    has_pred = set(succ.values())
    chains = []
    for x in elems:
        if x in has_pred:
            continue
        chain = [x]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(chain)
    w = width(p, elems)[0]
    assert len(chains) == w, f"Dilworth mismatch: {len(chains)} chains, width {w}"
    return ChainCover(chains)


@dataclass
class LemmaWitness:
    diagram: str
    deleted: list[int]
    X: Antichain
    Y: Antichain
    I_cover: ChainCover
    J_cover: ChainCover
    f: dict[int, int]
    g: dict[int, int]
    notes: list[str] = field(default_factory=list)

    def universe(self, p: Poset) -> int:
        return p.full_mask & ~to_mask(self.deleted)

    def to_dict(self, p: RootPoset) -> dict:
        name = lambda i: "".join(map(str, p.elements[i].coeffs))  # noqa: E731
        return {
            "diagram": self.diagram,
            "deleted": [name(i) for i in self.deleted],
            "X": [name(i) for i in self.X],
            "Y": [name(i) for i in self.Y],
            "I_cover": [[name(i) for i in c] for c in self.I_cover.chains],
            "J_cover": [[name(i) for i in c] for c in self.J_cover.chains],
            "f": {name(y): name(x) for y, x in self.f.items()},
            "g": {name(y): name(x) for y, x in self.g.items()},
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, p: RootPoset, data: dict) -> LemmaWitness:
        idx = lambda s: p.root_index(tuple(int(c) for c in s))  # noqa: E731
        return cls(
            diagram=data["diagram"],
            deleted=[idx(s) for s in data["deleted"]],
            X=tuple(sorted(idx(s) for s in data["X"])),
            Y=tuple(sorted(idx(s) for s in data["Y"])),
            I_cover=ChainCover([[idx(s) for s in c] for c in data["I_cover"]]),
            J_cover=ChainCover([[idx(s) for s in c] for c in data["J_cover"]]),
            f={idx(k): idx(v) for k, v in data["f"].items()},
            g={idx(k): idx(v) for k, v in data["g"].items()},
            notes=list(data.get("notes", [])),
        )


def _is_forest(edges: Iterable[tuple]) -> bool:
    parent: dict = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        parent[ra] = rb
    return True


def forest_edges(w: LemmaWitness) -> list[tuple]:
    return [(("y", y), ("x", w.f[y])) for y in w.Y] + [(("y", y), ("x", w.g[y])) for y in w.Y]


def witness_failures(p: Poset, w: LemmaWitness) -> list[str]:
    """Every hypothesis of the criterion that ``w`` violates (empty if none)."""
    out: list[str] = []
    U = w.universe(p)
    X, Y = list(w.X), list(w.Y)
    n_x, m = len(X), len(Y)
    if to_mask(X + Y) & ~U:
        out.append("X or Y meets the deleted set")
    if not is_antichain(p, X):
        out.append("X is not an antichain")
    if not is_antichain(p, Y):
        out.append("Y is not an antichain")
    if not m < n_x:
        out.append(f"|Y| = {m} is not smaller than |X| = {n_x}")
    I = p.ideal_mask(to_mask(X)) & U
    J = p.coideal_mask(to_mask(Y)) & U
    if I & J or (I | J) != U:
        out.append("ideal(X) and coideal(Y) are not complementary")
    wi = width(p, iter_bits(I))[0]
    wj = width(p, iter_bits(J))[0]
    if wi != n_x:
        out.append(f"width(I) = {wi}, expected {n_x}")
    if wj != m:
        out.append(f"width(J) = {wj}, expected {m}")
    for name, cover, target, marks, size in (("I", w.I_cover, I, X, n_x), ("J", w.J_cover, J, Y, m)):
        if not cover.is_valid(p, iter_bits(target)):
            out.append(f"{name} cover is not a partition of {name} into chains")
        elif len(cover) != size:
            out.append(f"{name} cover has {len(cover)} chains, expected {size}")
        elif sorted(cover.chain_of(v) for v in marks) != list(range(size)):
            out.append(f"{name} cover chains do not each carry one marked element")
    for y in Y:
        fy, gy = w.f.get(y), w.g.get(y)
        if fy is None or gy is None:
            out.append(f"f or g undefined at {y}")
            continue
        if fy == gy:
            out.append(f"f({y}) = g({y})")
        if fy not in X or gy not in X:
            out.append(f"f({y}) or g({y}) not in X")
        if not (p.lt(fy, y) and p.lt(gy, y)):
            out.append(f"f({y}) or g({y}) not below {y}")
    if not out and not _is_forest(forest_edges(w)):
        out.append("the graph on X u Y is not a forest")
    return out


def check_witness(p: Poset, w: LemmaWitness) -> bool:
    return not witness_failures(p, w)


def merged_cover(p: Poset, w: LemmaWitness, y: int) -> tuple[list[list[int]], list[int], list[int]]:
    """An |X|-chain cover of the reduced poset built from the forest, for ``y`` in Y.

    Returns (chains, chain through J_y, chain I_{g(y)}).  Removing ``y``
    splits its tree into a part containing f(y) and one containing g(y);
    every other y' is matched to the child x of y' when its component is
    rooted at f(y), g(y), or an arbitrary x, and J_{y'} is glued on top of
    I_x.  J_y itself is glued onto I_{f(y)}.
    """
    T = nx.Graph()
    T.add_nodes_from(("x", x) for x in w.X)
    T.add_nodes_from(("y", v) for v in w.Y)
    T.add_edges_from(forest_edges(w))
    T.remove_node(("y", y))
    partner: dict[int, int] = {}
    for comp in nx.connected_components(T):
        xs = sorted(v[1] for v in comp if v[0] == "x")
        if ("x", w.f[y]) in comp:
            root = w.f[y]
        elif ("x", w.g[y]) in comp:
            root = w.g[y]
        else:
            root = xs[0]
        for parent_node, child in nx.bfs_edges(T.subgraph(comp), ("x", root)):
            if child[0] == "x":
                partner[parent_node[1]] = child[1]
    partner[y] = w.f[y]
    assert len(set(partner.values())) == len(partner), "partner map not injective"

    i_chain = {x: w.I_cover.chains[w.I_cover.chain_of(x)] for x in w.X}
    j_chain = {v: w.J_cover.chains[w.J_cover.chain_of(v)] for v in w.Y}
    glued = {x: v for v, x in partner.items()}
    chains = []
    through_y: list[int] = []
    for x in w.X:
        c = list(i_chain[x])
        if x in glued:
            c = c + list(j_chain[glued[x]])
        chains.append(c)
        if glued.get(x) == y:
            through_y = c
    return chains, through_y, list(i_chain[w.g[y]])


@dataclass
class ConclusionRecord:
    diagram: str
    n_prime: int
    checked: int
    constructive_ok: bool
    brute_force_ok: bool
    max_incomparable_width: int
    width_ok: bool
    unique_maximal: bool
    original_bound_ok: bool
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.constructive_ok and self.brute_force_ok and self.width_ok
                and self.unique_maximal and self.original_bound_ok)


def lemma_conclusion(p: Poset, w: LemmaWitness) -> ConclusionRecord:
    """Derive the width bounds from a checked witness, constructively and by brute force.

    Also checks the consequences: the reduced poset has width |X| with X as
    its unique maximal |X|-antichain, and (in the full poset) no element of
    J lies in an antichain of size |X|.
    """
    fails = witness_failures(p, w)
    if fails:
        raise ConclusionFailure("witness hypotheses fail: " + "; ".join(fails), fails)
    U = w.universe(p)
    n_x = len(w.X)
    J = p.coideal_mask(to_mask(w.Y)) & U
    rec = ConclusionRecord(w.diagram, n_x, 0, True, True, 0, True, True, True)
    covers: dict[int, tuple] = {}
    for y in w.Y:
        chains, c1, c2 = merged_cover(p, w, y)
        if len(chains) != n_x or not ChainCover(chains).is_valid(p, iter_bits(U)):
            rec.constructive_ok = False
            rec.failures.append(f"merged cover for y = {y} is invalid")
        covers[y] = (to_mask(c1), to_mask(c2))
    for z in iter_bits(J):
        rec.checked += 1
        y = next(v for v in w.Y if z in w.J_cover.chains[w.J_cover.chain_of(v)])
        incomparable = U & ~p.comparable[z]
        c1, c2 = covers[y]
        # z sits on c1; c2 lies entirely below g(y) < y <= z
        if not (c1 >> z & 1) or incomparable & (c1 | c2):
            rec.constructive_ok = False
            rec.failures.append(f"z = {z}: incomparable set meets the removed chains")
        wz = width(p, iter_bits(incomparable))[0]
        rec.max_incomparable_width = max(rec.max_incomparable_width, wz)
        if wz > n_x - 2:
            rec.brute_force_ok = False
            rec.failures.append(f"z = {z}: incomparable set has width {wz}")
        # full poset: the deleted roots are all below z, so the bound carries over
        wf = width(p, iter_bits(p.full_mask & ~p.comparable[z]))[0]
        if wf + 1 >= n_x:
            rec.original_bound_ok = False
            rec.failures.append(f"z = {z} lies in an {n_x}-antichain of the full poset")
    reduced, back = p.induced(iter_bits(U))
    rw = width(reduced)[0]
    rec.width_ok = rw == n_x
    maximal = [tuple(back[i] for i in a) for a in maximal_antichains_of_size(reduced, n_x)]
    rec.unique_maximal = maximal == [tuple(w.X)]
    if not rec.ok and not rec.failures:
        rec.failures.append("width or uniqueness check failed")
    return rec


# ---------------------------------------------------------------------------
# search

def _forest_maps(p: Poset, X: Antichain, Y: Antichain):
    """Backtracking for f, g with the forest condition; None if impossible."""
    ys = sorted(Y, key=lambda v: (-p.heights[v] if hasattr(p, "heights") else -p.grade[v], v))
    options = {y: [pair for pair in itertools.combinations(sorted(x for x in X if p.lt(x, y)), 2)]
               for y in ys}
    chosen: dict[int, tuple[int, int]] = {}

    def ok_so_far() -> bool:
        edges = [(("y", v), ("x", a)) for v, (a, b) in chosen.items()]
        edges += [(("y", v), ("x", b)) for v, (a, b) in chosen.items()]
        return _is_forest(edges)

    def extend(k: int) -> bool:
        if k == len(ys):
            return True
        y = ys[k]
        for pair in options[y]:
            chosen[y] = pair
            if ok_so_far() and extend(k + 1):
                return True
            del chosen[y]
        return False

    if not extend(0):
        return None
    return {y: a for y, (a, b) in chosen.items()}, {y: b for y, (a, b) in chosen.items()}


def _try_witness(p: RootPoset, X: Antichain, deleted: list[int]) -> LemmaWitness | None:
    U = p.full_mask & ~to_mask(deleted)
    I = p.ideal_mask(to_mask(X)) & U
    J = U & ~I
    Y = tuple(sorted(p.minimal_elements(iter_bits(J))))
    if not Y or len(Y) >= len(X):
        return None
    if width(p, iter_bits(I))[0] != len(X) or width(p, iter_bits(J))[0] != len(Y):
        return None
    maps = _forest_maps(p, X, Y)
    if maps is None:
        return None
    w = LemmaWitness(
        diagram=p.diagram.name, deleted=list(deleted), X=X, Y=Y,
        I_cover=min_chain_cover(p, iter_bits(I)), J_cover=min_chain_cover(p, iter_bits(J)),
        f=maps[0], g=maps[1],
    )
    return w if check_witness(p, w) else None


PREFERRED_DELETION = "c"


def find_witness(diagram: DynkinDiagram) -> LemmaWitness:
    """Search a witness for E6, E7, E8 or F4.

    X is tried first as Phi_h, then as the (n-1)-antichains inside
    Phi_h u Phi_{h+1}.  One simple root lying below all of Y is deleted;
    single simple roots are tried with c first, then in node order, and only if none works the
    set of all such simple roots.
    """
    if diagram.name not in ("E6", "E7", "E8", "F4"):
        raise ValueError(f"no exceptional witness for {diagram}")
    p = build_poset(diagram)
    n = diagram.rank
    h = level_profile(p).h
    phi_h = tuple(sorted(p.level_set(h)))
    band = sorted(p.level_set(h) | p.level_set(h + 1))
    candidates = [phi_h] + [a for a in enumerate_antichains(p, n - 1, within=band) if a != phi_h]
    node = lambda s: p.elements[s].coeffs.index(1)  # noqa: E731
    # node c first (the branch node for E), then node order
    simple = sorted(p.simple_roots, key=lambda s: (diagram.node_names[node(s)] != PREFERRED_DELETION, node(s)))
    for X in candidates:
        I = p.ideal_mask(to_mask(X))
        Y = p.minimal_elements(iter_bits(p.full_mask & ~I))
        below_all = [s for s in simple if all(p.lt(s, y) for y in Y)]
        options = [[s] for s in below_all]
        if len(below_all) > 1:
            options.append(below_all)
        for deleted in options:
            w = _try_witness(p, X, deleted)
            if w is None:
                continue
            names = [diagram.node_names[p.elements[s].coeffs.index(1)] for s in deleted]
            w.notes.append(f"deleted simple root(s): {', '.join(names)}")
            if X != phi_h:
                w.notes.append(f"X is not Phi_{h}; heights {sorted({p.heights[x] for x in X})}")
            return w
    raise WitnessNotFound(f"no witness for {diagram}")
