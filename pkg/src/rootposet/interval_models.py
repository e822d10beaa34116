"""Interval models of the classical root posets and the chains used on them.

Type A_n is modelled by the intervals ``[i, j]`` of ``1..n`` under
inclusion; B_n and C_n by the intervals of ``1..2n-1`` with ``i + j <= 2n``.
The model of D_{n+1} adds a primed copy ``[i, n]'`` of each interval ending
at the middle point ``n``; the projection forgetting primes is the folding
map onto the B/C model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil, floor

from .antichains import width
from .dynkin import DynkinDiagram, Root, dynkin_diagram
from .errors import CoverFailure, NotARoot
from .poset import Poset, RootPoset, build_poset, iter_bits, to_mask
from .symmetry import find_isomorphism


@dataclass(frozen=True, order=True)
class IntervalLabel:
    i: int
    j: int
    primed: bool = False

    @property
    def length(self) -> int:
        """``j - i``, the poset height of the interval."""
        return self.j - self.i

    def unprimed(self) -> IntervalLabel:
        return IntervalLabel(self.i, self.j)

    def contains(self, other: IntervalLabel) -> bool:
        return self.i <= other.i and other.j <= self.j

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]" + ("'" if self.primed else "")


@dataclass
class IntervalModel:
    kind: str  # "A", "BC" or "D"
    n: int  # ambient parameter: A_n, B_n/C_n, or D_{n+1}
    labels: list[IntervalLabel]
    poset: Poset
    index: dict[IntervalLabel, int] = field(init=False)

    def __post_init__(self):
        self.index = {lab: k for k, lab in enumerate(self.labels)}

    @property
    def top(self) -> int:
        """Largest right end point available in the ambient A-type model."""
        return self.n if self.kind == "A" else 2 * self.n - 1

    def __contains__(self, lab: IntervalLabel) -> bool:
        return lab in self.index

    def admits(self, i: int, j: int) -> bool:
        return IntervalLabel(i, j) in self.index

    def indices(self, labels) -> list[int]:
        return sorted(self.index[lab] for lab in labels if lab in self.index)


def _sort_key(lab: IntervalLabel):
    return (lab.length, lab.i, lab.primed)


def interval_poset_A(n: int) -> IntervalModel:
    labels = sorted((IntervalLabel(i, j) for i in range(1, n + 1) for j in range(i, n + 1)), key=_sort_key)
    p = Poset.from_relation(labels, lambda x, y: y.contains(x))
    return IntervalModel("A", n, labels, p)


def interval_poset_BC(n: int) -> IntervalModel:
    labels = sorted(
        (IntervalLabel(i, j) for i in range(1, 2 * n) for j in range(i, 2 * n) if i + j <= 2 * n),
        key=_sort_key,
    )
    p = Poset.from_relation(labels, lambda x, y: y.contains(x))
    return IntervalModel("BC", n, labels, p)


def _d_leq(n: int):
    def le(x: IntervalLabel, y: IntervalLabel) -> bool:
        # the two copies share every interval not ending at n
        if x.primed and not y.primed and y.j == n:
            return False
        if y.primed and not x.primed and x.j == n:
            return False
        return y.contains(x)
    return le


def interval_poset_D(m: int) -> IntervalModel:
    """Model of the root poset of D_m, built over the parameter n = m - 1."""
    n = m - 1
    base = interval_poset_BC(n).labels
    primes = [IntervalLabel(i, n, True) for i in range(1, n + 1)]
    labels = sorted(base + primes, key=_sort_key)
    p = Poset.from_relation(labels, _d_leq(n))
    return IntervalModel("D", n, labels, p)


# ---------------------------------------------------------------------------
# the projection pi

def projection_pi(d_root: Root, rank: int) -> Root:
    """Fold a positive root of D_rank onto B_{rank-1} by adding the fork coordinates.

    In node order the fork is the last chain node and ``u``; the image is
    written in the B labelling, whose node ``a`` is the folded one.
    """
    x = d_root.coeffs
    chain = list(x[: rank - 2])
    image = Root(tuple([x[rank - 2] + x[rank - 1]] + chain[::-1]))
    target = build_poset(dynkin_diagram("B", rank - 1))
    if image not in target.index:
        raise NotARoot(f"pi({d_root}) = {image} is not a root of B{rank - 1}")
    return image


def model_pi(lab: IntervalLabel) -> IntervalLabel:
    return lab.unprimed()


@dataclass
class PiReport:
    rank: int
    order_preserving: bool
    surjective: bool
    fiber_sizes: dict[str, int]
    fibers_as_stated: bool
    height_preserved: bool
    model_fibers_as_stated: bool
    model_order_preserving: bool

    @property
    def ok(self) -> bool:
        return (self.order_preserving and self.surjective and self.fibers_as_stated
                and self.height_preserved and self.model_fibers_as_stated
                and self.model_order_preserving)


def check_projection(rank: int) -> PiReport:
    """Check pi on actual roots of D_rank and on the interval model."""
    dp = build_poset(dynkin_diagram("D", rank))
    bp = build_poset(dynkin_diagram("B", rank - 1))
    img = [bp.index[projection_pi(r, rank)] for r in dp.elements]
    order_ok = all(
        bp.le(img[a], img[b]) for a in range(dp.size) for b in iter_bits(dp.above[a]))
    fibers = [0] * bp.size
    for k in img:
        fibers[k] += 1
    # two preimages exactly for the roots with folded coefficient 1
    stated = all((fibers[k] == 2) == (bp.elements[k].coeffs[0] == 1) for k in range(bp.size))
    height_ok = all(r.height == bp.elements[img[a]].height for a, r in enumerate(dp.elements))

    model = interval_poset_D(rank)
    n = model.n
    base = interval_poset_BC(n)
    mfib: dict[IntervalLabel, int] = {}
    for lab in model.labels:
        mfib[model_pi(lab)] = mfib.get(model_pi(lab), 0) + 1
    m_stated = set(mfib) == set(base.labels) and all(
        (c == 2) == (lab.j == n) for lab, c in mfib.items())
    mp = model.poset
    m_order = all(
        base.poset.le(base.index[model_pi(model.labels[a])], base.index[model_pi(model.labels[b])])
        for a in range(mp.size) for b in iter_bits(mp.above[a]))
    return PiReport(
        rank=rank,
        order_preserving=order_ok,
        surjective=all(f > 0 for f in fibers),
        fiber_sizes={str(bp.elements[k]): f for k, f in enumerate(fibers)},
        fibers_as_stated=stated,
        height_preserved=height_ok,
        model_fibers_as_stated=m_stated,
        model_order_preserving=m_order,
    )


# ---------------------------------------------------------------------------
# chains

@dataclass
class ChainFamily:
    chains: list[list[int]]
    purpose: str
    labels: list[list[IntervalLabel]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.chains)

    def union(self) -> set[int]:
        return {i for c in self.chains for i in c}


def chain_X(model: IntervalModel, i: int, j: int) -> list[int]:
    """Elements comparable with [i, j]."""
    k = model.index[IntervalLabel(i, j)]
    return list(iter_bits(model.poset.comparable[k]))


def _L_labels(i: int, j: int) -> list[IntervalLabel]:
    return [IntervalLabel(i, t) for t in range(i, j + 1)] + [IntervalLabel(s, j) for s in range(1, i)]


def _R_labels(i: int, j: int, top: int) -> list[IntervalLabel]:
    return [IntervalLabel(s, j) for s in range(i + 1, j + 1)] + [IntervalLabel(i, t) for t in range(j, top + 1)]


def chain_L(model: IntervalModel, i: int, j: int) -> list[int]:
    return model.indices(_L_labels(i, j))


def chain_R(model: IntervalModel, i: int, j: int) -> list[int]:
    return model.indices(_R_labels(i, j, model.top))


def _preimage(model: IntervalModel, labels: list[IntervalLabel]) -> list[int]:
    want = set(labels)
    return sorted(k for k, lab in enumerate(model.labels) if model_pi(lab) in want)


def pi_preimage_L(model: IntervalModel, i: int, j: int) -> list[int]:
    return _preimage(model, _L_labels(i, j))


def pi_preimage_R(model: IntervalModel, i: int, j: int) -> list[int]:
    return _preimage(model, _R_labels(i, j, 2 * model.n - 1))


def cover_family_size(model: IntervalModel, a: int) -> int:
    if model.kind == "A":
        return model.n - a - 1
    return model.n - ceil(a / 2) - 1


def cover_complement(model: IntervalModel, i: int, j: int) -> ChainFamily:
    """Chains covering the elements incomparable with [i, j].

    Uses L[s, s+a] for s < i and R[s, s+a] for the admissible s > i.
    Raises CoverFailure if a set is not a chain, an element is missed, or
    the family size differs from the counting argument.
    """
    if model.kind not in ("A", "BC"):
        raise ValueError("cover_complement applies to the A and BC models")
    a = j - i
    p = model.poset
    fam: list[list[int]] = []
    labs: list[list[IntervalLabel]] = []
    for s in range(1, i):
        fam.append(chain_L(model, s, s + a))
        labs.append([model.labels[k] for k in fam[-1]])
    s = i + 1
    while model.admits(s, s + a):
        fam.append(chain_R(model, s, s + a))
        labs.append([model.labels[k] for k in fam[-1]])
        s += 1
    for c in fam:
        if not p.is_chain(c):
            raise CoverFailure(f"{model.kind}{model.n}: not a chain", c)
    k = model.index[IntervalLabel(i, j)]
    outside = p.full_mask & ~p.comparable[k]
    missed = outside & ~to_mask(x for c in fam for x in c)
    if missed:
        bad = next(iter_bits(missed))
        raise CoverFailure(f"{model.kind}{model.n}: {model.labels[bad]} not covered", model.labels[bad])
    if len(fam) != cover_family_size(model, a):
        raise CoverFailure(f"family has {len(fam)} chains, expected {cover_family_size(model, a)}", fam)
    return ChainFamily(fam, "X-complement cover", labs)


def antichain_bound(model: IntervalModel, a: int) -> int:
    """Largest antichain through an element of length a allowed by the cover."""
    if model.kind == "A":
        return model.n - a
    return floor(model.n - a / 2)


def max_antichain_through(p: Poset, k: int) -> int:
    return 1 + width(p, iter_bits(p.full_mask & ~p.comparable[k]))[0]


def is_almost_chain(p: Poset, elements) -> bool:
    elems = sorted(set(elements))
    bad = 0
    for x, a in enumerate(elems):
        for b in elems[x + 1:]:
            if not p.comparable[a] >> b & 1:
                bad += 1
                if bad > 1:
                    return False
    return True


# ---------------------------------------------------------------------------
# identification with the generated root posets

@dataclass
class IsoResult:
    ok: bool
    bijection: dict[str, str] | None = None


def iso_check(model: IntervalModel | Poset, root_poset: RootPoset) -> IsoResult:
    p = model.poset if isinstance(model, IntervalModel) else model
    labels = model.labels if isinstance(model, IntervalModel) else p.labels
    if p.size != root_poset.size:
        return IsoResult(False)
    phi = find_isomorphism(p, root_poset)
    if phi is None:
        return IsoResult(False)
    return IsoResult(True, {str(labels[k]): str(root_poset.elements[v]) for k, v in enumerate(phi)})


def model_for(diagram: DynkinDiagram) -> IntervalModel:
    if diagram.family == "A":
        return interval_poset_A(diagram.rank)
    if diagram.family in "BC":
        return interval_poset_BC(diagram.rank)
    if diagram.family == "D":
        return interval_poset_D(diagram.rank)
    raise ValueError(f"no interval model for {diagram}")


@dataclass
class ModelsReport:
    diagram: str
    kind: str
    isomorphic: bool
    covers_ok: bool = True
    bound_holds: bool = True
    bound_attained: bool = True
    long_elements_excluded: bool = True
    almost_chains_ok: bool = True
    almost_chain_failures: list[tuple[str, int, int]] = field(default_factory=list)
    root_level_failures: list[tuple[str, int, int]] = field(default_factory=list)
    preimages_meet_antichains_twice: bool = True
    projection: PiReport | None = None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        proj = self.projection is None or self.projection.ok
        return (self.isomorphic and self.covers_ok and self.bound_holds and self.bound_attained
                and self.long_elements_excluded and self.almost_chains_ok
                and self.preimages_meet_antichains_twice and proj)


def verify_models(diagram: DynkinDiagram) -> ModelsReport:
    """Re-run the case arguments for a classical diagram on its interval model.

    A and BC: every cover_complement family is checked, the antichain bound
    through each element is compared with a brute-force maximum, and long
    elements are shown to miss every (rank-1)-antichain.  D: the projection,
    the almost-chain property of the preimages, and the bound
    ``n - ceil(a/2) + 1`` on antichains through an element.
    """
    model = model_for(diagram)
    rank = diagram.rank
    p = model.poset
    rep = ModelsReport(diagram.name, model.kind, iso_check(model, build_poset(diagram)).ok)
    if not rep.isomorphic:
        rep.failures.append("model is not isomorphic to the root poset")

    if model.kind in ("A", "BC"):
        cutoff = 2 if model.kind == "A" else 3
        for k, lab in enumerate(model.labels):
            a = lab.length
            try:
                cover_complement(model, lab.i, lab.j)
            except CoverFailure as exc:
                rep.covers_ok = False
                rep.failures.append(str(exc))
            best = max_antichain_through(p, k)
            bound = antichain_bound(model, a)
            if best > bound:
                rep.bound_holds = False
                rep.failures.append(f"{lab}: antichain of size {best} > {bound}")
            # every interval of the same length forms an antichain of size bound
            same = [x for x in range(p.size) if model.labels[x].length == a]
            if len(same) != bound:
                rep.bound_attained = False
                rep.failures.append(f"length {a}: {len(same)} intervals, bound {bound}")
            if a >= cutoff and best >= rank - 1:
                rep.long_elements_excluded = False
                rep.failures.append(f"{lab} lies in a {best}-antichain")
        return rep

    n = model.n
    rep.projection = check_projection(rank)
    for fam, s, a, pre in _d_preimages(model):
        if not is_almost_chain(p, pre):
            rep.almost_chains_ok = False
            rep.almost_chain_failures.append((fam, s, a))
        if width(p, pre)[0] > 2:
            rep.preimages_meet_antichains_twice = False
    if rep.almost_chain_failures:
        rep.failures.append(
            f"{len(rep.almost_chain_failures)} preimages of L/R chains are not almost chains")
    rep.root_level_failures = root_level_almost_chain_failures(rank)
    for k, lab in enumerate(model.labels):
        a = lab.length
        best = max_antichain_through(p, k)
        if best > n - ceil(a / 2) + 1:
            rep.bound_holds = False
            rep.failures.append(f"{lab}: antichain of size {best}")
        if a >= 3 and best >= n:
            rep.long_elements_excluded = False
            rep.failures.append(f"{lab} lies in a {best}-antichain")
    return rep


def _used_in_argument(base: IntervalModel, fam: str, s: int, a: int) -> bool:
    """L[s, s+a] enters the count for some [i, i+a] with i > s, R[s, s+a] for some i < s."""
    if fam == "L":
        return any(base.admits(i, i + a) for i in range(s + 1, base.top + 1))
    return s >= 2


def _d_chains(base: IntervalModel):
    """(family, s, a, chain) for every L/R chain the D-case count uses."""
    for lab in base.labels:
        for fam, chain in (("L", chain_L), ("R", chain_R)):
            if _used_in_argument(base, fam, lab.i, lab.length):
                yield fam, lab.i, lab.length, chain(base, lab.i, lab.j)


def _d_preimages(model: IntervalModel):
    """(family, s, a, preimage) for the chains L[s, s+a], R[s, s+a] used in the D case."""
    base = interval_poset_BC(model.n)
    want_of = {k: model_pi(lab) for k, lab in enumerate(model.labels)}
    for fam, s, a, chain in _d_chains(base):
        targets = {base.labels[k] for k in chain}
        yield fam, s, a, sorted(k for k, lab in want_of.items() if lab in targets)


def root_level_almost_chain_failures(rank: int) -> list[tuple[str, int, int]]:
    """The almost-chain test redone on actual roots of D_rank, without the primed model.

    The BC model is matched to the roots of B_{rank-1} by isomorphism search
    (the match is unique, the poset having no automorphisms for rank >= 4),
    chains are pulled back along ``projection_pi``.
    """
    n = rank - 1
    base = interval_poset_BC(n)
    bp = build_poset(dynkin_diagram("B", n))
    dp = build_poset(dynkin_diagram("D", rank))
    phi = find_isomorphism(base.poset, bp)
    image = [bp.index[projection_pi(r, rank)] for r in dp.elements]
    out = []
    for fam, s, a, chain in _d_chains(base):
        targets = {phi[k] for k in chain}
        pre = [x for x in range(dp.size) if image[x] in targets]
        if not is_almost_chain(dp, pre):
            out.append((fam, s, a))
    return out
