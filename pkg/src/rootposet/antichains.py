"""Antichain enumeration, width, domination, and the main theorem check."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .dynkin import DynkinDiagram
from .errors import VerificationFailure
from .poset import Poset, RootPoset, build_poset, iter_bits, level_profile, to_mask

Antichain = tuple[int, ...]

# h(Delta): height of the distinguished (n-1)-antichain, per family
H_TABLE = {"A": 2, "B": 3, "C": 3, "D": 3, "E6": 4, "E7": 5, "E8": 7, "F4": 5, "G2": 5}


def expected_h(diagram: DynkinDiagram) -> int:
    return H_TABLE.get(diagram.name, H_TABLE.get(diagram.family))


def is_antichain(p: Poset, elements: Iterable[int]) -> bool:
    elems = list(elements)
    mask = to_mask(elems)
    if len(elems) != bin(mask).count("1"):
        return False
    return all(not (p.comparable[i] & mask & ~(1 << i)) for i in elems)


def _popcount(m: int) -> int:
    return bin(m).count("1")


def enumerate_antichains(p: Poset, size: int | None = None,
                         within: Iterable[int] | None = None) -> Iterator[Antichain]:
    """Yield antichains (sorted tuples) in lexicographic order.

    With ``size`` only antichains of that cardinality are produced; ``within``
    restricts to an induced subset.
    """
    start = p.full_mask if within is None else to_mask(within)
    comp = p.comparable

    def grow(chosen: Antichain, cand: int) -> Iterator[Antichain]:
        k = len(chosen)
        if size is None or k == size:
            yield chosen
        if size is not None and (k == size or k + _popcount(cand) < size):
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            # cand now holds only indices > i
            yield from grow(chosen + (i,), cand & ~comp[i])

    yield from grow((), start)


def count_antichains(p: Poset, size: int | None = None, within=None) -> int:
    return sum(1 for _ in enumerate_antichains(p, size, within))


def width(p: Poset, within: Iterable[int] | None = None) -> tuple[int, Antichain]:
    """Maximum antichain size with a witness, by branch and bound.

    The incumbent starts from the largest grade layer inside the subset.
    """
    mask = p.full_mask if within is None else to_mask(within)
    if not mask:
        return 0, ()
    layers: dict[int, list[int]] = {}
    for i in iter_bits(mask):
        layers.setdefault(p.grade[i], []).append(i)
    best = max(layers.values(), key=len)
    best_t: list[Antichain] = [tuple(sorted(best))]
    comp = p.comparable

    def grow(chosen: Antichain, cand: int) -> None:
        if len(chosen) > len(best_t[0]):
            best_t[0] = chosen
        while cand:
            if len(chosen) + _popcount(cand) <= len(best_t[0]):
                return
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            grow(chosen + (i,), cand & ~comp[i])

    grow((), mask)
    return len(best_t[0]), best_t[0]


def dominated_by(p: Poset, a: Iterable[int], b: Iterable[int]) -> bool:
    """True iff every element of ``a`` lies below some element of ``b``."""
    return not (to_mask(a) & ~p.ideal_mask(to_mask(b)))


def _domination_matrix(p: Poset, antichains: list[Antichain]) -> np.ndarray:
    """``D[i, j]`` true iff antichain i lies in the ideal of antichain j."""
    k, n = len(antichains), p.size
    members = np.zeros((k, n), dtype=np.float32)
    outside = np.ones((k, n), dtype=np.float32)
    for r, a in enumerate(antichains):
        members[r, list(a)] = 1.0
        outside[r, list(iter_bits(p.ideal_mask(to_mask(a))))] = 0.0
    out = np.empty((k, k), dtype=bool)
    step = 2048
    for lo in range(0, k, step):
        out[lo:lo + step] = (members[lo:lo + step] @ outside.T) == 0
    return out


def maximal_antichains_of_size(p: Poset, t: int) -> list[Antichain]:
    """t-antichains not contained in the ideal of any other t-antichain."""
    pool = list(enumerate_antichains(p, t))
    if not pool:
        return []
    dom = _domination_matrix(p, pool)
    np.fill_diagonal(dom, False)
    return [a for a, row in zip(pool, dom) if not row.any()]


@dataclass(frozen=True)
class SizeDistribution:
    counts: tuple[int, ...]

    @property
    def width(self) -> int:
        return len(self.counts) - 1

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_symmetric(self) -> bool:
        return self.counts == self.counts[::-1]


def size_distribution(p: Poset, within=None) -> SizeDistribution:
    counts: dict[int, int] = {}
    for a in enumerate_antichains(p, within=within):
        counts[len(a)] = counts.get(len(a), 0) + 1
    return SizeDistribution(tuple(counts.get(t, 0) for t in range(max(counts) + 1)))


def check_distribution_identities(p: RootPoset, dist: SizeDistribution | None = None) -> dict:
    """|A_t| = |A_{n-t}| for all t and |A_{n-1}| = |Phi_+|."""
    dist = dist or size_distribution(p)
    n = p.diagram.rank
    return {
        "width_is_rank": dist.width == n,
        "symmetric": dist.width == n and all(
            dist.counts[t] == dist.counts[n - t] for t in range(n + 1)),
        "corank_one_equals_roots": dist.width == n and dist.counts[n - 1] == p.size,
    }


@dataclass
class E6Exception:
    heights: list[int]
    within_h_and_next: bool
    both_heights_present: bool
    others_dominated_by_phi_h: bool

    @property
    def ok(self) -> bool:
        return self.within_h_and_next and self.both_heights_present and self.others_dominated_by_phi_h


@dataclass
class TheoremReport:
    diagram: str
    h: int
    expected_h: int
    phi_h: Antichain
    phi_h_is_antichain: bool
    maximal_list: list[Antichain]
    unique: bool
    equals_phi_h: bool
    all_dominated_by_phi_h: bool
    e6_exception: E6Exception | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        base = self.h == self.expected_h and self.phi_h_is_antichain and self.unique
        if self.e6_exception is not None:
            return base and not self.equals_phi_h and self.e6_exception.ok
        return base and self.equals_phi_h and self.all_dominated_by_phi_h


def verify_main_theorem(diagram: DynkinDiagram) -> TheoremReport:
    """Check the maximal (n-1)-antichain statement for one diagram.

    Raises VerificationFailure carrying a counterexample when a clause fails.
    """
    if diagram.rank < 2:
        raise ValueError("the theorem needs rank >= 2")
    p = build_poset(diagram)
    n = diagram.rank
    h = level_profile(p).h
    want = expected_h(diagram)
    if h != want:
        raise VerificationFailure(f"{diagram}: h = {h}, table says {want}", h)
    phi_h = tuple(sorted(p.level_set(h)))
    if len(phi_h) != n - 1 or not is_antichain(p, phi_h):
        raise VerificationFailure(f"{diagram}: Phi_{h} is not an (n-1)-antichain", phi_h)

    pool = list(enumerate_antichains(p, n - 1))
    maximal = maximal_antichains_of_size(p, n - 1)
    not_dominated = [a for a in pool if not dominated_by(p, a, phi_h)]
    report = TheoremReport(
        diagram=diagram.name, h=h, expected_h=want, phi_h=phi_h, phi_h_is_antichain=True,
        maximal_list=maximal, unique=len(maximal) == 1,
        equals_phi_h=maximal == [phi_h],
        all_dominated_by_phi_h=not not_dominated,
    )
    if diagram.name != "E6":
        if not report.equals_phi_h:
            bad = next(a for a in maximal if a != phi_h)
            raise VerificationFailure(f"{diagram}: maximal (n-1)-antichain other than Phi_{h}", bad)
        if not_dominated:
            raise VerificationFailure(f"{diagram}: antichain not below Phi_{h}", not_dominated[0])
        return report

    if not report.unique:
        raise VerificationFailure(f"{diagram}: {len(maximal)} maximal (n-1)-antichains", maximal)
    top = maximal[0]
    heights = sorted({p.heights[i] for i in top})
    others = [a for a in not_dominated if a != top]
    report.e6_exception = E6Exception(
        heights=heights,
        within_h_and_next=set(heights) <= {h, h + 1},
        both_heights_present=set(heights) == {h, h + 1},
        others_dominated_by_phi_h=not others,
    )
    if report.equals_phi_h or not report.e6_exception.ok:
        raise VerificationFailure(f"{diagram}: exceptional clause fails", top)
    report.notes.append(f"Phi_{h} is not maximal; the maximal antichain has heights {heights}")
    return report


def several_maximal_examples() -> list[Poset]:
    """The two width-3 posets with several maximal 2-antichains."""
    three_points = Poset(np.eye(3, dtype=bool))
    claw = Poset.from_covers(4, [(0, 3), (1, 3), (2, 3)])
    return [three_points, claw]
