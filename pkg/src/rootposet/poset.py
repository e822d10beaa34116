"""Finite posets, root posets, level profiles and the printed level tables."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .dynkin import DynkinDiagram, Root, coxeter_number, generate_positive_roots
from .errors import IdentityViolation, UnsupportedDiagram


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


class Poset:
    """Immutable finite poset on ``range(size)``.

    ``leq[i, j]`` is true iff ``i <= j``.  Down-sets, up-sets and
    comparability are also kept as int bitmasks, which is what the
    enumeration code works with.
    """

    def __init__(self, leq, labels: Sequence | None = None):
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        assert leq.shape == (n, n), f"leq must be square, got {leq.shape}"
        leq.flags.writeable = False
        self.leq = leq
        self.size = n
        self.labels = list(labels) if labels is not None else list(range(n))
        self.below = [to_mask(np.flatnonzero(leq[:, i]).tolist()) for i in range(n)]
        self.above = [to_mask(np.flatnonzero(leq[i, :]).tolist()) for i in range(n)]
        self.comparable = [self.below[i] | self.above[i] for i in range(n)]
        self.full_mask = (1 << n) - 1

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return f"{type(self).__name__}(size={self.size})"

    @classmethod
    def from_relation(cls, labels: Sequence, le) -> Poset:
        """Build from a callable ``le(x, y)`` on labels."""
        n = len(labels)
        leq = np.zeros((n, n), dtype=bool)
        for i, x in enumerate(labels):
            for j, y in enumerate(labels):
                leq[i, j] = bool(le(x, y))
        return cls(leq, labels)

    @classmethod
    def from_covers(cls, n: int, covers: Iterable[tuple[int, int]], labels=None) -> Poset:
        """Reflexive-transitive closure of a cover relation given as (lo, hi) pairs."""
        leq = np.eye(n, dtype=bool)
        for lo, hi in covers:
            leq[lo, hi] = True
        # Warshall
        for k in range(n):
            leq |= np.outer(leq[:, k], leq[k, :])
        return cls(leq, labels)

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.leq[x, y])

    def is_partial_order(self) -> bool:
        m = self.leq
        if not m.diagonal().all():
            return False
        if (m & m.T & ~np.eye(self.size, dtype=bool)).any():
            return False
        closure = (m.astype(np.int64) @ m.astype(np.int64)) > 0
        return bool((closure == m).all())

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        """Hasse edges (lo, hi), sorted."""
        out = []
        for hi in range(self.size):
            strict = self.below[hi] & ~(1 << hi)
            for lo in iter_bits(strict):
                # lo is covered by hi iff nothing strictly between
                if not (self.above[lo] & strict & ~(1 << lo)):
                    out.append((lo, hi))
        return sorted(out)

    @cached_property
    def grade(self) -> list[int]:
        """Length of the longest chain ending at each element (minimal elements: 1)."""
        g = [0] * self.size
        order = sorted(range(self.size), key=lambda i: bin(self.below[i]).count("1"))
        for i in order:
            strict = self.below[i] & ~(1 << i)
            g[i] = 1 + max((g[j] for j in iter_bits(strict)), default=0)
        return g

    def ideal_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.below[i]
        return out

    def coideal_mask(self, mask: int) -> int:
        out = 0
        for i in iter_bits(mask):
            out |= self.above[i]
        return out

    def ideal(self, elements: Iterable[int]) -> frozenset[int]:
        return frozenset(iter_bits(self.ideal_mask(to_mask(elements))))

    def coideal(self, elements: Iterable[int]) -> frozenset[int]:
        return frozenset(iter_bits(self.coideal_mask(to_mask(elements))))

    def incomparable_set(self, z: int) -> frozenset[int]:
        return frozenset(iter_bits(self.full_mask & ~self.comparable[z]))

    def minimal_elements(self, elements: Iterable[int] | None = None) -> list[int]:
        mask = self.full_mask if elements is None else to_mask(elements)
        return [i for i in iter_bits(mask) if not (self.below[i] & mask & ~(1 << i))]

    def maximal_elements(self, elements: Iterable[int] | None = None) -> list[int]:
        mask = self.full_mask if elements is None else to_mask(elements)
        return [i for i in iter_bits(mask) if not (self.above[i] & mask & ~(1 << i))]

    def is_chain(self, elements: Iterable[int]) -> bool:
        elems = list(elements)
        mask = to_mask(elems)
        return all((mask & ~self.comparable[i]) == 0 for i in elems)

    def induced(self, elements: Iterable[int]) -> tuple[Poset, list[int]]:
        """Induced subposet; returns it with the list mapping new index -> old index."""
        idx = sorted(set(elements))
        sub = self.leq[np.ix_(idx, idx)]
        return Poset(sub, [self.labels[i] for i in idx]), idx

    def dual(self) -> Poset:
        return Poset(self.leq.T, self.labels)


def leq(p: Poset, x: int, y: int) -> bool:
    return p.le(x, y)


def ideal(p: Poset, elements: Iterable[int]) -> frozenset[int]:
    return p.ideal(elements)


def coideal(p: Poset, elements: Iterable[int]) -> frozenset[int]:
    return p.coideal(elements)


def incomparable_set(p: Poset, z: int) -> frozenset[int]:
    return p.incomparable_set(z)


class RootPoset(Poset):
    """The positive roots of a Dynkin diagram, ordered componentwise."""

    def __init__(self, diagram: DynkinDiagram):
        self.diagram = diagram
        self.elements: list[Root] = generate_positive_roots(diagram)
        coeffs = np.array([r.coeffs for r in self.elements], dtype=np.int64)
        # x <= y iff y - x >= 0 componentwise
        leq = (coeffs[None, :, :] >= coeffs[:, None, :]).all(axis=2)
        super().__init__(leq, labels=self.elements)
        self.index = {r: i for i, r in enumerate(self.elements)}
        self.heights = [r.height for r in self.elements]

    def __repr__(self) -> str:
        return f"RootPoset({self.diagram.name}, size={self.size})"

    @cached_property
    def hasse(self) -> list[tuple[int, int, int]]:
        """Cover edges (lower, upper, simple root index)."""
        out = []
        for lo, hi in self.covers:
            diff = (self.elements[hi] - self.elements[lo]).coeffs
            assert sorted(diff) == [0] * (len(diff) - 1) + [1], (lo, hi, diff)
            out.append((lo, hi, diff.index(1)))
        return out

    def root_index(self, coeffs: Sequence[int]) -> int | None:
        return self.index.get(Root(tuple(coeffs)))

    def level_set(self, t: int) -> frozenset[int]:
        return frozenset(i for i, h in enumerate(self.heights) if h == t)

    @property
    def simple_roots(self) -> list[int]:
        return sorted(self.level_set(1))

    @property
    def top(self) -> int:
        return self.size - 1


@lru_cache(maxsize=None)
def build_poset(diagram: DynkinDiagram) -> RootPoset:
    return RootPoset(diagram)


def level_set(p: RootPoset, t: int) -> frozenset[int]:
    return p.level_set(t)


@dataclass(frozen=True)
class LevelProfile:
    r: tuple[int, ...]  # r[i-1] = |Phi_i|, for i = 1..g
    g: int
    h: int

    def count(self, i: int) -> int:
        return self.r[i - 1] if 1 <= i <= len(self.r) else 0


def level_profile(p: RootPoset) -> LevelProfile:
    n = p.diagram.rank
    g = coxeter_number(p.diagram)
    r = [0] * g
    for t in p.heights:
        r[t - 1] += 1
    prof = LevelProfile(tuple(r), g, 0)
    for i in range(1, g + 1):
        if prof.count(i) + prof.count(g - i + 1) != n:
            raise IdentityViolation(
                f"{p.diagram}: r({i}) + r({g - i + 1}) = "
                f"{prof.count(i)} + {prof.count(g - i + 1)} != {n}"
            )
    hs = [i for i in range(1, g + 1) if prof.count(i) == n - 1]
    return LevelProfile(tuple(r), g, max(hs) if hs else 0)


# ---------------------------------------------------------------------------
# printed level tables

_OPS = {"=": operator.eq, "<=": operator.le, ">=": operator.ge}


@dataclass(frozen=True)
class Condition:
    coordinate: str
    relation: str
    constant: int

    def holds(self, diagram: DynkinDiagram, root: Root) -> bool:
        k = root.coeffs[diagram.node_index(self.coordinate)]
        return _OPS[self.relation](k, self.constant)

    def __str__(self) -> str:
        return f"{self.coordinate} {self.relation} {self.constant}"


@dataclass(frozen=True)
class PrintedLevel:
    """One row of a printed level table."""

    conditions: tuple[Condition, ...]
    minimal: tuple[tuple[int, ...], ...]
    maximal: tuple[int, ...]
    count: int
    count_text: str


def _conds(*triples) -> tuple[Condition, ...]:
    return tuple(Condition(*t) for t in triples)


def _simple_except(rank: int, skip: int | None) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(int(j == i) for j in range(rank)) for i in range(rank) if i != skip
    )


def printed_level_table(diagram: DynkinDiagram) -> list[PrintedLevel]:
    """The printed level table.  Vectors are in node order, ``u`` last."""
    fam, n = diagram.family, diagram.rank
    u = n - 1
    if fam == "D":
        k = n * (n - 1) // 2
        top1 = (1,) * (n - 1) + (0,)
        top2 = (1,) + (2,) * (n - 3) + (1, 1)
        return [
            PrintedLevel(_conds(("u", "=", 0)), _simple_except(n, u), top1, k, "(n 2)"),
            PrintedLevel(_conds(("u", "=", 1)), (tuple(int(j == u) for j in range(n)),), top2, k, "(n 2)"),
        ]
    if fam == "E" and n == 6:
        return [
            PrintedLevel(_conds(("u", "=", 0)), _simple_except(6, u), (1, 1, 1, 1, 1, 0), 15, "15"),
            PrintedLevel(_conds(("u", "=", 1)), ((0, 0, 0, 0, 0, 1),), (1, 1, 1, 1, 1, 1), 10, "3x3+1"),
            PrintedLevel(_conds(("c", ">=", 2)), ((0, 1, 2, 1, 0, 1),), (1, 2, 3, 2, 1, 1), 11, "3x3+2"),
        ]
    if fam == "E" and n == 7:
        return [
            PrintedLevel(_conds(("u", "=", 0)), _simple_except(7, u), (1,) * 6 + (0,), 21, "21"),
            PrintedLevel(_conds(("u", "=", 1), ("c", "<=", 1)), ((0,) * 6 + (1,),), (1,) * 7, 13, "3x4+1"),
            PrintedLevel(_conds(("c", "=", 2), ("d", "=", 1)), ((0, 1, 2, 1, 0, 0, 1),),
                         (1, 2, 2, 1, 1, 1, 1), 9, "3x3"),
            PrintedLevel(_conds(("d", ">=", 2)), ((0, 1, 2, 2, 1, 0, 1),),
                         (2, 3, 4, 3, 2, 1, 2), 20, "5x3+5"),
        ]
    if fam == "E" and n == 8:
        return [
            PrintedLevel(_conds(("u", "=", 0)), _simple_except(8, u), (1,) * 7 + (0,), 28, "28"),
            PrintedLevel(_conds(("u", "=", 1), ("c", "<=", 1)), ((0,) * 7 + (1,),), (1,) * 8, 16, "3x5+1"),
            PrintedLevel(_conds(("c", "=", 2), ("d", "=", 1)), ((0, 1, 2, 1, 0, 0, 0, 1),),
                         (1, 2, 2, 1, 1, 1, 1, 1), 12, "3x4"),
            PrintedLevel(_conds(("d", "=", 2), ("e", "=", 1)), ((0, 1, 2, 2, 1, 0, 0, 1),),
                         (1, 2, 3, 2, 1, 1, 1, 2), 15, "5x3"),
            PrintedLevel(_conds(("d", "=", 2), ("e", "=", 3)), ((0, 1, 2, 2, 2, 1, 0, 1),),
                         (1, 2, 3, 2, 2, 2, 1, 2), 15, "5x3"),
            PrintedLevel(_conds(("d", ">=", 3)), ((1, 2, 3, 3, 2, 1, 0, 1),),
                         (2, 4, 6, 5, 4, 3, 12, 3), 34, "5x4+14"),
        ]
    if fam == "F":
        return [
            PrintedLevel(_conds(("b", "<=", 1)), _simple_except(4, None), (1, 1, 1, 1), 10, "10"),
            PrintedLevel(_conds(("b", ">=", 2)), ((0, 2, 1, 0),), (2, 4, 3, 2), 14, "3x3+5"),
        ]
    raise UnsupportedDiagram(f"no level table for {diagram}")


@dataclass
class Level:
    number: int
    conditions: tuple[Condition, ...]
    members: list[int]
    minimal: list[Root]
    maximal: Root
    count: int


@dataclass
class LevelDiscrepancy:
    level: int
    field: str
    printed: str
    derived: str
    note: str = ""


@dataclass
class LevelDecomposition:
    diagram: DynkinDiagram
    levels: list[Level]
    discrepancies: list[LevelDiscrepancy] = field(default_factory=list)

    def level_of(self) -> dict[int, int]:
        return {i: lv.number for lv in self.levels for i in lv.members}


def _assign_by_conditions(p: RootPoset, table: list[PrintedLevel]) -> list[int | None]:
    # later rows take precedence: "u = 1" in E6 is meant as "u = 1, c <= 1"
    out: list[int | None] = []
    for root in p.elements:
        hit = None
        for k, row in enumerate(table, start=1):
            if all(c.holds(p.diagram, root) for c in row.conditions):
                hit = k
        out.append(hit)
    return out


def _suggest_condition(p: RootPoset, members: set[int], row: PrintedLevel, others: set[int]):
    """Find a one-condition edit of ``row`` that selects ``members`` among ``others``."""
    for pos, cond in enumerate(row.conditions):
        for rel in ("=", "<=", ">="):
            for const in range(0, 7):
                trial = list(row.conditions)
                trial[pos] = Condition(cond.coordinate, rel, const)
                hit = {
                    i for i in others
                    if all(c.holds(p.diagram, p.elements[i]) for c in trial)
                }
                if hit == members:
                    return tuple(trial)
    return None


def level_decomposition(p: RootPoset) -> LevelDecomposition:
    """Recompute the levels and diff them against the printed table.

    A root is put in the last level having a printed minimal element below
    it.  Printed conditions, maximal elements and counts are then checked
    against that partition; mismatches become discrepancies, not errors.
    """
    table = printed_level_table(p.diagram)
    disc: list[LevelDiscrepancy] = []

    mins_idx: list[list[int]] = []
    for k, row in enumerate(table, start=1):
        idx = []
        for v in row.minimal:
            i = p.root_index(v)
            if i is None:
                disc.append(LevelDiscrepancy(k, "minimal", str(v), "-", "printed minimal element is not a root"))
            else:
                idx.append(i)
        mins_idx.append(idx)

    assign: list[int] = []
    for i in range(p.size):
        k_hit = 0
        for k, idx in enumerate(mins_idx, start=1):
            if any(p.le(m, i) for m in idx):
                k_hit = k
        if k_hit == 0:
            raise IdentityViolation(f"{p.diagram}: root {p.elements[i]} lies in no level")
        assign.append(k_hit)

    by_cond = _assign_by_conditions(p, table)
    levels: list[Level] = []
    remaining = set(range(p.size))
    for k, row in enumerate(table, start=1):
        members = [i for i in range(p.size) if assign[i] == k]
        mins = p.minimal_elements(members)
        maxs = p.maximal_elements(members)
        if len(maxs) != 1:
            raise IdentityViolation(f"{p.diagram} level {k}: {len(maxs)} maximal elements")
        top = p.elements[maxs[0]]
        levels.append(Level(k, row.conditions, members, [p.elements[m] for m in mins], top, len(members)))

        if sorted(mins) != sorted(mins_idx[k - 1]):
            disc.append(LevelDiscrepancy(
                k, "minimal", ", ".join(map(str, row.minimal)),
                ", ".join(str(p.elements[m]) for m in mins)))
        if tuple(top.coeffs) != row.maximal:
            note = "" if p.root_index(row.maximal) is not None else "printed vector is not a root"
            disc.append(LevelDiscrepancy(k, "maximal", _fmt(row.maximal), str(top), note))
        if len(members) != row.count:
            disc.append(LevelDiscrepancy(k, "count", row.count_text, str(len(members))))
        selected = {i for i in range(p.size) if by_cond[i] == k}
        if selected != set(members):
            fix = _suggest_condition(p, set(members), row, remaining)
            disc.append(LevelDiscrepancy(
                k, "conditions", ", ".join(map(str, row.conditions)),
                ", ".join(map(str, fix)) if fix else f"{len(members)} roots",
                f"printed conditions select {len(selected)} roots, level has {len(members)}"))
        remaining -= set(members)
    return LevelDecomposition(p.diagram, levels, disc)


def _fmt(v: Sequence[int]) -> str:
    return "".join(map(str, v)) if max(v) < 10 else str(tuple(v))
