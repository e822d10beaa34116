"""Independent brute-force oracles used by the tests."""

from __future__ import annotations

import itertools

import numpy as np
from hypothesis import strategies as st

from rootposet.poset import Poset

POWERSET_LIMIT = 20


def powerset_antichains(p: Poset, size: int | None = None) -> list[tuple[int, ...]]:
    """All antichains by filtering every subset (only for small posets)."""
    assert p.size <= POWERSET_LIMIT
    sizes = range(p.size + 1) if size is None else [size]
    out = []
    for t in sizes:
        for sub in itertools.combinations(range(p.size), t):
            if all(not p.leq[a, b] and not p.leq[b, a] for a, b in itertools.combinations(sub, 2)):
                out.append(sub)
    return sorted(out)


def brute_width(p: Poset, within=None) -> int:
    elems = list(range(p.size)) if within is None else sorted(within)
    best = 0
    for t in range(1, len(elems) + 1):
        found = any(
            all(not p.leq[a, b] and not p.leq[b, a] for a, b in itertools.combinations(sub, 2))
            for sub in itertools.combinations(elems, t))
        if not found:
            break
        best = t
    return best


@st.composite
def random_posets(draw, max_size: int = 12):
    """Random posets as transitive closures of random DAGs on 0..n-1."""
    n = draw(st.integers(min_value=0, max_value=max_size))
    leq = np.eye(n, dtype=bool)
    for j in range(n):
        for i in range(j):
            if draw(st.booleans()) and draw(st.booleans()):
                leq[i, j] = True
    for k in range(n):
        leq |= leq[:, [k]] & leq[[k], :]
    return Poset(leq)
