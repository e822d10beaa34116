"""Cartan data for the Dynkin families and positive-root generation.

Node order follows the usual picture labels: the long chain is
labelled ``a, b, c, ...`` and, for the branched types D and E, the branch
node is ``u`` and stored last.  For B and C the double bond sits between
``a`` and ``b``; in B the node ``a`` is short, in C it is long.  In F4 the
nodes ``a, b`` are short and ``c, d`` long; in G2 ``a`` is short.
"""

from __future__ import annotations

import re
import string
from dataclasses import dataclass
from functools import lru_cache

from .errors import UnsupportedDiagram

FAMILIES = "ABCDEFG"

# ranks accepted without complaint by the CLI
DEFAULT_MAX_RANK = 8

_CHAIN_LETTERS = [c for c in string.ascii_lowercase if c != "u"]


@dataclass(frozen=True)
class Root:
    coeffs: tuple[int, ...]

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def __add__(self, other: Root) -> Root:
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: Root) -> Root:
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __le__(self, other: Root) -> bool:
        return all(a <= b for a, b in zip(self.coeffs, other.coeffs))

    def __str__(self) -> str:
        return "".join(map(str, self.coeffs)) if max(self.coeffs) < 10 else str(self.coeffs)


def height(root: Root) -> int:
    return root.height


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    node_names: tuple[str, ...]

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name

    def simple_root(self, i: int) -> Root:
        return Root(tuple(int(j == i) for j in range(self.rank)))

    def node_index(self, name: str) -> int:
        return self.node_names.index(name)


def _check_bounds(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 4,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family, False)
    if not ok or rank > len(_CHAIN_LETTERS) + 1:
        raise UnsupportedDiagram(f"no Dynkin diagram {family}{rank}")


def _shape(family: str, rank: int):
    """Return (node_names, edges, squared lengths) in node order."""
    if family in "ABCFG":
        names = _CHAIN_LETTERS[:rank]
        edges = [(i, i + 1) for i in range(rank - 1)]
        lengths = [1] * rank
        if family == "B":
            lengths = [1] + [2] * (rank - 1)
        elif family == "C":
            lengths = [2] + [1] * (rank - 1)
        elif family == "F":
            lengths = [1, 1, 2, 2]
        elif family == "G":
            lengths = [1, 3]
    else:
        # chain of rank-1 nodes, branch node u attached to the chain
        names = _CHAIN_LETTERS[: rank - 1] + ["u"]
        edges = [(i, i + 1) for i in range(rank - 2)]
        attach = rank - 3 if family == "D" else 2
        edges.append((attach, rank - 1))
        lengths = [1] * rank
    return tuple(names), edges, lengths


def cartan_matrix(family: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix with ``cartan[i][j] = <alpha_i^vee, alpha_j>``.

    Built from the symmetric form ``(alpha_i, alpha_i) = 2 L_i`` and
    ``(alpha_i, alpha_j) = -max(L_i, L_j)`` for joined nodes, so that the
    bond multiplicity is the ratio of squared lengths.
    """
    family = family.upper()
    _check_bounds(family, rank)
    _, edges, lengths = _shape(family, rank)
    form = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        form[i][i] = 2 * lengths[i]
    for i, j in edges:
        form[i][j] = form[j][i] = -max(lengths[i], lengths[j])
    return tuple(
        tuple(2 * form[i][j] // form[i][i] for j in range(rank)) for i in range(rank)
    )


@lru_cache(maxsize=None)
def dynkin_diagram(family: str, rank: int) -> DynkinDiagram:
    family = family.upper()
    _check_bounds(family, rank)
    names, _, _ = _shape(family, rank)
    return DynkinDiagram(family, rank, cartan_matrix(family, rank), names)


_NAME_RE = re.compile(r"^\s*([A-Ga-g])\s*_?\s*(\d+)\s*$")


def parse_diagram(text: str) -> DynkinDiagram:
    """Parse names such as ``E6``, ``b_3`` or ``D 5``."""
    m = _NAME_RE.match(text)
    if not m:
        raise UnsupportedDiagram(f"cannot parse diagram name {text!r}")
    return dynkin_diagram(m.group(1).upper(), int(m.group(2)))


def default_diagrams() -> list[DynkinDiagram]:
    out = [dynkin_diagram("A", n) for n in range(2, 9)]
    out += [dynkin_diagram("B", n) for n in range(2, 9)]
    out += [dynkin_diagram("C", n) for n in range(2, 9)]
    out += [dynkin_diagram("D", n) for n in range(4, 9)]
    out += [dynkin_diagram("E", n) for n in (6, 7, 8)]
    out += [dynkin_diagram("F", 4), dynkin_diagram("G", 2)]
    return out


def pairing(diagram: DynkinDiagram, root: Root, i: int) -> int:
    """<root, alpha_i^vee>."""
    return sum(k * a for k, a in zip(root.coeffs, diagram.cartan[i]))


@lru_cache(maxsize=None)
def _positive_roots(diagram: DynkinDiagram) -> tuple[Root, ...]:
    n = diagram.rank
    simple = [diagram.simple_root(i) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = set()
        for beta in layer:
            for i in range(n):
                # p = length of the alpha_i-string below beta
                p = 0
                lower = beta - simple[i]
                while lower in found:
                    p += 1
                    lower = lower - simple[i]
                if p - pairing(diagram, beta, i) > 0:
                    nxt.add(beta + simple[i])
        nxt -= found
        found |= nxt
        layer = list(nxt)
    return tuple(sorted(found, key=lambda r: (r.height, r.coeffs)))


def generate_positive_roots(diagram: DynkinDiagram) -> list[Root]:
    """All positive roots sorted by (height, coefficient vector)."""
    return list(_positive_roots(diagram))


def highest_root(diagram: DynkinDiagram) -> Root:
    return _positive_roots(diagram)[-1]


def coxeter_number(diagram: DynkinDiagram) -> int:
    count = len(_positive_roots(diagram))
    g, rest = divmod(2 * count, diagram.rank)
    assert rest == 0, f"2|Phi+| not divisible by rank for {diagram}"
    return g
