"""Per-diagram verification checks and the consolidated report.

Every check returns a ``CheckResult``; exceptions raised by the verifying
modules are caught and turned into failures, so a report never aborts
halfway.  Typos found in the printed level tables are warnings and do not fail a check.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from .antichains import (
    H_TABLE, check_distribution_identities, enumerate_antichains, size_distribution,
    verify_main_theorem, width,
)
from .dynkin import DynkinDiagram, default_diagrams
from .errors import RootPosetError
from .interval_models import verify_models
from .lemma import find_witness, lemma_conclusion, min_chain_cover
from .poset import build_poset, level_decomposition, level_profile
from .symmetry import (
    automorphism_count_unrestricted, automorphism_group, is_automorphism, nonreconstruction,
    preserves_structure,
)

LEMMA_DIAGRAMS = ("E6", "E7", "E8", "F4")
UNRESTRICTED_AUT_LIMIT = 40  # VF2 cross-check only on small posets


@dataclass
class CheckResult:
    name: str
    passed: bool
    applicable: bool = True
    summary: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    seconds: float = 0.0

    @classmethod
    def not_applicable(cls, name: str, why: str) -> CheckResult:
        return cls(name, True, applicable=False, summary=[why])


def check_theorem(d: DynkinDiagram) -> CheckResult:
    if d.rank < 2:
        return CheckResult.not_applicable("theorem", "rank 1: nothing to check")
    rep = verify_main_theorem(d)
    p = build_poset(d)
    fmt = lambda a: "{" + ", ".join(str(p.elements[i]) for i in a) + "}"  # noqa: E731
    lines = [f"h = {rep.h} (table: {rep.expected_h})",
             f"Phi_{rep.h} = {fmt(rep.phi_h)}"]
    if rep.e6_exception is not None:
        lines.append(f"Phi_{rep.h} is not maximal; unique maximal {d.rank - 1}-antichain "
                     f"{fmt(rep.maximal_list[0])} with heights {rep.e6_exception.heights}")
        lines.append(f"every other {d.rank - 1}-antichain lies below Phi_{rep.h}: "
                     f"{rep.e6_exception.others_dominated_by_phi_h}")
    else:
        lines.append(f"maximal {d.rank - 1}-antichains: exactly Phi_{rep.h}")
    return CheckResult("theorem", rep.passed, summary=lines,
                       data={"h": rep.h, "maximal": [[str(p.elements[i]) for i in a]
                                                      for a in rep.maximal_list]})


def check_profile(d: DynkinDiagram) -> CheckResult:
    prof = level_profile(build_poset(d))  # raises on a failed identity
    want = H_TABLE.get(d.name, H_TABLE.get(d.family))
    ok = prof.h == want
    return CheckResult("profile", ok, summary=[
        f"r = {list(prof.r)} (g = {prof.g})",
        f"r(i) + r(g-i+1) = {d.rank} for all i",
        f"largest i with r(i) = n-1: {prof.h} (table: {want})",
    ], data={"r": list(prof.r), "g": prof.g, "h": prof.h})


def check_width(d: DynkinDiagram) -> CheckResult:
    p = build_poset(d)
    w, witness = width(p)
    cover = min_chain_cover(p)
    top = list(enumerate_antichains(p, d.rank))
    only_simple = top == [tuple(p.simple_roots)]
    ok = w == d.rank and len(cover) == w and only_simple
    return CheckResult("width", ok, summary=[
        f"width = {w}, minimum chain cover = {len(cover)} chains",
        f"the simple roots are the only {d.rank}-antichain: {only_simple}",
    ], data={"width": w, "chains": len(cover)})


def check_distribution(d: DynkinDiagram) -> CheckResult:
    p = build_poset(d)
    dist = size_distribution(p)
    ident = check_distribution_identities(p, dist)
    return CheckResult("distribution", all(ident.values()), summary=[
        f"|A_t| for t = 0..{dist.width}: {list(dist.counts)} (total {dist.total})",
        f"|A_{{n-1}}| = |Phi+| = {p.size}: {ident['corank_one_equals_roots']}",
        f"|A_t| = |A_{{n-t}}|: {ident['symmetric']}",
    ], data={"counts": list(dist.counts), **ident})


def check_levels(d: DynkinDiagram) -> CheckResult:
    if d.family not in "DEF":
        return CheckResult.not_applicable("levels", "no level table for this family")
    dec = level_decomposition(build_poset(d))
    lines = [f"level {lv.number}: {lv.count} roots, max {lv.maximal}" for lv in dec.levels]
    warns = [f"level {x.level} {x.field}: printed {x.printed}, derived {x.derived}"
             + (f" ({x.note})" if x.note else "") for x in dec.discrepancies]
    return CheckResult("levels", True, summary=lines, warnings=warns,
                       data={"sizes": [lv.count for lv in dec.levels]})


def check_models(d: DynkinDiagram) -> CheckResult:
    if d.family not in "ABCD":
        return CheckResult.not_applicable("models", "no interval model for this family")
    rep = verify_models(d)
    lines = [f"{rep.kind} model isomorphic to the root poset: {rep.isomorphic}"]
    if rep.kind == "D":
        pr = rep.projection
        lines += [f"projection order-preserving: {pr.order_preserving}, surjective: {pr.surjective}, "
                  f"fibers as stated: {pr.fibers_as_stated}, heights kept: {pr.height_preserved}",
                  f"preimages of L/R chains are almost chains: {rep.almost_chains_ok}",
                  f"each preimage has width <= 2: {rep.preimages_meet_antichains_twice}",
                  f"antichain bound holds: {rep.bound_holds}; "
                  f"long elements excluded: {rep.long_elements_excluded}"]
    else:
        lines += [f"cover complements valid: {rep.covers_ok}",
                  f"antichain bound holds: {rep.bound_holds}, attained: {rep.bound_attained}",
                  f"long elements excluded: {rep.long_elements_excluded}"]
    return CheckResult("models", rep.ok, summary=lines, warnings=rep.failures,
                       data={"almost_chain_failures": [list(x) for x in rep.almost_chain_failures]})


def check_lemma(d: DynkinDiagram) -> CheckResult:
    if d.name not in LEMMA_DIAGRAMS:
        return CheckResult.not_applicable("lemma", "the lemma is used for E6, E7, E8, F4 only")
    p = build_poset(d)
    w = find_witness(d)
    rec = lemma_conclusion(p, w)
    return CheckResult("lemma", rec.ok, summary=[
        f"|X| = {len(w.X)}, |Y| = {len(w.Y)}; " + "; ".join(w.notes),
        f"{rec.checked} elements z of J checked; max width of P(z) = {rec.max_incomparable_width}"
        f" (bound {rec.n_prime - 2})",
        f"constructive: {rec.constructive_ok}, brute force: {rec.brute_force_ok}, "
        f"unique maximal {rec.n_prime}-antichain: {rec.unique_maximal}",
    ], warnings=rec.failures, data={"witness": w.to_dict(p)})


def check_symmetry(d: DynkinDiagram) -> CheckResult:
    p = build_poset(d)
    g = automorphism_group(p)
    gens_ok = all(is_automorphism(p, phi) and preserves_structure(p, phi) for phi in g.generators)
    lines = [f"|Aut| = {g.order}, generators verified: {gens_ok}"]
    ok = gens_ok
    data: dict = {"order": g.order}
    if p.size <= UNRESTRICTED_AUT_LIMIT:
        vf = automorphism_count_unrestricted(p)
        lines.append(f"unrestricted count (no grading assumed): {vf}")
        ok = ok and vf == g.order
    if d.family == "A" and d.rank >= 2:
        ok = ok and g.order == 2
    if d.name == "F4":
        nr = nonreconstruction(p, 5, 3)
        lines.append(nr.statement())
        ok = ok and nr.holds
        data["nonreconstruction"] = nr.holds
    return CheckResult("symmetry", ok, summary=lines, data=data)


CHECKS: dict[str, Callable[[DynkinDiagram], CheckResult]] = {
    "theorem": check_theorem,
    "profile": check_profile,
    "width": check_width,
    "distribution": check_distribution,
    "levels": check_levels,
    "models": check_models,
    "lemma": check_lemma,
    "symmetry": check_symmetry,
}

# the consolidated report; the interval-model checks are run on request only
REPORT_CHECKS = ("theorem", "profile", "width", "distribution", "levels", "lemma", "symmetry")


def run_check(name: str, d: DynkinDiagram) -> CheckResult:
    t0 = time.perf_counter()
    try:
        res = CHECKS[name](d)
    except (RootPosetError, AssertionError) as exc:
        res = CheckResult(name, False, summary=[f"{type(exc).__name__}: {exc}"])
    res.seconds = round(time.perf_counter() - t0, 3)
    return res


@dataclass
class DiagramRecord:
    diagram: str
    checks: list[CheckResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


@dataclass
class VerificationReport:
    records: list[DiagramRecord]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def warnings(self) -> list[str]:
        return [f"{r.diagram} {c.name}: {w}" for r in self.records for c in r.checks for w in c.warnings]

    def h_table(self) -> dict[str, int]:
        out = {}
        for r in self.records:
            for c in r.checks:
                if c.name == "profile":
                    out[r.diagram] = c.data.get("h")
        return out

    def to_dict(self) -> dict:
        recs = [{"diagram": r.diagram, "passed": r.passed,
                 "checks": [{k: v for k, v in asdict(c).items() if k != "seconds"} for c in r.checks]}
                for r in self.records]
        return {"passed": self.passed, "records": recs}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def render(self) -> str:
        lines = []
        for r in self.records:
            lines.append(f"== {r.diagram}: {'PASS' if r.passed else 'FAIL'}")
            for c in r.checks:
                tag = "n/a " if not c.applicable else ("ok  " if c.passed else "FAIL")
                lines.append(f"  [{tag}] {c.name}")
                lines += [f"         {s}" for s in c.summary]
                lines += [f"         warning: {w}" for w in c.warnings]
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}"
                     f" ({len(self.warnings)} warnings)")
        return "\n".join(lines) + "\n"


def verify(d: DynkinDiagram, names: Iterable[str]) -> DiagramRecord:
    return DiagramRecord(d.name, [run_check(n, d) for n in names])


def full_report(diagrams: Iterable[DynkinDiagram] | None = None) -> VerificationReport:
    diagrams = default_diagrams() if diagrams is None else list(diagrams)
    return VerificationReport([verify(d, REPORT_CHECKS) for d in diagrams])
