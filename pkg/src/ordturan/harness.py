"""Named verification suites exercising every public operation.

Each suite replays one quantitative result at desk scale and reports
per-check pass/fail with timings.  Checks never assert asymptotic
statements; they test exact values, certified inequalities, and randomized
properties at fixed seeds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np

from . import catalog, densities, geometry, ordgraph, solver

VERIFY_IDS = (
    "thm1.1",
    "thm1.2",
    "thm1.3",
    "prop-mj",
    "lemma-intervals",
    "prop3.1",
    "prop3.2",
    "claim-thm1.4",
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float
    counterexample: Optional[dict] = None


@dataclass
class VerifyReport:
    theorem: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def elapsed(self) -> float:
        return sum(r.elapsed for r in self.results)

    def first_failure(self) -> Optional[CheckResult]:
        for r in self.results:
            if not r.passed:
                return r
        return None


class _Suite:
    def __init__(self, theorem: str) -> None:
        self.report = VerifyReport(theorem)

    def check(self, name: str, fn: Callable[[], tuple[bool, str, Optional[dict]]]) -> None:
        t0 = time.perf_counter()
        try:
            passed, detail, ce = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail, ce = False, f"raised {exc!r}", {"exception": repr(exc)}
        self.report.results.append(
            CheckResult(name, passed, detail, time.perf_counter() - t0, ce if not passed else None)
        )


def run_verify(
    theorem: str,
    seed: int = 0,
    node_budget: int = solver.DEFAULT_NODE_BUDGET,
    resample_budget: int = geometry.DEFAULT_RESAMPLE_BUDGET,
) -> VerifyReport:
    """Run one named suite with its desk-scale defaults."""
    suites = {
        "thm1.1": _suite_chord_paths,
        "thm1.2": _suite_nested_hosts,
        "thm1.3": _suite_geometric_family,
        "prop-mj": _suite_matchings,
        "lemma-intervals": _suite_interval_count,
        "prop3.1": _suite_quasirandom,
        "prop3.2": _suite_union_discrepancy,
        "claim-thm1.4": _suite_coverage_claim,
    }
    if theorem not in suites:
        raise ValueError(f"unknown theorem id {theorem!r}; choose from {VERIFY_IDS}")
    return suites[theorem](seed, node_budget, resample_budget)


# ---------------------------------------------------------------------------
# thm1.1: chord-path patterns vs double-path hosts

_CHORD_PAIRS = ((2, 1), (2, 2), (3, 2))
_ELLS = (2, 3, 4)


def _suite_chord_paths(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("thm1.1")

    def formulas():
        for a, b in _CHORD_PAIRS:
            q = catalog.build_Q(a, b)
            chi = ordgraph.chi_interval(q)
            if chi != a + b + 1:
                return False, f"chi_interval(Q_{a},{b}) = {chi}", {"a": a, "b": b, "chi": chi}
            if densities.vec_pi(q) != Fraction(a + b - 1, a + b):
                return False, f"vec_pi mismatch at ({a},{b})", {"a": a, "b": b}
            if not ordgraph.contains(q, catalog.build_P(a + b + 1)):
                return False, f"Q_{a},{b} misses its spanning path", {"a": a, "b": b}
        return True, f"chi_< and vec_pi match on {_CHORD_PAIRS}", None

    s.check("interval-chromatic and density formulas", formulas)

    def hosts():
        for a in sorted({p[0] for p in _CHORD_PAIRS}):
            for ell in _ELLS:
                n = a * ell + 1
                host = catalog.build_B(a, n)
                if host.e != (a + 1) * ell:
                    return False, f"e(B_{a},{n}) = {host.e}", {"a": a, "n": n, "e": host.e}
                if ordgraph.ell_monotone(host) != n:
                    return False, f"monotone path of B_{a},{n} wrong", {"a": a, "n": n}
        return True, "host edge counts (a+1)l and spanning monotone paths", None

    s.check("witness host shape", hosts)

    def deletions():
        worst = None
        for a, b in _CHORD_PAIRS:
            for ell in _ELLS:
                host = catalog.build_B(a, a * ell + 1)
                rep = solver.min_deletion_exact(host, catalog.build_Q(a, b), budget=node_budget)
                if rep.status != solver.STATUS_OPTIMAL:
                    return False, f"budget exhausted at ({a},{b},l={ell})", {"a": a, "b": b, "ell": ell}
                if len(rep.deleted) < ell - 1:
                    return False, f"only {len(rep.deleted)} deletions at ({a},{b},l={ell})", {
                        "a": a, "b": b, "ell": ell, "deleted": [list(e) for e in rep.deleted],
                    }
                worst = (a, b, ell, len(rep.deleted))
        return True, f"exact deletions >= l-1 on all cases (last: {worst})", None

    s.check("deletion lower bound", deletions)

    def ratios():
        for a, b in _CHORD_PAIRS:
            fam = lambda ell, a=a: catalog.build_B(a, a * ell + 1)
            rows = solver.rho_upper_from_witness(fam, catalog.build_Q(a, b), _ELLS, budget=node_budget)
            for r in rows:
                cap = Fraction(a, a + 1) + Fraction(1, (a + 1) * r.index)
                if not r.certified or r.ratio > cap:
                    return False, f"ratio {r.ratio} exceeds {cap} at ({a},{b},l={r.index})", {
                        "a": a, "b": b, "ell": r.index, "ratio": str(r.ratio),
                    }
        return True, "certified ratios within a/(a+1) + 1/((a+1)l)", None

    s.check("witness ratio bound", ratios)

    def bipartite():
        for a, b in ((2, 1), (2, 2)):
            q = catalog.build_Q(a, b)
            for ell in _ELLS:
                host = catalog.build_B(a, a * ell + 1)
                rep = solver.bipartite_half(host, seed=seed)
                if rep.optimum < math.ceil(host.e / 2):
                    return False, f"half guarantee broken at (a={a}, l={ell})", {"a": a, "ell": ell}
                if ordgraph.contains(host.without_edges(rep.deleted), q):
                    return False, f"bipartite part hosts Q_{a},{b}", {"a": a, "b": b, "ell": ell}
        return True, "bipartite halves keep >= e/2 and avoid the chord pattern", None

    s.check("bipartite half (even chord length)", bipartite)

    def brackets():
        q = catalog.build_Q(2, 2)
        rep = densities.bounds_report(
            q, name="Q:2,2",
            witness=lambda ell: catalog.build_B(2, 2 * ell + 1),
            witness_name="B:2", indices=_ELLS, budget=node_budget,
        )
        vp = densities.vec_pi(q)
        # bracket must contain [1/2, 2/3] and sit at 1/2 below, <= 3/4 above;
        # the formula-level inequalities vp/2 < 1/2 and 2/3 < vp are strict
        ok = (
            rep.valid
            and rep.rho_lower == Fraction(1, 2)
            and Fraction(2, 3) <= rep.rho_upper <= Fraction(2, 3) + Fraction(1, 12)
            and vp / 2 < Fraction(1, 2)
            and Fraction(2, 3) < vp
        )
        if not ok:
            return False, f"bracket [{rep.rho_lower}, {rep.rho_upper}] fails", {
                "lower": str(rep.rho_lower), "upper": str(rep.rho_upper),
            }
        q32 = catalog.build_Q(3, 2)
        rep32 = densities.bounds_report(q32, name="Q:3,2")
        if rep32.rho_lower != densities.rho_lower_ell(q32):
            return False, "odd chord cycle must not get the 1/2 bound", {"pattern": "Q:3,2"}
        chain = densities.pi_unordered(q) <= vp and densities.rho_lower_ell(q) <= vp
        if not chain:
            return False, "density chain violated", {"pattern": "Q:2,2"}
        return True, f"bracket [{rep.rho_lower}, {rep.rho_upper}] certifies the strict chain", None

    s.check("density bracket strictness", brackets)
    return s.report


# ---------------------------------------------------------------------------
# thm1.2: nested-matching hosts vs the covering matching pattern

_COVER_PATTERN = ((1, 6), (2, 3), (4, 5))
_H3_FIGURE = frozenset(
    {(1, 24), (2, 23), (3, 22), (4, 21), (5, 12), (6, 11), (7, 8), (9, 10),
     (13, 20), (14, 19), (15, 16), (17, 18)}
)
_NESTED_HOST_OPTIMA = {1: 1, 2: 3, 3: 7}


def _suite_nested_hosts(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("thm1.2")

    def sizes():
        for d in range(1, 9):
            h = catalog.build_H_d(d)
            if h.e != d * 2 ** (d - 1) or h.n != d * 2**d:
                return False, f"size mismatch at d={d}", {"d": d, "n": h.n, "e": h.e}
        if set(catalog.build_H_d(3).edges) != _H3_FIGURE:
            return False, "H_3 differs from the published labeling", {"d": 3}
        return True, "e(H_d) = d*2^(d-1), |V| = d*2^d for d <= 8; H_3 labels exact", None

    s.check("host size recursion", sizes)

    def blocks():
        for d in range(2, 6):
            h = catalog.build_H_d(d)
            inner = catalog.build_H_d(d - 1)
            half = 2 ** (d - 1)
            left = {(u + half, v + half) for u, v in inner.edges}
            right = {(u + half + inner.n, v + half + inner.n) for u, v in inner.edges}
            if not (left <= h.edges and right <= h.edges):
                return False, f"blocks not embedded verbatim at d={d}", {"d": d}
            # the backtracking search blows up past 32-edge patterns
            if d <= 4 and not ordgraph.contains(h, inner):
                return False, f"containment of the previous level fails at d={d}", {"d": d}
        return True, "both half blocks are verbatim shifted copies of the previous level", None

    s.check("recursive block structure", blocks)

    def exact():
        pat = catalog.build_pattern(_COVER_PATTERN)
        for d, expect in _NESTED_HOST_OPTIMA.items():
            h = catalog.build_H_d(d)
            rep = solver.min_deletion_exact(h, pat, budget=node_budget)
            if rep.status != solver.STATUS_OPTIMAL:
                return False, f"budget exhausted at d={d}", {"d": d}
            if rep.optimum > 2**d:
                return False, f"kept {rep.optimum} > 2^{d}", {"d": d, "kept": rep.optimum}
            if rep.optimum != expect:
                return False, f"kept {rep.optimum} != {expect} at d={d}", {"d": d, "kept": rep.optimum}
        return True, f"exact optima {_NESTED_HOST_OPTIMA} within the 2^d cap", None

    s.check("exact optimum within 2/d fraction", exact)

    def heuristic_cap():
        pat = catalog.build_pattern(_COVER_PATTERN)
        h4 = catalog.build_H_d(4)
        for policy, sd in (("given", 0), ("random", seed), ("random", seed + 1), ("degree", 0)):
            rep = solver.max_free_greedy(h4, pat, policy=policy, seed=sd)
            if rep.optimum > 16:
                return False, f"greedy kept {rep.optimum} > 16 at d=4", {
                    "policy": policy, "seed": sd, "kept": rep.optimum,
                }
        return True, "greedy subgraphs of the d=4 host stay within 2^4 edges", None

    s.check("d=4 heuristic stays within the bound", heuristic_cap)
    return s.report


# ---------------------------------------------------------------------------
# thm1.3: recursive geometric host accounting

_CROSS_PATTERN = ((1, 3), (2, 5), (4, 6))


def _suite_geometric_family(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("thm1.3")
    eps = 0.2
    n_small, n_desk = 20, 200

    def accounting():
        for d in range(1, 6):
            gm = geometry.build_G_d(d, n_small, eps, seed=seed)
            if gm.e != d * 2 ** (d - 1) * n_small:
                return False, f"e(G_{d}) = {gm.e}", {"d": d, "e": gm.e}
            top = sum(1 for e in gm.edges if e.layer == "")
            if top != 2 ** (d - 1) * n_small:
                return False, f"top layer miscounted at d={d}", {"d": d, "top": top}
        return True, "e(G_d) = d*2^(d-1)*n with the right top-layer share, d <= 5", None

    s.check("layer accounting", accounting)

    def base_case():
        big_n, big_eps = 20_000, 0.5
        gen = geometry.gen_quasirandom(big_n, big_eps, seed=seed, resample_budget=resample_budget)
        base = geometry.build_G_d(1, big_n, big_eps, seed=seed, certify_layers=True)
        if base.edges != gen.edges:
            return False, "level-1 host differs from the certified layer", {"n": big_n}
        return True, f"level-1 host equals the certified layer at n={big_n}", None

    s.check("recursion base", base_case)

    def ordered_view():
        gm = geometry.build_G_d(2, n_small, eps, seed=seed + 1)
        og = geometry.to_ordered_graph(gm)
        if og.n != 2 * gm.e or any(og.degree(v) != 1 for v in range(1, og.n + 1)):
            return False, "ordered view is not a perfect matching on ranks", {"n": og.n}
        probe = geometry.PointMatching(
            (geometry.PointEdge(0.1, 0.4), geometry.PointEdge(0.2, 0.7),
             geometry.PointEdge(0.5, 0.9))
        )
        pat = catalog.build_pattern(_CROSS_PATTERN)
        if not ordgraph.contains(geometry.to_ordered_graph(probe), pat):
            return False, "rank projection lost a crossing-chain copy", {}
        nested = geometry.PointMatching(
            (geometry.PointEdge(0.1, 0.9), geometry.PointEdge(0.2, 0.8),
             geometry.PointEdge(0.3, 0.7))
        )
        if ordgraph.contains(geometry.to_ordered_graph(nested), pat):
            return False, "rank projection invented a copy", {}
        return True, "rank projection preserves matching structure and copies", None

    s.check("ordered view faithfulness", ordered_view)

    def ratio_trend():
        pat = catalog.build_pattern(_CROSS_PATTERN)
        for d in (1, 2, 3):
            gm = geometry.build_G_d(d, n_desk, eps, seed=seed + d)
            og = geometry.to_ordered_graph(gm)
            rep = solver.max_free_greedy(og, pat, policy="random", seed=seed)
            cap = 2 / d + 10**d * eps / (d * 2 ** (d - 1))
            if rep.optimum / og.e > cap:
                return False, f"kept fraction {rep.optimum / og.e:.3f} > {cap:.3f} at d={d}", {
                    "d": d, "kept": rep.optimum, "edges": og.e,
                }
        return True, "pattern-free fractions within 2/d + 10^d*eps/(d*2^(d-1))", None

    s.check("pattern-free ratio at desk scale", ratio_trend)
    return s.report


# ---------------------------------------------------------------------------
# prop-mj: consecutive matchings

def _suite_matchings(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("prop-mj")

    def chi():
        for j in range(1, 7):
            m = catalog.build_M(j)
            if ordgraph.chi_interval(m) != j + 1:
                return False, f"chi_interval(M_{j}) != {j + 1}", {"j": j}
            if j >= 2 and densities.vec_pi(m) != Fraction(j - 1, j):
                return False, f"vec_pi(M_{j}) != {(j - 1)}/{j}", {"j": j}
        return True, "chi_interval(M_j) = j+1 and vec_pi = (j-1)/j for j <= 6", None

    s.check("interval chromatic of matchings", chi)

    def counts():
        for j in (2, 3):
            for k in range(j, 9):
                got = len(ordgraph.enumerate_embeddings(catalog.build_M(k), catalog.build_M(j)))
                if got != math.comb(k, j):
                    return False, f"{got} copies of M_{j} in M_{k}", {"j": j, "k": k, "got": got}
        return True, "copy counts equal C(k, j): any j edges induce a copy", None

    s.check("embedding counts", counts)

    def optima():
        for j in (2, 3):
            prev = None
            for k in range(j + 1, 9):
                rep = solver.min_deletion_exact(catalog.build_M(k), catalog.build_M(j), budget=node_budget)
                if rep.optimum != j - 1 or len(rep.deleted) != k - j + 1:
                    return False, f"optimum {rep.optimum} at (j={j}, k={k})", {"j": j, "k": k}
                ratio = Fraction(j - 1, k)
                if prev is not None and ratio >= prev:
                    return False, "ratio fails to decrease", {"j": j, "k": k}
                prev = ratio
        return True, "max free value j-1; fractions (j-1)/k strictly decreasing", None

    s.check("pattern-free optimum", optima)

    def doubling():
        for j in (2, 3):
            m = catalog.build_M(j)
            n = m.n
            if not ordgraph.contains(ordgraph.blowup(m, 2), m):
                return False, f"blow-up of M_{j} lost its base copy", {"j": j}
            alternating = [2 * i - 1 for i in range(1, n + 1)]
            for positions in (alternating, list(range(1, n + 1))):
                doubled = ordgraph.plus_I(m, positions)
                if doubled.e != 2 * m.e or not ordgraph.contains(doubled, m):
                    return False, f"side-by-side copy broken at j={j}", {"j": j, "positions": positions}
            if ordgraph.chromatic_number(m) != 2 or densities.pi_unordered(m) != 0:
                return False, f"matching M_{j} is not bipartite?", {"j": j}
        return True, "blow-ups and disjoint doublings retain the pattern; matchings bipartite", None

    s.check("doubling constructions", doubling)

    def stairs():
        for j in (2, 3, 4):
            if not ordgraph.contains(catalog.build_H_stair(2 * j), catalog.build_M(j)):
                return False, f"stair host misses M_{j}", {"j": j}
        for t in range(2, 11):
            if ordgraph.ell_monotone(catalog.build_H_stair(t)) != 2:
                return False, f"stair graph t={t} has a longer monotone path", {"t": t}
        if set(catalog.build_H_stair(4).edges) != {(1, 2), (1, 4), (3, 4)}:
            return False, "stair t=4 edges wrong", {"t": 4}
        return True, "stairs host all matchings and have monotone paths of 2 vertices", None

    s.check("stair hosts", stairs)
    return s.report


# ---------------------------------------------------------------------------
# lemma-intervals

def _suite_interval_count(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("lemma-intervals")
    eps, n = 0.2, 200

    def bound():
        for d, trials in ((1, 100), (2, 100), (3, 1000)):
            gm = geometry.build_G_d(d, n, eps, seed=seed + d)
            cap = 2**d - 1
            for trial in range(trials):
                rng = np.random.default_rng(np.random.SeedSequence([seed, d, trial]))
                if trial % 2 == 0:
                    k = int(rng.integers(1, max(2, gm.e // 20)))
                    idx = rng.choice(gm.e, size=k, replace=False)
                else:
                    mask = rng.random(gm.e) < rng.uniform(0.05, 0.95)
                    idx = np.flatnonzero(mask)
                got = geometry.covered_set(gm.subgraph(idx)).count
                if got > cap:
                    return False, f"{got} intervals at d={d}, trial {trial}", {
                        "d": d, "trial": trial, "count": got,
                    }
        return True, "covered sets stay within 2^d - 1 intervals (1000 trials at d=3)", None

    s.check("interval count bound", bound)

    def structure():
        if not geometry.covered_set(geometry.PointMatching(())).empty:
            return False, "empty subgraph must cover nothing", {}
        pm = geometry.PointMatching((geometry.PointEdge(0.1, 0.3), geometry.PointEdge(0.5, 0.9)))
        cov = geometry.covered_set(pm)
        if cov.count != 2 or abs(cov.total_length - 0.6) > 1e-12:
            return False, "two disjoint spans miscounted", {"count": cov.count}
        return True, "covered-set normalization behaves on edge cases", None

    s.check("covered set structure", structure)
    return s.report


# ---------------------------------------------------------------------------
# prop3.1 / prop3.2

_QR_N = 50_000
_QR_EPS = 0.2


def _random_interval(rng: np.random.Generator, lo: float, hi: float) -> geometry.IntervalUnion:
    a, b = np.sort(rng.uniform(lo, hi, 2))
    return geometry.interval_union([geometry.Interval(float(a), float(b))])


def _suite_quasirandom(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("prop3.1")

    def certificates():
        for sd in (seed + 1, seed + 2, seed + 3):
            gm = geometry.gen_quasirandom(_QR_N, _QR_EPS, seed=sd, resample_budget=resample_budget)
            rep = geometry.certify_quasirandom(gm, _QR_EPS)
            if not rep.passed:
                return False, f"certificate failed at seed {sd}", {"seed": sd, "dev": rep.max_deviation}
            full = geometry.count_edges_between(
                gm,
                geometry.interval_union([geometry.Interval(0.0, 1.0)]),
                geometry.interval_union([geometry.Interval(1.0, 2.0)]),
            )
            if full != _QR_N:
                return False, f"full count {full} != n", {"seed": sd, "count": full}
        return True, f"3 seeds certified at n={_QR_N}, eps={_QR_EPS}", None

    s.check("grid certificate", certificates)

    def continuous():
        gm = geometry.gen_quasirandom(_QR_N, _QR_EPS, seed=seed + 1, resample_budget=resample_budget)
        rng = np.random.default_rng(np.random.SeedSequence([seed, 31]))
        worst = 0.0
        for _ in range(1000):
            left = _random_interval(rng, 0.0, 1.0)
            right = _random_interval(rng, 1.0, 2.0)
            got = geometry.count_edges_between(gm, left, right)
            expect = left.total_length * right.total_length * _QR_N
            worst = max(worst, abs(got - expect))
            if abs(got - expect) > _QR_EPS * _QR_N:
                return False, f"deviation {abs(got - expect):.1f} > eps*n", {
                    "left": [list(i[:2]) for i in left.intervals],
                    "right": [list(i[:2]) for i in right.intervals],
                }
        return True, f"1000 continuous pairs within eps*n (worst {worst:.1f} vs {_QR_EPS * _QR_N:.0f})", None

    s.check("continuous spot check", continuous)
    return s.report


def _random_union(rng: np.random.Generator, lo: float, hi: float, parts: int) -> geometry.IntervalUnion:
    cuts = np.sort(rng.uniform(lo, hi, 2 * parts))
    return geometry.interval_union(
        [geometry.Interval(float(cuts[2 * i]), float(cuts[2 * i + 1])) for i in range(parts)]
    )


def _suite_union_discrepancy(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("prop3.2")

    def unions():
        gm = geometry.gen_quasirandom(_QR_N, _QR_EPS, seed=seed + 1, resample_budget=resample_budget)
        rng = np.random.default_rng(np.random.SeedSequence([seed, 32]))
        for trial in range(200):
            a = int(rng.integers(1, 5))
            b = int(rng.integers(1, 5))
            left = _random_union(rng, 0.0, 1.0, a)
            right = _random_union(rng, 1.0, 2.0, b)
            a_eff, b_eff = left.count, right.count
            got = geometry.count_edges_between(gm, left, right)
            expect = left.total_length * right.total_length * _QR_N
            if abs(got - expect) > a_eff * b_eff * _QR_EPS * _QR_N:
                return False, f"trial {trial}: deviation {abs(got - expect):.1f} > ab*eps*n", {
                    "trial": trial, "a": a_eff, "b": b_eff,
                }
        return True, "200 random unions (a, b <= 4) within ab*eps*n", None

    s.check("union discrepancy", unions)

    def additivity():
        gm = geometry.gen_quasirandom(2_000, 0.9, seed=seed + 4, resample_budget=resample_budget)
        rng = np.random.default_rng(np.random.SeedSequence([seed, 33]))
        for _ in range(20):
            cuts = np.sort(rng.uniform(0.0, 1.0, 4))
            i1 = geometry.interval_union([geometry.Interval(float(cuts[0]), float(cuts[1]))])
            i2 = geometry.interval_union([geometry.Interval(float(cuts[2]), float(cuts[3]))])
            right = _random_interval(rng, 1.0, 2.0)
            whole = geometry.count_edges_between(gm, i1.union(i2), right)
            parts = geometry.count_edges_between(gm, i1, right) + geometry.count_edges_between(gm, i2, right)
            if whole != parts:
                return False, f"additivity broken: {whole} != {parts}", {"cuts": cuts.tolist()}
        return True, "edge counts add over disjoint left unions", None

    s.check("count additivity", additivity)
    return s.report


# ---------------------------------------------------------------------------
# claim-thm1.4

def _suite_coverage_claim(seed: int, node_budget: int, resample_budget: int) -> VerifyReport:
    s = _Suite("claim-thm1.4")
    eps, n, trials = 0.2, 200, 50
    pat = geometry.CLAIM_PATTERN

    def claim_holds():
        hosts = {d: geometry.build_G_d(d, n, eps, seed=seed + d) for d in (1, 2, 3)}
        views = {d: geometry.to_ordered_graph(hosts[d]) for d in hosts}
        min_slack = math.inf
        for trial in range(trials):
            d = 1 + trial % 3
            rep = solver.max_free_greedy(views[d], pat, policy="random", seed=seed + trial)
            kept = set(views[d].sorted_edges) - set(rep.deleted)
            sub = geometry.subgraph_from_ordered_edges(hosts[d], kept)
            claim = geometry.check_claim(sub, d, n, eps)
            if not claim.passed:
                return False, f"claim bound broken at trial {trial} (d={d})", {
                    "trial": trial, "d": d, "edges": claim.edges, "bound": claim.bound,
                }
            cap = (2 / d + 10**d * eps / (d * 2 ** (d - 1))) * hosts[d].e
            if sub.e > cap:
                return False, f"aggregate cap broken at trial {trial}", {"trial": trial, "d": d}
            min_slack = min(min_slack, claim.slack)
        return True, f"{trials} greedy subgraphs pass (min slack {min_slack:.0f})", None

    s.check("coverage claim on maximal subgraphs", claim_holds)

    def decomposition():
        for d in (2, 3):
            host = geometry.build_G_d(d, n, eps, seed=seed + d)
            view = geometry.to_ordered_graph(host)
            rep = solver.max_free_greedy(view, pat, policy="random", seed=seed + 7)
            kept = set(view.sorted_edges) - set(rep.deleted)
            sub = geometry.subgraph_from_ordered_edges(host, kept)
            part_a, part_b, part_c = geometry.decompose_blocks(sub)
            left_cov = geometry.covered_set(part_a)
            right_cov = geometry.covered_set(part_b)
            if geometry.count_edges_between(part_c, left_cov, right_cov) != 0:
                return False, f"crossing edges join both covered sides at d={d}", {"d": d}
            lefts = geometry.endpoints_left(part_c)
            rights = geometry.endpoints_right(part_c)
            hull_left = []
            for piece in left_cov.complement_within(0.0, 1.0).intervals:
                pts = geometry.points_in(piece, lefts)
                if pts:
                    hull_left.append(geometry.interval_hull(pts))
            hull_right = []
            for piece in right_cov.complement_within(1.0, 2.0).intervals:
                pts = geometry.points_in(piece, rights)
                if pts:
                    hull_right.append(geometry.interval_hull(pts))
            left_all = geometry.interval_union(hull_left).union(left_cov)
            right_all = geometry.interval_union(hull_right).union(right_cov)
            if geometry.count_edges_between(part_c, left_all, right_all) != part_c.e:
                return False, f"crossing edges escape the hull products at d={d}", {"d": d}
        return True, "no crossing edge joins covered sides; hull products catch the rest", None

    s.check("three-block decomposition", decomposition)

    def hull_calculus():
        pm = geometry.PointMatching(
            (geometry.PointEdge(0.1, 1.5), geometry.PointEdge(0.4, 1.2),
             geometry.PointEdge(0.3, 0.9))
        )
        if geometry.endpoints_left(pm) != (0.1, 0.3, 0.4):
            return False, "left endpoints wrong", {}
        if geometry.endpoints_right(pm) != (0.9, 1.2, 1.5):
            return False, "right endpoints wrong", {}
        single = geometry.interval_hull([0.3])
        if single.length != 0.0 or not single.contains(0.3):
            return False, "degenerate hull wrong", {}
        hull = geometry.interval_hull(geometry.points_in(geometry.Interval(0.0, 0.45), (0.2, 0.5, 0.4, 0.3)))
        if (hull.lo, hull.hi) != (0.2, 0.4):
            return False, f"hull ({hull.lo}, {hull.hi}) wrong", {}
        try:
            geometry.interval_hull(())
        except ValueError:
            return True, "endpoint sets, restriction, and hulls behave; empty hull rejected", None
        return False, "empty hull must be an error", {}

    s.check("hull calculus", hull_calculus)

    def bound_function():
        grid = np.linspace(0.0, 1.0, 1001)
        for d in range(1, 5):
            vals = [geometry.f_d(d, float(t)) for t in grid]
            if any(v > 2 * t + 1e-12 for v, t in zip(vals, grid)):
                return False, f"f_{d} exceeds 2t", {"d": d}
            if any(b < a - 1e-12 for a, b in zip(vals, vals[1:])):
                return False, f"f_{d} not nondecreasing", {"d": d}
            mid = [(a + c) / 2 - b for a, b, c in zip(vals, vals[1:], vals[2:])]
            if any(v < -1e-9 for v in mid):
                return False, f"f_{d} not midpoint-convex", {"d": d}
            knee = 1.0 / 2 ** (d - 1)
            if abs(geometry.f_d(d, knee) - knee) > 1e-12:
                return False, f"knee mismatch for f_{d}", {"d": d}
            if abs(geometry.f_d(d, 1.0) - (2.0 - knee)) > 1e-12:
                return False, f"f_{d}(1) wrong", {"d": d}
        return True, "f_d <= 2t, nondecreasing, midpoint-convex, continuous at the knee", None

    s.check("bound function shape", bound_function)
    return s.report


# ---------------------------------------------------------------------------
# pattern report

REPORT_COLUMNS = (
    "pattern", "n", "e", "chi_interval", "ell", "vec_pi",
    "rho_lower", "rho_upper", "lower_provenance", "upper_provenance",
)


def report_rows(patterns: Iterable[tuple[str, ordgraph.OrderedGraph]]) -> list[dict]:
    """One row of invariants and the formula-certified bracket per pattern."""
    rows = []
    for name, g in patterns:
        bounds = densities.bounds_report(g, name=name)
        rows.append(
            {
                "pattern": name,
                "n": g.n,
                "e": g.e,
                "chi_interval": ordgraph.chi_interval(g),
                "ell": ordgraph.ell_monotone(g),
                "vec_pi": str(bounds.vec_pi),
                "rho_lower": str(bounds.rho_lower),
                "rho_upper": str(bounds.rho_upper),
                "lower_provenance": bounds.lower_provenance,
                "upper_provenance": bounds.upper_provenance,
            }
        )
    return rows
