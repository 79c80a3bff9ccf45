"""Exact density formulas and certified bracket aggregation.

All values are exact rationals.  The relative density of a pattern (largest
guaranteed pattern-free edge fraction over all hosts) is never claimed
exactly: reports carry a certified bracket [rho_lower, rho_upper] with the
provenance of each endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .ordgraph import (
    OrderedGraph,
    chi_interval,
    chromatic_number,
    ell_monotone,
    has_odd_cycle,
)
from .solver import DEFAULT_NODE_BUDGET, best_certified_ratio, rho_upper_from_witness


def vec_pi(f: OrderedGraph) -> Fraction:
    """Ordered Turan density (chi_< - 2) / (chi_< - 1); exact rational."""
    if f.e == 0:
        raise ValueError("pattern must have at least one edge")
    chi = chi_interval(f)
    return Fraction(chi - 2, chi - 1)


def pi_unordered(f: OrderedGraph) -> Fraction:
    """Unordered Turan density (chi - 2) / (chi - 1); exact search, n <= 20."""
    if f.e == 0:
        raise ValueError("pattern must have at least one edge")
    chi = chromatic_number(f)
    return Fraction(chi - 2, chi - 1)


def rho_lower_ell(f: OrderedGraph) -> Fraction:
    """Monotone-path lower bound (l - 2) / (2(l - 1)), clamped to 0 for l <= 2."""
    ell = ell_monotone(f)
    if ell <= 2:
        return Fraction(0)
    return Fraction(ell - 2, 2 * (ell - 1))


@dataclass(frozen=True)
class DensityBounds:
    """Certified density bracket for one pattern."""

    pattern: str
    vec_pi: Fraction
    pi: Optional[Fraction]
    rho_lower: Fraction
    rho_upper: Fraction
    lower_provenance: str
    upper_provenance: str
    valid: bool


def bounds_report(
    f: OrderedGraph,
    name: str = "pattern",
    witness: Optional[Callable[[int], OrderedGraph]] = None,
    witness_name: str = "witness",
    indices: Iterable[int] = (),
    budget: int = DEFAULT_NODE_BUDGET,
) -> DensityBounds:
    """Assemble the best certified density bracket for a pattern.

    Lower bound: the monotone-path formula, improved to 1/2 when the pattern
    has an odd cycle (every host keeps a bipartite, hence pattern-free, half
    of its edges).  Upper bound: the interval-chromatic formula, improved by
    exact pattern-free fractions of any supplied witness family.  An invalid
    bracket (lower > upper) signals a bug and is flagged, not raised.
    """
    lower = rho_lower_ell(f)
    lower_src = "monotone-path formula"
    if has_odd_cycle(f) and Fraction(1, 2) > lower:
        lower = Fraction(1, 2)
        lower_src = "odd cycle: bipartite half"

    upper = vec_pi(f)
    upper_src = "interval-chromatic formula"
    if witness is not None:
        ratios = rho_upper_from_witness(witness, f, indices, budget=budget)
        cert = best_certified_ratio(ratios)
        if cert is not None and cert < upper:
            upper = cert
            upper_src = f"witness family {witness_name}"

    pi: Optional[Fraction] = None
    if f.n <= 20:
        pi = pi_unordered(f)

    return DensityBounds(
        pattern=name,
        vec_pi=vec_pi(f),
        pi=pi,
        rho_lower=lower,
        rho_upper=upper,
        lower_provenance=lower_src,
        upper_provenance=upper_src,
        valid=lower <= upper,
    )
