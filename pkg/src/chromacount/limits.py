"""Structural exponents, Erdos-Renyi regime classification, and
Poisson-mixture limit objects for the monochromatic-copy count.

Edge probabilities are parameterized as p(n) = kappa * n**(-alpha) with
rational alpha, so regime boundaries are decided by exact rational
comparisons; mixture rates are ordinary floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .counting import (
    DEFAULT_COPY_CAP,
    automorphism_count,
    copy_census,
    count_copies,
    copy_multiplicity_counts,
    join_catalog,
    overlap_pair_counts,
    supergraph_classes,
)
from .graphs import Graph, canonical_form, induced_subgraph
from .moments import MomentReport, moment_report


# -- structural exponents ------------------------------------------------------


def density_exponent(h: Graph) -> Fraction:
    """max over non-empty subgraphs of edges/vertices. For a fixed vertex set
    the ratio is maximized by taking all induced edges, so scanning induced
    subgraphs suffices."""
    if h.edge_count == 0:
        raise ValueError("pattern has no edges")
    best = Fraction(0)
    verts = range(h.n)
    for size in range(1, h.n + 1):
        for sub in combinations(verts, size):
            inside = set(sub)
            e = sum(1 for u, v in h.edges if u in inside and v in inside)
            ratio = Fraction(e, size)
            if ratio > best:
                best = ratio
    return best


def is_balanced(h: Graph) -> bool:
    return density_exponent(h) == Fraction(h.edge_count, h.n)


def critical_exponent(h: Graph) -> Fraction:
    """For connected unbalanced h: the minimum over proper subgraphs h1 with
    positive denominator of

        (|V(h)| - |V(h1)|) / (|E(h1)|(|V(h)|-1) - |E(h)|(|V(h1)|-1)).

    Minimizers are connected induced subgraphs, so only those are scanned;
    tests cross-check against the unrestricted brute force."""
    if not h.is_connected():
        raise ValueError("pattern must be connected")
    if is_balanced(h):
        raise ValueError("critical exponent is defined only for unbalanced patterns")
    v, e = h.n, h.edge_count
    best = None
    for size in range(1, v):
        for sub in combinations(range(v), size):
            g1 = induced_subgraph(h, sub)
            if not g1.is_connected():
                continue
            denom = g1.edge_count * (v - 1) - e * (size - 1)
            if denom <= 0:
                continue
            ratio = Fraction(v - size, denom)
            if best is None or ratio < best:
                best = ratio
    if best is None:
        raise ValueError("no subgraph with positive denominator; pattern is balanced")
    return best


# -- color-count calibration ---------------------------------------------------


@dataclass
class ColorCalibration:
    colors: int
    realized_rate: float
    out_of_regime: bool

    def to_dict(self):
        return {
            "colors": self.colors,
            "realized_rate": self.realized_rate,
            "out_of_regime": self.out_of_regime,
        }


def required_colors(h: Graph, n: int, p: float, rate: float) -> ColorCalibration:
    """Integer color count making the expected monochromatic-copy count in
    G(n, p) approximately ``rate``, plus the rate realized by that integer."""
    if n < h.n:
        raise ValueError("host size must be at least the pattern size")
    if not (0.0 < p <= 1.0):
        raise ValueError("p must lie in (0, 1]")
    if rate <= 0:
        raise ValueError("target rate must be positive")
    aut = automorphism_count(h)
    expected_copies = math.comb(n, h.n) * math.factorial(h.n) / aut * p ** h.edge_count
    target = (expected_copies / rate) ** (1.0 / (h.n - 1))
    c = round(target)
    out_of_regime = c < 2
    c = max(c, 2)
    realized = expected_copies / c ** (h.n - 1)
    return ColorCalibration(colors=c, realized_rate=realized, out_of_regime=out_of_regime)


# -- Poisson mixtures ------------------------------------------------------------


@dataclass
class PoissonMixture:
    """Law of sum(k * X_k) with independent Poisson X_k; components are
    (coefficient k, rate) pairs with distinct coefficients."""

    components: tuple[tuple[int, float], ...]

    def __post_init__(self):
        ks = [k for k, _ in self.components]
        if len(ks) != len(set(ks)):
            raise ValueError("mixture coefficients must be distinct")
        if any(k < 1 or rate < 0 for k, rate in self.components):
            raise ValueError("coefficients must be >= 1 and rates >= 0")
        self.components = tuple(sorted(self.components))

    def mean(self) -> float:
        return float(sum(k * rate for k, rate in self.components))

    def to_dict(self):
        return {"components": [[k, rate] for k, rate in self.components]}


def poisson(rate: float) -> PoissonMixture:
    return PoissonMixture(components=((1, float(rate)),))


def degenerate_zero() -> PoissonMixture:
    return PoissonMixture(components=())


def dense_mixture(h: Graph, p: float, rate: float) -> PoissonMixture:
    """Limit mixture for a fixed edge density p in (0,1): one component per
    isomorphism class of supergraphs F of h on |V(h)| vertices, with
    coefficient N(h, F); equal coefficients merge by adding rates."""
    if not (0.0 < p < 1.0):
        raise ValueError("p must lie in (0, 1)")
    if rate <= 0:
        raise ValueError("rate must be positive")
    sc = supergraph_classes(h)
    aut_h = automorphism_count(h)
    pairs = math.comb(h.n, 2)
    merged: dict[int, float] = {}
    for k, f in sc.members():
        lam = (
            rate
            * aut_h
            / automorphism_count(f)
            * p ** (f.edge_count - h.edge_count)
            * (1 - p) ** (pairs - f.edge_count)
        )
        merged[k] = merged.get(k, 0.0) + lam
    return PoissonMixture(components=tuple(sorted(merged.items())))


def sequence_mixture(h: Graph, g: Graph, colors: int) -> PoissonMixture:
    """Finite-host plug-in mixture: coefficient k with rate
    (number of |V(h)|-sets carrying exactly k copies) / colors**(|V(h)|-1)."""
    if colors < 1:
        raise ValueError("colors must be >= 1")
    counts = copy_multiplicity_counts(h, g)
    scale = colors ** (h.n - 1)
    comps = tuple((k, d / scale) for k, d in sorted(counts.items()) if d > 0)
    return PoissonMixture(components=comps)


# -- regime classification -------------------------------------------------------


REGIMES = ("invalid", "sparse_poisson", "unbalanced_zero", "unbalanced_critical", "dense_mixture")


@dataclass
class RegimeReport:
    pattern_vertices: int
    pattern_edges: int
    balanced: bool
    density: Fraction
    critical: Fraction | None
    alpha: Fraction
    kappa: float
    rate: float
    regime: str
    predicted_limit: PoissonMixture | None
    note: str = ""

    def to_dict(self):
        def frac(x):
            return None if x is None else {"num": x.numerator, "den": x.denominator}

        return {
            "pattern_vertices": self.pattern_vertices,
            "pattern_edges": self.pattern_edges,
            "balanced": self.balanced,
            "density_exponent": frac(self.density),
            "critical_exponent": frac(self.critical),
            "alpha": frac(self.alpha),
            "kappa": self.kappa,
            "rate": self.rate,
            "regime": self.regime,
            "predicted_limit": None if self.predicted_limit is None else self.predicted_limit.to_dict(),
            "note": self.note,
        }


def classify_er_regime(h: Graph, alpha: Fraction, kappa: float, rate: float) -> RegimeReport:
    """Place p(n) = kappa * n**(-alpha) in the phase diagram for the pattern
    and report the predicted limit of the monochromatic-copy count."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if alpha == 0 and not (0.0 < kappa < 1.0):
        raise ValueError("a constant edge probability requires kappa in (0, 1)")
    if rate <= 0:
        raise ValueError("rate must be positive")
    m = density_exponent(h)
    balanced = m == Fraction(h.edge_count, h.n)
    gamma = None if balanced else critical_exponent(h)
    alpha_max = Fraction(h.n, h.edge_count)

    if alpha >= alpha_max:
        regime, limit = "invalid", None
        note = "color count cannot diverge at this sparsity"
    elif alpha == 0:
        regime, limit = "dense_mixture", dense_mixture(h, kappa, rate)
        note = ""
    elif balanced or alpha < gamma:
        regime, limit = "sparse_poisson", poisson(rate)
        note = ""
    elif alpha == gamma:
        regime, limit = "unbalanced_critical", None
        note = "moments converge; limit (if it exists) is non-Poisson"
    else:
        regime, limit = "unbalanced_zero", degenerate_zero()
        note = "count vanishes in probability while its mean stays near the target rate"

    return RegimeReport(
        pattern_vertices=h.n,
        pattern_edges=h.edge_count,
        balanced=balanced,
        density=m,
        critical=gamma,
        alpha=alpha,
        kappa=float(kappa),
        rate=float(rate),
        regime=regime,
        predicted_limit=limit,
        note=note,
    )


# -- second-moment condition check ------------------------------------------------


@dataclass
class JoinRatio:
    overlap: int
    vertices: int
    edges: int
    count: int
    exponent: int
    ratio: float

    def to_dict(self):
        return {
            "overlap": self.overlap,
            "vertices": self.vertices,
            "edges": self.edges,
            "count": self.count,
            "threshold_exponent": self.exponent,
            "ratio": self.ratio,
        }


@dataclass
class SecondMomentReport:
    moments: MomentReport
    epsilon: float
    join_ratios: list[JoinRatio]
    full_overlap_ratio: float
    overlap_pairs: dict[int, int]
    dependent_pair_count: int
    mean_variance_gap: float
    poisson_consistent: bool

    def to_dict(self):
        return {
            "moments": self.moments.to_dict(),
            "epsilon": self.epsilon,
            "join_ratios": [j.to_dict() for j in self.join_ratios],
            "full_overlap_ratio": self.full_overlap_ratio,
            "overlap_pairs": {str(t): c for t, c in sorted(self.overlap_pairs.items())},
            "dependent_pair_count": self.dependent_pair_count,
            "mean_variance_gap": self.mean_variance_gap,
            "poisson_consistent": self.poisson_consistent,
        }


def second_moment_check(
    h: Graph,
    g: Graph,
    colors: int,
    epsilon: float,
    cap: int = DEFAULT_COPY_CAP,
) -> SecondMomentReport:
    """Diagnose whether the finite instance looks Poisson in the second-moment
    sense: variance close to mean, every partial-overlap join class rare at
    scale colors**(2v-t-1), and few full-overlap pairs.

    The report also carries the count of all ordered overlapping pairs (any
    shared vertex), which a naive dependency-based argument would need to be
    small; the verdict deliberately ignores pairs sharing a single vertex,
    whose covariance is exactly zero.
    """
    if colors < 2:
        raise ValueError("colors must be >= 2")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    v = h.n
    census = copy_census(h, g, cap=cap)
    pair_counts = overlap_pair_counts(census, range(1, v + 1))
    moments = moment_report(h, g, colors, census=census)

    ratios = []
    catalog = join_catalog(h)
    h_canon = canonical_form(h)
    for t, rep in catalog.members():
        if canonical_form(rep) == h_canon:
            continue
        cnt = count_copies(rep, g)
        expo = 2 * v - t - 1
        ratios.append(
            JoinRatio(
                overlap=t,
                vertices=rep.n,
                edges=rep.edge_count,
                count=cnt,
                exponent=expo,
                ratio=cnt / colors ** expo,
            )
        )
    full_ratio = pair_counts[v] / colors ** (v - 1)
    gap = abs(moments.variance - moments.mean)
    consistent = (
        gap <= epsilon * moments.mean
        and all(r.ratio <= epsilon for r in ratios)
        and full_ratio <= epsilon
    )
    dependent = sum(pair_counts[t] for t in range(1, v + 1)) // 2
    return SecondMomentReport(
        moments=moments,
        epsilon=epsilon,
        join_ratios=ratios,
        full_overlap_ratio=full_ratio,
        overlap_pairs=pair_counts,
        dependent_pair_count=dependent,
        mean_variance_gap=gap,
        poisson_consistent=consistent,
    )
