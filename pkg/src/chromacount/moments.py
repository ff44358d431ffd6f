"""Exact mean and variance of the monochromatic-copy count, plus an
exhaustive-coloring distribution oracle.

Under a uniform random coloring with ``colors`` colors, a fixed copy on v
vertices is monochromatic with probability colors**(1-v); two copies sharing
t >= 2 vertices are simultaneously monochromatic with probability
colors**(t+1-2v). All closed forms here are assembled in exact rational
arithmetic and converted to float at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .counting import (
    DEFAULT_COPY_CAP,
    CopyCensus,
    copy_census,
    count_copies,
    overlap_pair_counts,
)
from .errors import StateSpaceError
from .graphs import Graph

EXACT_COLORING_LIMIT = 10**6
COLORING_GUARD = 10**8


@dataclass
class OverlapTerm:
    pair_count: int
    contribution: float

    def to_dict(self):
        return {"pair_count": self.pair_count, "contribution": self.contribution}


@dataclass
class MomentReport:
    """Mean/variance of the monochromatic-copy count with the overlap
    decomposition variance = var_single + var_overlap."""

    copies: int
    colors: int
    pattern_vertices: int
    mean: float
    var_single: float
    var_overlap: float
    variance: float
    per_overlap: dict[int, OverlapTerm] = field(default_factory=dict)

    def to_dict(self):
        return {
            "copies": self.copies,
            "colors": self.colors,
            "pattern_vertices": self.pattern_vertices,
            "mean": self.mean,
            "var_single": self.var_single,
            "var_overlap": self.var_overlap,
            "variance": self.variance,
            "per_overlap": {str(t): term.to_dict() for t, term in sorted(self.per_overlap.items())},
        }


def mean_count(h: Graph, g: Graph, colors: int) -> float:
    """Expected number of monochromatic copies: N(h, g) / colors**(|V(h)|-1)."""
    if colors < 1:
        raise ValueError("colors must be >= 1")
    n_copies = count_copies(h, g)
    return float(Fraction(n_copies, colors ** (h.n - 1)))


def moment_report(
    h: Graph,
    g: Graph,
    colors: int,
    cap: int = DEFAULT_COPY_CAP,
    census: CopyCensus | None = None,
) -> MomentReport:
    """Exact mean and variance via the overlap-pair decomposition."""
    if colors < 2:
        raise ValueError("colors must be >= 2")
    v = h.n
    if census is None:
        census = copy_census(h, g, cap=cap)
    n_copies = census.copy_count
    mono_p = Fraction(1, colors ** (v - 1))
    mean = n_copies * mono_p
    var_single = mean * (1 - mono_p)
    ts = list(range(2, v + 1))
    pair_counts = overlap_pair_counts(census, ts) if v >= 2 else {}
    per_overlap = {}
    var_overlap = Fraction(0)
    for t in ts:
        k_t = pair_counts[t]
        term = k_t * Fraction(1, colors ** (2 * v - t - 1)) * (1 - Fraction(1, colors ** (t - 1)))
        var_overlap += term
        per_overlap[t] = OverlapTerm(pair_count=k_t, contribution=float(term))
    vs = float(var_single)
    vo = float(var_overlap)
    return MomentReport(
        copies=n_copies,
        colors=colors,
        pattern_vertices=v,
        mean=float(mean),
        var_single=vs,
        var_overlap=vo,
        variance=vs + vo,
        per_overlap=per_overlap,
    )


@dataclass
class Pmf:
    """Distribution on nonnegative integers. ``probs`` are floats; when the
    distribution was obtained exactly, ``exact_probs`` carries the rational
    values. ``tail`` is the mass not covered by the listed support."""

    values: list[int]
    probs: list[float]
    exact_probs: list[Fraction] | None = None
    tail: float = 0.0

    def prob(self, v: int) -> float:
        try:
            return self.probs[self.values.index(v)]
        except ValueError:
            return 0.0

    def mean(self):
        if self.exact_probs is not None:
            return sum(Fraction(v) * p for v, p in zip(self.values, self.exact_probs))
        return float(sum(v * p for v, p in zip(self.values, self.probs)))

    def variance(self):
        m = self.mean()
        if self.exact_probs is not None:
            return sum(Fraction(v) ** 2 * p for v, p in zip(self.values, self.exact_probs)) - m * m
        second = sum(v * v * p for v, p in zip(self.values, self.probs))
        return float(second - m * m)

    def total(self) -> float:
        return float(sum(self.probs)) + self.tail

    def to_dict(self):
        out = {
            "support": [[v, p] for v, p in zip(self.values, self.probs)],
            "tail": self.tail,
        }
        if self.exact_probs is not None:
            out["exact_support"] = [
                [v, {"num": p.numerator, "den": p.denominator}]
                for v, p in zip(self.values, self.exact_probs)
            ]
        return out


def exact_distribution(
    h: Graph,
    g: Graph,
    colors: int,
    cap: int = DEFAULT_COPY_CAP,
    census: CopyCensus | None = None,
) -> Pmf:
    """Exact law of the monochromatic-copy count by enumerating every one of
    the colors**|V(g)| colorings. Guarded at 10**8 colorings; probabilities
    are exact rationals up to 10**6 colorings and floats beyond."""
    if colors < 1:
        raise ValueError("colors must be >= 1")
    total = colors ** g.n
    if total > COLORING_GUARD:
        raise StateSpaceError(
            f"{colors}^{g.n} colorings exceed the enumeration guard ({COLORING_GUARD})"
        )
    if census is None:
        census = copy_census(h, g, cap=cap)
    copies = census.vertex_sets
    m = census.copy_count
    hist = np.zeros(m + 1, dtype=np.int64)
    if m == 0:
        hist[0] = total
    else:
        budget = 20_000_000
        batch = max(1, min(total, budget // max(1, m * h.n)))
        start = 0
        while start < total:
            stop = min(total, start + batch)
            idx = np.arange(start, stop, dtype=np.int64)
            digits = np.empty((stop - start, g.n), dtype=np.int64)
            q = idx
            for vtx in range(g.n):
                digits[:, vtx] = q % colors
                q = q // colors
            cols = digits[:, copies]  # (batch, m, |V(h)|)
            mono = (cols == cols[:, :, :1]).all(axis=2)
            t_vec = mono.sum(axis=1)
            hist += np.bincount(t_vec, minlength=m + 1)
            start = stop
    values = [int(v) for v in np.flatnonzero(hist)]
    counts = [int(hist[v]) for v in values]
    probs = [c / total for c in counts]
    exact = None
    if total <= EXACT_COLORING_LIMIT:
        exact = [Fraction(c, total) for c in counts]
    return Pmf(values=values, probs=probs, exact_probs=exact, tail=0.0)
