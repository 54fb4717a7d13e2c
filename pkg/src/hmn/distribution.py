"""Degree histograms, their comparison, and log-binned smoothing."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import Hmn, HmnError
from .metrics import MetricScope, _resolve, neighborhood, scoped_nodes

SPLITS = ("all", "intra", "inter")


@dataclass
class DegreeHistogram:
    """Mapping degree -> number of layered nodes with that degree."""

    counts: dict[int, int]
    scope: MetricScope | None = None
    split: str = "all"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.counts = {int(k): int(v) for k, v in sorted(self.counts.items()) if v}

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def degrees(self) -> np.ndarray:
        return np.repeat(
            np.fromiter(self.counts, dtype=float, count=len(self.counts)),
            list(self.counts.values()),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeHistogram):
            return NotImplemented
        return self.counts == other.counts


def degree_distribution(
    g: Hmn, scope: MetricScope | None = None, split: str = "all"
) -> DegreeHistogram:
    """Histogram of scoped neighbourhood sizes over all in-scope layered nodes.

    ``split`` selects which neighbours count: those in the node's own layer
    (``intra``), in other layers (``inter``) or both (``all``).
    """
    if split not in SPLITS:
        raise HmnError(f"split must be one of {SPLITS}, got {split!r}")
    _resolve(g, scope)
    members = scoped_nodes(g, scope)
    if not members:
        raise HmnError("scope selects no nodes")
    counts: Counter[int] = Counter()
    for x in members:
        nb = neighborhood(g, x, scope)
        if split == "intra":
            k = sum(1 for u in nb if u.layer == x.layer)
        elif split == "inter":
            k = sum(1 for u in nb if u.layer != x.layer)
        else:
            k = len(nb)
        counts[k] += 1
    return DegreeHistogram(dict(counts), scope, split)


def ks_distance(h1: DegreeHistogram | Mapping[int, int], h2: DegreeHistogram | Mapping[int, int]) -> float:
    """Largest gap between the two empirical degree CDFs."""
    c1 = h1.counts if isinstance(h1, DegreeHistogram) else dict(h1)
    c2 = h2.counts if isinstance(h2, DegreeHistogram) else dict(h2)
    n1, n2 = sum(c1.values()), sum(c2.values())
    if n1 <= 0 or n2 <= 0:
        raise HmnError("ks_distance needs two non-empty histograms")
    support = sorted(set(c1) | set(c2))
    f1 = np.cumsum([c1.get(k, 0) for k in support]) / n1
    f2 = np.cumsum([c2.get(k, 0) for k in support]) / n2
    return float(np.max(np.abs(f1 - f2)))


def log_binned(hist: DegreeHistogram | Mapping[int, int], bins: int = 12):
    """Log-binned degree density for log-log plotting.

    Degree 0 is dropped.  Returns ``(centres, density)`` where the density of a
    bin is its count divided by the bin width and the total count; empty bins
    are omitted.
    """
    counts = hist.counts if isinstance(hist, DegreeHistogram) else dict(hist)
    pos = {k: v for k, v in counts.items() if k > 0 and v > 0}
    if not pos:
        raise HmnError("histogram has no positive degrees to bin")
    if bins < 1:
        raise HmnError("need at least one bin")
    kmin, kmax = min(pos), max(pos)
    edges = np.geomspace(kmin, kmax + 1, bins + 1)
    deg = np.fromiter(pos, dtype=float)
    cnt = np.fromiter(pos.values(), dtype=float)
    total = cnt.sum()
    which = np.clip(np.searchsorted(edges, deg, side="right") - 1, 0, bins - 1)
    mass = np.bincount(which, weights=cnt, minlength=bins)
    width = np.diff(edges)
    centres = np.sqrt(edges[:-1] * edges[1:])
    keep = mass > 0
    return centres[keep], mass[keep] / width[keep] / total


def loglog_slope(hist: DegreeHistogram | Mapping[int, int], bins: int = 12) -> float:
    """Least-squares slope of log10 density against log10 degree over the log bins."""
    x, y = log_binned(hist, bins)
    if len(x) < 2:
        raise HmnError("need at least two non-empty bins to fit a slope")
    slope, _ = np.polyfit(np.log10(x), np.log10(y), 1)
    return float(slope)
