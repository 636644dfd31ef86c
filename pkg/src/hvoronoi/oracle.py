"""Brute-force ground truth for diagram verification.

Nothing here knows how a diagram was built: nearest-site sets come from
evaluating distances directly, rank levels from sorting the lifted plane
heights, and :func:`verify_diagram` compares sampled cell lookups against
those answers.  Sample evaluation is read-only and vectorized; reports merge
by plain addition.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cells import ClippedDiagram
from .models import DomainError, validate_klein
from .power import locate_cells

__all__ = ["VerificationReport", "k_nearest_set", "level_of_point", "verify_diagram"]


def _equivalent_distances(points, sites) -> np.ndarray:
    """Matrix of monotone-equivalent Klein distances (1 - <x,p>) / (s_x s_p).

    The arccosh is dropped deliberately: ordering is unchanged and the margin
    test stays well conditioned near coincident points.
    """
    X = np.atleast_2d(np.asarray(points, dtype=float))
    P = np.atleast_2d(np.asarray(sites, dtype=float))
    sx = np.sqrt(1.0 - np.sum(X * X, axis=1))
    sp = np.sqrt(1.0 - np.sum(P * P, axis=1))
    return (1.0 - X @ P.T) / np.outer(sx, sp)


def k_nearest_set(x, sites, k: int, margin: float = 0.0):
    """Indices of the k sites nearest to x, or None when the answer is ambiguous.

    Ambiguous means the k-th and (k+1)-th smallest equivalent distances differ
    by less than `margin`.  Returns a frozenset of site indices otherwise.
    """
    x = validate_klein(x, "x")
    P = np.atleast_2d(np.asarray(sites, dtype=float))
    n = len(P)
    if not 1 <= k <= n:
        raise DomainError(f"k must satisfy 1 <= k <= {n}, got {k}")
    for i, p in enumerate(P):
        validate_klein(p, f"site {i}")
    dists = _equivalent_distances(x[None, :], P)[0]
    order = np.argsort(dists, kind="stable")
    if k < n and dists[order[k]] - dists[order[k - 1]] < margin:
        return None
    return frozenset(int(i) for i in order[:k])


def level_of_point(x, sites) -> tuple[int, ...]:
    """Site indices ordered by increasing lifted-plane height at x.

    The height of site p's plane at x is (1 - <x,p>) / sqrt(1 - <p,p>); the
    first k entries are always a k-nearest set of x, for every k.
    """
    x = validate_klein(x, "x")
    P = np.atleast_2d(np.asarray(sites, dtype=float))
    for i, p in enumerate(P):
        validate_klein(p, f"site {i}")
    sp = np.sqrt(1.0 - np.sum(P * P, axis=1))
    heights = (1.0 - P @ x) / sp
    return tuple(int(i) for i in np.argsort(heights, kind="stable"))


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a sampled diagram check.

    `max_violation_margin` is the largest tie gap seen among disagreeing
    samples (0 when there are none): a genuine construction error shows up
    with a large gap, a borderline sample with a tiny one.
    """

    samples: int
    agreements: int
    margin_skipped: int
    max_violation_margin: float
    seed: int

    @property
    def checked(self) -> int:
        return self.samples - self.margin_skipped

    @property
    def agreement_ratio(self) -> float | None:
        """Fraction of non-skipped samples that agreed; None when undefined."""
        if self.checked == 0:
            return None
        return self.agreements / self.checked

    def to_dict(self) -> dict:
        return {
            "samples": self.samples,
            "agreements": self.agreements,
            "margin_skipped": self.margin_skipped,
            "max_violation_margin": self.max_violation_margin,
            "seed": self.seed,
            "agreement_ratio": self.agreement_ratio,
        }


def sample_disk(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    """n points uniform in the open disk, by rejection from the bounding square."""
    chunks = []
    have = 0
    while have < n:
        want = n - have
        cand = rng.uniform(-radius, radius, size=(int(want * 1.35) + 16, 2))
        keep = cand[np.sum(cand * cand, axis=1) < radius * radius]
        chunks.append(keep)
        have += len(keep)
    return np.concatenate(chunks)[:n]


def verify_diagram(
    diagram: ClippedDiagram, n_samples: int, seed: int, margin: float = 1e-7
) -> VerificationReport:
    """Sample the clip disk uniformly and compare cell lookups with brute force.

    Each sample x whose k-th/(k+1)-th distance gap exceeds `margin` is checked:
    the generator of the located cell must equal the k nearest sites of x.
    """
    if n_samples < 0:
        raise DomainError("sample count must be nonnegative")
    if n_samples == 0:
        return VerificationReport(0, 0, 0, 0.0, seed)
    rng = np.random.default_rng(seed)
    X = sample_disk(rng, n_samples, diagram.clip_radius)
    k = diagram.order
    n = len(diagram.sites)

    dists = _equivalent_distances(X, diagram.sites)
    order = np.argsort(dists, axis=1, kind="stable")
    if k < n:
        sorted_d = np.take_along_axis(dists, order, axis=1)
        gaps = sorted_d[:, k] - sorted_d[:, k - 1]
        skipped = gaps < margin
    else:
        gaps = np.full(n_samples, np.inf)
        skipped = np.zeros(n_samples, dtype=bool)
    expected = np.sort(order[:, :k], axis=1)

    located = locate_cells(X, diagram)
    gen_rows = np.array([c.generator for c in diagram.cells], dtype=int)
    agree = np.all(gen_rows[located] == expected, axis=1)

    checked = ~skipped
    disagreements = checked & ~agree
    max_violation = float(np.max(gaps[disagreements])) if np.any(disagreements) else 0.0
    return VerificationReport(
        samples=n_samples,
        agreements=int(np.count_nonzero(checked & agree)),
        margin_skipped=int(np.count_nonzero(skipped)),
        max_violation_margin=max_violation,
        seed=seed,
    )
