"""Evaluation of a selection against a baseline selection.

All outputs are on the percent scale; participation vectors stay as
fractions in [0, 1].
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    DegenerateDenominator,
    EmptySelection,
    ZeroBaselineFeature,
    ZeroBaselineUtility,
)
from .parity import Counting, ParityVector, participation
from .profiling import FEATURES, AuthorProfile

GAIN_CAP = 100.0
MAX_DISTANCE = math.sqrt(len(FEATURES))


def feature_gains(candidate: Sequence[float], baseline: Sequence[float]) -> tuple[float, ...]:
    """Relative gain of each feature over the baseline, in percent (uncapped)."""
    zero = [FEATURES[i] for i, b in enumerate(baseline) if b == 0]
    if zero:
        raise ZeroBaselineFeature(zero)
    return tuple(100.0 * (c - b) / b for c, b in zip(candidate, baseline))


def diversity_gain(candidate: Sequence[float], baseline: Sequence[float]) -> tuple[tuple[float, ...], float]:
    """Per-feature gains and their mean after capping each at 100.

    Gains below zero are kept as they are.
    """
    gains = feature_gains(candidate, baseline)
    return gains, sum(min(GAIN_CAP, g) for g in gains) / len(gains)


def utility(selection, authors: Mapping[str, AuthorProfile], counting=Counting.UNIQUE) -> float:
    """Mean h-index of the authors of the selected papers."""
    if Counting(counting) is Counting.UNIQUE:
        ids = {a for paper in selection for a in paper.author_ids}
        values = [authors[a].h_index for a in ids]
    else:
        values = [authors[a].h_index for paper in selection for a in paper.author_ids]
    if not values:
        raise EmptySelection("no authors in selection")
    return sum(values) / len(values)


def utility_loss_savings(u_candidate: float, u_baseline: float) -> tuple[float, float]:
    if u_baseline == 0:
        raise ZeroBaselineUtility("baseline utility is zero")
    loss = (u_baseline - u_candidate) / u_baseline * 100.0
    return loss, 100.0 - loss


def f_measure(a: float, b: float) -> float:
    if a + b == 0:
        raise DegenerateDenominator(f"F-measure undefined for ({a}, {b})")
    return 2.0 * a * b / (a + b)


def demographic_distance(f1: Sequence[float], f2: Sequence[float]) -> float:
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(f1, f2)))


def demographic_similarity(f1: Sequence[float], f2: Sequence[float]) -> float:
    """Similarity in percent: 100 at equality, 0 at opposite corners of [0, 1]^5."""
    return 100.0 * (1.0 - demographic_distance(f1, f2) / MAX_DISTANCE)


@dataclass(frozen=True)
class EvaluationReport:
    candidate_participation: ParityVector
    baseline_participation: ParityVector
    pool_parity: ParityVector
    per_feature_gain: tuple[float, ...]
    diversity_gain: float
    utility_candidate: float
    utility_baseline: float
    utility_loss: float
    utility_savings: float
    f_diversity: float
    demographic_distance: float
    demographic_similarity: float
    f_parity: float

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("candidate_participation", "baseline_participation", "pool_parity"):
            d[key] = dict(zip(ParityVector._fields, getattr(self, key)))
        d["per_feature_gain"] = dict(zip(FEATURES, self.per_feature_gain))
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EvaluationReport":
        kw = dict(d)
        for key in ("candidate_participation", "baseline_participation", "pool_parity"):
            kw[key] = ParityVector(*(kw[key][f] for f in ParityVector._fields))
        kw["per_feature_gain"] = tuple(kw["per_feature_gain"][f] for f in FEATURES)
        return cls(**kw)


def evaluate_vectors(candidate: Sequence[float], baseline: Sequence[float], pool: Sequence[float],
                     u_candidate: float, u_baseline: float) -> EvaluationReport:
    """Build a report from participation vectors and utilities alone.

    This is the replay path: published participation tables can be
    re-scored without the underlying author data.
    """
    gains, dg = diversity_gain(candidate, baseline)
    loss, savings = utility_loss_savings(u_candidate, u_baseline)
    dist = demographic_distance(candidate, pool)
    sim = demographic_similarity(candidate, pool)
    return EvaluationReport(
        candidate_participation=ParityVector(*candidate),
        baseline_participation=ParityVector(*baseline),
        pool_parity=ParityVector(*pool),
        per_feature_gain=gains,
        diversity_gain=dg,
        utility_candidate=u_candidate,
        utility_baseline=u_baseline,
        utility_loss=loss,
        utility_savings=savings,
        f_diversity=f_measure(dg, savings),
        demographic_distance=dist,
        demographic_similarity=sim,
        f_parity=f_measure(sim, savings),
    )


def evaluate(candidate, baseline, authors: Mapping[str, AuthorProfile],
             pool_parity: Sequence[float], counting=Counting.UNIQUE) -> EvaluationReport:
    """Score ``candidate`` papers against ``baseline`` papers.

    Both arguments are sequences of objects with ``author_ids`` (paper
    records or paper profiles).
    """
    if not candidate or not baseline:
        raise EmptySelection("candidate and baseline must be non-empty")
    return evaluate_vectors(
        participation(candidate, authors, counting),
        participation(baseline, authors, counting),
        pool_parity,
        utility(candidate, authors, counting),
        utility(baseline, authors, counting),
    )


# -- serialization ---------------------------------------------------------

PARTICIPATION_LABELS = {
    "gender": "Female",
    "ethnicity": "Non-White",
    "career_stage": "Junior",
    "university_rank": "Low Ranked University",
    "geolocation": "Developing Country",
}


def _pct(x: float) -> str:
    return f"{100.0 * x:.2f}"


def _num(x: float) -> str:
    return f"{x:.4f}"


def write_report(report: EvaluationReport, directory) -> dict[str, Path]:
    """Write report.json, participation.csv and metrics.csv."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "report": directory / "report.json",
        "participation": directory / "participation.csv",
        "metrics": directory / "metrics.csv",
    }
    paths["report"].write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")

    with paths["participation"].open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["feature", "candidate", "baseline", "pool"])
        for i, name in enumerate(FEATURES):
            w.writerow([PARTICIPATION_LABELS[name], _pct(report.candidate_participation[i]),
                        _pct(report.baseline_participation[i]), _pct(report.pool_parity[i])])

    with paths["metrics"].open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["metric", "candidate", "baseline", "pool"])
        for i, name in enumerate(FEATURES):
            w.writerow([f"gain_{name}", _num(report.per_feature_gain[i]), "", ""])
        rows = [
            ("diversity_gain", report.diversity_gain, ""),
            ("utility", report.utility_candidate, _num(report.utility_baseline)),
            ("utility_loss", report.utility_loss, ""),
            ("utility_savings", report.utility_savings, ""),
            ("f_diversity", report.f_diversity, ""),
            ("demographic_distance", report.demographic_distance, ""),
            ("demographic_similarity", report.demographic_similarity, ""),
            ("f_parity", report.f_parity, ""),
        ]
        for metric, value, base in rows:
            w.writerow([metric, _num(value), base, ""])
    return paths
