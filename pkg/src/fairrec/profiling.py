"""Five-feature demographic author profiles.

Every author gets two encodings of the same five features (gender,
ethnicity, career stage, university rank, geolocation):

* a Boolean vector, 1 where the author belongs to the feature's protected
  group (female, non-white, junior, low-ranked university, developing
  country or EPSCoR state);
* a continuous vector in [0, 1] where larger means more under-represented.
"""

from __future__ import annotations

import enum
import statistics
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import EmptyPool, MissingState, UnknownCountry
from .ingest import SENIOR_RANKS, AuthorRecord, Dataset, ReferenceTables, is_usa

FEATURES = ("gender", "ethnicity", "career_stage", "university_rank", "geolocation")


class WeightMode(str, enum.Enum):
    BOOLEAN = "boolean"
    CONTINUOUS = "continuous"


class RankSplit(str, enum.Enum):
    MEDIAN = "median"
    MEAN = "mean"


class FeatureVector(NamedTuple):
    gender: float
    ethnicity: float
    career_stage: float
    university_rank: float
    geolocation: float


@dataclass(frozen=True)
class AuthorProfile:
    author_id: str
    boolean: FeatureVector
    continuous: FeatureVector
    h_index: int

    @property
    def protected_membership(self) -> tuple[bool, ...]:
        return tuple(bool(x) for x in self.boolean)

    def vector(self, mode) -> FeatureVector:
        return self.boolean if WeightMode(mode) is WeightMode.BOOLEAN else self.continuous


def encode_gender(gender_label: str, mode, tables: ReferenceTables) -> float:
    if WeightMode(mode) is WeightMode.BOOLEAN:
        return 1.0 if gender_label == "female" else 0.0
    return tables.gender_weights[gender_label]


def encode_ethnicity(category: str, mode, tables: ReferenceTables) -> float:
    if WeightMode(mode) is WeightMode.BOOLEAN:
        return 0.0 if category == "White" else 1.0
    return tables.ethnicity_weights[category]


def encode_career_stage(position_title: str, mode, tables: ReferenceTables) -> float:
    if WeightMode(mode) is WeightMode.BOOLEAN:
        return 0.0 if position_title in SENIOR_RANKS else 1.0
    return tables.career_weights[position_title]


def rank_threshold(pool_ranks: Sequence[int], split=RankSplit.MEDIAN) -> float:
    """Cut point above which a university rank counts as protected."""
    if not pool_ranks:
        raise EmptyPool("no university ranks to split")
    if RankSplit(split) is RankSplit.MEAN:
        return statistics.fmean(pool_ranks)
    return statistics.median(pool_ranks)


def encode_university_rank(author_rank: int, pool_ranks: Sequence[int], mode,
                           split=RankSplit.MEDIAN, *, threshold: float | None = None) -> float:
    """Encode a world-ranking position relative to the pool.

    Continuous mode divides by the worst (numerically largest) rank in the
    pool.  Boolean mode flags ranks strictly above the median (or mean);
    a rank equal to the cut point is not protected.  ``threshold`` may be
    passed to skip recomputing the cut point for every author.
    """
    if not pool_ranks:
        raise EmptyPool("no university ranks in pool")
    if WeightMode(mode) is WeightMode.CONTINUOUS:
        return author_rank / max(pool_ranks)
    if threshold is None:
        threshold = rank_threshold(pool_ranks, split)
    return 1.0 if author_rank > threshold else 0.0


def encode_geolocation(country: str, us_state: str | None, mode, tables: ReferenceTables) -> float:
    usa = is_usa(country)
    if usa and not us_state:
        raise MissingState(f"US author has no state (country {country!r})")
    key = tables.us_key() if usa else country
    if WeightMode(mode) is WeightMode.BOOLEAN:
        if usa:
            return 1.0 if us_state in tables.epscor_states else 0.0
        if key in tables.developing_countries:
            return 1.0
        if key in tables.hdi_by_country:
            return 0.0
        raise UnknownCountry(country)
    try:
        return 1.0 - tables.hdi_by_country[key]
    except KeyError:
        raise UnknownCountry(country) from None


def build_author_profile(record: AuthorRecord, pool_ranks: Sequence[int], tables: ReferenceTables,
                         split=RankSplit.MEDIAN, *, threshold: float | None = None) -> AuthorProfile:
    if threshold is None:
        threshold = rank_threshold(pool_ranks, split)
    worst = max(pool_ranks)

    def encode(mode):
        if WeightMode(mode) is WeightMode.BOOLEAN:
            rank = 1.0 if record.university_rank > threshold else 0.0
        else:
            rank = record.university_rank / worst
        return FeatureVector(
            encode_gender(record.gender_label, mode, tables),
            encode_ethnicity(record.ethnicity_category, mode, tables),
            encode_career_stage(record.position_title, mode, tables),
            rank,
            encode_geolocation(record.country, record.us_state, mode, tables),
        )

    return AuthorProfile(
        author_id=record.author_id,
        boolean=encode(WeightMode.BOOLEAN),
        continuous=encode(WeightMode.CONTINUOUS),
        h_index=record.h_index,
    )


def build_author_profiles(dataset: Dataset, tables: ReferenceTables,
                          split=RankSplit.MEDIAN) -> dict[str, AuthorProfile]:
    """Profile every author; the rank split uses all authors of the dataset."""
    ranks = [a.university_rank for a in dataset.authors.values()]
    threshold = rank_threshold(ranks, split)
    return {
        aid: build_author_profile(dataset.authors[aid], ranks, tables, split, threshold=threshold)
        for aid in sorted(dataset.authors)
    }
