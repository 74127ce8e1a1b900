"""Per-paper demographic profiles, diversity scores and quality scores."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import EmptyAuthorList, UnknownVenue
from .ingest import Dataset, PaperRecord, ReferenceTables, VenueRecord
from .profiling import (
    AuthorProfile,
    FeatureVector,
    RankSplit,
    WeightMode,
    build_author_profiles,
)


@dataclass(frozen=True)
class PaperProfile:
    """Fused demographic profile of one paper.

    ``features`` holds the mode-dependent fused vector that drives ranking;
    ``flags`` always holds the fused Boolean vector, which decides queue
    membership and parity accounting in either mode.
    """

    paper_id: str
    venue_id: str
    author_ids: tuple[str, ...]
    mode: WeightMode
    features: FeatureVector
    flags: FeatureVector
    pd_score: float
    quality_score: float


def fuse_profiles(author_profiles: Iterable[AuthorProfile], mode) -> FeatureVector:
    """Bit-wise OR of Boolean vectors, or componentwise max of continuous ones."""
    vectors = [p.vector(mode) for p in author_profiles]
    if not vectors:
        raise EmptyAuthorList("cannot fuse an empty author list")
    # OR over {0, 1} is max, so one code path serves both modes.
    return FeatureVector(*(max(column) for column in zip(*vectors)))


def pd_score(features: Iterable[float]) -> float:
    return float(sum(features))


def quality_score(paper: PaperRecord, venues: Mapping[str, VenueRecord]) -> float:
    try:
        return venues[paper.venue_id].impact_factor
    except KeyError:
        raise UnknownVenue(paper.venue_id) from None


def build_paper_profile(paper: PaperRecord, authors: Mapping[str, AuthorProfile],
                        venues: Mapping[str, VenueRecord], mode) -> PaperProfile:
    mode = WeightMode(mode)
    members = [authors[a] for a in paper.author_ids]
    features = fuse_profiles(members, mode)
    flags = features if mode is WeightMode.BOOLEAN else fuse_profiles(members, WeightMode.BOOLEAN)
    return PaperProfile(
        paper_id=paper.paper_id,
        venue_id=paper.venue_id,
        author_ids=tuple(paper.author_ids),
        mode=mode,
        features=features,
        flags=flags,
        pd_score=pd_score(features),
        quality_score=quality_score(paper, venues),
    )


def build_paper_profiles(dataset: Dataset, mode, tables: ReferenceTables | None = None, *,
                         authors: Mapping[str, AuthorProfile] | None = None,
                         split=RankSplit.MEDIAN) -> list[PaperProfile]:
    """Profile every paper of ``dataset``, sorted by paper id.

    Author profiles are built from ``tables`` unless passed in ``authors``.
    """
    if authors is None:
        if tables is None:
            raise TypeError("either tables or authors must be given")
        authors = build_author_profiles(dataset, tables, split)
    return [
        build_paper_profile(dataset.papers[pid], authors, dataset.venues, mode)
        for pid in sorted(dataset.papers)
    ]
