"""Glue from a loaded dataset to a profiled, selectable pool."""

from __future__ import annotations

from dataclasses import dataclass

from .ingest import Dataset, ReferenceTables, default_tables
from .paperprofile import PaperProfile, build_paper_profiles
from .parity import ParityVector, compute_pool_parity
from .profiling import AuthorProfile, RankSplit, WeightMode, build_author_profiles
from .selection import SelectionRequest, SelectionResult, select


@dataclass(frozen=True)
class Pool:
    authors: dict[str, AuthorProfile]
    papers: list[PaperProfile]
    parity: ParityVector

    def paper(self, paper_id: str) -> PaperProfile:
        return self.by_id[paper_id]

    @property
    def by_id(self) -> dict[str, PaperProfile]:
        return {p.paper_id: p for p in self.papers}


def build_pool(dataset: Dataset, tables: ReferenceTables | None = None, mode=WeightMode.BOOLEAN,
               split=RankSplit.MEDIAN) -> Pool:
    """Profile authors and papers; the parity target counts every author on a pool paper."""
    authors = build_author_profiles(dataset, tables or default_tables(), split)
    papers = build_paper_profiles(dataset, mode, authors=authors)
    in_pool = sorted({a for p in papers for a in p.author_ids})
    return Pool(authors, papers, compute_pool_parity(authors[a] for a in in_pool))


def run_selection(dataset: Dataset, tables: ReferenceTables | None, request: SelectionRequest,
                  split=RankSplit.MEDIAN) -> tuple[Pool, SelectionResult]:
    pool = build_pool(dataset, tables, request.mode, split)
    return pool, select(pool.papers, request, pool.parity, pool.authors)
