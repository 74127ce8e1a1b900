"""Seeded synthetic candidate pools with controlled protected base rates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpec
from .ingest import (
    CAREER_RANKS,
    AuthorRecord,
    Dataset,
    PaperRecord,
    ReferenceTables,
    VenueRecord,
    build_dataset,
    default_tables,
)

# Pool participation averaged over the three 2017 HCI venues.
DEFAULT_BASE_RATES = (0.4707, 0.1871, 0.5955, 0.3233, 0.1115)
DEFAULT_IMPACT_FACTORS = (87.0, 33.0, 27.0)

_NON_WHITE = ("Black", "Hispanic", "Asian", "Other")
_JUNIOR = CAREER_RANKS[3:]
_SENIOR = CAREER_RANKS[:3]
_NON_EPSCOR = (
    "California", "Colorado", "Georgia", "Illinois", "Indiana", "Maryland",
    "Massachusetts", "Michigan", "New York", "Ohio", "Pennsylvania", "Texas",
    "Washington",
)
# Ranks at or below this value are non-protected; exactly this value sits on
# the median so that protected rates up to one half survive the median split.
_RANK_CUT = 200


@dataclass(frozen=True)
class SyntheticSpec:
    n_authors: int = 120
    n_papers: int = 60
    authors_per_paper: tuple[int, int] = (1, 4)
    base_rates: tuple[float, ...] = DEFAULT_BASE_RATES
    impact_factors: tuple[float, ...] = DEFAULT_IMPACT_FACTORS
    h_index_range: tuple[int, int] = (0, 60)
    seed: int = 0
    venue_shares: tuple[float, ...] | None = field(default=None)

    def validate(self) -> None:
        if self.n_authors < 1 or self.n_papers < 1:
            raise InvalidSpec("author and paper counts must be positive")
        lo, hi = self.authors_per_paper
        if lo < 1 or hi < lo:
            raise InvalidSpec(f"bad authors_per_paper bounds {self.authors_per_paper}")
        if hi > self.n_authors:
            raise InvalidSpec("authors_per_paper upper bound exceeds n_authors")
        if self.n_authors > self.n_papers * hi:
            raise InvalidSpec("too many authors to give every author a paper")
        if len(self.base_rates) != 5:
            raise InvalidSpec("base_rates needs five values")
        for r in self.base_rates:
            if not 0.0 <= r <= 1.0:
                raise InvalidSpec(f"base rate {r} is outside [0, 1]")
        if not self.impact_factors or any(not f > 0 for f in self.impact_factors):
            raise InvalidSpec("impact factors must be positive")
        h_lo, h_hi = self.h_index_range
        if h_lo < 0 or h_hi < h_lo:
            raise InvalidSpec(f"bad h_index_range {self.h_index_range}")
        if self.venue_shares is not None:
            if len(self.venue_shares) != len(self.impact_factors):
                raise InvalidSpec("venue_shares must match impact_factors")
            if any(s < 0 for s in self.venue_shares) or sum(self.venue_shares) <= 0:
                raise InvalidSpec("venue_shares must be non-negative with a positive sum")


def _countries(tables: ReferenceTables):
    us = tables.us_key()
    developing = sorted(c for c in tables.developing_countries if c in tables.hdi_by_country)
    developed = sorted(c for c in tables.hdi_by_country
                       if c not in tables.developing_countries and c != us)
    return us, developing, developed


def generate(spec: SyntheticSpec, tables: ReferenceTables | None = None) -> Dataset:
    """Draw a dataset from ``spec``; identical specs give identical datasets."""
    spec.validate()
    tables = tables or default_tables()
    rng = np.random.default_rng(spec.seed)
    us, developing, developed = _countries(tables)
    epscor = sorted(tables.epscor_states)
    width = len(str(spec.n_authors))

    flags = rng.random((spec.n_authors, 5)) < np.asarray(spec.base_rates)
    authors = []
    for k in range(spec.n_authors):
        female, non_white, junior, low_rank, developing_geo = (bool(x) for x in flags[k])
        if low_rank:
            rank = int(rng.integers(_RANK_CUT + 1, 2 * _RANK_CUT + 1))
        elif rng.random() < 0.5:
            rank = _RANK_CUT
        else:
            rank = int(rng.integers(1, _RANK_CUT))
        in_us = rng.random() < 0.5
        if in_us:
            country = us
            state = str(rng.choice(epscor if developing_geo else _NON_EPSCOR))
        else:
            country = str(rng.choice(developing if developing_geo else developed))
            state = None
        authors.append(AuthorRecord(
            author_id=f"a{k:0{width}d}",
            gender_label="female" if female else "male",
            ethnicity_category=str(rng.choice(_NON_WHITE)) if non_white else "White",
            position_title=str(rng.choice(_JUNIOR if junior else _SENIOR)),
            university_name=f"University {rank}",
            university_rank=rank,
            country=country,
            us_state=state,
            h_index=int(rng.integers(spec.h_index_range[0], spec.h_index_range[1] + 1)),
        ))

    n_venues = len(spec.impact_factors)
    vwidth = len(str(n_venues))
    venues = [VenueRecord(f"v{j:0{vwidth}d}", float(f)) for j, f in enumerate(spec.impact_factors)]
    shares = np.asarray(spec.venue_shares if spec.venue_shares is not None else [1.0] * n_venues, float)
    venue_idx = rng.choice(n_venues, size=spec.n_papers, p=shares / shares.sum())

    lo, hi = spec.authors_per_paper
    sizes = rng.integers(lo, hi + 1, size=spec.n_papers)
    # Deal every author onto some paper first, then top papers up at random.
    order = rng.permutation(spec.n_authors)
    members: list[list[int]] = [[] for _ in range(spec.n_papers)]
    slot = 0
    for a in order:
        while len(members[slot % spec.n_papers]) >= hi:
            slot += 1
        target = slot % spec.n_papers
        members[target].append(int(a))
        sizes[target] = max(sizes[target], len(members[target]))
        slot += 1
    pwidth = len(str(spec.n_papers))
    papers = []
    for j in range(spec.n_papers):
        have = set(members[j])
        need = int(sizes[j]) - len(have)
        if need > 0:
            rest = np.setdiff1d(np.arange(spec.n_authors), np.fromiter(have, int, len(have)))
            have.update(int(x) for x in rng.choice(rest, size=need, replace=False))
        ids = tuple(authors[a].author_id for a in sorted(have))
        papers.append(PaperRecord(f"p{j:0{pwidth}d}", venues[venue_idx[j]].venue_id, ids))
    return build_dataset(authors, papers, venues)
