"""Protected-group participation rates and the demographic-parity test."""

from __future__ import annotations

import enum
from collections import Counter
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DanglingReference, EmptyPool
from .profiling import FEATURES, AuthorProfile


class ParityVector(NamedTuple):
    gender_wt: float
    ethnicity_wt: float
    career_wt: float
    university_wt: float
    geo_wt: float


class Counting(str, enum.Enum):
    """How authors on several selected papers are counted."""

    UNIQUE = "unique"
    INSTANCE = "instance"


def _rates(protected: Sequence[int], total: int) -> ParityVector:
    return ParityVector(*(c / total for c in protected))


def compute_pool_parity(authors: Iterable[AuthorProfile]) -> ParityVector:
    """Fraction of authors in each feature's protected group."""
    seen = {}
    for a in authors:
        seen.setdefault(a.author_id, a)
    if not seen:
        raise EmptyPool("pool has no authors")
    protected = [0] * len(FEATURES)
    for a in seen.values():
        for i, flag in enumerate(a.boolean):
            protected[i] += int(flag)
    return _rates(protected, len(seen))


def participation(selection, authors: Mapping[str, AuthorProfile],
                  counting=Counting.UNIQUE) -> ParityVector:
    """Participation rates over the authors of the selected papers.

    ``selection`` is an iterable of objects with an ``author_ids`` attribute
    (paper records or profiles).  Membership always uses Boolean flags.
    """
    counter = ParityCounter(authors, counting)
    for paper in selection:
        counter.add(paper.author_ids)
    if counter.total == 0:
        raise EmptyPool("selection has no authors")
    return counter.vector()


def parity_met(selection_parity: Sequence[float], target: Sequence[float],
               feature_subset: Iterable[int | str] | None = None) -> bool:
    """True iff each requested component meets or exceeds the target."""
    if feature_subset is None:
        idx = range(len(FEATURES))
    else:
        idx = [FEATURES.index(f) if isinstance(f, str) else f for f in feature_subset]
    return all(selection_parity[i] >= target[i] for i in idx)


class ParityCounter:
    """Incrementally maintained participation of a multiset of papers.

    Adding and removing papers is O(authors per paper), which keeps the
    projected-parity checks of the selection loops cheap.  Comparisons use
    the same correctly rounded division as :func:`compute_pool_parity`, so
    equal count ratios compare equal.
    """

    def __init__(self, authors: Mapping[str, AuthorProfile], counting=Counting.UNIQUE):
        self._authors = authors
        self._unique = Counting(counting) is Counting.UNIQUE
        self._mult: Counter[str] = Counter()
        self.protected = [0] * len(FEATURES)
        self.total = 0

    def _flags(self, aid):
        try:
            return self._authors[aid].boolean
        except KeyError:
            raise DanglingReference(aid) from None

    def add(self, author_ids: Iterable[str]) -> None:
        for aid in author_ids:
            flags = self._flags(aid)
            self._mult[aid] += 1
            if self._unique and self._mult[aid] > 1:
                continue
            self.total += 1
            for i, f in enumerate(flags):
                if f:
                    self.protected[i] += 1

    def remove(self, author_ids: Iterable[str]) -> None:
        for aid in author_ids:
            flags = self._flags(aid)
            if self._mult[aid] <= 0:
                raise ValueError(f"author {aid!r} is not counted")
            self._mult[aid] -= 1
            if self._unique and self._mult[aid] > 0:
                continue
            if self._mult[aid] == 0:
                del self._mult[aid]
            self.total -= 1
            for i, f in enumerate(flags):
                if f:
                    self.protected[i] -= 1

    def vector(self) -> ParityVector:
        if self.total == 0:
            raise EmptyPool("no authors counted")
        return _rates(self.protected, self.total)

    def meets(self, target: Sequence[float], feature_subset: Iterable[int] | None = None) -> bool:
        if self.total == 0:
            return False
        idx = range(len(FEATURES)) if feature_subset is None else feature_subset
        return all(self.protected[i] / self.total >= target[i] for i in idx)
