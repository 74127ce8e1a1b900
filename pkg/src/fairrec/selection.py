"""Fair selection of N papers from a profiled pool.

Three strategies are provided:

``overall_diversity``
    Draw papers by total diversity score until parity is reachable, then
    fill from the quality queue.
``multifaceted``
    One queue per feature; serve the rarest features first until each
    reaches parity, then fill from the quality queue.
``round_robin``
    Cycle over one queue per feature, taking each queue's best remaining
    paper in turn.

Queue orders are total: every chain ends with ``paper_id``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import InvalidRequest, PoolTooSmall
from .paperprofile import PaperProfile
from .parity import Counting, ParityCounter, ParityVector, participation
from .profiling import FEATURES, AuthorProfile, WeightMode

QUALITY = "quality"
DEMOGRAPHIC = "demographic"


class Algorithm(str, enum.Enum):
    OVERALL_DIVERSITY = "overall"
    MULTIFACETED = "multifaceted"
    ROUND_ROBIN = "roundrobin"


class ParityRule(str, enum.Enum):
    """When a parity phase counts as satisfied.

    ``projected`` tests the set the run would end with if it stopped now
    (current picks topped up from the quality queue); ``proportional``
    tests the picks made so far.
    """

    PROJECTED = "projected"
    PROPORTIONAL = "proportional"


@dataclass(frozen=True)
class SelectionRequest:
    n_papers: int
    mode: WeightMode = WeightMode.BOOLEAN
    algorithm: Algorithm = Algorithm.OVERALL_DIVERSITY
    parity_rule: ParityRule = ParityRule.PROJECTED
    counting: Counting = Counting.UNIQUE

    def __post_init__(self):
        object.__setattr__(self, "mode", WeightMode(self.mode))
        object.__setattr__(self, "algorithm", Algorithm(self.algorithm))
        object.__setattr__(self, "parity_rule", ParityRule(self.parity_rule))
        object.__setattr__(self, "counting", Counting(self.counting))
        if isinstance(self.n_papers, bool) or not isinstance(self.n_papers, int) or self.n_papers < 1:
            raise InvalidRequest(f"n_papers must be a positive integer, got {self.n_papers!r}")

    def to_dict(self) -> dict:
        return {
            "n_papers": self.n_papers,
            "mode": self.mode.value,
            "algorithm": self.algorithm.value,
            "parity_rule": self.parity_rule.value,
            "counting": self.counting.value,
        }


@dataclass(frozen=True)
class SelectionResult:
    selected: tuple[str, ...]
    provenance: tuple[str, ...]
    achieved_parity: ParityVector
    request: SelectionRequest

    def source_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for tag in self.provenance:
            out[tag] = out.get(tag, 0) + 1
        return out

    def to_dict(self) -> dict:
        return {
            "request": self.request.to_dict(),
            "selected": [
                {"paper_id": pid, "source": src}
                for pid, src in zip(self.selected, self.provenance)
            ],
            "achieved_parity": dict(zip(ParityVector._fields, self.achieved_parity)),
        }


def queue_labels(algorithm) -> frozenset[str]:
    """Provenance tags a given algorithm may emit."""
    algorithm = Algorithm(algorithm)
    if algorithm is Algorithm.OVERALL_DIVERSITY:
        return frozenset({DEMOGRAPHIC, QUALITY})
    if algorithm is Algorithm.MULTIFACETED:
        return frozenset(FEATURES) | {QUALITY}
    return frozenset(FEATURES)


# -- queue orders ----------------------------------------------------------

def quality_key(p: PaperProfile):
    return (-p.quality_score, -p.pd_score, p.paper_id)


def demographic_key(p: PaperProfile):
    return (-p.pd_score, -p.quality_score, p.paper_id)


def feature_key(i: int):
    def key(p: PaperProfile):
        return (-p.features[i], -p.quality_score, p.paper_id)
    return key


def feature_priority(pool_parity: Sequence[float]) -> list[int]:
    """Feature indices, rarest in the pool first; ties keep fixed order."""
    return sorted(range(len(FEATURES)), key=lambda i: (pool_parity[i], i))


def _check(pool: Sequence[PaperProfile], request: SelectionRequest):
    if len({p.paper_id for p in pool}) != len(pool):
        raise InvalidRequest("pool contains duplicate paper ids")
    if request.n_papers > len(pool):
        raise PoolTooSmall(request.n_papers, len(pool))


class _Run:
    """Selection state shared by the two parity-driven algorithms."""

    def __init__(self, pool, request, pool_parity, authors):
        self.n = request.n_papers
        self.target = pool_parity
        self.rule = request.parity_rule
        self.quality = sorted(pool, key=quality_key)
        self.picked: list[PaperProfile] = []
        self.tags: list[str] = []
        self.picked_ids: set[str] = set()
        self.counter = ParityCounter(authors, request.counting)
        if self.rule is ParityRule.PROJECTED:
            # The projected set is picks plus the top (n - k) unpicked papers
            # of the quality queue; ``self.topup`` holds those ids and
            # ``self.end`` bounds them within ``self.quality``.
            self.topup = {p.paper_id for p in self.quality[:self.n]}
            self.end = self.n
            for p in self.quality[:self.n]:
                self.counter.add(p.author_ids)

    @property
    def full(self) -> bool:
        return len(self.picked) >= self.n

    def satisfied(self, features=None) -> bool:
        return self.counter.meets(self.target, features)

    def pick(self, paper: PaperProfile, tag: str) -> None:
        self.picked.append(paper)
        self.tags.append(tag)
        self.picked_ids.add(paper.paper_id)
        if self.rule is ParityRule.PROPORTIONAL:
            self.counter.add(paper.author_ids)
            return
        if paper.paper_id in self.topup:
            self.topup.discard(paper.paper_id)
            return
        self.counter.add(paper.author_ids)
        while self.quality[self.end - 1].paper_id not in self.topup:
            self.end -= 1
        last = self.quality[self.end - 1]
        self.topup.discard(last.paper_id)
        self.counter.remove(last.author_ids)
        self.end -= 1

    def fill(self) -> None:
        for p in self.quality:
            if self.full:
                break
            if p.paper_id not in self.picked_ids:
                self.pick(p, QUALITY)

    def result(self, request, authors) -> SelectionResult:
        return SelectionResult(
            selected=tuple(p.paper_id for p in self.picked),
            provenance=tuple(self.tags),
            achieved_parity=participation(self.picked, authors, request.counting),
            request=request,
        )


def overall_diversity(pool: Sequence[PaperProfile], request: SelectionRequest,
                      pool_parity: Sequence[float],
                      authors: Mapping[str, AuthorProfile]) -> SelectionResult:
    """Overall-diversity selection.

    Papers are taken from the diversity-score queue until the parity test
    passes on all five features (or N papers are chosen); the rest come
    from the quality queue.
    """
    _check(pool, request)
    run = _Run(pool, request, pool_parity, authors)
    for paper in sorted(pool, key=demographic_key):
        if run.full or run.satisfied():
            break
        run.pick(paper, DEMOGRAPHIC)
    run.fill()
    return run.result(request, authors)


def multifaceted(pool: Sequence[PaperProfile], request: SelectionRequest,
                 pool_parity: Sequence[float],
                 authors: Mapping[str, AuthorProfile]) -> SelectionResult:
    """Multi-faceted selection.

    Each feature has a queue of the papers flagged for it, in quality
    order.  Features are served rarest first; a feature's queue is drawn
    until that feature passes the parity test or the queue runs dry.
    """
    _check(pool, request)
    run = _Run(pool, request, pool_parity, authors)
    for i in feature_priority(pool_parity):
        queue = (p for p in run.quality if p.flags[i])
        for paper in queue:
            if run.full or run.satisfied([i]):
                break
            if paper.paper_id in run.picked_ids:
                continue
            run.pick(paper, FEATURES[i])
    run.fill()
    return run.result(request, authors)


def round_robin(pool: Sequence[PaperProfile], request: SelectionRequest,
                authors: Mapping[str, AuthorProfile]) -> SelectionResult:
    """Round-robin selection over one queue per feature.

    The queues cycle in fixed feature order; no parity test and no quality
    fill are involved.
    """
    _check(pool, request)
    queues = [sorted(pool, key=feature_key(i)) for i in range(len(FEATURES))]
    heads = [0] * len(FEATURES)
    picked: list[PaperProfile] = []
    tags: list[str] = []
    taken: set[str] = set()
    turn = 0
    while len(picked) < request.n_papers:
        i = turn % len(FEATURES)
        turn += 1
        q = queues[i]
        while heads[i] < len(q) and q[heads[i]].paper_id in taken:
            heads[i] += 1
        if heads[i] == len(q):
            continue
        paper = q[heads[i]]
        heads[i] += 1
        picked.append(paper)
        tags.append(FEATURES[i])
        taken.add(paper.paper_id)
    return SelectionResult(
        selected=tuple(p.paper_id for p in picked),
        provenance=tuple(tags),
        achieved_parity=participation(picked, authors, request.counting),
        request=request,
    )


def select(pool: Sequence[PaperProfile], request: SelectionRequest,
           pool_parity: Sequence[float],
           authors: Mapping[str, AuthorProfile]) -> SelectionResult:
    if request.algorithm is Algorithm.OVERALL_DIVERSITY:
        return overall_diversity(pool, request, pool_parity, authors)
    if request.algorithm is Algorithm.MULTIFACETED:
        return multifaceted(pool, request, pool_parity, authors)
    return round_robin(pool, request, authors)
