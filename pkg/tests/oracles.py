"""Independent reference implementations used as test oracles.

Everything here recomputes from scratch at every step with exact
fractions and comparator-based sorts; only the data model (profiles) is
shared with the package.
"""

import functools
import itertools
from fractions import Fraction

import numpy as np

from fairrec.paperprofile import PaperProfile
from fairrec.profiling import AuthorProfile, FeatureVector, WeightMode

N_FEATURES = 5
NAMES = ("gender", "ethnicity", "career_stage", "university_rank", "geolocation")


# -- builders ----------------------------------------------------------------

def author(aid, flags, continuous=None, h=0):
    flags = FeatureVector(*(float(x) for x in flags))
    cont = FeatureVector(*(float(x) for x in continuous)) if continuous is not None else flags
    return AuthorProfile(aid, flags, cont, h)


def paper(pid, quality, members, mode=WeightMode.BOOLEAN, venue="v"):
    """Paper profile fused by hand from ``members`` (AuthorProfiles)."""
    mode = WeightMode(mode)
    flags = tuple(max(a.boolean[i] for a in members) for i in range(N_FEATURES))
    vals = flags if mode is WeightMode.BOOLEAN else tuple(
        max(a.continuous[i] for a in members) for i in range(N_FEATURES))
    total = 0.0
    for v in vals:
        total += v
    return PaperProfile(pid, venue, tuple(a.author_id for a in members), mode,
                        FeatureVector(*vals), FeatureVector(*flags), total, float(quality))


# -- exact participation --------------------------------------------------------

def exact_parity(papers, authors, unique=True):
    if unique:
        ids = sorted({a for p in papers for a in p.author_ids})
    else:
        ids = [a for p in papers for a in p.author_ids]
    if not ids:
        return None
    return [Fraction(sum(int(authors[a].boolean[i]) for a in ids), len(ids)) for i in range(N_FEATURES)]


def exact_pool_parity(pool, authors):
    return exact_parity(pool, authors, unique=True)


def meets(vec, target, features=range(N_FEATURES)):
    return vec is not None and all(vec[i] >= target[i] for i in features)


# -- comparators -------------------------------------------------------------------

def _cmp(x, y):
    return (x > y) - (x < y)


def cmp_quality(a, b):
    return _cmp(b.quality_score, a.quality_score) or _cmp(b.pd_score, a.pd_score) or _cmp(a.paper_id, b.paper_id)


def cmp_demog(a, b):
    return _cmp(b.pd_score, a.pd_score) or _cmp(b.quality_score, a.quality_score) or _cmp(a.paper_id, b.paper_id)


def cmp_feature(i):
    def cmp(a, b):
        return (_cmp(b.features[i], a.features[i]) or _cmp(b.quality_score, a.quality_score)
                or _cmp(a.paper_id, b.paper_id))
    return cmp


def ordered(pool, cmp):
    return sorted(pool, key=functools.cmp_to_key(cmp))


# -- step-by-step simulations ----------------------------------------------------------

def _state(picks, quality, n, rule):
    if rule == "proportional":
        return list(picks)
    rest = [p for p in quality if p not in picks]
    return list(picks) + rest[: n - len(picks)]


def simulate_overall(pool, n, authors, rule="projected", unique=True):
    target = exact_pool_parity(pool, authors)
    quality = ordered(pool, cmp_quality)
    demog = ordered(pool, cmp_demog)
    picks, tags = [], []
    while len(picks) < n:
        if meets(exact_parity(_state(picks, quality, n, rule), authors, unique), target):
            break
        remaining = [p for p in demog if p not in picks]
        if not remaining:
            break
        picks.append(remaining[0])
        tags.append("demographic")
    for p in quality:
        if len(picks) == n:
            break
        if p not in picks:
            picks.append(p)
            tags.append("quality")
    return [p.paper_id for p in picks], tags


def simulate_multifaceted(pool, n, authors, rule="projected", unique=True):
    target = exact_pool_parity(pool, authors)
    quality = ordered(pool, cmp_quality)
    order = sorted(range(N_FEATURES), key=lambda i: (target[i], i))
    picks, tags = [], []
    for i in order:
        queue = [p for p in quality if p.flags[i] == 1]
        while len(picks) < n:
            if meets(exact_parity(_state(picks, quality, n, rule), authors, unique), target, [i]):
                break
            remaining = [p for p in queue if p not in picks]
            if not remaining:
                break
            picks.append(remaining[0])
            tags.append(NAMES[i])
    for p in quality:
        if len(picks) == n:
            break
        if p not in picks:
            picks.append(p)
            tags.append("quality")
    return [p.paper_id for p in picks], tags


def simulate_round_robin(pool, n):
    queues = [ordered(pool, cmp_feature(i)) for i in range(N_FEATURES)]
    picks, tags = [], []
    for turn in itertools.count():
        if len(picks) == n:
            break
        i = turn % N_FEATURES
        remaining = [p for p in queues[i] if p not in picks]
        if remaining:
            picks.append(remaining[0])
            tags.append(NAMES[i])
    return [p.paper_id for p in picks], tags


# -- feasibility -----------------------------------------------------------------

def brute_force_feasible(pool, n, authors, unique=True):
    """Exhaustive search for an n-subset meeting pool parity on every feature."""
    target = exact_pool_parity(pool, authors)
    for combo in itertools.combinations(pool, n):
        if meets(exact_parity(combo, authors, unique), target):
            return True
    return False


def milp_feasible(pool, n, authors, time_limit=30.0):
    """Exact feasibility by 0/1 integer programming (unique-author counting).

    Variables: x_p (paper chosen), y_a (author present).  y_a = OR of the
    x_p of a's papers; parity for feature f is sum_a (flag_af - t_f) y_a >= 0
    with t_f the exact pool rate.  Returns True, False, or None on timeout.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp

    target = exact_pool_parity(pool, authors)
    aids = sorted({a for p in pool for a in p.author_ids})
    P, A = len(pool), len(aids)
    col = {a: P + k for k, a in enumerate(aids)}
    rows, lo, hi = [], [], []

    r = np.zeros(P + A)
    r[:P] = 1
    rows.append(r); lo.append(n); hi.append(n)
    member = {a: [] for a in aids}
    for j, p in enumerate(pool):
        for a in p.author_ids:
            member[a].append(j)
            r = np.zeros(P + A)
            r[col[a]] = 1
            r[j] = -1
            rows.append(r); lo.append(0); hi.append(np.inf)
    for a in aids:
        r = np.zeros(P + A)
        r[col[a]] = 1
        r[member[a]] = -1
        rows.append(r); lo.append(-np.inf); hi.append(0)
    for i in range(N_FEATURES):
        # Scale by the denominator so coefficients are integers.
        t = target[i]
        r = np.zeros(P + A)
        for a in aids:
            r[col[a]] = int(authors[a].boolean[i]) * t.denominator - t.numerator
        rows.append(r); lo.append(0); hi.append(np.inf)
    res = milp(np.zeros(P + A), constraints=LinearConstraint(np.array(rows), lo, hi),
               integrality=np.ones(P + A), bounds=Bounds(0, 1),
               options={"time_limit": time_limit})
    if res.status == 0:
        return True
    if res.status == 2:
        return False
    return None


def random_pool(rng, n_papers, mode=WeightMode.BOOLEAN, n_authors=None, qualities=(87.0, 33.0, 27.0),
                max_team=3, rates=None):
    """Small random pool (PaperProfiles + author index) with shared authors and ties."""
    n_authors = n_authors or rng.randint(max(1, n_papers // 2), 2 * n_papers)
    rates = rates or [rng.uniform(0.05, 0.7) for _ in range(N_FEATURES)]
    grid = [0.1 * k for k in range(11)]  # coarse values force feature ties
    authors = {}
    for k in range(n_authors):
        flags = [int(rng.random() < r) for r in rates]
        cont = [rng.choice(grid) for _ in range(N_FEATURES)]
        authors[f"a{k}"] = author(f"a{k}", flags, cont, h=rng.randint(0, 50))
    ids = list(authors)
    pool = []
    for j in range(n_papers):
        team = rng.sample(ids, rng.randint(1, min(max_team, len(ids))))
        pool.append(paper(f"p{j}", rng.choice(qualities), [authors[a] for a in team], mode))
    used = {a for p in pool for a in p.author_ids}
    return pool, {a: authors[a] for a in used}
