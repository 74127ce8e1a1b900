"""
Three fair selection algorithms
===============================

Build a pool from a small synthetic dataset and compare what each
algorithm picks, and from which queue.
"""

from fairrec import Algorithm, SelectionRequest, SyntheticSpec, WeightMode, build_pool, generate, parity_met, select

dataset = generate(SyntheticSpec(n_authors=90, n_papers=60, seed=4))
n = len(dataset.papers_in_venue(dataset.top_venue()))
print(f"{len(dataset.papers)} papers; top venue {dataset.top_venue()} has {n}")

pool = build_pool(dataset, mode=WeightMode.BOOLEAN)
print("pool parity", tuple(round(x, 3) for x in pool.parity))

# %%
# The same N for all three.  ``source_counts`` says how many papers each
# queue contributed; the quality queue tops up whatever is left.
for alg in Algorithm:
    res = select(pool.papers, SelectionRequest(n, WeightMode.BOOLEAN, alg), pool.parity, pool.authors)
    ok = parity_met(res.achieved_parity, pool.parity)
    print(f"{alg.value:13s} parity met={ok!s:5s} sources={res.source_counts()}")
    print(" " * 14, "achieved", tuple(round(x, 3) for x in res.achieved_parity))
