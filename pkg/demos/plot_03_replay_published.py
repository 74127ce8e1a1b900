"""
Scoring published participation tables
======================================

The replay path needs no author data: participation vectors and utility
savings go straight into the metrics.  The numbers below are percentages
of the selected authors in each protected group for six runs, the accepted
papers of the top venue (baseline) and the whole candidate pool.
"""

import json
from pathlib import Path

from fairrec import evaluate_vectors

doc = json.loads((Path(__file__).parent / "replay_published.json").read_text())
baseline, pool = doc["baseline"], doc["pool"]

print(f"{'run':26s} {'D_G':>7s} {'Y':>7s} {'F':>7s} {'sim':>7s} {'F_sim':>7s}")
for name, c in sorted(doc["candidates"].items()):
    r = evaluate_vectors(c["participation"], baseline, pool, c["utility_savings"], 100.0)
    print(f"{name:26s} {r.diversity_gain:7.2f} {r.utility_savings:7.2f} {r.f_diversity:7.2f} "
          f"{r.demographic_similarity:7.2f} {r.f_parity:7.2f}")

# %%
# The same file runs through the command line too::
#
#     fairrec evaluate --replay demos/replay_published.json --out runs/replay
