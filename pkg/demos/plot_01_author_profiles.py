"""
Author and paper profiles
=========================

Turn raw author records into five-feature profiles, then fuse a paper's
authors into one paper profile.
"""

from fairrec import AuthorRecord, WeightMode, build_author_profile, default_tables, fuse_profiles, pd_score

tables = default_tables()

# Two authors.  The rank pool is what the university-rank split (median by
# default) and the continuous rank scaling are computed against.
ana = AuthorRecord("a1", "female", "White", "Professor", "Univ A", 12, "Norway", None, 31)
raj = AuthorRecord("a2", "male", "Asian", "Graduate Student", "Univ B", 340, "United States", "Kansas", 4)
ranks = [12, 90, 150, 340]

profiles = [build_author_profile(r, ranks, tables) for r in (ana, raj)]
for p in profiles:
    print(p.author_id, "boolean   ", tuple(p.boolean))
    print(p.author_id, "continuous", tuple(round(x, 4) for x in p.continuous))

# %%
# A paper takes the OR of its authors' flags (or the max of their
# continuous values).  One author from a protected group is enough.
for mode in WeightMode:
    fused = fuse_profiles(profiles, mode)
    print(mode.value, tuple(round(x, 4) for x in fused), "PDScore", round(pd_score(fused), 4))
