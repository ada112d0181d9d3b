"""Matching sequences drawn as constellations on surfaces.

The right paths of the constellation carry the labels +-1..+-n. delta_k pairs
the two paths running along an edge between colours k and k+1. The surface
can be non-orientable.
"""
from twisted_hurwitz import (
    build_constellation,
    enumerate_matching_seqs,
    export_graph,
    extract_matchings,
    partitions,
    surface_report,
)
from twisted_hurwitz.matching_seq import matching_seq_from_labels

# %% A projective plane: one face of degree 2, chi = 1
ms = matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 2)(-1 -2)", "(1 -2)(-1 2)"])
c = build_constellation(ms)
print(surface_report(c))
print(export_graph(c, "dot"))
assert extract_matchings(c) == ms

# %% Surface statistics over every instance with n = 3, m = 3
from collections import Counter

seen = Counter()
for lam in partitions(3):
    for ms in enumerate_matching_seqs(3, lam):
        r = surface_report(build_constellation(ms))
        seen[(str(lam), r.euler_characteristic, r.component_count, r.orientable)] += 1
for key, count in sorted(seen.items()):
    print(key, count)
