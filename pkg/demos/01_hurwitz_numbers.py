"""Counting purely real Hurwitz numbers by brute force.

A word of m transpositions (i j), none of the form (k -k), is counted for a
partition lambda of n when x tau x^-1 tau lies in the twisted class of
lambda, x being the product of the word.
"""
from twisted_hurwitz import count_by_cycle_type, hurwitz_number, partitions, valid_transpositions

# %% The alphabet: 2n(n-1) admissible transpositions
for n in (1, 2, 3):
    print(n, [str(t) for t in valid_transpositions(n)])

# %% Raw counts per lambda. Every twisted product lands in some class,
# so the "none" bucket stays empty and each row sums to (2n(n-1))^m.
for n in (2, 3):
    for m in range(4):
        counts = count_by_cycle_type(m, n)
        row = "  ".join(f"{k}:{v}" for k, v in counts.items())
        print(f"n={n} m={m}  {row}  total={sum(counts.values())}")

# %% Exact values h = raw / n!
for lam in partitions(3):
    h = hurwitz_number(3, lam)
    print(f"h(m=3, lambda={lam}) = {h.value}  (raw {h.raw_count})")
