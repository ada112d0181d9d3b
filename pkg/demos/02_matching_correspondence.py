"""From transposition sequences to sequences of pair matchings and back.

Each sequence is sent to (tau, delta_0, ..., delta_{m-1}) with
delta_k = (tau x_{k+1}) tau (tau x_{k+1})^-1. Every image has exactly 2^m
preimages, and p_preimages lists them.
"""
from twisted_hurwitz import (
    TranspositionSeq,
    count_by_cycle_type,
    enumerate_matching_seqs,
    lambda_of,
    p_map,
    p_preimages,
    partitions,
)

# %% One sequence, its matchings and the shapes between neighbours
ts = TranspositionSeq.of(3, [(1, 2), (-2, 3), (1, -3)])
ms = p_map(ts)
for k in range(-1, ms.m):
    print(f"delta_{k} = {ms.delta(k)}")
for k in range(-1, ms.m - 1):
    print(f"Lambda(delta_{k}, delta_{k + 1}) = {lambda_of(ms.delta(k), ms.delta(k + 1))}")
print("profile", ms.profile)

# %% The 2^m preimages, ordered by branch choice
for p in p_preimages(ms):
    print(p, "->", p_map(p) == ms)

# %% Counting both sides
for lam in partitions(3):
    for m in range(4):
        raw = count_by_cycle_type(m, 3)[lam]
        matched = sum(1 for _ in enumerate_matching_seqs(m, lam))
        print(f"lambda={lam} m={m}: {raw} = 2^{m} * {matched}")
