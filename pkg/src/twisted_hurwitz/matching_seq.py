"""Sequences of pair matchings and the 2^m : 1 map from transposition sequences.

A transposition sequence with prefix products ``x_1, ..., x_m`` is sent to

    (tau, delta_0, ..., delta_{m-1}),   delta_k = (tau x_{k+1}) tau (tau x_{k+1})^-1.

Indices are printed as in the literature, -1 .. m-1; ``deltas[0]`` is delta_{-1}.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .factorization import InadmissibleError, TranspositionSeq
from .perm_core import (
    NotationError,
    PairMatching,
    Partition,
    Permutation,
    Transposition,
    compose,
    conjugate,
    lambda_of,
    pair_matchings,
    parse_permutation,
    tau,
)


class StructuralError(ValueError):
    """An entry that should be a pair matching is not one."""


class InvalidMatchingSeq(ValueError):
    pass


@dataclass(frozen=True)
class MatchingSeq:
    n: int
    deltas: tuple[PairMatching, ...]

    def __post_init__(self):
        deltas = tuple(self.deltas)
        if not deltas:
            raise StructuralError("a matching sequence holds at least delta_-1 = tau")
        fixed = []
        for k, d in enumerate(deltas, start=-1):
            if d.n != self.n:
                raise StructuralError(f"delta_{k} lives on n={d.n}, expected {self.n}")
            if not d.is_fixed_point_free_involution():
                raise StructuralError(f"delta_{k} = {d} is not a pair matching")
            fixed.append(PairMatching.of(d))
        if fixed[0] != tau(self.n):
            raise StructuralError(f"delta_-1 must be tau, got {fixed[0]}")
        object.__setattr__(self, "deltas", tuple(fixed))

    @property
    def m(self) -> int:
        return len(self.deltas) - 1

    def delta(self, k: int) -> PairMatching:
        """delta_k for k = -1, ..., m-1."""
        if not -1 <= k < self.m:
            raise IndexError(f"delta index {k} outside -1..{self.m - 1}")
        return self.deltas[k + 1]

    @property
    def profile(self) -> Partition:
        """Lambda(delta_-1, delta_{m-1})."""
        return lambda_of(self.deltas[0], self.deltas[-1])

    def to_record(self) -> dict:
        return {"n": self.n, "deltas": [str(d) for d in self.deltas]}

    def to_json(self) -> str:
        return json.dumps(self.to_record(), separators=(",", ":"))

    @classmethod
    def from_record(cls, record: dict, line: int = 1) -> "MatchingSeq":
        try:
            n = int(record["n"])
            texts = list(record["deltas"])
        except (KeyError, TypeError, ValueError):
            raise NotationError('expected {"n": ..., "deltas": [...]}', line, 1) from None
        perms = [parse_permutation(t, n, line) for t in texts]
        return cls(n, tuple(perms))

    @classmethod
    def from_json(cls, text: str, line: int = 1) -> "MatchingSeq":
        try:
            record = json.loads(text)
        except json.JSONDecodeError as exc:
            raise NotationError(exc.msg, line, exc.colno) from None
        return cls.from_record(record, line)

    def __str__(self) -> str:
        return "(" + ", ".join(str(d) for d in self.deltas) + ")"


@dataclass
class ValidationReport:
    """Outcome per condition; ``structural`` lists entries that are not pair matchings."""

    checks: list[tuple[str, bool]] = field(default_factory=list)
    structural: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.structural and all(passed for _, passed in self.checks)

    def failures(self) -> list[str]:
        return self.structural + [name for name, passed in self.checks if not passed]

    def __bool__(self) -> bool:
        return self.ok


def _hook_or_none(n: int) -> Partition | None:
    return Partition.hook(n) if n >= 2 else None


def validate_matching_seq(ms, lam: Sequence[int]) -> ValidationReport:
    """Check delta_-1 = tau, every consecutive shape is [2,1^(n-2)], and the end shape is lambda.

    ``ms`` may be a MatchingSeq or a raw ``(n, [Permutation, ...])`` pair; in the
    latter case non-matchings are reported under ``structural`` instead of raising.
    """
    lam = Partition(lam)
    if isinstance(ms, MatchingSeq):
        n, deltas = ms.n, list(ms.deltas)
    else:
        n, deltas = ms
        deltas = list(deltas)
    if lam.weight != n:
        raise ValueError(f"|lambda| = {lam.weight} but n = {n}")
    report = ValidationReport()
    for k, d in enumerate(deltas, start=-1):
        if d.n != n or not d.is_fixed_point_free_involution():
            report.structural.append(f"delta_{k} is not a pair matching on n={n}")
    if not deltas:
        report.structural.append("empty sequence")
    if report.structural:
        return report
    report.checks.append(("delta_-1 = tau", deltas[0] == tau(n)))
    hook = _hook_or_none(n)
    for k in range(-1, len(deltas) - 2):
        shape = lambda_of(deltas[k + 1], deltas[k + 2])
        report.checks.append((f"Lambda(delta_{k}, delta_{k + 1}) = [2,1^(n-2)]", shape == hook))
    report.checks.append(
        (f"Lambda(delta_-1, delta_{len(deltas) - 2}) = {lam}", lambda_of(deltas[0], deltas[-1]) == lam)
    )
    return report


def is_valid(ms: MatchingSeq) -> bool:
    """Valid for its own end profile."""
    return validate_matching_seq(ms, ms.profile).ok


def p_map(ts: TranspositionSeq) -> MatchingSeq:
    n = ts.n
    t = tau(n)
    deltas = [t]
    for x in ts.prefix_products()[1:]:
        deltas.append(conjugate(t, compose(t, x)))
    return MatchingSeq(n, tuple(deltas))


def _two_cycles(p: Permutation) -> list[tuple[int, int]]:
    cycles = p.cycles()
    if len(cycles) != 2 or any(len(c) != 2 for c in cycles):
        raise InvalidMatchingSeq(f"{p} is not a product of two disjoint transpositions")
    return cycles


def preimage_step(x: Permutation, d_prev: PairMatching, d_next: PairMatching) -> tuple[Transposition, Transposition]:
    """The two transpositions (i j) with d_next = delta built from x (i j).

    The pair {a, b} is the 2-cycle of d_prev d_next holding the least label.
    Branch 0 takes i = (x^-1 tau)(a); branch 1 takes i = (tau x^-1 tau)(a).
    """
    n = x.n
    t = tau(n)
    a, b = _two_cycles(compose(d_prev, d_next))[0]
    xi = x.inverse()
    first = compose(xi, t)
    second = compose(t, compose(xi, t))
    branches = (Transposition(first(a), first(b)), Transposition(second(a), second(b)))
    if branches[0] == branches[1]:
        raise RuntimeError(f"preimage branches coincide at {branches[0]}")
    return branches


def p_preimages(ms: MatchingSeq) -> list[TranspositionSeq]:
    """All 2^m transposition sequences mapping to ``ms``, ordered by branch vector."""
    if not is_valid(ms):
        raise InvalidMatchingSeq(f"{ms} violates the matching-sequence conditions")
    n, m = ms.n, ms.m
    results: list[TranspositionSeq] = []

    def rec(k: int, x: Permutation, prefix: list[Transposition]):
        if k == m:
            results.append(TranspositionSeq(n, tuple(prefix)))
            return
        for t in preimage_step(x, ms.deltas[k], ms.deltas[k + 1]):
            if not t.admissible:
                raise InadmissibleError(f"preimage step {k} produced {t}")
            prefix.append(t)
            rec(k + 1, x * t.as_permutation(n), prefix)
            prefix.pop()

    rec(0, Permutation.identity(n), [])
    return results


def enumerate_matching_seqs(m: int, lam: Sequence[int]) -> Iterator[MatchingSeq]:
    """Every valid matching sequence for (m, lambda), each once.

    Exhaustive over pair matchings, pruned only by the local shape condition
    between neighbours.
    """
    lam = Partition(lam)
    n = lam.weight
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and |lambda| >= 1")
    t = tau(n)
    if m == 0:
        if lambda_of(t, t) == lam:
            yield MatchingSeq(n, (t,))
        return
    hook = _hook_or_none(n)
    if hook is None:
        return
    all_matchings = pair_matchings(n)
    step = {d: [e for e in all_matchings if lambda_of(d, e) == hook] for d in all_matchings}
    chain = [t]

    def rec(depth):
        if depth == m:
            if lambda_of(t, chain[-1]) == lam:
                yield MatchingSeq(n, tuple(chain))
            return
        for e in step[chain[-1]]:
            chain.append(e)
            yield from rec(depth + 1)
            chain.pop()

    yield from rec(0)


def matching_seq_from_labels(n: int, deltas: Sequence[str]) -> MatchingSeq:
    return MatchingSeq(n, tuple(parse_permutation(d, n) for d in deltas))


__all__ = [
    "MatchingSeq",
    "ValidationReport",
    "StructuralError",
    "InvalidMatchingSeq",
    "validate_matching_seq",
    "is_valid",
    "p_map",
    "p_preimages",
    "preimage_step",
    "enumerate_matching_seqs",
    "matching_seq_from_labels",
]
