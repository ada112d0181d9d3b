"""Transposition sequences and purely real Hurwitz numbers.

A sequence ``(s_1, ..., s_m)`` of transpositions ``(i j)`` with ``j != -i`` is
counted for ``lambda`` when its twisted product

    s_1 s_2 ... s_m (tau s_m tau) ... (tau s_1 tau) = x_m tau x_m^-1 tau

lies in the twisted class of ``lambda``; ``x_m`` is the prefix product.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .perm_core import (
    NotationError,
    Partition,
    Permutation,
    Transposition,
    label_to_index,
    parse_cycles,
    partitions,
    tau,
    twisted_class_shape,
    _paired_shape,
)

INT64_MAX = 2**63 - 1
NONE_KEY = "none"


class CountOverflowError(OverflowError):
    """A count left the signed 64-bit range."""


def checked_count(value: int) -> int:
    if not 0 <= value <= INT64_MAX:
        raise CountOverflowError(f"count {value} does not fit in 64 bits")
    return value


class InadmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class TranspositionSeq:
    n: int
    seq: tuple[Transposition, ...]

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(self.seq))
        for t in self.seq:
            if not t.admissible:
                raise InadmissibleError(f"{t} pairs a label with its bar")
            if max(abs(t.a), abs(t.b)) > self.n:
                raise ValueError(f"{t} leaves the ground set of size {self.n}")

    @classmethod
    def of(cls, n: int, pairs: Iterable[Sequence[int]]) -> "TranspositionSeq":
        return cls(n, tuple(Transposition(a, b) for a, b in pairs))

    @classmethod
    def parse(cls, text: str, n: int | None = None, line: int = 1) -> "TranspositionSeq":
        """Inverse of ``str``: ``"(1 2);(-1 2)"``, with ``"()"`` for the empty sequence."""
        s = text.strip()
        if s in ("", "()"):
            return cls(n or 1, ())
        entries = []
        col = 1
        for chunk in text.split(";"):
            cycles = parse_cycles(chunk, line, col - 1)
            if len(cycles) != 1 or len(cycles[0]) != 2:
                raise NotationError(f"expected one transposition, got {chunk.strip()!r}", line, col)
            a, b = cycles[0]
            try:
                entries.append(Transposition(a, b))
            except ValueError as exc:
                raise NotationError(str(exc), line, col) from None
            col += len(chunk) + 1
        largest = max(max(abs(t.a), abs(t.b)) for t in entries)
        if n is None:
            n = largest
        elif largest > n:
            raise NotationError(f"label {largest} exceeds n = {n}", line, 1)
        try:
            return cls(n, tuple(entries))
        except ValueError as exc:
            raise NotationError(str(exc), line, 1) from None

    @property
    def m(self) -> int:
        return len(self.seq)

    def prefix_products(self) -> list[Permutation]:
        """``[x_0 = id, x_1, ..., x_m]``."""
        x = Permutation.identity(self.n)
        out = [x]
        for t in self.seq:
            x = x * t.as_permutation(self.n)
            out.append(x)
        return out

    def relabel(self, g: Permutation) -> "TranspositionSeq":
        return TranspositionSeq(self.n, tuple(t.apply(g) for t in self.seq))

    def __len__(self) -> int:
        return len(self.seq)

    def __lt__(self, other: "TranspositionSeq") -> bool:
        return [t.key() for t in self.seq] < [t.key() for t in other.seq]

    def __str__(self) -> str:
        return ";".join(map(str, self.seq)) if self.seq else "()"


@dataclass(frozen=True)
class FactorizationCount:
    raw_count: int
    weight: int

    def __post_init__(self):
        checked_count(self.raw_count)

    @property
    def value(self) -> Fraction:
        return Fraction(self.raw_count, math.factorial(self.weight))

    def as_json(self) -> dict:
        return {"num": self.value.numerator, "den": self.value.denominator}


def valid_transpositions(n: int) -> list[Transposition]:
    """The 2n(n-1) admissible transpositions in canonical order."""
    labels = [x for k in range(1, n + 1) for x in (k, -k)]
    out = [Transposition(a, b) for i, a in enumerate(labels) for b in labels[i + 1:] if b != -a]
    return sorted(out)


def twisted_product(ts: TranspositionSeq) -> Permutation:
    n = ts.n
    x = ts.prefix_products()[-1]
    t = tau(n)
    return x * t * x.inverse() * t


# -- fast index-level enumeration -------------------------------------------
#
# Prefix products are kept as lists of indices; x (i j) is x with the entries
# at positions i and j swapped.


def _index_pairs(n: int) -> list[tuple[int, int]]:
    return [(label_to_index(t.a), label_to_index(t.b)) for t in valid_transpositions(n)]


def _twisted_img(x: list[int]) -> list[int]:
    # x tau x^-1 tau, with tau(i) = i ^ 1
    size = len(x)
    inv = [0] * size
    for i, j in enumerate(x):
        inv[j] = i
    return [x[inv[i ^ 1] ^ 1] for i in range(size)]


def _shape_of_img(img: list[int]) -> Partition | None:
    size = len(img)
    for i in range(size):
        # tau sigma tau = sigma^-1
        if img[img[i ^ 1] ^ 1] != i:
            return None
    return _paired_shape(img, [i ^ 1 for i in range(size)])


def _walk(n: int, m: int, first: int | None = None) -> Iterator[tuple[tuple[int, ...], list[int]]]:
    """Depth-first over all words of length m; yields (pair indices, x_m)."""
    pairs = _index_pairs(n)
    x = list(range(2 * n))
    word: list[int] = []

    def rec(depth):
        if depth == m:
            yield tuple(word), x
            return
        choices = range(len(pairs)) if (depth or first is None) else (first,)
        for c in choices:
            i, j = pairs[c]
            x[i], x[j] = x[j], x[i]
            word.append(c)
            yield from rec(depth + 1)
            word.pop()
            x[i], x[j] = x[j], x[i]

    if m > 0 and not pairs:
        return
    yield from rec(0)


def _shards(n: int, m: int) -> list[int | None]:
    if m == 0:
        return [None]
    return list(range(len(_index_pairs(n))))


def _enumerate_shard(args) -> list[tuple[int, ...]]:
    n, m, lam, first = args
    return [w for w, x in _walk(n, m, first) if _shape_of_img(_twisted_img(x)) == lam]


def _count_shard(args) -> dict:
    n, m, first = args
    counts: dict = {}
    for _, x in _walk(n, m, first):
        shape = _shape_of_img(_twisted_img(x))
        key = NONE_KEY if shape is None else shape
        counts[key] = counts.get(key, 0) + 1
    return counts


def _run_sharded(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map keeps job order, so the merge stays canonical
        return list(pool.map(fn, jobs))


def _check_lambda(lam: Sequence[int]) -> Partition:
    lam = Partition(lam)
    if lam.weight < 1:
        raise ValueError("lambda must be a partition of n >= 1")
    return lam


def enumerate_factorizations(m: int, lam: Sequence[int], *, workers: int = 1) -> Iterator[TranspositionSeq]:
    """Members of the factorization set for (m, lambda), in lexicographic order."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    lam = _check_lambda(lam)
    n = lam.weight
    table = valid_transpositions(n)
    if workers <= 1:
        for w, x in _walk(n, m):
            if _shape_of_img(_twisted_img(x)) == lam:
                yield TranspositionSeq(n, tuple(table[c] for c in w))
        return
    jobs = [(n, m, lam, first) for first in _shards(n, m)]
    for words in _run_sharded(_enumerate_shard, jobs, workers):
        for w in words:
            yield TranspositionSeq(n, tuple(table[c] for c in w))


def hurwitz_number(m: int, lam: Sequence[int], *, workers: int = 1) -> FactorizationCount:
    lam = _check_lambda(lam)
    if workers <= 1:
        raw = sum(1 for _ in enumerate_factorizations(m, lam))
    else:
        raw = count_by_cycle_type(m, lam.weight, workers=workers)[lam]
    return FactorizationCount(raw, lam.weight)


def count_by_cycle_type(m: int, n: int, *, workers: int = 1) -> dict:
    """Raw counts for every lambda of n, plus products in no twisted class under ``"none"``."""
    if m < 0 or n < 1:
        raise ValueError("need m >= 0 and n >= 1")
    counts: dict = {lam: 0 for lam in partitions(n)}
    counts[NONE_KEY] = 0
    jobs = [(n, m, first) for first in _shards(n, m)]
    for part in _run_sharded(_count_shard, jobs, workers):
        for key, value in part.items():
            counts[key] = checked_count(counts[key] + value)
    return counts


def classify(ts: TranspositionSeq) -> Partition | None:
    """Lambda whose factorization set contains ``ts`` (None if no twisted class fits)."""
    return twisted_class_shape(twisted_product(ts))
