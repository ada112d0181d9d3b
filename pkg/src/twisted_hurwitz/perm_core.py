"""Permutations of the signed ground set {1, -1, 2, -2, ..., n, -n}.

Labels are nonzero integers; the barred element of ``k`` is ``-k``, so the
involution tau is plain negation.  Internally a label is stored as an index
in ``range(2n)``::

    k  -> 2(k-1)
    -k -> 2(k-1) + 1

which makes tau the map ``i -> i ^ 1`` and gives the canonical label order
1 < -1 < 2 < -2 < ...  Products follow ``(p * q)(x) = p(q(x))``.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from typing import Iterable, Iterator, Sequence

__all__ = [
    "NotationError",
    "Partition",
    "Permutation",
    "PairMatching",
    "Transposition",
    "label_to_index",
    "index_to_label",
    "label_key",
    "tau",
    "identity",
    "compose",
    "conjugate",
    "inverse",
    "cycle_type",
    "lambda_of",
    "twisted_class_shape",
    "is_twisted_class_member",
    "twisted_class",
    "hyperoctahedral_elements",
    "pair_matchings",
    "partitions",
    "parse_permutation",
    "parse_partition",
]


class NotationError(ValueError):
    """Malformed text notation; carries a 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.reason = message


def label_to_index(x: int) -> int:
    if x == 0:
        raise ValueError("0 is not a signed label")
    return 2 * (abs(x) - 1) + (x < 0)


def index_to_label(i: int) -> int:
    k = i // 2 + 1
    return -k if i & 1 else k


def label_key(x: int) -> int:
    """Sort key realising the order 1 < -1 < 2 < -2 < ..."""
    return label_to_index(x)


class Partition(tuple):
    """A partition stored weakly decreasing.

    Behaves as a tuple, so ``Partition([1, 2]) == (2, 1)``.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = sorted((int(p) for p in parts), reverse=True)
        if any(p < 1 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @classmethod
    def hook(cls, n: int) -> "Partition":
        """The shape [2, 1^(n-2)] carried by two matchings one edge apart."""
        if n < 2:
            raise ValueError("[2, 1^(n-2)] needs n >= 2")
        return cls([2] + [1] * (n - 2))

    def exponent_form(self) -> str:
        counts = Counter(self)
        return " ".join(f"{p}^{counts[p]}" for p in sorted(counts, reverse=True))

    def __str__(self) -> str:
        return ",".join(map(str, self))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order ((n) first)."""

    def gen(rest, largest):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, largest), 0, -1):
            for tail in gen(rest - p, p):
                yield (p,) + tail

    return [Partition(p) for p in gen(n, n)]


_EXPONENT_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*$")


def parse_partition(text: str) -> Partition:
    """Parse ``"2,1,1"`` or the exponent form ``"2^1 1^2"``."""
    s = text.strip()
    if not s:
        raise NotationError("empty partition", 1, 1)
    try:
        if "^" in s:
            parts: list[int] = []
            for token in s.replace(",", " ").split():
                m = _EXPONENT_RE.match(token)
                if m is None:
                    raise NotationError(f"bad exponent token {token!r}", 1, text.find(token) + 1)
                parts += [int(m.group(1))] * int(m.group(2))
            return Partition(parts)
        return Partition(int(tok) for tok in s.split(","))
    except NotationError:
        raise
    except ValueError as exc:
        raise NotationError(f"bad partition {text!r}: {exc}", 1, 1) from None


class Permutation:
    """Immutable bijection of the 2n signed labels."""

    __slots__ = ("_img", "_hash")

    def __init__(self, images: Sequence[int], *, check: bool = True):
        img = tuple(images)
        if check:
            if len(img) % 2 or sorted(img) != list(range(len(img))):
                raise ValueError(f"not a permutation of range({len(img)}): {img}")
        self._img = img
        self._hash = hash(img)

    # -- construction --------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(2 * n), check=False)

    @classmethod
    def from_mapping(cls, n: int, mapping: dict[int, int]) -> "Permutation":
        """Labels absent from ``mapping`` are fixed."""
        img = list(range(2 * n))
        for x, y in mapping.items():
            img[label_to_index(x)] = label_to_index(y)
        return cls(img)

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        img = list(range(2 * n))
        seen: set[int] = set()
        for cyc in cycles:
            idx = [label_to_index(x) for x in cyc]
            if any(i >= 2 * n for i in idx):
                raise ValueError(f"cycle {tuple(cyc)} leaves the ground set of size {n}")
            if seen.intersection(idx) or len(set(idx)) != len(idx):
                raise ValueError(f"cycles are not disjoint at {tuple(cyc)}")
            seen.update(idx)
            for a, b in zip(idx, idx[1:] + idx[:1]):
                img[a] = b
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        return parse_permutation(text, n)

    # -- basic protocol ------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._img) // 2

    @property
    def images(self) -> tuple[int, ...]:
        """Index-level image table."""
        return self._img

    def __call__(self, x: int) -> int:
        return index_to_label(self._img[label_to_index(x)])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Permutation") -> bool:
        return self._img < other._img

    def inverse(self) -> "Permutation":
        inv = [0] * len(self._img)
        for i, j in enumerate(self._img):
            inv[j] = i
        return Permutation(inv, check=False)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._img))

    def is_involution(self) -> bool:
        img = self._img
        return all(img[img[i]] == i for i in range(len(img)))

    def is_fixed_point_free_involution(self) -> bool:
        img = self._img
        return all(img[i] != i and img[img[i]] == i for i in range(len(img)))

    def index_cycles(self) -> list[tuple[int, ...]]:
        """Cycles on indices including fixed points, each starting at its minimum."""
        seen = [False] * len(self._img)
        out = []
        for start in range(len(self._img)):
            if seen[start]:
                continue
            cyc = []
            i = start
            while not seen[i]:
                seen[i] = True
                cyc.append(i)
                i = self._img[i]
            out.append(tuple(cyc))
        return out

    def cycles(self, *, fixed_points: bool = False) -> list[tuple[int, ...]]:
        """Canonical label cycles: each starts at its least label, sorted by that label."""
        return [
            tuple(index_to_label(i) for i in c)
            for c in self.index_cycles()
            if fixed_points or len(c) > 1
        ]

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r}, n={self.n})"


class PairMatching(Permutation):
    """A fixed-point-free involution, i.e. a perfect matching of the labels."""

    __slots__ = ()

    def __init__(self, images: Sequence[int], *, check: bool = True):
        super().__init__(images, check=check)
        if check and not self.is_fixed_point_free_involution():
            raise ValueError(f"{Permutation(self._img, check=False)} is not a fixed-point-free involution")

    @classmethod
    def of(cls, p: Permutation) -> "PairMatching":
        if isinstance(p, PairMatching):
            return p
        return cls(p.images)

    def pairs(self) -> list[tuple[int, int]]:
        return [c for c in self.cycles()]


class Transposition:
    """Unordered pair ``{a, b}`` of distinct labels, printed smallest-first."""

    __slots__ = ("a", "b")

    def __init__(self, a: int, b: int):
        if a == 0 or b == 0:
            raise ValueError("0 is not a signed label")
        if a == b:
            raise ValueError(f"degenerate transposition ({a} {b})")
        if label_key(b) < label_key(a):
            a, b = b, a
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("Transposition is immutable")

    @property
    def admissible(self) -> bool:
        """True unless the pair is ``{k, -k}``."""
        return self.b != -self.a

    def key(self) -> tuple[int, int]:
        return (label_key(self.a), label_key(self.b))

    def as_permutation(self, n: int) -> Permutation:
        return Permutation.from_cycles(n, [(self.a, self.b)])

    def apply(self, g: Permutation) -> "Transposition":
        """Relabel through ``g``: {a, b} -> {g(a), g(b)}."""
        return Transposition(g(self.a), g(self.b))

    def __eq__(self, other) -> bool:
        return isinstance(other, Transposition) and (self.a, self.b) == (other.a, other.b)

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __lt__(self, other: "Transposition") -> bool:
        return self.key() < other.key()

    def __iter__(self) -> Iterator[int]:
        return iter((self.a, self.b))

    def __str__(self) -> str:
        return f"({self.a} {self.b})"

    def __repr__(self) -> str:
        return f"Transposition({self.a}, {self.b})"


# -- operations -------------------------------------------------------


def tau(n: int) -> PairMatching:
    """The negation map ``(1 -1)(2 -2)...(n -n)``."""
    if n < 1:
        raise ValueError(f"tau needs n >= 1, got {n}")
    return PairMatching([i ^ 1 for i in range(2 * n)], check=False)


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def _same_size(p: Permutation, q: Permutation) -> None:
    if len(p.images) != len(q.images):
        raise ValueError(f"ground sets differ: n={p.n} vs n={q.n}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``x -> p(q(x))``."""
    _same_size(p, q)
    pi = p.images
    return Permutation([pi[j] for j in q.images], check=False)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def conjugate(p: Permutation, g: Permutation) -> Permutation:
    """``g p g^-1``: the cycles of ``p`` with every entry relabelled by ``g``."""
    _same_size(p, g)
    gi = g.images
    img = [0] * len(gi)
    for i, j in enumerate(p.images):
        img[gi[i]] = gi[j]
    if isinstance(p, PairMatching):
        return PairMatching(img, check=False)
    return Permutation(img, check=False)


def cycle_type(p: Permutation) -> Partition:
    return Partition(len(c) for c in p.index_cycles())


def _paired_shape(sigma_img: Sequence[int], pairing_img: Sequence[int]) -> Partition | None:
    """Pair each cycle c of sigma with pairing(c); None if some cycle is self-paired.

    Assumes ``pairing sigma pairing = sigma^-1`` so that pairing(c) is a cycle.
    """
    seen = [False] * len(sigma_img)
    parts = []
    for start in range(len(sigma_img)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = sigma_img[i]
        partner = pairing_img[start]
        if partner in cyc:
            return None
        j = partner
        for _ in cyc:
            seen[j] = True
            j = sigma_img[j]
        parts.append(len(cyc))
    return Partition(parts)


def lambda_of(d1: Permutation, d2: Permutation) -> Partition:
    """Shape of the pair of matchings: one length per inverse-paired cycle pair of d1 d2."""
    _same_size(d1, d2)
    for d in (d1, d2):
        if not d.is_fixed_point_free_involution():
            raise ValueError(f"{d} is not a pair matching")
    sigma = compose(d1, d2)
    shape = _paired_shape(sigma.images, d1.images)
    # d1 c^-1 d1 is never c itself when d1, d2 are both fixed-point free
    assert shape is not None
    return shape


def twisted_class_shape(sigma: Permutation) -> Partition | None:
    """The lambda with sigma in the twisted class of lambda, or None if there is none."""
    n = sigma.n
    t = tau(n)
    if compose(compose(t, sigma), t) != sigma.inverse():
        return None
    return _paired_shape(sigma.images, t.images)


def is_twisted_class_member(sigma: Permutation, lam: Sequence[int]) -> bool:
    """Whether tau sigma tau = sigma^-1 and the cycles pair off as (c, tau c^-1 tau), half-lengths lam."""
    lam = Partition(lam)
    if lam.weight != sigma.n:
        raise ValueError(f"|lambda| = {lam.weight} but n = {sigma.n}")
    return twisted_class_shape(sigma) == lam


def twisted_class(lam: Sequence[int]) -> list[Permutation]:
    """Every member of the twisted class, by filtering all of S_2n (small n only)."""
    lam = Partition(lam)
    n = lam.weight
    out = []
    for img in itertools.permutations(range(2 * n)):
        p = Permutation(img, check=False)
        if twisted_class_shape(p) == lam:
            out.append(p)
    return out


def hyperoctahedral_elements(n: int) -> Iterator[Permutation]:
    """Signed permutations: the 2^n n! elements commuting with tau."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((0, 1), repeat=n):
            img = [0] * (2 * n)
            for k in range(n):
                target = 2 * perm[k] + signs[k]
                img[2 * k] = target
                img[2 * k + 1] = target ^ 1
            yield Permutation(img, check=False)


def hyperoctahedral_order(n: int) -> int:
    return 2**n * math.factorial(n)


def pair_matchings(n: int) -> list[PairMatching]:
    """All (2n-1)!! fixed-point-free involutions, sorted by image table."""

    def gen(free):
        if not free:
            yield []
            return
        first, rest = free[0], free[1:]
        for k, other in enumerate(rest):
            for tail in gen(rest[:k] + rest[k + 1:]):
                yield [(first, other)] + tail

    out = []
    for pairs in gen(list(range(2 * n))):
        img = [0] * (2 * n)
        for a, b in pairs:
            img[a], img[b] = b, a
        out.append(PairMatching(img, check=False))
    return sorted(out)


# -- notation -----------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\()|(\))|([+-]?\d+)|(\S))")


def parse_cycles(text: str, line: int = 1, offset: int = 0) -> list[list[int]]:
    """Parse signed cycle notation into label lists; errors carry line/column.

    ``offset`` shifts reported columns when ``text`` is a slice of a longer line.
    """
    cycles: list[list[int]] = []
    current: list[int] | None = None
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        col = offset + (m.start(m.lastindex) + 1 if m.lastindex else pos + 1)
        opening, closing, number, junk = m.groups()
        if junk is not None:
            raise NotationError(f"unexpected character {junk!r}", line, col)
        if opening:
            if current is not None:
                raise NotationError("nested '('", line, col)
            current = []
        elif closing:
            if current is None:
                raise NotationError("unbalanced ')'", line, col)
            cycles.append(current)
            current = None
        else:
            if current is None:
                raise NotationError("label outside a cycle", line, col)
            value = int(number)
            if value == 0:
                raise NotationError("0 is not a signed label", line, col)
            current.append(value)
        pos = m.end()
    if current is not None:
        raise NotationError("unclosed '('", line, offset + len(text) + 1)
    return cycles


def parse_permutation(text: str, n: int | None = None, line: int = 1) -> Permutation:
    """Parse e.g. ``"(1 -2)(-1 2)"``; ``"()"`` is the identity.

    Without ``n`` the ground set is the smallest one containing every label.
    """
    cycles = [c for c in parse_cycles(text, line) if c]
    largest = max((abs(x) for c in cycles for x in c), default=1)
    if n is None:
        n = largest
    elif largest > n:
        raise NotationError(f"label {largest} exceeds n = {n}", line, 1)
    try:
        return Permutation.from_cycles(n, cycles)
    except ValueError as exc:
        raise NotationError(str(exc), line, 1) from None
