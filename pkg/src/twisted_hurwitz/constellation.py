"""Embedded constellations as flag systems.

A flag map is three fixed-point-free involutions on a finite set of flags:

* ``s0`` moves to the other end of the same edge, same side;
* ``s1`` moves to the neighbouring edge inside the same corner;
* ``s2`` moves to the other side of the same edge, same end.

Vertices, edges and faces are the orbits of <s1, s2>, <s0, s2> and <s0, s1>.
Surfaces may be non-orientable; a component is orientable exactly when its flag
graph is bipartite with every generator swapping the two classes.

For a matching sequence (tau, delta_0, ..., delta_{m-1}) the constellation has
one flag per (right path a, gap k, end), where gap k joins colors k and k+1:

* s0 : (a, k, lo) <-> (a, k, hi)
* s2 : (a, k, e)  <-> (delta_k(a), k, e)
* s1 : (a, k-1, hi) <-> (a, k, lo) at interior colors,
       (a, 0, lo) <-> (-a, 0, lo) at color 0,
       (a, m-2, hi) <-> (delta_{m-1}(a), m-2, hi) at color m-1.

So right path ``a`` is the zig-zag s0, s1, s0, ... from its color-0 corner,
and the two sides of every gap-k edge carry a and delta_k(a).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .matching_seq import MatchingSeq, is_valid
from .perm_core import (
    Partition,
    Permutation,
    index_to_label,
    label_key,
    label_to_index,
    tau,
)


class MalformedConstellationError(ValueError):
    """The flag data does not describe a CD-labelled simple constellation."""


def _check_involution(name: str, s: Sequence[int]) -> None:
    size = len(s)
    for f, g in enumerate(s):
        if not 0 <= g < size or g == f or s[g] != f:
            raise MalformedConstellationError(f"{name} is not a fixed-point-free involution at flag {f}")


def _orbits(size: int, gens: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Orbits of the group generated by ``gens``, each sorted, ordered by least flag."""
    seen = [False] * size
    out = []
    for start in range(size):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        orbit = []
        while stack:
            f = stack.pop()
            orbit.append(f)
            for s in gens:
                g = s[f]
                if not seen[g]:
                    seen[g] = True
                    stack.append(g)
        out.append(tuple(sorted(orbit)))
    return out


@dataclass(frozen=True)
class FlagMap:
    s0: tuple[int, ...]
    s1: tuple[int, ...]
    s2: tuple[int, ...]

    def __post_init__(self):
        for name in ("s0", "s1", "s2"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        size = len(self.s0)
        if len(self.s1) != size or len(self.s2) != size:
            raise MalformedConstellationError("s0, s1, s2 act on different flag sets")
        for name in ("s0", "s1", "s2"):
            _check_involution(name, getattr(self, name))
        s0, s2 = self.s0, self.s2
        if any(s0[s2[f]] != s2[s0[f]] for f in range(size)):
            raise MalformedConstellationError("s0 and s2 do not commute")
        for edge in self.edges:
            if len(edge) != 4:
                raise MalformedConstellationError(f"edge orbit {edge} does not have 4 flags")

    @property
    def size(self) -> int:
        return len(self.s0)

    @cached_property
    def vertices(self) -> list[tuple[int, ...]]:
        return _orbits(self.size, (self.s1, self.s2))

    @cached_property
    def edges(self) -> list[tuple[int, ...]]:
        return _orbits(self.size, (self.s0, self.s2))

    @cached_property
    def faces(self) -> list[tuple[int, ...]]:
        return _orbits(self.size, (self.s0, self.s1))

    @cached_property
    def components(self) -> list[tuple[int, ...]]:
        return _orbits(self.size, (self.s0, self.s1, self.s2))

    @cached_property
    def vertex_of(self) -> tuple[int, ...]:
        out = [0] * self.size
        for v, orbit in enumerate(self.vertices):
            for f in orbit:
                out[f] = v
        return tuple(out)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def orientable_components(self) -> list[bool]:
        """Per component: can the flags be 2-coloured so that every s_i swaps colours?"""
        side = [-1] * self.size
        result = []
        for comp in self.components:
            ok = True
            side[comp[0]] = 0
            stack = [comp[0]]
            while stack:
                f = stack.pop()
                for s in (self.s0, self.s1, self.s2):
                    g = s[f]
                    if side[g] < 0:
                        side[g] = 1 - side[f]
                        stack.append(g)
                    elif side[g] == side[f]:
                        ok = False
            result.append(ok)
        return result


def orientable_by_flips(fmap: FlagMap) -> list[bool]:
    """Brute-force orientability, per component.

    Each vertex gets a local orientation: walking its flag cycle f, s1 f, s2 s1 f, ...
    from its least flag, even positions are the positive side.  An edge is
    twisted when s0 sends a positive flag to a positive flag.  Flipping a
    vertex swaps its sides; a component is orientable iff one of the 2^V flip
    assignments of its vertices leaves no edge twisted.
    """
    positive = [False] * fmap.size
    for orbit in fmap.vertices:
        f = orbit[0]
        step = 0
        while True:
            positive[f] = step % 2 == 0
            f = (fmap.s1 if step % 2 == 0 else fmap.s2)[f]
            step += 1
            if f == orbit[0]:
                break
    vertex_of = fmap.vertex_of
    result = []
    for comp in fmap.components:
        verts = sorted({vertex_of[f] for f in comp})
        local = {v: i for i, v in enumerate(verts)}
        # one record per edge end pair: (vertex at f, vertex at s0 f, f positive == s0 f positive)
        links = []
        for f in comp:
            if positive[f]:
                g = fmap.s0[f]
                links.append((local[vertex_of[f]], local[vertex_of[g]], positive[g]))
        found = False
        for flips in itertools.product((False, True), repeat=len(verts)):
            if all((flips[u] ^ flips[v] ^ same) is False for u, v, same in links):
                found = True
                break
        result.append(found)
    return result


@dataclass(frozen=True)
class SurfaceReport:
    vertex_counts: tuple[int, ...]
    edge_count: int
    face_count: int
    euler_characteristic: int
    component_count: int
    orientable: tuple[bool, ...]
    face_degrees: Partition

    @property
    def vertex_count(self) -> int:
        return sum(self.vertex_counts)


class CDConstellation:
    """A flag map with vertex colours and a CD labelling of its colour-0 corners.

    ``colors[f]`` is the colour of the vertex holding flag ``f``.  ``corners``
    maps each label k = 1..n to the flag where right path k starts; the other
    flag of that corner starts path -k, which fixes the corner orientation.
    """

    def __init__(self, fmap: FlagMap, colors: Sequence[int], corners: dict[int, int]):
        self.map = fmap
        self.colors = tuple(colors)
        self.corners = dict(sorted(corners.items()))
        if len(self.colors) != fmap.size:
            raise MalformedConstellationError("one colour per flag expected")
        self._check_colours()
        # walking the right paths validates the rest
        self.path_labels

    def _check_colours(self) -> None:
        fm, col = self.map, self.colors
        for orbit in fm.vertices:
            if len({col[f] for f in orbit}) != 1:
                raise MalformedConstellationError(f"vertex {orbit} carries several colours")
        for f in range(fm.size):
            if abs(col[f] - col[fm.s0[f]]) != 1:
                raise MalformedConstellationError(f"edge at flag {f} joins colours {col[f]} and {col[fm.s0[f]]}")
        if self.map.size and min(col) != 0:
            raise MalformedConstellationError("no vertex of colour 0")

    @property
    def m(self) -> int:
        return max(self.colors) + 1

    @property
    def n(self) -> int:
        return len(self.corners)

    def gap(self, f: int) -> int:
        return min(self.colors[f], self.colors[self.map.s0[f]])

    @property
    def corner0_labels(self) -> dict[tuple[int, int], int]:
        """Colour-0 corner (as its s1 flag pair) -> label."""
        s1 = self.map.s1
        return {tuple(sorted((f, s1[f]))): k for k, f in self.corners.items()}

    @property
    def corner0_orientations(self) -> dict[int, bool]:
        """Label -> True when path k starts at the lower-numbered flag of its corner."""
        s1 = self.map.s1
        return {k: f < s1[f] for k, f in self.corners.items()}

    def right_path(self, start: int) -> list[int]:
        """Flags visited by the right path starting at colour-0 flag ``start``."""
        fm, col, top = self.map, self.colors, self.m - 1
        if col[start] != 0:
            raise MalformedConstellationError(f"right path must start at colour 0, flag {start} has {col[start]}")
        walk = [start]
        f = start
        while True:
            g = fm.s0[f]
            if col[g] != col[f] + 1:
                raise MalformedConstellationError(f"right path through flag {f} does not climb")
            walk.append(g)
            if col[g] == top:
                return walk
            f = fm.s1[g]
            if col[fm.s0[f]] != col[g] + 1:
                raise MalformedConstellationError(f"corner at flag {g} does not continue to colour {col[g] + 1}")
            walk.append(f)

    @cached_property
    def right_path_index(self) -> dict[int, tuple[int, ...]]:
        """Label in {+-1..+-n} -> its flag walk."""
        s1 = self.map.s1
        n = self.n
        if sorted(self.corners) != list(range(1, n + 1)):
            raise MalformedConstellationError(f"corner labels {sorted(self.corners)} are not 1..{n}")
        out = {}
        for k, f in self.corners.items():
            if self.colors[f] != 0 or self.colors[s1[f]] != 0:
                raise MalformedConstellationError(f"corner {k} is not a colour-0 corner")
            out[k] = tuple(self.right_path(f))
            out[-k] = tuple(self.right_path(s1[f]))
        return dict(sorted(out.items(), key=lambda kv: label_key(kv[0])))

    @cached_property
    def path_labels(self) -> tuple[int, ...]:
        """Right-path label of every flag."""
        owner = [0] * self.map.size
        for label, walk in self.right_path_index.items():
            for f in walk:
                if owner[f]:
                    raise MalformedConstellationError(
                        f"flag {f} lies on right paths {owner[f]} and {label}"
                    )
                owner[f] = label
        missing = [f for f, x in enumerate(owner) if x == 0]
        if missing:
            raise MalformedConstellationError(f"flags {missing[:5]} lie on no right path")
        return tuple(owner)

    def check_simple(self) -> None:
        """Degree and alternation rules of a simple constellation."""
        fm, col, m = self.map, self.colors, self.m
        per_color: dict[int, list[int]] = {}
        for orbit in fm.vertices:
            per_color.setdefault(col[orbit[0]], []).append(len(orbit) // 2)
        for c in range(m):
            degrees = sorted(per_color.get(c, []))
            if c in (0, m - 1) and m >= 2:
                ok = degrees.count(2) == 1 and all(d in (1, 2) for d in degrees)
            else:
                ok = degrees.count(4) == 1 and all(d in (2, 4) for d in degrees)
            if not ok:
                raise MalformedConstellationError(f"colour {c} has vertex degrees {degrees}")
        for f in range(fm.size):
            c = col[f]
            if 0 < c < m - 1 and self.gap(f) == self.gap(fm.s1[f]):
                raise MalformedConstellationError(f"edges at flag {f} do not alternate")

    def vertex_colors(self) -> list[int]:
        return [self.colors[orbit[0]] for orbit in self.map.vertices]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CDConstellation)
            and self.map == other.map
            and self.colors == other.colors
            and self.corners == other.corners
        )

    def __repr__(self) -> str:
        return f"CDConstellation(n={self.n}, m={self.m}, flags={self.map.size})"


def _flag_index(n: int, a: int, k: int, hi: int) -> int:
    return (k * 2 * n + label_to_index(a)) * 2 + hi


def build_constellation(ms: MatchingSeq) -> CDConstellation:
    """CD-labelled simple m-constellation whose right paths realise ``ms``."""
    m, n = ms.m, ms.n
    if m < 2:
        raise ValueError("m ≥ 2 required")
    if not is_valid(ms):
        raise ValueError(f"{ms} is not a valid matching sequence")
    size = 4 * n * (m - 1)
    s0, s1, s2 = [0] * size, [0] * size, [0] * size
    colors = [0] * size
    labels = [index_to_label(i) for i in range(2 * n)]
    top = ms.delta(m - 1)
    for k in range(m - 1):
        dk = ms.delta(k)
        for a in labels:
            for hi in (0, 1):
                f = _flag_index(n, a, k, hi)
                s0[f] = _flag_index(n, a, k, 1 - hi)
                s2[f] = _flag_index(n, dk(a), k, hi)
                colors[f] = k + hi
                if hi == 0:
                    s1[f] = _flag_index(n, -a, 0, 0) if k == 0 else _flag_index(n, a, k - 1, 1)
                else:
                    s1[f] = _flag_index(n, top(a), k, 1) if k == m - 2 else _flag_index(n, a, k + 1, 0)
    corners = {a: _flag_index(n, a, 0, 0) for a in range(1, n + 1)}
    c = CDConstellation(FlagMap(tuple(s0), tuple(s1), tuple(s2)), colors, corners)
    c.check_simple()
    return c


def extract_matchings(c: CDConstellation) -> MatchingSeq:
    """Read (tau, delta_0, ..., delta_{m-1}) off the right paths of ``c``."""
    labels = c.path_labels
    fm, n, m = c.map, c.n, c.m
    deltas = [tau(n)]
    for k in range(m):
        img = [-1] * (2 * n)
        for a, walk in c.right_path_index.items():
            if k < m - 1:
                # the lower flag of path a on gap k
                f = walk[2 * k]
                b = labels[fm.s2[f]]
            else:
                b = labels[fm.s1[walk[-1]]]
            img[label_to_index(a)] = label_to_index(b)
        p = Permutation(img, check=False)
        if -1 in img or not p.is_fixed_point_free_involution():
            raise MalformedConstellationError(f"delta_{k} read from the paths is not a pair matching")
        deltas.append(p)
    return MatchingSeq(n, tuple(deltas))


def surface_report(c: CDConstellation) -> SurfaceReport:
    fm = c.map
    counts = [0] * c.m
    for orbit in fm.vertices:
        counts[c.colors[orbit[0]]] += 1
    corner0 = [f for f in range(fm.size) if c.colors[f] == 0]
    face_of = {}
    for i, face in enumerate(fm.faces):
        for f in face:
            face_of[f] = i
    degrees = [0] * len(fm.faces)
    for f in corner0:
        # each colour-0 corner holds two flags
        degrees[face_of[f]] += 1
    return SurfaceReport(
        vertex_counts=tuple(counts),
        edge_count=len(fm.edges),
        face_count=len(fm.faces),
        euler_characteristic=fm.euler_characteristic(),
        component_count=len(fm.components),
        orientable=tuple(fm.orientable_components()),
        face_degrees=Partition(d // 2 for d in degrees),
    )


def delta_orbit_count(ms: MatchingSeq) -> int:
    """Orbits of <delta_-1, ..., delta_{m-1}> on the signed labels."""
    size = 2 * ms.n
    return len(_orbits(size, [d.images for d in ms.deltas]))


# -- export ---------------------------------------------------------------------


def to_record(c: CDConstellation) -> dict:
    return {
        "flags": c.map.size,
        "s0": list(c.map.s0),
        "s1": list(c.map.s1),
        "s2": list(c.map.s2),
        "colors": list(c.colors),
        "labels": list(c.path_labels),
    }


def from_record(record: dict) -> CDConstellation:
    """Rebuild from the structured record; the corner labelling comes from the path labels."""
    try:
        size = int(record["flags"])
        s0, s1, s2 = (list(record[k]) for k in ("s0", "s1", "s2"))
        colors, labels = list(record["colors"]), list(record["labels"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedConstellationError(f"bad constellation record: {exc}") from None
    if any(len(x) != size for x in (s0, s1, s2, colors, labels)):
        raise MalformedConstellationError("record arrays disagree with 'flags'")
    corners = {}
    for f in range(size):
        if colors[f] == 0 and labels[f] > 0:
            if labels[f] in corners:
                raise MalformedConstellationError(f"label {labels[f]} starts two right paths")
            corners[labels[f]] = f
    c = CDConstellation(FlagMap(s0, s1, s2), colors, corners)
    if list(c.path_labels) != labels:
        raise MalformedConstellationError("labels disagree with the right paths of the map")
    return c


def export_graph(c: CDConstellation, format: str) -> str:
    """``dot`` text or the ``structured`` lossless JSON record."""
    if format == "structured":
        return json.dumps(to_record(c), separators=(",", ":"))
    if format != "dot":
        raise ValueError(f"unknown export format {format!r}")
    fm, labels = c.map, c.path_labels
    vertex_of = fm.vertex_of
    lines = ["graph constellation {"]
    for v, orbit in enumerate(fm.vertices):
        lines.append(f'  v{v} [color={c.colors[orbit[0]]}, degree={len(orbit) // 2}];')
    for edge in fm.edges:
        lo = min(edge, key=lambda f: (c.colors[f], f))
        hi = fm.s0[lo]
        sides = sorted({labels[f] for f in edge}, key=label_key)
        paths = ",".join(map(str, sides))
        lines.append(f'  v{vertex_of[lo]} -- v{vertex_of[hi]} [gap={c.gap(lo)}, paths="{paths}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def import_structured(text: str) -> CDConstellation:
    try:
        record = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedConstellationError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_record(record)
