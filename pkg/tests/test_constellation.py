import itertools
import json
from pathlib import Path

import pytest

from twisted_hurwitz.constellation import (
    CDConstellation,
    FlagMap,
    MalformedConstellationError,
    build_constellation,
    delta_orbit_count,
    export_graph,
    extract_matchings,
    from_record,
    import_structured,
    orientable_by_flips,
    surface_report,
    to_record,
)
from twisted_hurwitz.factorization import TranspositionSeq
from twisted_hurwitz.matching_seq import MatchingSeq, enumerate_matching_seqs, matching_seq_from_labels, p_map
from twisted_hurwitz.perm_core import Partition, lambda_of, partitions, tau

GOLDEN = Path(__file__).parent / "golden"
SWEEP = [(n, m, lam) for n in (2, 3) for m in (2, 3, 4) for lam in partitions(n)]


def golden_instances():
    return {
        "projective": matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 2)(-1 -2)", "(1 -2)(-1 2)"]),
        "sphere": matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 2)(-1 -2)", "(1 -1)(2 -2)"]),
        "n3_m3": p_map(TranspositionSeq.of(3, [(1, 2), (-2, 3), (1, -3)])),
    }


class TestBuild:
    def test_projective_plane(self, ms_projective):
        r = surface_report(build_constellation(ms_projective))
        assert (r.vertex_count, r.edge_count, r.face_count) == (2, 2, 1)
        assert r.euler_characteristic == 1
        assert r.component_count == 1
        assert r.orientable == (False,)
        assert r.face_degrees == (2,)

    def test_sphere(self, ms_sphere):
        r = surface_report(build_constellation(ms_sphere))
        assert (r.vertex_count, r.edge_count, r.face_count) == (2, 2, 2)
        assert r.euler_characteristic == 2
        assert r.orientable == (True,)
        assert r.face_degrees == (1, 1)

    def test_small_m_rejected(self):
        with pytest.raises(ValueError, match="m ≥ 2 required"):
            build_constellation(matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 -2)(-1 2)"]))
        with pytest.raises(ValueError):
            build_constellation(MatchingSeq(2, (tau(2),)))

    def test_invalid_rejected(self):
        bad = matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 -1)(2 -2)", "(1 -2)(-1 2)"])
        with pytest.raises(ValueError):
            build_constellation(bad)

    def test_simple_constellation_degrees(self):
        for ms in enumerate_matching_seqs(4, [2, 1]):
            build_constellation(ms).check_simple()

    def test_corner_labelling(self, ms_projective):
        c = build_constellation(ms_projective)
        assert sorted(c.corner0_labels.values()) == [1, 2]
        assert set(c.corner0_orientations) == {1, 2}
        # path k and path -k leave the same colour-0 corner
        for k in (1, 2):
            start, other = c.right_path_index[k][0], c.right_path_index[-k][0]
            assert c.map.s1[start] == other


class TestExtract:
    def test_round_trip_examples(self, ms_projective, ms_sphere):
        for ms in (ms_projective, ms_sphere):
            assert extract_matchings(build_constellation(ms)) == ms

    @pytest.mark.parametrize("n,m,lam", SWEEP)
    def test_bijection(self, n, m, lam):
        for ms in enumerate_matching_seqs(m, lam):
            c = build_constellation(ms)
            back = extract_matchings(c)
            assert back == ms
            for k in range(-1, m - 1):
                assert lambda_of(back.delta(k), back.delta(k + 1)) == Partition.hook(n)

    def test_corrupted_s1_is_structural(self, ms_projective):
        c = build_constellation(ms_projective)
        s1 = list(c.map.s1)
        # re-pair two colour-0 flags from different corners
        a, b = c.corners[1], c.corners[2]
        a2, b2 = s1[a], s1[b]
        s1[a], s1[b], s1[a2], s1[b2] = b, a, b2, a2
        with pytest.raises(MalformedConstellationError):
            CDConstellation(FlagMap(c.map.s0, s1, c.map.s2), c.colors, c.corners)

    def test_broken_involution(self, ms_projective):
        c = build_constellation(ms_projective)
        s1 = list(c.map.s1)
        s1[0], s1[1] = s1[1], s1[0]
        with pytest.raises(MalformedConstellationError):
            FlagMap(c.map.s0, s1, c.map.s2)


class TestSurface:
    @pytest.mark.parametrize("n,m,lam", SWEEP)
    def test_counting_identities(self, n, m, lam):
        for ms in enumerate_matching_seqs(m, lam):
            r = surface_report(build_constellation(ms))
            assert r.vertex_counts == (n - 1,) * m
            assert r.edge_count == (m - 1) * n
            assert r.face_count == len(lam)
            assert r.euler_characteristic == n + len(lam) - m
            assert r.face_degrees == lambda_of(ms.delta(-1), ms.delta(m - 1)) == lam

    @pytest.mark.parametrize("n,m,lam", SWEEP)
    def test_orientability_oracle(self, n, m, lam):
        for ms in enumerate_matching_seqs(m, lam):
            c = build_constellation(ms)
            assert list(surface_report(c).orientable) == orientable_by_flips(c.map)

    def test_both_orientability_outcomes_occur(self):
        outcomes = set()
        for ms in itertools.chain.from_iterable(enumerate_matching_seqs(3, lam) for lam in partitions(3)):
            outcomes.update(surface_report(build_constellation(ms)).orientable)
        assert outcomes == {True, False}

    def test_disconnected_instance(self):
        ms = matching_seq_from_labels(
            3, ["(1 -1)(2 -2)(3 -3)", "(1 -1)(2 3)(-2 -3)", "(1 -1)(2 -3)(-2 3)"]
        )
        r = surface_report(build_constellation(ms))
        assert r.component_count == 2 == delta_orbit_count(ms)
        # a sphere and a projective plane
        assert r.euler_characteristic == 3
        assert sorted(r.orientable) == [False, True]

    @pytest.mark.parametrize("n,m,lam", SWEEP)
    def test_components_are_delta_orbits(self, n, m, lam):
        for ms in enumerate_matching_seqs(m, lam):
            assert surface_report(build_constellation(ms)).component_count == delta_orbit_count(ms)


class TestOrientabilityOracle:
    def test_verdicts_survive_flag_relabelling(self):
        ms = matching_seq_from_labels(2, ["(1 -1)(2 -2)", "(1 2)(-1 -2)", "(1 -2)(-1 2)"])
        fm = build_constellation(ms).map
        size = fm.size
        for perm in itertools.islice(itertools.permutations(range(size)), 0, 5000, 97):
            inv = [0] * size
            for i, j in enumerate(perm):
                inv[j] = i
            relabel = lambda s: tuple(perm[s[inv[f]]] for f in range(size))
            other = FlagMap(relabel(fm.s0), relabel(fm.s1), relabel(fm.s2))
            assert other.orientable_components() == orientable_by_flips(other) == [False]


class TestExport:
    @pytest.mark.parametrize("name", ["projective", "sphere", "n3_m3"])
    def test_golden(self, name):
        c = build_constellation(golden_instances()[name])
        assert export_graph(c, "dot") == (GOLDEN / f"{name}.dot").read_text()
        assert export_graph(c, "structured") + "\n" == (GOLDEN / f"{name}.json").read_text()

    def test_dot_line_counts(self, ms_sphere):
        lines = export_graph(build_constellation(ms_sphere), "dot").splitlines()
        assert sum(" -- " in ln for ln in lines) == 2
        assert sum("[color=" in ln for ln in lines) == 2

    @pytest.mark.parametrize("n,m,lam", SWEEP)
    def test_structured_round_trip(self, n, m, lam):
        for ms in enumerate_matching_seqs(m, lam):
            c = build_constellation(ms)
            again = import_structured(export_graph(c, "structured"))
            assert again == c
            assert extract_matchings(again) == ms

    def test_record_keys(self, ms_projective):
        record = json.loads(export_graph(build_constellation(ms_projective), "structured"))
        assert list(record) == ["flags", "s0", "s1", "s2", "colors", "labels"]

    def test_unknown_format(self, ms_sphere):
        c = build_constellation(ms_sphere)
        for token in ("", "svg"):
            with pytest.raises(ValueError):
                export_graph(c, token)

    def test_tampered_labels_rejected(self, ms_projective):
        record = to_record(build_constellation(ms_projective))
        record["labels"][1] = -record["labels"][1]
        with pytest.raises(MalformedConstellationError):
            from_record(record)
