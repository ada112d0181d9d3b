import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twisted_hurwitz.perm_core import (
    NotationError,
    PairMatching,
    Partition,
    Permutation,
    compose,
    conjugate,
    cycle_type,
    hyperoctahedral_elements,
    identity,
    index_to_label,
    is_twisted_class_member,
    lambda_of,
    pair_matchings,
    parse_partition,
    parse_permutation,
    partitions,
    tau,
    twisted_class,
)


def permutations_on(n):
    return st.permutations(range(2 * n)).map(Permutation)


@st.composite
def perm_pair(draw):
    n = draw(st.integers(1, 4))
    return draw(permutations_on(n)), draw(permutations_on(n))


@st.composite
def matching_pair(draw):
    n = draw(st.integers(1, 4))
    ms = pair_matchings(n)
    return draw(st.sampled_from(ms)), draw(st.sampled_from(ms))


def union_graph_shape(d1, d2):
    """Halve the cycle lengths of the edge union of the two matching graphs."""
    g = nx.MultiGraph()
    labels = [index_to_label(i) for i in range(2 * d1.n)]
    g.add_nodes_from(labels)
    for d in (d1, d2):
        for a, b in d.cycles():
            g.add_edge(a, b)
    return Partition(len(c) // 2 for c in nx.connected_components(g))


class TestTau:
    def test_small(self):
        assert str(tau(1)) == "(1 -1)"
        assert str(tau(2)) == "(1 -1)(2 -2)"
        assert cycle_type(tau(3)) == (2, 2, 2)

    def test_negation(self):
        t = tau(4)
        assert all(t(x) == -x for x in (1, -1, 2, -2, 3, -3, 4, -4))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            tau(0)


class TestCompose:
    def test_examples(self, perm):
        assert compose(perm("(1 2)"), perm("(1 2)")).is_identity()
        assert compose(tau(2), tau(2)).is_identity()
        assert str(compose(perm("(1 2)"), perm("(1 -1)"))) == "(1 -1 2)"

    def test_image_by_image(self, perm):
        p, q = perm("(1 2 -1)"), perm("(2 -2)(1 -1)")
        pq = compose(p, q)
        for x in (1, -1, 2, -2):
            assert pq(x) == p(q(x))

    def test_mismatched_sizes(self, perm):
        with pytest.raises(ValueError):
            compose(perm("(1 2)"), tau(3))

    @given(perm_pair())
    def test_inverse(self, pq):
        p, _ = pq
        assert compose(p, p.inverse()).is_identity()

    @given(perm_pair(), st.data())
    def test_associative(self, pq, data):
        p, q = pq
        r = data.draw(permutations_on(p.n))
        assert compose(compose(p, q), r) == compose(p, compose(q, r))


class TestConjugate:
    def test_examples(self, perm):
        p = perm("(1 -2 2)")
        assert conjugate(p, identity(2)) == p
        assert str(conjugate(perm("(1 2)"), perm("(1 -1)"))) == "(-1 2)"

    @given(perm_pair())
    def test_preserves_cycle_type(self, pq):
        p, g = pq
        assert cycle_type(conjugate(p, g)) == cycle_type(p)

    @given(perm_pair())
    def test_is_g_p_ginv(self, pq):
        p, g = pq
        assert conjugate(p, g) == compose(compose(g, p), g.inverse())

    @given(perm_pair())
    def test_tau_stays_matching(self, pq):
        _, g = pq
        assert cycle_type(conjugate(tau(g.n), g)) == (2,) * g.n


class TestCycleType:
    def test_examples(self, perm):
        assert cycle_type(identity(2)) == (1, 1, 1, 1)
        assert cycle_type(tau(2)) == (2, 2)
        assert cycle_type(perm("(1 -1 2)")) == (3, 1)

    @given(perm_pair())
    def test_weight(self, pq):
        p, _ = pq
        assert cycle_type(p).weight == 2 * p.n


class TestLambda:
    def test_examples(self, perm):
        assert lambda_of(tau(3), tau(3)) == (1, 1, 1)
        assert lambda_of(tau(2), perm("(1 2)(-1 -2)")) == (2,)

    def test_rejects_non_matching(self, perm):
        with pytest.raises(ValueError):
            lambda_of(tau(2), perm("(1 2)"))

    @given(matching_pair())
    def test_symmetric_weight_n(self, pair):
        d1, d2 = pair
        lam = lambda_of(d1, d2)
        assert lam.weight == d1.n
        assert lam == lambda_of(d2, d1)

    @given(matching_pair())
    def test_union_graph_oracle(self, pair):
        d1, d2 = pair
        assert lambda_of(d1, d2) == union_graph_shape(d1, d2)

    def test_union_graph_oracle_exhaustive(self):
        for n in (1, 2, 3):
            for d1, d2 in itertools.product(pair_matchings(n), repeat=2):
                assert lambda_of(d1, d2) == union_graph_shape(d1, d2)


class TestTwistedClass:
    def test_examples(self, perm):
        assert is_twisted_class_member(identity(3), [1, 1, 1])
        assert is_twisted_class_member(perm("(1 2)(-1 -2)"), [2])
        assert not is_twisted_class_member(perm("(1 -1)", 1), [1])

    def test_weight_mismatch(self):
        with pytest.raises(ValueError):
            is_twisted_class_member(identity(2), [1])

    def test_members_satisfy_relation(self):
        for n in (1, 2, 3):
            t = tau(n)
            for lam in partitions(n):
                for sigma in twisted_class(lam):
                    assert compose(t, sigma) == compose(sigma.inverse(), t)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_class_sizes_match_matchings(self, n):
        # sigma -> tau sigma is a bijection onto matchings delta with Lambda(tau, delta) = lambda
        t = tau(n)
        for lam in partitions(n):
            members = twisted_class(lam)
            matchings = [d for d in pair_matchings(n) if lambda_of(t, d) == lam]
            assert {compose(t, s) for s in members} == set(matchings)


class TestHyperoctahedral:
    def test_counts(self):
        assert len(list(hyperoctahedral_elements(1))) == 2
        assert len(list(hyperoctahedral_elements(2))) == 8
        assert len(list(hyperoctahedral_elements(3))) == 48

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_equals_centralizer_by_filtering(self, n):
        t = tau(n)
        centralizer = {
            p for p in map(Permutation, itertools.permutations(range(2 * n)))
            if compose(p, t) == compose(t, p)
        }
        elements = list(hyperoctahedral_elements(n))
        assert len(set(elements)) == len(elements)
        assert set(elements) == centralizer

    def test_fix_tau(self):
        for g in hyperoctahedral_elements(3):
            assert conjugate(tau(3), g) == tau(3)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_class_is_single_orbit(self, n):
        group = list(hyperoctahedral_elements(n))
        for lam in partitions(n):
            members = set(twisted_class(lam))
            assert members
            for sigma in members:
                assert {conjugate(sigma, g) for g in group} == members


class TestNotation:
    def test_round_trip(self):
        for text in ["()", "(1 -2)(-1 2)", "(1 -1 2)", "(-2 3)"]:
            assert str(parse_permutation(text)) == text

    def test_identity(self):
        assert str(identity(3)) == "()"

    def test_errors_carry_position(self):
        with pytest.raises(NotationError) as err:
            parse_permutation("(1 2)(3 x)")
        assert err.value.column == 9
        with pytest.raises(NotationError):
            parse_permutation("(1 2")
        with pytest.raises(NotationError):
            parse_permutation("(1 2)(2 3)")
        with pytest.raises(NotationError):
            parse_permutation("(0 1)")

    def test_label_exceeds_n(self):
        with pytest.raises(NotationError):
            parse_permutation("(1 3)", 2)

    def test_partition_forms(self):
        assert parse_partition("2,1,1") == (2, 1, 1)
        assert parse_partition("2^1 1^2") == (2, 1, 1)
        assert parse_partition("1,2") == (2, 1)
        assert str(Partition([1, 3, 1])) == "3,1,1"
        assert Partition([2, 1, 1]).exponent_form() == "2^1 1^2"
        with pytest.raises(NotationError):
            parse_partition("2,x")

    def test_partitions(self):
        assert [str(p) for p in partitions(4)] == ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]

    def test_pair_matching_validation(self, perm):
        with pytest.raises(ValueError):
            PairMatching(perm("(1 2)").images)
        assert len(pair_matchings(3)) == 15
