import random
from fractions import Fraction

import networkx as nx
import pytest

from morphdes.errors import UndefinedWeightsError
from morphdes.model import Alternative, LeafPart, WeightAssignment, oriented_values
from morphdes.ranking import (
    RankingParams,
    concordance,
    discordance,
    layer_partition,
    outranking_relation,
    rank,
)

from generators import random_ranking_instance


@pytest.fixture
def leaf_g(smart_home):
    return smart_home.part("G")


@pytest.fixture
def weights_d(smart_home):
    return smart_home.weights_for("D")


class TestConcordance:
    def test_reflexive(self, smart_home, weights_d):
        g1 = smart_home.alternative("G1")
        assert concordance(g1, g1, weights_d, smart_home.criteria) == 1

    def test_dominating_pair(self, smart_home, weights_d):
        g1, g2 = smart_home.alternative("G1"), smart_home.alternative("G2")
        assert concordance(g1, g2, weights_d, smart_home.criteria) == 1

    def test_tie_only_concordance(self, smart_home, weights_d):
        g1, g2 = smart_home.alternative("G1"), smart_home.alternative("G2")
        assert concordance(g2, g1, weights_d, smart_home.criteria) == Fraction(1, 4)

    def test_zero_weights_rejected(self, smart_home):
        g1, g2 = smart_home.alternative("G1"), smart_home.alternative("G2")
        zeros = WeightAssignment("D", (0, 0, 0, 0))
        with pytest.raises(UndefinedWeightsError):
            concordance(g1, g2, zeros, smart_home.criteria)


class TestDiscordance:
    def test_reflexive(self, smart_home):
        g1 = smart_home.alternative("G1")
        assert discordance(g1, g1, smart_home.criteria) == 0

    def test_never_beaten(self, smart_home):
        g1, g2 = smart_home.alternative("G1"), smart_home.alternative("G2")
        assert discordance(g1, g2, smart_home.criteria) == 0

    def test_worst_normalized_gap(self, smart_home):
        g1, g2 = smart_home.alternative("G1"), smart_home.alternative("G2")
        assert discordance(g2, g1, smart_home.criteria) == Fraction(2, 5)


class TestOutrankingRelation:
    def test_identical_items_outrank_each_other(self, smart_home, weights_d):
        a = smart_home.alternative("G1")
        b = Alternative("G1bis", estimates=a.estimates)
        graph = outranking_relation([a, b], weights_d, smart_home.criteria)
        assert graph.has_edge("G1", "G1bis") and graph.has_edge("G1bis", "G1")

    def test_threshold_example(self, smart_home, weights_d):
        g1, g2 = smart_home.alternative("G1"), smart_home.alternative("G2")
        params = RankingParams(concordance_p=0.65, discordance_q=0.4)
        graph = outranking_relation([g1, g2], weights_d, smart_home.criteria, params)
        assert graph.has_edge("G1", "G2")
        assert not graph.has_edge("G2", "G1")

    def test_single_item(self, smart_home, weights_d):
        g1 = smart_home.alternative("G1")
        graph = outranking_relation([g1], weights_d, smart_home.criteria)
        assert set(graph.nodes) == {"G1"}
        assert graph.number_of_edges() == 0


class TestLayerPartition:
    def test_no_preferences_is_one_layer(self):
        graph = nx.DiGraph()
        graph.add_nodes_from("abcd")
        part = layer_partition(graph)
        assert part.layers == (frozenset("abcd"),)

    def test_chain_gives_total_order(self):
        graph = nx.DiGraph([("a", "b"), ("b", "c")])
        part = layer_partition(graph)
        assert part.layers == (frozenset("a"), frozenset("b"), frozenset("c"))
        assert part.priority_of == {"a": 1, "b": 2, "c": 3}

    def test_mutual_pair_collapses(self):
        graph = nx.DiGraph([("a", "b"), ("b", "a"), ("a", "c"), ("b", "c")])
        part = layer_partition(graph)
        assert part.layers == (frozenset("ab"), frozenset("c"))


class TestRank:
    def test_recompute_orders_g(self, smart_home, weights_d, leaf_g):
        priorities = rank(leaf_g, weights_d, smart_home.criteria, recompute=True)
        assert priorities["G1"] < priorities["G2"]

    def test_given_priorities_win(self, smart_home, weights_d, leaf_g):
        priorities = rank(leaf_g, weights_d, smart_home.criteria)
        assert priorities == {"G1": 2, "G2": 3}

    def test_single_alternative_gets_one(self, smart_home, weights_d):
        leaf = LeafPart("Gx", alternatives=(
            Alternative("G9", estimates=(1, 0, 3, 3)),))
        assert rank(leaf, weights_d, smart_home.criteria) == {"G9": 1}

    def test_duplicates_share_a_priority(self, smart_home, weights_d):
        est = (2, 1, 3, 3)
        leaf = LeafPart("Gx", alternatives=(
            Alternative("D1", estimates=est),
            Alternative("D2", estimates=est),
            Alternative("D3", estimates=(4, 4, 1, 1)),
        ))
        priorities = rank(leaf, weights_d, smart_home.criteria)
        assert priorities["D1"] == priorities["D2"]


def _strictly_dominates(a, b, criteria):
    va, vb = oriented_values(a, criteria), oriented_values(b, criteria)
    return all(x >= y for x, y in zip(va, vb)) and any(x > y for x, y in zip(va, vb))


class TestProperties:
    N = 500

    def test_partition_and_dominance_consistency(self):
        rng = random.Random(4021)
        for _ in range(self.N):
            items, weights, criteria, p, q = random_ranking_instance(rng)
            params = RankingParams(p, q)
            relation = outranking_relation(items, weights, criteria, params)
            part = layer_partition(relation)
            ids = {alt.id for alt in items}
            assert set(part.priority_of) == ids
            flattened = [x for layer in part.layers for x in layer]
            assert len(flattened) == len(ids) and set(flattened) == ids
            assert all(part.layers)
            for a in items:
                for b in items:
                    if a is not b and _strictly_dominates(a, b, criteria):
                        assert part.priority_of[a.id] <= part.priority_of[b.id]

    def test_weight_scaling_is_invariant(self):
        rng = random.Random(733)
        for _ in range(self.N):
            items, weights, criteria, p, q = random_ranking_instance(rng)
            params = RankingParams(p, q)
            base = layer_partition(outranking_relation(items, weights, criteria, params))
            factor = rng.choice([2, 3, 10, Fraction(1, 2), Fraction(7, 3)])
            scaled = WeightAssignment(
                weights.part_id, tuple(factor * m for m in weights.magnitudes))
            rescaled = layer_partition(outranking_relation(items, scaled, criteria, params))
            assert base == rescaled

    def test_duplicate_item_keeps_relative_order(self):
        rng = random.Random(911)
        for _ in range(120):
            items, weights, criteria, p, q = random_ranking_instance(rng)
            params = RankingParams(p, q)
            before = layer_partition(
                outranking_relation(items, weights, criteria, params)).priority_of
            clone = Alternative("CLONE", estimates=items[0].estimates)
            after = layer_partition(
                outranking_relation(items + (clone,), weights, criteria, params)).priority_of
            for a in items:
                for b in items:
                    lhs = before[a.id] - before[b.id]
                    rhs = after[a.id] - after[b.id]
                    assert (lhs > 0) == (rhs > 0) and (lhs < 0) == (rhs < 0)
            assert after["CLONE"] == after[items[0].id]

    def test_determinism(self):
        rng = random.Random(57)
        items, weights, criteria, p, q = random_ranking_instance(rng)
        params = RankingParams(p, q)
        runs = [
            layer_partition(outranking_relation(items, weights, criteria, params))
            for _ in range(3)
        ]
        assert runs[0] == runs[1] == runs[2]
