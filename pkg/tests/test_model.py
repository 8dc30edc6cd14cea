import random
from itertools import product

import pytest

from morphdes.model import (
    MAXIMIZE,
    MINIMIZE,
    Alternative,
    CompatibilityTable,
    CompositePart,
    Criterion,
    LeafPart,
    ModelConfig,
    SystemModel,
    design_space_size,
    oriented_value,
    validate,
)

from generators import random_single_level_model


def mini_model(**overrides):
    criteria = (Criterion("C1", "cost", MINIMIZE, 1, 5),
                Criterion("C2", "value", MAXIMIZE, 1, 5))
    leaf_a = LeafPart("A", alternatives=(
        Alternative("A1", estimates=(1, 3), given_priority=1),
        Alternative("A2", estimates=(2, 4), given_priority=2),
    ))
    leaf_b = LeafPart("B", alternatives=(
        Alternative("B1", estimates=(3, 3), given_priority=1),
    ))
    fields = dict(
        name="mini",
        criteria=criteria,
        root=CompositePart("R", children=(leaf_a, leaf_b)),
        weights=(),
        compat=(CompatibilityTable("A", "B", {("A1", "B1"): 3, ("A2", "B1"): 2}),),
        config=ModelConfig(k=3, l=3),
    )
    fields.update(overrides)
    return SystemModel(**fields)


class TestValidate:
    def test_fixture_is_clean(self, smart_home):
        assert validate(smart_home) == []

    def test_full_fixture_is_clean(self, smart_home_full):
        assert validate(smart_home_full) == []

    def test_out_of_scale_estimate_names_the_alternative(self):
        model = mini_model()
        bad_leaf = LeafPart("A", alternatives=(
            Alternative("A1", estimates=(9, 3), given_priority=1),
            Alternative("A2", estimates=(2, 4), given_priority=2),
        ))
        model = mini_model(root=CompositePart("R", children=(bad_leaf, model.part("B"))))
        diags = [d for d in validate(model) if d.severity == "error"]
        assert len(diags) == 1
        assert "A1" in diags[0].message
        assert "9" in diags[0].message

    def test_compat_above_l_names_the_pair(self):
        table = CompatibilityTable("A", "B", {("A1", "B1"): 4, ("A2", "B1"): 2})
        diags = [d for d in validate(mini_model(compat=(table,))) if d.severity == "error"]
        assert len(diags) == 1
        assert "(A1, B1)" in diags[0].message

    def test_partial_table_is_flagged(self):
        table = CompatibilityTable("A", "B", {("A1", "B1"): 3})
        diags = validate(mini_model(compat=(table,)))
        assert any("not total" in d.message and "(A2, B1)" in d.message for d in diags)

    def test_missing_weights_with_unranked_alternatives(self):
        leaf = LeafPart("A", alternatives=(
            Alternative("A1", estimates=(1, 3)),
            Alternative("A2", estimates=(2, 4), given_priority=2),
        ))
        model = mini_model(root=CompositePart("R", children=(leaf, mini_model().part("B"))),
                           compat=())
        diags = validate(model)
        assert any("no given priority" in d.message and "A1" in d.message for d in diags)

    def test_duplicate_ids(self):
        leaf = LeafPart("B", alternatives=(Alternative("X1", estimates=(2, 2)),))
        model = mini_model(root=CompositePart("R", children=(mini_model().part("A"), leaf)),
                           weights=(), compat=())
        # leaf id B duplicated against nothing here; make an actual clash
        clash = CompositePart("R", children=(
            LeafPart("A", alternatives=(Alternative("A1", estimates=(1, 1), given_priority=1),)),
            LeafPart("A", alternatives=(Alternative("A2", estimates=(1, 1), given_priority=1),)),
        ))
        diags = validate(mini_model(root=clash, compat=()))
        assert any("duplicate" in d.message for d in diags)

    def test_validate_is_deterministic(self, smart_home):
        model = mini_model(compat=(CompatibilityTable("A", "B", {("A1", "B1"): 9}),))
        assert validate(model) == validate(model)
        assert validate(smart_home) == validate(smart_home)


class TestDesignSpaceSize:
    def test_fixture_count(self, smart_home):
        assert design_space_size(smart_home) == 1179648

    def test_full_fixture_count(self, smart_home_full):
        assert design_space_size(smart_home_full) == 1769472

    def test_single_leaf_single_alternative(self):
        model = mini_model(root=CompositePart("R", children=(
            LeafPart("A", alternatives=(Alternative("A1", estimates=(1, 1), given_priority=1),)),
            LeafPart("B", alternatives=(Alternative("B1", estimates=(1, 1), given_priority=1),)),
        )), compat=())
        assert design_space_size(model) == 1

    def test_product_rule(self):
        def leaf(lid, n):
            return LeafPart(lid, alternatives=tuple(
                Alternative(f"{lid}{i}", estimates=(1, 1), given_priority=1)
                for i in range(1, n + 1)))

        model = mini_model(root=CompositePart("R", children=(leaf("A", 3), leaf("B", 4))),
                           compat=())
        assert design_space_size(model) == 12

    def test_matches_raw_enumeration(self):
        rng = random.Random(11)
        for _ in range(25):
            model = random_single_level_model(rng)
            groups = [leaf.alternatives for leaf in model.leaves()]
            assert design_space_size(model) == sum(1 for _ in product(*groups))


class TestOrientedValue:
    def test_maximize_is_identity(self, smart_home):
        g1 = smart_home.alternative("G1")
        c3 = smart_home.criterion("C3")
        assert oriented_value(g1, c3, smart_home.criteria) == 3

    def test_minimize_negates(self, smart_home):
        g1 = smart_home.alternative("G1")
        c1 = smart_home.criterion("C1")
        assert oriented_value(g1, c1, smart_home.criteria) == -1

    def test_monotone_in_raw_estimate(self):
        crit_max = Criterion("C", orientation=MAXIMIZE, scale_lo=0, scale_hi=9)
        crit_min = Criterion("C", orientation=MINIMIZE, scale_lo=0, scale_hi=9)
        for lo, hi in [(0, 1), (3, 7), (8, 9)]:
            a = Alternative("a", estimates=(lo,))
            b = Alternative("b", estimates=(hi,))
            assert oriented_value(a, crit_max, (crit_max,)) < oriented_value(b, crit_max, (crit_max,))
            assert oriented_value(a, crit_min, (crit_min,)) > oriented_value(b, crit_min, (crit_min,))


class TestModelValue:
    def test_compat_table_orientation_normalized(self):
        table = CompatibilityTable("B", "A", {("B1", "A1"): 2})
        assert (table.leaf_a, table.leaf_b) == ("A", "B")
        assert table.entries == {("A1", "B1"): 2}
        assert table.level("B1", "A1") == 2

    def test_lookup_errors(self, smart_home):
        with pytest.raises(Exception):
            smart_home.part("ZZ")
        with pytest.raises(Exception):
            smart_home.alternative("ZZ")

    def test_equality_ignores_construction_order(self):
        m1 = mini_model()
        m2 = mini_model(compat=(CompatibilityTable("B", "A", {("B1", "A1"): 3, ("B1", "A2"): 2}),))
        assert m1 == m2
