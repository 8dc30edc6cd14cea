"""Seeded random builders for models, items, and single-level nodes.

Everything takes an explicit ``random.Random`` so tests stay deterministic
and the counted property suites can state exactly how many instances ran.
"""

from __future__ import annotations

import random
from fractions import Fraction

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
    WeightAssignment,
)

_LABEL_CHARS = 'abc XYZ-_.,:;!?"\\0123'


def random_label(rng: random.Random, max_len: int = 12) -> str:
    return "".join(rng.choice(_LABEL_CHARS) for _ in range(rng.randint(0, max_len)))


def random_criteria(rng: random.Random, count: int | None = None) -> tuple[Criterion, ...]:
    count = count or rng.randint(1, 4)
    out = []
    for i in range(count):
        lo = rng.randint(-2, 2)
        hi = lo + rng.randint(1, 6)
        out.append(Criterion(
            id=f"C{i + 1}",
            label=random_label(rng),
            orientation=rng.choice([MAXIMIZE, MINIMIZE]),
            scale_lo=lo,
            scale_hi=hi,
        ))
    return tuple(out)


def random_alternative(rng: random.Random, alt_id: str, criteria, k: int,
                       priority_chance: float = 1.0) -> Alternative:
    return Alternative(
        id=alt_id,
        label=random_label(rng),
        estimates=tuple(rng.randint(c.scale_lo, c.scale_hi) for c in criteria),
        given_priority=rng.randint(1, k) if rng.random() < priority_chance else None,
    )


def random_weights(rng: random.Random, part_id: str, criteria) -> WeightAssignment:
    mags = [rng.randint(0, 5) for _ in criteria]
    if not any(mags):
        mags[rng.randrange(len(mags))] = rng.randint(1, 5)
    return WeightAssignment(part_id=part_id, magnitudes=tuple(mags))


def full_table(rng: random.Random, leaf_a: LeafPart, leaf_b: LeafPart, l: int,
               zero_share: float = 0.15) -> CompatibilityTable:
    entries = {}
    for x in leaf_a.alternatives:
        for y in leaf_b.alternatives:
            if rng.random() < zero_share:
                entries[(x.id, y.id)] = 0
            else:
                entries[(x.id, y.id)] = rng.randint(1, l)
    return CompatibilityTable(leaf_a=leaf_a.id, leaf_b=leaf_b.id, entries=entries)


def random_single_level_model(rng: random.Random, max_parts: int = 4,
                              max_alts: int = 5, zero_share: float = 0.15,
                              name: str = "node") -> SystemModel:
    """One composite over 2..max_parts leaves with full pairwise tables."""
    k = l = 3
    criteria = random_criteria(rng)
    leaves = []
    counter = 0
    for li in range(rng.randint(2, max_parts)):
        alts = []
        for _ in range(rng.randint(1, max_alts)):
            counter += 1
            alts.append(random_alternative(rng, f"A{counter}", criteria, k))
        leaves.append(LeafPart(id=f"P{li + 1}", label=random_label(rng),
                               alternatives=tuple(alts)))
    root = CompositePart(id="ROOT", label=random_label(rng), children=tuple(leaves))
    tables = tuple(
        full_table(rng, leaves[i], leaves[j], l, zero_share)
        for i in range(len(leaves))
        for j in range(i + 1, len(leaves))
    )
    return SystemModel(
        name=name,
        criteria=criteria,
        root=root,
        weights=(random_weights(rng, "ROOT", criteria),),
        compat=tables,
        config=ModelConfig(k=k, l=l, default_compat=l),
    )


def random_tree_model(rng: random.Random, priority_chance: float = 1.0) -> SystemModel:
    """A two- or three-level tree with tables on some leaf-sibling pairs."""
    k = l = 3
    criteria = random_criteria(rng)
    counters = {"part": 0, "alt": 0}
    weights: list[WeightAssignment] = []
    tables: list[CompatibilityTable] = []

    def make_leaf() -> LeafPart:
        counters["part"] += 1
        alts = []
        for _ in range(rng.randint(1, 4)):
            counters["alt"] += 1
            alts.append(random_alternative(
                rng, f"A{counters['alt']}", criteria, k, priority_chance))
        return LeafPart(id=f"L{counters['part']}", label=random_label(rng),
                        alternatives=tuple(alts))

    def make_composite(depth: int) -> CompositePart:
        counters["part"] += 1
        part_id = f"N{counters['part']}"
        children = []
        for _ in range(rng.randint(2, 3)):
            if depth > 0 and rng.random() < 0.45:
                children.append(make_composite(depth - 1))
            else:
                children.append(make_leaf())
        leaf_children = [c for c in children if isinstance(c, LeafPart)]
        for i in range(len(leaf_children)):
            for j in range(i + 1, len(leaf_children)):
                if rng.random() < 0.7:
                    tables.append(full_table(
                        rng, leaf_children[i], leaf_children[j], l, zero_share=0.08))
        if leaf_children:
            weights.append(random_weights(rng, part_id, criteria))
        return CompositePart(id=part_id, label=random_label(rng),
                             children=tuple(children))

    root = make_composite(depth=rng.randint(0, 1))
    return SystemModel(
        name=f"tree {random_label(rng)}",
        criteria=criteria,
        root=root,
        weights=tuple(weights),
        compat=tuple(tables),
        config=ModelConfig(
            k=k, l=l, default_compat=l,
            concordance_p=Fraction(rng.randint(51, 100), 100),
            discordance_q=Fraction(rng.randint(0, 99), 100),
        ),
    )


def random_ranking_instance(rng: random.Random):
    """Items, weights, criteria, and thresholds for ranking properties."""
    criteria = random_criteria(rng, rng.randint(2, 4))
    items = tuple(
        random_alternative(rng, f"A{i + 1}", criteria, 3, priority_chance=0.0)
        for i in range(rng.randint(2, 8))
    )
    weights = random_weights(rng, "NODE", criteria)
    p = Fraction(rng.randint(51, 100), 100)
    q = Fraction(rng.randint(0, 99), 100)
    return items, weights, criteria, p, q
