"""Multicriteria ranking of leaf alternatives into ordered priority layers.

The relation is a crisp outranking: ``a`` outranks ``b`` when the weighted
share of criteria on which ``a`` is at least as good reaches the concordance
threshold ``p`` while the worst scale-normalized gap against ``a`` stays
within the discordance threshold ``q``.  Ties count as concordant both ways,
so equivalent alternatives outrank each other and land in one layer.

All ratios are computed with exact rational arithmetic.  That makes the
threshold comparisons reproducible and keeps the relation literally
invariant under positive rescaling of the weight vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import networkx as nx

from .errors import UndefinedWeightsError
from .model import (
    Alternative,
    Criterion,
    LeafPart,
    Ratio,
    SystemModel,
    WeightAssignment,
    as_ratio,
    oriented_values,
)

#: Default thresholds; both configurable per model (``config`` block) and
#: per call.
DEFAULT_P = Fraction(13, 20)
DEFAULT_Q = Fraction(7, 20)


@dataclass(frozen=True)
class RankingParams:
    concordance_p: Ratio = DEFAULT_P
    discordance_q: Ratio = DEFAULT_Q

    def __post_init__(self):
        p = as_ratio(self.concordance_p)
        q = as_ratio(self.discordance_q)
        if not Fraction(1, 2) < p <= 1:
            raise ValueError(f"concordance_p must be in (0.5, 1], got {p}")
        if not 0 <= q < 1:
            raise ValueError(f"discordance_q must be in [0, 1), got {q}")
        object.__setattr__(self, "concordance_p", p)
        object.__setattr__(self, "discordance_q", q)

    @classmethod
    def from_model(cls, model: SystemModel) -> "RankingParams":
        return cls(model.config.concordance_p, model.config.discordance_q)


@dataclass(frozen=True)
class LayerPartition:
    """Ordered layers of item ids; layer 1 holds the best items."""

    layers: tuple[frozenset[str], ...]
    priority_of: Mapping[str, int]

    def __len__(self):
        return len(self.layers)


def concordance(a: Alternative, b: Alternative, weights: WeightAssignment,
                criteria: Iterable[Criterion]) -> Fraction:
    """Weighted share of criteria where ``a`` is at least as good as ``b``."""
    criteria = tuple(criteria)
    mags = [as_ratio(m) for m in weights.magnitudes]
    total = sum(mags)
    if total <= 0:
        raise UndefinedWeightsError(
            f"weights for part {weights.part_id!r} are all zero")
    ov_a = oriented_values(a, criteria)
    ov_b = oriented_values(b, criteria)
    agreeing = sum(m for m, va, vb in zip(mags, ov_a, ov_b) if va >= vb)
    return Fraction(agreeing) / Fraction(total)


def discordance(a: Alternative, b: Alternative,
                criteria: Iterable[Criterion]) -> Fraction:
    """Worst scale-normalized amount by which ``b`` beats ``a`` on any criterion."""
    criteria = tuple(criteria)
    ov_a = oriented_values(a, criteria)
    ov_b = oriented_values(b, criteria)
    worst = Fraction(0)
    for crit, va, vb in zip(criteria, ov_a, ov_b):
        gap = vb - va
        if gap > 0:
            worst = max(worst, Fraction(gap, crit.scale_width))
    return worst


def outranking_relation(items: Iterable[Alternative], weights: WeightAssignment,
                        criteria: Iterable[Criterion],
                        params: RankingParams | None = None) -> nx.DiGraph:
    """Directed graph with an edge a -> b whenever a outranks b."""
    params = params or RankingParams()
    items = tuple(items)
    criteria = tuple(criteria)
    p = as_ratio(params.concordance_p)
    q = as_ratio(params.discordance_q)
    graph = nx.DiGraph()
    graph.add_nodes_from(alt.id for alt in items)
    for a in items:
        for b in items:
            if a.id == b.id:
                continue
            if concordance(a, b, weights, criteria) >= p and \
               discordance(a, b, criteria) <= q:
                graph.add_edge(a.id, b.id)
    return graph


def layer_partition(relation: nx.DiGraph) -> LayerPartition:
    """Peel the relation into layers.

    Mutually outranking items collapse into one strongly connected
    component; the component DAG is then peeled from its sources, so an
    item's layer is one more than the deepest chain of strict preferences
    leading to it.
    """
    condensed = nx.condensation(relation)
    level: dict[int, int] = {}
    for comp in nx.topological_sort(condensed):
        preds = list(condensed.predecessors(comp))
        level[comp] = 1 + max((level[p] for p in preds), default=0)
    depth = max(level.values(), default=0)
    buckets: list[set[str]] = [set() for _ in range(depth)]
    for comp, members in condensed.nodes(data="members"):
        buckets[level[comp] - 1].update(members)
    layers = tuple(frozenset(bucket) for bucket in buckets)
    priority_of = {item: i for i, layer in enumerate(layers, 1) for item in layer}
    return LayerPartition(layers=layers, priority_of=priority_of)


def rank(leaf: LeafPart, weights: WeightAssignment, criteria: Iterable[Criterion],
         params: RankingParams | None = None, recompute: bool = False) -> dict[str, int]:
    """Priority per alternative of ``leaf``.

    Expert-given priorities win unless ``recompute`` is set; the computed
    partition only fills the gaps.
    """
    criteria = tuple(criteria)
    computed: Mapping[str, int] | None = None
    need_computed = recompute or any(
        alt.given_priority is None for alt in leaf.alternatives)
    if need_computed:
        relation = outranking_relation(leaf.alternatives, weights, criteria, params)
        computed = layer_partition(relation).priority_of
    result = {}
    for alt in leaf.alternatives:
        if not recompute and alt.given_priority is not None:
            result[alt.id] = alt.given_priority
        else:
            result[alt.id] = computed[alt.id]
    return result


def effective_priorities(model: SystemModel, params: RankingParams | None = None,
                         recompute: bool = False, clamp: bool = True) -> dict[str, int]:
    """Priority map across all leaves of the model.

    Computed layers may run deeper than the model's ``k`` quality levels; a
    layer beyond ``k`` still means "worst representable", so by default it
    is clamped to ``k`` for use in composition.
    """
    params = params or RankingParams.from_model(model)
    k = model.config.k
    out: dict[str, int] = {}
    for leaf in _leaves_with_parents(model):
        leaf_part, parent_id = leaf
        weights = model.weights_for(parent_id) if parent_id else None
        if not recompute and all(
                alt.given_priority is not None for alt in leaf_part.alternatives):
            ranked = {alt.id: alt.given_priority for alt in leaf_part.alternatives}
        else:
            if weights is None:
                raise UndefinedWeightsError(
                    f"leaf {leaf_part.id!r} needs ranking but its parent carries no weights")
            ranked = rank(leaf_part, weights, model.criteria, params, recompute)
        if clamp:
            ranked = {aid: min(pr, k) for aid, pr in ranked.items()}
        out.update(ranked)
    return out


def _leaves_with_parents(model: SystemModel):
    from .model import CompositePart

    def walk(part, parent_id):
        if isinstance(part, CompositePart):
            for child in part.children:
                yield from walk(child, part.id)
        else:
            yield part, parent_id

    yield from walk(model.root, None)


def agreement_report(model: SystemModel, params: RankingParams | None = None) -> dict:
    """Compare recomputed layers against expert-given priorities, per leaf.

    Returns a plain document: per-leaf item rows plus exact-match agreement
    scores.  Alternatives without a given priority are excluded from the
    score but still listed.
    """
    params = params or RankingParams.from_model(model)
    leaves_doc = []
    matches = scored = 0
    for leaf_part, parent_id in _leaves_with_parents(model):
        weights = model.weights_for(parent_id) if parent_id else None
        if weights is None:
            raise UndefinedWeightsError(
                f"leaf {leaf_part.id!r} cannot be ranked: parent carries no weights")
        computed = rank(leaf_part, weights, model.criteria, params, recompute=True)
        items = []
        leaf_matches = leaf_scored = 0
        for alt in leaf_part.alternatives:
            row = {"alt": alt.id, "given": alt.given_priority, "computed": computed[alt.id]}
            if alt.given_priority is not None:
                row["match"] = alt.given_priority == computed[alt.id]
                leaf_scored += 1
                leaf_matches += row["match"]
            items.append(row)
        matches += leaf_matches
        scored += leaf_scored
        leaves_doc.append({
            "leaf": leaf_part.id,
            "weights_part": parent_id,
            "items": items,
            "agreement": round(leaf_matches / leaf_scored, 4) if leaf_scored else None,
        })
    return {
        "params": {"p": float(as_ratio(params.concordance_p)),
                   "q": float(as_ratio(params.discordance_q))},
        "leaves": leaves_doc,
        "overall_agreement": round(matches / scored, 4) if scored else None,
    }
