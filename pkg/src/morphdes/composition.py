"""Composition of design alternatives into Pareto-efficient composite decisions.

A composite decision picks one candidate per child of a composite part.  Its
quality vector bundles ``w``, the minimum pairwise compatibility among the
chosen members, with ``n``, the per-priority-level member counts.  Quality
vectors are ordered on a lattice: ``w`` directly, ``n`` by cumulative prefix
sums, and the solver keeps exactly the nondominated decisions at each node
while composing the tree bottom-up.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from itertools import accumulate, combinations, product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DesignSpaceCapError,
    InfeasibleNodeError,
    MissingCompatibilityError,
    ShapeMismatchError,
    TargetNotFoundError,
)
from .model import Alternative, CompositePart, LeafPart, Part, SystemModel
from .ranking import RankingParams, effective_priorities

BRUTE_FORCE_CAP = 10_000_000


class Dominance(str, Enum):
    FIRST = "first-dominates"
    SECOND = "second-dominates"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class QualityVector:
    """System quality N = (w; n1..nk)."""

    w: int
    n: tuple[int, ...]

    @property
    def arity(self) -> int:
        return sum(self.n)

    def prefix_sums(self) -> tuple[int, ...]:
        return tuple(accumulate(self.n))

    def __str__(self):
        return f"({self.w}; {', '.join(str(x) for x in self.n)})"


Member = Union[Alternative, "CompositeDecision"]


@dataclass(frozen=True)
class CompositeDecision:
    """One candidate per child of a node, with the resulting quality.

    ``selection`` maps child part id to the chosen member: a leaf child
    contributes an :class:`Alternative`, a composite child a nested
    decision.  ``effective_priority`` is the layer this decision occupies
    within its own node when it is carried upward as a candidate.
    """

    node_id: str
    selection: tuple[tuple[str, Member], ...]
    quality: QualityVector
    effective_priority: int = 1

    def members(self) -> tuple[Member, ...]:
        return tuple(member for _, member in self.selection)

    def member_id(self, member: Member) -> str:
        return member.id if isinstance(member, Alternative) else member.node_id

    def selection_ids(self) -> dict:
        """Chosen ids keyed by child part id; nested decisions nest."""
        return {
            child: member.id if isinstance(member, Alternative) else member.selection_ids()
            for child, member in self.selection
        }

    def signature(self) -> str:
        parts = []
        for _, member in self.selection:
            if isinstance(member, Alternative):
                parts.append(member.id)
            else:
                parts.append(f"({member.signature()})")
        return "*".join(parts)


def dominates(q1: QualityVector, q2: QualityVector) -> Dominance:
    """Lattice order on quality vectors.

    ``q1`` dominates when its ``w`` is at least as high and every prefix sum
    of ``n`` is at least as high, with at least one strict inequality.
    Mismatched level counts or arities have no meaningful order.
    """
    if len(q1.n) != len(q2.n) or q1.arity != q2.arity:
        raise ShapeMismatchError(
            f"cannot compare {q1} with {q2}: different level count or arity")
    if q1 == q2:
        return Dominance.EQUAL
    p1, p2 = q1.prefix_sums(), q2.prefix_sums()
    ge_12 = q1.w >= q2.w and all(a >= b for a, b in zip(p1, p2))
    ge_21 = q2.w >= q1.w and all(b >= a for a, b in zip(p1, p2))
    if ge_12:
        return Dominance.FIRST
    if ge_21:
        return Dominance.SECOND
    return Dominance.INCOMPARABLE


def pair_compatibility(alt_a: Alternative, alt_b: Alternative,
                       model: SystemModel) -> int:
    """Compatibility level for two alternatives of distinct leaves.

    Falls back to the model's default level when no table covers the leaf
    pair; a covering table, however, must be total.
    """
    leaf_a = model.leaf_of(alt_a.id)
    leaf_b = model.leaf_of(alt_b.id)
    table = model.table_for(leaf_a, leaf_b)
    if table is None:
        return model.config.default_compat
    level = table.level(alt_a.id, alt_b.id)
    if level is None:
        raise MissingCompatibilityError(
            f"table {table.leaf_a}*{table.leaf_b} has no entry for "
            f"({alt_a.id}, {alt_b.id})")
    return level


def member_compatibility(m1: Member, m2: Member, model: SystemModel) -> int:
    """Compatibility between two chosen members; composite members pair at
    the default level since tables exist only between leaves."""
    if isinstance(m1, Alternative) and isinstance(m2, Alternative):
        return pair_compatibility(m1, m2, model)
    return model.config.default_compat


def _member_priority(member: Member, priorities: Mapping[str, int]) -> int:
    if isinstance(member, Alternative):
        try:
            return priorities[member.id]
        except KeyError:
            raise TargetNotFoundError(
                f"no priority known for alternative {member.id!r}") from None
    return member.effective_priority


def quality_vector(selection: Iterable[Member], priorities: Mapping[str, int],
                   model: SystemModel) -> QualityVector:
    """Quality of a selection: minimum pairwise compatibility plus the
    member count per priority level."""
    members = tuple(selection)
    if len(members) < 2:
        raise ValueError("a selection needs at least two members")
    k = model.config.k
    w = min(member_compatibility(a, b, model) for a, b in combinations(members, 2))
    counts = [0] * k
    for member in members:
        pr = _member_priority(member, priorities)
        if not 1 <= pr <= k:
            raise ValueError(f"priority {pr} outside 1..{k}")
        counts[pr - 1] += 1
    return QualityVector(w=w, n=tuple(counts))


def feasible_combinations(candidate_lists: Sequence[Sequence[Member]],
                          model: SystemModel) -> Iterator[tuple[Member, ...]]:
    """All selections in which every pair is nonzero-compatible.

    Yields in lexicographic order over the given candidate lists, pruning a
    branch as soon as a candidate hits compatibility 0 against the partial
    selection.
    """
    lists = [list(cands) for cands in candidate_lists]

    def extend(prefix: list[Member], depth: int) -> Iterator[tuple[Member, ...]]:
        if depth == len(lists):
            yield tuple(prefix)
            return
        for cand in lists[depth]:
            if all(member_compatibility(cand, chosen, model) >= 1 for chosen in prefix):
                prefix.append(cand)
                yield from extend(prefix, depth + 1)
                prefix.pop()

    yield from extend([], 0)


def _sort_key(decision: CompositeDecision):
    return (
        -decision.quality.w,
        tuple(-x for x in decision.quality.n),
        decision.signature(),
    )


def pareto_frontier(decisions: Sequence[CompositeDecision]) -> list[CompositeDecision]:
    """Decisions whose quality no other decision dominates.

    Equal quality vectors are all retained; the result is sorted by quality
    (``w`` descending, then ``n`` lexicographically descending) and then by
    selection signature.
    """
    kept = [
        d for d in decisions
        if not any(
            o is not d and dominates(o.quality, d.quality) is Dominance.FIRST
            for o in decisions
        )
    ]
    return sorted(kept, key=_sort_key)


def peel_layers(decisions: Sequence[CompositeDecision]) -> list[list[CompositeDecision]]:
    """Repeatedly strip the Pareto frontier: frontier = layer 1, frontier of
    the remainder = layer 2, and so on until nothing remains."""
    remaining = list(decisions)
    layers = []
    while remaining:
        front = pareto_frontier(remaining)
        layers.append(front)
        front_ids = {id(d) for d in front}
        remaining = [d for d in remaining if id(d) not in front_ids]
    return layers


def _feasible_decisions(node: CompositePart,
                        child_candidates: Mapping[str, Sequence[Member]],
                        model: SystemModel,
                        priorities: Mapping[str, int]) -> list[CompositeDecision]:
    child_ids = [child.id for child in node.children]
    for cid in child_ids:
        if cid not in child_candidates or not child_candidates[cid]:
            raise InfeasibleNodeError(node.id)
    lists = [child_candidates[cid] for cid in child_ids]
    out = []
    for combo in feasible_combinations(lists, model):
        quality = quality_vector(combo, priorities, model)
        out.append(CompositeDecision(
            node_id=node.id,
            selection=tuple(zip(child_ids, combo)),
            quality=quality,
        ))
    return out


def compose_node(node: CompositePart,
                 child_candidates: Mapping[str, Sequence[Member]],
                 model: SystemModel,
                 priorities: Mapping[str, int]) -> list[CompositeDecision]:
    """Pareto frontier over all feasible combinations at one node.

    ``child_candidates`` maps child id to its candidate list: the leaf's
    alternatives, or the carried (already layered) decisions of a composite
    child.  An empty feasible set is an error, not an empty frontier.
    """
    feasible = _feasible_decisions(node, child_candidates, model, priorities)
    if not feasible:
        raise InfeasibleNodeError(node.id)
    return pareto_frontier(feasible)


def _leaf_candidates(leaf: LeafPart) -> list[Alternative]:
    return sorted(leaf.alternatives, key=lambda alt: alt.id)


def _match_restriction(decision: CompositeDecision, wanted: Sequence[Mapping]) -> bool:
    ids = decision.selection_ids()
    return any(ids == dict(entry) for entry in wanted)


def solve(model: SystemModel,
          node: str | None = None,
          params: RankingParams | None = None,
          carry_layers: int = 1,
          restrict: Mapping[str, Sequence[Mapping]] | None = None,
          priorities: Mapping[str, int] | None = None) -> list[CompositeDecision]:
    """Bottom-up solve of the subtree rooted at ``node`` (default: model root).

    Leaves supply their alternatives; every composite node keeps its Pareto
    frontier and carries it upward, layered by repeated frontier peeling
    (``carry_layers`` controls how many layers are carried; members of layer
    ``i`` act as priority-``i`` candidates upstream).  ``restrict`` narrows
    the carried candidates of named nodes to the given selections, e.g.
    ``{"E": [{"J": "J2", "K": "K1", "L": "L1"}]}``.

    Deterministic: identical models produce identically ordered frontiers.
    """
    if not 1 <= carry_layers <= model.config.k:
        raise ValueError(f"carry_layers must be in 1..{model.config.k}")
    target = model.part(node) if node is not None else model.root
    if isinstance(target, LeafPart):
        raise ValueError(f"node {target.id!r} is a leaf; solve needs a composite part")
    if priorities is None:
        priorities = effective_priorities(model, params)
    restrict = restrict or {}

    def carried_candidates(part: Part) -> list[Member]:
        if isinstance(part, LeafPart):
            return list(_leaf_candidates(part))
        feasible = _feasible_decisions(
            part, {c.id: carried_candidates(c) for c in part.children},
            model, priorities)
        if not feasible:
            raise InfeasibleNodeError(part.id)
        carried: list[Member] = []
        for level, layer in enumerate(peel_layers(feasible), 1):
            if level > carry_layers:
                break
            carried.extend(replace(d, effective_priority=level) for d in layer)
        if part.id in restrict:
            wanted = restrict[part.id]
            narrowed = [d for d in carried if _match_restriction(d, wanted)]
            if len(narrowed) < len(wanted):
                raise TargetNotFoundError(
                    f"restriction at node {part.id!r} matches "
                    f"{len(narrowed)} of {len(wanted)} requested selections")
            carried = narrowed
        return carried

    return compose_node(
        target, {c.id: carried_candidates(c) for c in target.children},
        model, priorities)


def brute_force_frontier(node: CompositePart | str, model: SystemModel,
                         priorities: Mapping[str, int] | None = None,
                         cap: int = BRUTE_FORCE_CAP) -> list[CompositeDecision]:
    """Oracle frontier over the flat design space of a subtree.

    Enumerates every raw tuple of leaf alternatives below ``node`` with no
    hierarchical decomposition, drops tuples containing an incompatible
    pair, and filters to the nondominated rest.  For a node whose children
    are all leaves this coincides with :func:`compose_node`.
    """
    part = model.part(node) if isinstance(node, str) else node
    if isinstance(part, LeafPart):
        raise ValueError(f"node {part.id!r} is a leaf")
    if priorities is None:
        priorities = effective_priorities(model)
    leaves = [p for p in _iter_subtree(part) if isinstance(p, LeafPart)]
    space = math.prod(len(leaf.alternatives) for leaf in leaves)
    if space > cap:
        raise DesignSpaceCapError(
            f"subtree at {part.id!r} has {space} raw combinations, cap is {cap}")
    leaf_ids = [leaf.id for leaf in leaves]
    feasible = []
    for combo in product(*(_leaf_candidates(leaf) for leaf in leaves)):
        levels = [pair_compatibility(a, b, model) for a, b in combinations(combo, 2)]
        w = min(levels)
        if w < 1:
            continue
        quality = quality_vector(combo, priorities, model)
        feasible.append(CompositeDecision(
            node_id=part.id,
            selection=tuple(zip(leaf_ids, combo)),
            quality=quality,
        ))
    if not feasible:
        raise InfeasibleNodeError(part.id)
    return pareto_frontier(feasible)


def _iter_subtree(part: Part):
    yield part
    if isinstance(part, CompositePart):
        for child in part.children:
            yield from _iter_subtree(child)
