"""Bottleneck analysis and what-if improvement actions on composite decisions.

A decision's quality is limited by two kinds of bottleneck: members whose
priority is worse than 1, and member pairs whose compatibility equals the
decision's minimum ``w``.  The two matching action kinds upgrade an
element's priority or a pair's compatibility; evaluating actions derives a
modified model, recomputes the decision from scratch, and reports how the
quality moved and whether the improved decision now dominates previously
retained frontier members.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .composition import (
    CompositeDecision,
    Dominance,
    QualityVector,
    _feasible_decisions,
    dominates,
    member_compatibility,
    pair_compatibility,
    peel_layers,
    quality_vector,
    solve,
)
from .errors import TargetNotFoundError
from .model import (
    Alternative,
    CompatibilityTable,
    CompositePart,
    LeafPart,
    SystemModel,
)
from .ranking import RankingParams, effective_priorities

ELEMENT_UPGRADE = "element-upgrade"
COMPAT_UPGRADE = "compat-upgrade"

_ALT_SPEC = re.compile(r"^alt:([A-Za-z_]\w*)=(\d+)$")
_IC_SPEC = re.compile(r"^ic:([A-Za-z_]\w*),([A-Za-z_]\w*)=(\d+)$")


@dataclass(frozen=True)
class ImprovementAction:
    """Either ``element-upgrade`` of one alternative's priority (level goes
    down, 1 is best) or ``compat-upgrade`` of one unordered pair (level goes
    up, ``l`` is best)."""

    kind: str
    target: str | tuple[str, str]
    from_level: int
    to_level: int

    def __post_init__(self):
        if self.kind == ELEMENT_UPGRADE:
            if not isinstance(self.target, str):
                raise ValueError("element-upgrade targets a single alternative id")
            if not 1 <= self.to_level < self.from_level:
                raise ValueError(
                    f"element upgrade must improve the priority: "
                    f"{self.from_level} => {self.to_level} does not")
        elif self.kind == COMPAT_UPGRADE:
            if not (isinstance(self.target, tuple) and len(self.target) == 2):
                raise ValueError("compat-upgrade targets a pair of alternative ids")
            object.__setattr__(self, "target", tuple(sorted(self.target)))
            if not 0 <= self.from_level < self.to_level:
                raise ValueError(
                    f"compatibility upgrade must raise the level: "
                    f"{self.from_level} => {self.to_level} does not")
        else:
            raise ValueError(f"unknown action kind {self.kind!r}")

    def spec(self) -> str:
        """Canonical textual form, shared by the CLI and the HTTP API."""
        if self.kind == ELEMENT_UPGRADE:
            return f"alt:{self.target}={self.to_level}"
        a, b = self.target
        return f"ic:{a},{b}={self.to_level}"


@dataclass(frozen=True)
class WhatIfReport:
    node_id: str
    actions: tuple[ImprovementAction, ...]
    quality_before: QualityVector
    quality_after: QualityVector
    dominance_delta: Dominance
    now_dominates: tuple[CompositeDecision, ...]
    decision_after: CompositeDecision

    @property
    def frontier_effect(self) -> bool:
        return bool(self.now_dominates)


def element_bottlenecks(decision: CompositeDecision, model: SystemModel,
                        priorities: Mapping[str, int] | None = None
                        ) -> list[tuple[str, int]]:
    """Members whose priority is worse than 1, worst first, ties by id."""
    if priorities is None:
        priorities = effective_priorities(model)
    rows = []
    for member in decision.members():
        if isinstance(member, Alternative):
            pr = priorities[member.id]
            mid = member.id
        else:
            pr = member.effective_priority
            mid = member.node_id
        if pr > 1:
            rows.append((mid, pr))
    return sorted(rows, key=lambda row: (-row[1], row[0]))


def compat_bottlenecks(decision: CompositeDecision, model: SystemModel
                       ) -> list[tuple[tuple[str, str], int]]:
    """Member pairs sitting exactly at the decision's minimum compatibility.

    Pairs above the minimum do not limit ``w``; when ``w`` already equals
    the best level ``l`` nothing limits it at all.
    """
    w = decision.quality.w
    if w >= model.config.l:
        return []
    members = decision.members()
    rows = []
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            level = member_compatibility(members[i], members[j], model)
            if level == w:
                rows.append(((decision.member_id(members[i]),
                              decision.member_id(members[j])), level))
    return rows


def propose_actions(decision: CompositeDecision, model: SystemModel,
                    priorities: Mapping[str, int] | None = None
                    ) -> list[ImprovementAction]:
    """One priority upgrade to 1 per element bottleneck, one compatibility
    upgrade to ``l`` per pair bottleneck.

    Only leaf alternatives take element upgrades; a carried composite member
    has no expert priority to override.
    """
    if priorities is None:
        priorities = effective_priorities(model)
    alt_ids = {m.id for m in decision.members() if isinstance(m, Alternative)}
    actions = []
    for mid, pr in element_bottlenecks(decision, model, priorities):
        if mid in alt_ids:
            actions.append(ImprovementAction(ELEMENT_UPGRADE, mid, pr, 1))
    for (a, b), level in compat_bottlenecks(decision, model):
        if a in alt_ids and b in alt_ids:
            actions.append(ImprovementAction(COMPAT_UPGRADE, (a, b), level, model.config.l))
    return actions


def parse_action(model: SystemModel, spec: str,
                 priorities: Mapping[str, int] | None = None) -> ImprovementAction:
    """Build an action from its textual form, reading the current level from
    the model: ``alt:<ID>=<priority>`` or ``ic:<ID>,<ID>=<level>``."""
    hit = _ALT_SPEC.match(spec.strip())
    if hit:
        alt_id, to_level = hit.group(1), int(hit.group(2))
        model.alternative(alt_id)
        if priorities is None:
            priorities = effective_priorities(model)
        return ImprovementAction(ELEMENT_UPGRADE, alt_id, priorities[alt_id], to_level)
    hit = _IC_SPEC.match(spec.strip())
    if hit:
        id_a, id_b, to_level = hit.group(1), hit.group(2), int(hit.group(3))
        current = pair_compatibility(model.alternative(id_a), model.alternative(id_b), model)
        return ImprovementAction(COMPAT_UPGRADE, (id_a, id_b), current, to_level)
    raise ValueError(
        f"malformed action {spec!r}: expected alt:<ID>=<priority> or ic:<ID>,<ID>=<level>")


def apply_action(model: SystemModel, action: ImprovementAction) -> SystemModel:
    """Derived model with one priority override or one compatibility entry
    replaced; the original model is untouched."""
    if action.kind == ELEMENT_UPGRADE:
        return _apply_element(model, action)
    return _apply_compat(model, action)


def _apply_element(model: SystemModel, action: ImprovementAction) -> SystemModel:
    alt_id = action.target
    if not model.has_alternative(alt_id):
        raise TargetNotFoundError(f"no alternative with id {alt_id!r}")
    if not 1 <= action.to_level <= model.config.k:
        raise ValueError(f"priority {action.to_level} outside 1..{model.config.k}")

    def rebuild(part):
        if isinstance(part, LeafPart):
            if all(alt.id != alt_id for alt in part.alternatives):
                return part
            alts = tuple(
                replace(alt, given_priority=action.to_level) if alt.id == alt_id else alt
                for alt in part.alternatives)
            return replace(part, alternatives=alts)
        children = tuple(rebuild(child) for child in part.children)
        if all(new is old for new, old in zip(children, part.children)):
            return part
        return replace(part, children=children)

    return replace(model, root=rebuild(model.root))


def _apply_compat(model: SystemModel, action: ImprovementAction) -> SystemModel:
    id_a, id_b = action.target
    leaf_a = model.leaf_of(id_a)
    leaf_b = model.leaf_of(id_b)
    if leaf_a == leaf_b:
        raise ValueError(f"({id_a}, {id_b}) belong to the same leaf {leaf_a!r}")
    if not 0 <= action.to_level <= model.config.l:
        raise ValueError(f"compatibility {action.to_level} outside 0..{model.config.l}")
    if leaf_b < leaf_a:
        leaf_a, leaf_b = leaf_b, leaf_a
        id_a, id_b = id_b, id_a
    existing = model.table_for(leaf_a, leaf_b)
    if existing is None:
        # The pair was covered by the default level; materialize the table.
        default = model.config.default_compat
        entries = {
            (x.id, y.id): default
            for x in model.part(leaf_a).alternatives
            for y in model.part(leaf_b).alternatives
        }
        entries[(id_a, id_b)] = action.to_level
        tables = model.compat + (CompatibilityTable(leaf_a, leaf_b, entries),)
    else:
        entries = dict(existing.entries)
        key = (id_a, id_b) if (id_a, id_b) in entries else (id_b, id_a)
        entries[key] = action.to_level
        tables = tuple(
            CompatibilityTable(leaf_a, leaf_b, entries) if t is existing else t
            for t in model.compat)
    return replace(model, compat=tables)


def _rebuild_decision(decision: CompositeDecision, model: SystemModel,
                      priorities: Mapping[str, int]) -> CompositeDecision:
    """Recompute the decision's quality (and nested effective priorities)
    against a modified model, keeping the same selection."""
    node = model.part(decision.node_id)
    members: list = []
    for child_id, member in decision.selection:
        if isinstance(member, Alternative):
            members.append(model.alternative(member.id))
        else:
            rebuilt = _rebuild_decision(member, model, priorities)
            members.append(replace(
                rebuilt,
                effective_priority=_layer_of(rebuilt, model, priorities)))
    quality = quality_vector(members, priorities, model)
    return CompositeDecision(
        node_id=decision.node_id,
        selection=tuple(zip((cid for cid, _ in decision.selection), members)),
        quality=quality,
        effective_priority=decision.effective_priority,
    )


def _layer_of(decision: CompositeDecision, model: SystemModel,
              priorities: Mapping[str, int]) -> int:
    node = model.part(decision.node_id)
    feasible = _node_feasible(node, model, priorities)
    wanted = decision.selection_ids()
    for level, layer in enumerate(peel_layers(feasible), 1):
        if any(d.selection_ids() == wanted for d in layer):
            return min(level, model.config.k)
    raise TargetNotFoundError(
        f"selection {decision.signature()} is not feasible at node {node.id!r}")


def _node_feasible(node: CompositePart, model: SystemModel,
                   priorities: Mapping[str, int]) -> list[CompositeDecision]:
    def candidates(part):
        if isinstance(part, LeafPart):
            return sorted(part.alternatives, key=lambda alt: alt.id)
        feasible = _feasible_decisions(
            part, {c.id: candidates(c) for c in part.children}, model, priorities)
        return [replace(d, effective_priority=level)
                for level, layer in enumerate(peel_layers(feasible), 1)
                for d in layer if level <= model.config.k]

    return _feasible_decisions(
        node, {c.id: candidates(c) for c in node.children}, model, priorities)


def evaluate_actions(decision: CompositeDecision,
                     actions: Iterable[ImprovementAction],
                     model: SystemModel,
                     params: RankingParams | None = None) -> WhatIfReport:
    """Apply the actions jointly to a derived model and report the effect.

    ``quality_after`` is recomputed from scratch; ``now_dominates`` lists the
    members of the node's original frontier that the improved decision
    strictly dominates.  Neither the input model nor the decision is
    touched.
    """
    actions = tuple(actions)
    modified = model
    for action in actions:
        modified = apply_action(modified, action)
    new_priorities = effective_priorities(modified, params)
    after = _rebuild_decision(decision, modified, new_priorities)
    delta = dominates(after.quality, decision.quality)
    own_ids = decision.selection_ids()
    original_frontier = solve(model, node=decision.node_id, params=params)
    beaten = tuple(
        member for member in original_frontier
        if member.selection_ids() != own_ids
        and dominates(after.quality, member.quality) is Dominance.FIRST
    )
    return WhatIfReport(
        node_id=decision.node_id,
        actions=actions,
        quality_before=decision.quality,
        quality_after=after.quality,
        dominance_delta=delta,
        now_dominates=beaten,
        decision_after=after,
    )
