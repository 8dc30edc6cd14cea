"""Domain model for hierarchical morphological design.

A system is a tree of composite parts over leaf parts.  Each leaf offers
design alternatives scored on shared ordinal criteria; alternatives carry a
priority (1 = best, up to ``k``).  Pairs of alternatives from different
leaves are rated for compatibility on an ordinal 0..l scale (0 = cannot be
combined, l = best).  Everything here is an immutable value; derived lookup
tables are built once at construction and excluded from equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from .errors import TargetNotFoundError

MAXIMIZE = "maximize"
MINIMIZE = "minimize"

ERROR = "error"
WARNING = "warning"

#: Numbers that take part in exact threshold comparisons.  Floats are
#: accepted at the API boundary but are converted through their decimal
#: repr, so 0.65 means 13/20 rather than the nearest binary float.
Ratio = Union[int, Fraction]


def as_ratio(value) -> Ratio:
    if isinstance(value, (int, Fraction)):
        return value
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a ratio")


@dataclass(frozen=True)
class Criterion:
    id: str
    label: str = ""
    orientation: str = MAXIMIZE
    scale_lo: int = 0
    scale_hi: int = 5

    @property
    def scale_width(self) -> int:
        return self.scale_hi - self.scale_lo


@dataclass(frozen=True)
class Alternative:
    """One design alternative of a leaf part.

    ``estimates`` is positional, one per model criterion.  ``given_priority``
    is an expert-assigned quality layer; when present it wins over the
    computed ranking.
    """

    id: str
    label: str = ""
    estimates: tuple[int, ...] = ()
    given_priority: int | None = None


@dataclass(frozen=True)
class LeafPart:
    id: str
    label: str = ""
    alternatives: tuple[Alternative, ...] = ()


@dataclass(frozen=True)
class CompositePart:
    id: str
    label: str = ""
    children: tuple["Part", ...] = ()


Part = Union[LeafPart, CompositePart]


@dataclass(frozen=True)
class WeightAssignment:
    """Criteria weight magnitudes used to rank the leaf alternatives living
    directly under the named composite part."""

    part_id: str
    magnitudes: tuple[Ratio, ...] = ()


@dataclass(frozen=True)
class CompatibilityTable:
    """Pairwise compatibility levels between the alternatives of two leaves.

    Stored once per unordered leaf pair.  Construction normalizes the
    orientation so ``leaf_a < leaf_b`` by id and keys read
    ``(alt of leaf_a, alt of leaf_b)``.
    """

    leaf_a: str
    leaf_b: str
    entries: dict[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.leaf_b < self.leaf_a:
            a, b = self.leaf_a, self.leaf_b
            flipped = {(y, x): w for (x, y), w in self.entries.items()}
            object.__setattr__(self, "leaf_a", b)
            object.__setattr__(self, "leaf_b", a)
            object.__setattr__(self, "entries", flipped)

    def level(self, alt_a: str, alt_b: str) -> int | None:
        """Level for a pair of alternative ids, in either order."""
        hit = self.entries.get((alt_a, alt_b))
        if hit is None:
            hit = self.entries.get((alt_b, alt_a))
        return hit


@dataclass(frozen=True)
class ModelConfig:
    k: int = 3
    l: int = 3
    default_compat: int = 3
    concordance_p: Ratio = Fraction(13, 20)
    discordance_q: Ratio = Fraction(7, 20)

    def __post_init__(self):
        object.__setattr__(self, "concordance_p", as_ratio(self.concordance_p))
        object.__setattr__(self, "discordance_q", as_ratio(self.discordance_q))


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    path: str
    message: str

    def __str__(self):
        return f"{self.severity}: {self.path}: {self.message}"


@dataclass(frozen=True)
class SystemModel:
    name: str
    criteria: tuple[Criterion, ...]
    root: Part
    weights: tuple[WeightAssignment, ...] = ()
    compat: tuple[CompatibilityTable, ...] = ()
    config: ModelConfig = ModelConfig()

    # Derived indexes; not part of the value.
    _parts: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _alts: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _weights_by_part: dict = field(init=False, repr=False, compare=False, default_factory=dict)
    _tables: dict = field(init=False, repr=False, compare=False, default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "criteria", tuple(self.criteria))
        compat = tuple(sorted(self.compat, key=lambda t: (t.leaf_a, t.leaf_b)))
        object.__setattr__(self, "compat", compat)
        parts, alts = {}, {}
        tree_order: dict[str, int] = {}
        for part in iter_parts(self.root):
            parts[part.id] = part
            tree_order.setdefault(part.id, len(tree_order))
            if isinstance(part, LeafPart):
                for alt in part.alternatives:
                    alts[alt.id] = (alt, part.id)
        weights = tuple(sorted(
            self.weights,
            key=lambda w: (tree_order.get(w.part_id, len(tree_order)), w.part_id)))
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "_parts", parts)
        object.__setattr__(self, "_alts", alts)
        object.__setattr__(self, "_weights_by_part", {w.part_id: w for w in self.weights})
        object.__setattr__(self, "_tables", {(t.leaf_a, t.leaf_b): t for t in compat})

    # -- lookups ---------------------------------------------------------

    def part(self, part_id: str) -> Part:
        try:
            return self._parts[part_id]
        except KeyError:
            raise TargetNotFoundError(f"no part with id {part_id!r}") from None

    def has_part(self, part_id: str) -> bool:
        return part_id in self._parts

    def leaves(self) -> tuple[LeafPart, ...]:
        return tuple(p for p in iter_parts(self.root) if isinstance(p, LeafPart))

    def alternative(self, alt_id: str) -> Alternative:
        try:
            return self._alts[alt_id][0]
        except KeyError:
            raise TargetNotFoundError(f"no alternative with id {alt_id!r}") from None

    def has_alternative(self, alt_id: str) -> bool:
        return alt_id in self._alts

    def leaf_of(self, alt_id: str) -> str:
        try:
            return self._alts[alt_id][1]
        except KeyError:
            raise TargetNotFoundError(f"no alternative with id {alt_id!r}") from None

    def weights_for(self, part_id: str) -> WeightAssignment | None:
        return self._weights_by_part.get(part_id)

    def table_for(self, leaf_x: str, leaf_y: str) -> CompatibilityTable | None:
        key = (leaf_x, leaf_y) if leaf_x < leaf_y else (leaf_y, leaf_x)
        return self._tables.get(key)

    def criterion(self, crit_id: str) -> Criterion:
        for crit in self.criteria:
            if crit.id == crit_id:
                return crit
        raise TargetNotFoundError(f"no criterion with id {crit_id!r}")


def iter_parts(part: Part) -> Iterator[Part]:
    """Document-order traversal of a part subtree (parent before children)."""
    yield part
    if isinstance(part, CompositePart):
        for child in part.children:
            yield from iter_parts(child)


# -- operations ------------------------------------------------------------


def oriented_value(alt: Alternative, criterion: Criterion, criteria) -> int:
    """Estimate of ``alt`` on ``criterion`` with 'larger is better' enforced.

    Minimization criteria are negated so every downstream comparison can
    assume a uniform direction.
    """
    for idx, crit in enumerate(criteria):
        if crit.id == criterion.id:
            if idx >= len(alt.estimates):
                raise TargetNotFoundError(
                    f"alternative {alt.id!r} has no estimate for criterion {criterion.id!r}"
                )
            est = alt.estimates[idx]
            return est if crit.orientation == MAXIMIZE else -est
    raise TargetNotFoundError(f"criterion {criterion.id!r} not in criteria list")


def oriented_values(alt: Alternative, criteria) -> tuple[int, ...]:
    return tuple(
        est if crit.orientation == MAXIMIZE else -est
        for est, crit in zip(alt.estimates, criteria)
    )


def design_space_size(model: SystemModel) -> int:
    """Number of raw selection tuples: the product of per-leaf alternative
    counts, before any compatibility filtering."""
    return math.prod(len(leaf.alternatives) for leaf in model.leaves())


def validate(model: SystemModel) -> list[Diagnostic]:
    """Check every structural invariant; an empty list means the model is sound.

    Deterministic and side-effect free: the same model always yields the
    same diagnostics in the same order.
    """
    diags: list[Diagnostic] = []

    def err(path, message):
        diags.append(Diagnostic(ERROR, path, message))

    def warn(path, message):
        diags.append(Diagnostic(WARNING, path, message))

    cfg = model.config
    if cfg.k < 1:
        err("config.k", f"k must be >= 1, got {cfg.k}")
    if cfg.l < 1:
        err("config.l", f"l must be >= 1, got {cfg.l}")
    if not 0 <= cfg.default_compat <= cfg.l:
        err("config.default_compat", f"default_compat must be in 0..{cfg.l}, got {cfg.default_compat}")
    if not Fraction(1, 2) < as_ratio(cfg.concordance_p) <= 1:
        err("config.concordance_p", f"concordance_p must be in (0.5, 1], got {cfg.concordance_p}")
    if not 0 <= as_ratio(cfg.discordance_q) < 1:
        err("config.discordance_q", f"discordance_q must be in [0, 1), got {cfg.discordance_q}")

    seen_crit: set[str] = set()
    for crit in model.criteria:
        path = f"criteria[{crit.id}]"
        if crit.id in seen_crit:
            err(path, f"duplicate criterion id {crit.id!r}")
        seen_crit.add(crit.id)
        if crit.orientation not in (MAXIMIZE, MINIMIZE):
            err(path, f"orientation must be maximize or minimize, got {crit.orientation!r}")
        if not crit.scale_lo < crit.scale_hi:
            err(path, f"scale bounds must satisfy lo < hi, got {crit.scale_lo}..{crit.scale_hi}")
    if not model.criteria:
        err("criteria", "at least one criterion is required")

    n_crit = len(model.criteria)
    seen_part: set[str] = set()
    seen_alt: set[str] = set()
    for part in iter_parts(model.root):
        kind = "leaf" if isinstance(part, LeafPart) else "part"
        path = f"{kind}[{part.id}]"
        if part.id in seen_part or part.id in seen_alt:
            err(path, f"duplicate id {part.id!r}")
        seen_part.add(part.id)
        if isinstance(part, LeafPart):
            if not part.alternatives:
                err(path, "leaf must offer at least one alternative")
            for alt in part.alternatives:
                apath = f"alt[{alt.id}]"
                if alt.id in seen_alt or alt.id in seen_part:
                    err(apath, f"duplicate id {alt.id!r}")
                seen_alt.add(alt.id)
                if len(alt.estimates) != n_crit:
                    err(f"{apath}.estimates",
                        f"expected {n_crit} estimates, found {len(alt.estimates)}")
                for i, (est, crit) in enumerate(zip(alt.estimates, model.criteria)):
                    if not crit.scale_lo <= est <= crit.scale_hi:
                        err(f"{apath}.estimates[{i}]",
                            f"estimate {est} of alternative {alt.id!r} is outside "
                            f"scale {crit.scale_lo}..{crit.scale_hi} of criterion {crit.id!r}")
                if alt.given_priority is not None and not 1 <= alt.given_priority <= cfg.k:
                    err(f"{apath}.priority",
                        f"priority {alt.given_priority} of alternative {alt.id!r} is outside 1..{cfg.k}")
        else:
            if len(part.children) < 2:
                err(path, "composite part needs at least two children")
            child_ids = [c.id for c in part.children]
            for cid in child_ids:
                if child_ids.count(cid) > 1:
                    err(path, f"duplicate child id {cid!r}")
                    break
            unranked = [
                alt.id
                for child in part.children
                if isinstance(child, LeafPart)
                for alt in child.alternatives
                if alt.given_priority is None
            ]
            if unranked and model.weights_for(part.id) is None:
                err(path,
                    f"alternatives {', '.join(unranked)} have no given priority and "
                    f"part {part.id!r} carries no weights to rank them")

    seen_weight: set[str] = set()
    for wa in model.weights:
        path = f"weights[{wa.part_id}]"
        if wa.part_id in seen_weight:
            err(path, f"duplicate weights for part {wa.part_id!r}")
        seen_weight.add(wa.part_id)
        if not model.has_part(wa.part_id):
            err(path, f"weights reference unknown part {wa.part_id!r}")
        elif isinstance(model.part(wa.part_id), LeafPart):
            err(path, f"weights must attach to a composite part, {wa.part_id!r} is a leaf")
        if len(wa.magnitudes) != n_crit:
            err(path, f"expected {n_crit} weight magnitudes, found {len(wa.magnitudes)}")
        if any(m < 0 for m in wa.magnitudes):
            err(path, "weight magnitudes must be non-negative")
        elif wa.magnitudes and not any(m > 0 for m in wa.magnitudes):
            err(path, "at least one weight magnitude must be positive")

    seen_pair: set[tuple[str, str]] = set()
    for table in model.compat:
        path = f"compat[{table.leaf_a}*{table.leaf_b}]"
        pair = (table.leaf_a, table.leaf_b)
        if pair in seen_pair:
            err(path, "duplicate compatibility table for this leaf pair")
        seen_pair.add(pair)
        if table.leaf_a == table.leaf_b:
            err(path, "compatibility table must reference two distinct leaves")
            continue
        sides = []
        broken = False
        for leaf_id in pair:
            if not model.has_part(leaf_id) or not isinstance(model.part(leaf_id), LeafPart):
                err(path, f"compatibility table references unknown leaf {leaf_id!r}")
                broken = True
            else:
                sides.append(model.part(leaf_id))
        if broken:
            continue
        alts_a = {a.id for a in sides[0].alternatives}
        alts_b = {a.id for a in sides[1].alternatives}
        for (xa, xb), level in sorted(table.entries.items()):
            epath = f"{path}.({xa},{xb})"
            if xa not in alts_a or xb not in alts_b:
                err(epath, f"entry ({xa}, {xb}) does not match alternatives of "
                           f"{table.leaf_a!r} x {table.leaf_b!r}")
            if not 0 <= level <= cfg.l:
                err(epath, f"compatibility {level} for pair ({xa}, {xb}) is outside 0..{cfg.l}")
        missing = [
            (a, b)
            for a in sorted(alts_a)
            for b in sorted(alts_b)
            if (a, b) not in table.entries
        ]
        if missing:
            listed = ", ".join(f"({a}, {b})" for a, b in missing[:4])
            more = "" if len(missing) <= 4 else f" and {len(missing) - 4} more"
            err(path, f"table is not total: missing {listed}{more}")

    if isinstance(model.root, LeafPart):
        warn(f"leaf[{model.root.id}]", "root is a single leaf; nothing to compose")

    return diags
