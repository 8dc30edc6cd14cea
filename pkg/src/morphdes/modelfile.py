"""Text format for system models, plus the canonical JSON mapping.

The ``.morph`` format is whitespace-insensitive with ``#`` line comments::

    system smart_home "Smart home management system" {
      config { k = 3; l = 3; default_compat = 3; }
      criteria {
        criterion C1 "cost" minimize scale 0..5;
      }
      part S "Management system" {
        part D "Access control" weights [2, 1, 2, 3] {
          leaf G "Windows shutters" {
            alt G1 "Manual" est [1, 0, 3, 3] priority 2;
          }
          ...
        }
      }
      compat G * H {
        G1, H1 = 3;
        ...
      }
    }

``parse`` returns a fully validated model or raises :class:`ModelfileError`
with positioned diagnostics; ``serialize`` emits a canonical rendering such
that ``parse(serialize(m)) == m``.  The JSON document builders here are the
single serializer behind both the CLI and the HTTP service.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .composition import CompositeDecision, QualityVector
from .errors import ModelfileError
from .improvement import ImprovementAction, WhatIfReport
from .model import (
    ERROR,
    MAXIMIZE,
    MINIMIZE,
    Alternative,
    CompatibilityTable,
    CompositePart,
    Criterion,
    LeafPart,
    ModelConfig,
    Part,
    SystemModel,
    WeightAssignment,
    as_ratio,
    validate,
)

SCHEMA_VERSION = 1

_KEYWORDS = frozenset(
    "system config criteria criterion maximize minimize scale "
    "part weights leaf alt est priority compat".split())

_CONFIG_INT_KEYS = ("k", "l", "default_compat")
_CONFIG_RATIO_KEYS = ("concordance_p", "discordance_q")


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    offset: int

    def __str__(self):
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseDiagnostic:
    span: SourceSpan
    message: str
    severity: str = ERROR

    def __str__(self):
        return f"{self.span}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class _Token:
    kind: str
    value: object
    span: SourceSpan


_PUNCT = {"{": "LBRACE", "}": "RBRACE", "[": "LBRACK", "]": "RBRACK",
          "=": "EQUALS", ",": "COMMA", ";": "SEMI", "*": "STAR"}

_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


def _lex(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def fail(span, message):
        raise ModelfileError([ParseDiagnostic(span, message)])

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        span = SourceSpan(line, col, i)
        if ch == "." and text[i:i + 2] == "..":
            tokens.append(_Token("DOTDOT", "..", span))
            i += 2
            col += 2
            continue
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, span))
            i += 1
            col += 1
            continue
        if ch == '"':
            i += 1
            col += 1
            buf = []
            while True:
                if i >= n or text[i] == "\n":
                    fail(span, "unterminated string")
                c = text[i]
                if c == '"':
                    i += 1
                    col += 1
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in _ESCAPES:
                        fail(SourceSpan(line, col, i), "unknown escape sequence")
                    buf.append(_ESCAPES[text[i + 1]])
                    i += 2
                    col += 2
                    continue
                buf.append(c)
                i += 1
                col += 1
            tokens.append(_Token("STRING", "".join(buf), span))
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j + 1 < n and text[j] == "." and text[j + 1].isdigit():
                j += 1
                while j < n and text[j].isdigit():
                    j += 1
                value: object = Fraction(text[i:j])
            else:
                value = int(text[i:j])
            tokens.append(_Token("NUMBER", value, span))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], span))
            col += j - i
            i = j
            continue
        fail(span, f"unexpected character {ch!r}")
    tokens.append(_Token("EOF", None, SourceSpan(line, col, i)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.spans: dict[str, SourceSpan] = {}
        self.semantic: list[ParseDiagnostic] = []
        self._weights: list[WeightAssignment] = []

    # -- token plumbing ----------------------------------------------------

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def fail(self, message, span=None):
        raise ModelfileError([ParseDiagnostic(span or self.cur.span, message)])

    def advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        if self.cur.kind != kind:
            self.fail(f"expected {what}, found {self._describe(self.cur)}")
        return self.advance()

    def at_keyword(self, word: str) -> bool:
        return self.cur.kind == "IDENT" and self.cur.value == word

    def expect_keyword(self, word: str) -> _Token:
        if not self.at_keyword(word):
            self.fail(f"expected '{word}', found {self._describe(self.cur)}")
        return self.advance()

    def ident(self, what="identifier") -> _Token:
        tok = self.expect("IDENT", what)
        if tok.value in _KEYWORDS:
            self.fail(f"{tok.value!r} is a reserved word", tok.span)
        return tok

    def opt_string(self) -> str:
        if self.cur.kind == "STRING":
            return self.advance().value
        return ""

    def int_value(self, what="integer") -> tuple[int, SourceSpan]:
        tok = self.expect("NUMBER", what)
        if not isinstance(tok.value, int):
            self.semantic.append(ParseDiagnostic(tok.span, f"expected {what}, found {tok.value}"))
            return int(tok.value), tok.span
        return tok.value, tok.span

    @staticmethod
    def _describe(tok: _Token) -> str:
        if tok.kind == "EOF":
            return "end of input"
        return repr(str(tok.value))

    # -- grammar -------------------------------------------------------------

    def parse_model(self) -> SystemModel:
        head = self.expect_keyword("system")
        self.spans["model"] = head.span
        self.ident("model identifier")
        name = self.expect("STRING", "model name string").value
        self.expect("LBRACE", "'{'")
        config = self.parse_config() if self.at_keyword("config") else {}
        criteria = self.parse_criteria()
        root = self.parse_part(criteria)
        tables = []
        while self.at_keyword("compat"):
            tables.append(self.parse_compat())
        self.expect("RBRACE", "'}'")
        self.expect("EOF", "end of input")

        k = config.get("k", 3)
        l = config.get("l", 3)
        cfg = ModelConfig(
            k=k, l=l,
            default_compat=config.get("default_compat", l),
            concordance_p=config.get("concordance_p", ModelConfig.concordance_p),
            discordance_q=config.get("discordance_q", ModelConfig.discordance_q),
        )
        return SystemModel(
            name=name,
            criteria=tuple(criteria),
            root=root,
            weights=tuple(self._weights),
            compat=tuple(tables),
            config=cfg,
        )

    def parse_config(self) -> dict:
        head = self.expect_keyword("config")
        self.spans["config"] = head.span
        self.expect("LBRACE", "'{'")
        values: dict[str, object] = {}
        while self.cur.kind == "IDENT":
            key_tok = self.advance()
            key = key_tok.value
            self.spans[f"config.{key}"] = key_tok.span
            self.expect("EQUALS", "'='")
            val_tok = self.expect("NUMBER", "config value")
            self.expect("SEMI", "';'")
            if key in values:
                self.semantic.append(ParseDiagnostic(key_tok.span, f"duplicate config key {key!r}"))
                continue
            if key in _CONFIG_INT_KEYS:
                if not isinstance(val_tok.value, int):
                    self.semantic.append(ParseDiagnostic(
                        val_tok.span, f"config value for {key!r} must be an integer"))
                    continue
                values[key] = val_tok.value
            elif key in _CONFIG_RATIO_KEYS:
                values[key] = as_ratio(val_tok.value)
            else:
                self.semantic.append(ParseDiagnostic(key_tok.span, f"unknown config key {key!r}"))
        self.expect("RBRACE", "'}'")
        return values

    def parse_criteria(self) -> list[Criterion]:
        head = self.expect_keyword("criteria")
        self.spans["criteria"] = head.span
        self.expect("LBRACE", "'{'")
        out = []
        while self.at_keyword("criterion"):
            self.advance()
            ident = self.ident("criterion identifier")
            self.spans[f"criteria[{ident.value}]"] = ident.span
            label = self.opt_string()
            if self.at_keyword(MAXIMIZE) or self.at_keyword(MINIMIZE):
                orientation = self.advance().value
            else:
                self.fail(f"expected 'maximize' or 'minimize', found {self._describe(self.cur)}")
            self.expect_keyword("scale")
            lo, _ = self.int_value("scale lower bound")
            self.expect("DOTDOT", "'..'")
            hi, _ = self.int_value("scale upper bound")
            self.expect("SEMI", "';'")
            out.append(Criterion(id=ident.value, label=label,
                                 orientation=orientation, scale_lo=lo, scale_hi=hi))
        if not out:
            self.fail("expected at least one 'criterion'")
        self.expect("RBRACE", "'}'")
        return out

    def parse_part(self, criteria) -> Part:
        if self.at_keyword("part"):
            return self.parse_composite(criteria)
        if self.at_keyword("leaf"):
            return self.parse_leaf(criteria)
        self.fail(f"expected 'part' or 'leaf', found {self._describe(self.cur)}")

    def parse_composite(self, criteria) -> CompositePart:
        self.expect_keyword("part")
        ident = self.ident("part identifier")
        self.spans[f"part[{ident.value}]"] = ident.span
        label = self.opt_string()
        if self.at_keyword("weights"):
            head = self.advance()
            self.spans[f"weights[{ident.value}]"] = head.span
            self.expect("LBRACK", "'['")
            magnitudes = [as_ratio(self.expect("NUMBER", "weight magnitude").value)]
            while self.cur.kind == "COMMA":
                self.advance()
                magnitudes.append(as_ratio(self.expect("NUMBER", "weight magnitude").value))
            self.expect("RBRACK", "']'")
            self._weights.append(WeightAssignment(part_id=ident.value,
                                                  magnitudes=tuple(magnitudes)))
        self.expect("LBRACE", "'{'")
        children = []
        while self.at_keyword("part") or self.at_keyword("leaf"):
            children.append(self.parse_part(criteria))
        self.expect("RBRACE", "'}'")
        return CompositePart(id=ident.value, label=label, children=tuple(children))

    def parse_leaf(self, criteria) -> LeafPart:
        self.expect_keyword("leaf")
        ident = self.ident("leaf identifier")
        self.spans[f"leaf[{ident.value}]"] = ident.span
        label = self.opt_string()
        self.expect("LBRACE", "'{'")
        alts = []
        while self.at_keyword("alt"):
            alts.append(self.parse_alt())
        self.expect("RBRACE", "'}'")
        return LeafPart(id=ident.value, label=label, alternatives=tuple(alts))

    def parse_alt(self) -> Alternative:
        self.expect_keyword("alt")
        ident = self.ident("alternative identifier")
        self.spans[f"alt[{ident.value}]"] = ident.span
        label = self.opt_string()
        self.expect_keyword("est")
        lbrack = self.expect("LBRACK", "'['")
        self.spans[f"alt[{ident.value}].estimates"] = lbrack.span
        estimates = []
        val, span = self.int_value("estimate")
        self.spans[f"alt[{ident.value}].estimates[0]"] = span
        estimates.append(val)
        while self.cur.kind == "COMMA":
            self.advance()
            val, span = self.int_value("estimate")
            self.spans[f"alt[{ident.value}].estimates[{len(estimates)}]"] = span
            estimates.append(val)
        self.expect("RBRACK", "']'")
        priority = None
        if self.at_keyword("priority"):
            self.advance()
            priority, span = self.int_value("priority")
            self.spans[f"alt[{ident.value}].priority"] = span
        self.expect("SEMI", "';'")
        return Alternative(id=ident.value, label=label,
                           estimates=tuple(estimates), given_priority=priority)

    def parse_compat(self) -> CompatibilityTable:
        head = self.expect_keyword("compat")
        id_a = self.ident("leaf identifier").value
        self.expect("STAR", "'*'")
        id_b = self.ident("leaf identifier").value
        self.expect("LBRACE", "'{'")
        entries: dict[tuple[str, str], int] = {}
        entry_spans: dict[tuple[str, str], SourceSpan] = {}
        while self.cur.kind == "IDENT":
            first = self.ident("alternative identifier")
            self.expect("COMMA", "','")
            second = self.ident("alternative identifier")
            self.expect("EQUALS", "'='")
            level, _ = self.int_value("compatibility level")
            self.expect("SEMI", "';'")
            key = (first.value, second.value)
            if key in entries:
                self.semantic.append(ParseDiagnostic(
                    first.span, f"duplicate compatibility entry for ({key[0]}, {key[1]})"))
            entries[key] = level
            entry_spans[key] = first.span
        self.expect("RBRACE", "'}'")
        # Normalize orientation now so the recorded diagnostic paths match
        # the stored table.
        if id_b < id_a:
            id_a, id_b = id_b, id_a
            entries = {(y, x): w for (x, y), w in entries.items()}
            entry_spans = {(y, x): s for (x, y), s in entry_spans.items()}
        self.spans[f"compat[{id_a}*{id_b}]"] = head.span
        for key, span in entry_spans.items():
            self.spans[f"compat[{id_a}*{id_b}].({key[0]},{key[1]})"] = span
        return CompatibilityTable(leaf_a=id_a, leaf_b=id_b, entries=entries)

    # -- diagnostics mapping -------------------------------------------------

    def span_for(self, path: str) -> SourceSpan:
        probe = path
        while probe:
            if probe in self.spans:
                return self.spans[probe]
            cut_bracket = probe.rfind("[")
            cut_dot = probe.rfind(".")
            cut = max(cut_bracket if probe.endswith("]") else -1, cut_dot)
            if cut <= 0:
                break
            probe = probe[:cut]
        return self.spans.get("model", SourceSpan(1, 1, 0))


def parse(text: str) -> SystemModel:
    """Parse model text; raise :class:`ModelfileError` with positioned
    diagnostics on any lexical, syntactic, or semantic problem."""
    parser = _Parser(_lex(text))
    model = parser.parse_model()
    diags = list(parser.semantic)
    for diag in validate(model):
        if diag.severity == ERROR:
            diags.append(ParseDiagnostic(parser.span_for(diag.path), diag.message))
    if diags:
        raise ModelfileError(diags)
    return model


# -- canonical serialization -------------------------------------------------


def _slug(name: str) -> str:
    out = "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in name).strip("_")
    out = out.lower() or "model"
    if out[0].isdigit():
        out = f"m_{out}"
    if out in _KEYWORDS:
        out = f"{out}_model"
    return out


def _quote(text: str) -> str:
    escaped = text.replace("\\", "\\\\").replace('"', '\\"')
    escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{escaped}"'


def _fmt_num(value) -> str:
    value = as_ratio(value)
    if isinstance(value, int):
        return str(value)
    if value.denominator == 1:
        return str(value.numerator)
    return repr(float(value))


def serialize(model: SystemModel) -> str:
    """Canonical text rendering: fixed indentation, stable ordering.

    Byte-deterministic and idempotent: ``serialize(parse(serialize(m)))``
    equals ``serialize(m)``.
    """
    lines: list[str] = []
    cfg = model.config
    lines.append(f"system {_slug(model.name)} {_quote(model.name)} {{")
    lines.append("  config {")
    lines.append(f"    k = {cfg.k};")
    lines.append(f"    l = {cfg.l};")
    lines.append(f"    default_compat = {cfg.default_compat};")
    lines.append(f"    concordance_p = {_fmt_num(cfg.concordance_p)};")
    lines.append(f"    discordance_q = {_fmt_num(cfg.discordance_q)};")
    lines.append("  }")
    lines.append("  criteria {")
    for crit in model.criteria:
        label = f" {_quote(crit.label)}" if crit.label else ""
        lines.append(f"    criterion {crit.id}{label} {crit.orientation} "
                     f"scale {crit.scale_lo}..{crit.scale_hi};")
    lines.append("  }")
    _serialize_part(model, model.root, 1, lines)
    for table in model.compat:
        lines.append(f"  compat {table.leaf_a} * {table.leaf_b} {{")
        for (alt_a, alt_b), level in _ordered_entries(model, table):
            lines.append(f"    {alt_a}, {alt_b} = {level};")
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _ordered_entries(model: SystemModel, table: CompatibilityTable):
    def order(leaf_id):
        if model.has_part(leaf_id) and isinstance(model.part(leaf_id), LeafPart):
            return {alt.id: i for i, alt in enumerate(model.part(leaf_id).alternatives)}
        return {}

    order_a, order_b = order(table.leaf_a), order(table.leaf_b)
    return sorted(
        table.entries.items(),
        key=lambda item: (order_a.get(item[0][0], 1 << 30), item[0][0],
                          order_b.get(item[0][1], 1 << 30), item[0][1]))


def _serialize_part(model: SystemModel, part: Part, depth: int, lines: list[str]):
    pad = "  " * depth
    label = f" {_quote(part.label)}" if part.label else ""
    if isinstance(part, LeafPart):
        lines.append(f"{pad}leaf {part.id}{label} {{")
        for alt in part.alternatives:
            alabel = f" {_quote(alt.label)}" if alt.label else ""
            est = ", ".join(str(e) for e in alt.estimates)
            prio = f" priority {alt.given_priority}" if alt.given_priority is not None else ""
            lines.append(f"{pad}  alt {alt.id}{alabel} est [{est}]{prio};")
        lines.append(f"{pad}}}")
        return
    weights = model.weights_for(part.id)
    wtext = ""
    if weights is not None:
        wtext = f" weights [{', '.join(_fmt_num(m) for m in weights.magnitudes)}]"
    lines.append(f"{pad}part {part.id}{label}{wtext} {{")
    for child in part.children:
        _serialize_part(model, child, depth + 1, lines)
    lines.append(f"{pad}}}")


# -- JSON mapping --------------------------------------------------------------


def dumps(doc) -> str:
    """The one JSON renderer: CLI and HTTP responses share these bytes."""
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _json_num(value):
    value = as_ratio(value)
    if isinstance(value, int):
        return value
    if value.denominator == 1:
        return value.numerator
    return float(value)


def _part_doc(model: SystemModel, part: Part) -> dict:
    doc: dict = {"id": part.id}
    if part.label:
        doc["label"] = part.label
    if isinstance(part, LeafPart):
        doc["alternatives"] = []
        for alt in part.alternatives:
            adoc: dict = {"id": alt.id}
            if alt.label:
                adoc["label"] = alt.label
            adoc["estimates"] = list(alt.estimates)
            if alt.given_priority is not None:
                adoc["priority"] = alt.given_priority
            doc["alternatives"].append(adoc)
    else:
        weights = model.weights_for(part.id)
        if weights is not None:
            doc["weights"] = [_json_num(m) for m in weights.magnitudes]
        doc["children"] = [_part_doc(model, child) for child in part.children]
    return doc


def model_to_doc(model: SystemModel) -> dict:
    cfg = model.config
    return {
        "schema_version": SCHEMA_VERSION,
        "name": model.name,
        "config": {
            "k": cfg.k,
            "l": cfg.l,
            "default_compat": cfg.default_compat,
            "concordance_p": _json_num(cfg.concordance_p),
            "discordance_q": _json_num(cfg.discordance_q),
        },
        "criteria": [
            {
                "id": crit.id,
                "label": crit.label,
                "orientation": crit.orientation,
                "scale": [crit.scale_lo, crit.scale_hi],
            }
            for crit in model.criteria
        ],
        "root": _part_doc(model, model.root),
        "compat": [
            {
                "leaves": [table.leaf_a, table.leaf_b],
                "entries": [[a, b, level] for (a, b), level in _ordered_entries(model, table)],
            }
            for table in model.compat
        ],
    }


def _part_from_doc(doc: dict, weights_sink: list[WeightAssignment]) -> Part:
    if "alternatives" in doc:
        alts = tuple(
            Alternative(
                id=adoc["id"],
                label=adoc.get("label", ""),
                estimates=tuple(int(e) for e in adoc["estimates"]),
                given_priority=adoc.get("priority"),
            )
            for adoc in doc["alternatives"]
        )
        return LeafPart(id=doc["id"], label=doc.get("label", ""), alternatives=alts)
    if "weights" in doc:
        weights_sink.append(WeightAssignment(
            part_id=doc["id"],
            magnitudes=tuple(as_ratio(m) for m in doc["weights"])))
    children = tuple(_part_from_doc(child, weights_sink) for child in doc.get("children", []))
    return CompositePart(id=doc["id"], label=doc.get("label", ""), children=children)


def model_from_doc(doc: dict) -> SystemModel:
    """Inverse of :func:`model_to_doc`; validates the result."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ModelfileError([ParseDiagnostic(
            SourceSpan(1, 1, 0),
            f"unsupported schema_version {doc.get('schema_version')!r}")])
    cfg_doc = doc.get("config", {})
    l = int(cfg_doc.get("l", 3))
    config = ModelConfig(
        k=int(cfg_doc.get("k", 3)),
        l=l,
        default_compat=int(cfg_doc.get("default_compat", l)),
        concordance_p=as_ratio(cfg_doc.get("concordance_p", ModelConfig.concordance_p)),
        discordance_q=as_ratio(cfg_doc.get("discordance_q", ModelConfig.discordance_q)),
    )
    criteria = tuple(
        Criterion(
            id=cdoc["id"],
            label=cdoc.get("label", ""),
            orientation=cdoc["orientation"],
            scale_lo=int(cdoc["scale"][0]),
            scale_hi=int(cdoc["scale"][1]),
        )
        for cdoc in doc.get("criteria", [])
    )
    weights: list[WeightAssignment] = []
    root = _part_from_doc(doc["root"], weights)
    tables = tuple(
        CompatibilityTable(
            leaf_a=tdoc["leaves"][0],
            leaf_b=tdoc["leaves"][1],
            entries={(a, b): int(level) for a, b, level in tdoc.get("entries", [])},
        )
        for tdoc in doc.get("compat", [])
    )
    model = SystemModel(
        name=doc.get("name", ""),
        criteria=criteria,
        root=root,
        weights=tuple(weights),
        compat=tables,
        config=config,
    )
    errors = [d for d in validate(model) if d.severity == ERROR]
    if errors:
        raise ModelfileError([
            ParseDiagnostic(SourceSpan(1, 1, 0), f"{d.path}: {d.message}") for d in errors])
    return model


def quality_to_doc(quality: QualityVector) -> dict:
    return {"w": quality.w, "n": list(quality.n)}


def decision_to_doc(decision: CompositeDecision) -> dict:
    selection = {}
    for child_id, member in decision.selection:
        if isinstance(member, Alternative):
            selection[child_id] = member.id
        else:
            selection[child_id] = decision_to_doc(member)
    return {"w": decision.quality.w, "n": list(decision.quality.n), "selection": selection}


def frontier_to_doc(node_id: str, decisions) -> dict:
    return {"node": node_id, "decisions": [decision_to_doc(d) for d in decisions]}


def action_to_doc(action: ImprovementAction) -> dict:
    target = action.target if isinstance(action.target, str) else list(action.target)
    return {
        "kind": action.kind,
        "target": target,
        "from_level": action.from_level,
        "to_level": action.to_level,
        "spec": action.spec(),
    }


def whatif_to_doc(report: WhatIfReport) -> dict:
    return {
        "node": report.node_id,
        "actions": [action_to_doc(a) for a in report.actions],
        "quality_before": quality_to_doc(report.quality_before),
        "quality_after": quality_to_doc(report.quality_after),
        "dominance_delta": report.dominance_delta.value,
        "now_dominates": [decision_to_doc(d) for d in report.now_dominates],
        "decision_after": decision_to_doc(report.decision_after),
    }


def diagnostics_to_doc(diagnostics) -> list[dict]:
    out = []
    for diag in diagnostics:
        if isinstance(diag, ParseDiagnostic):
            out.append({
                "severity": diag.severity,
                "line": diag.span.line,
                "column": diag.span.column,
                "offset": diag.span.offset,
                "message": diag.message,
            })
        else:
            out.append({
                "severity": diag.severity,
                "path": diag.path,
                "message": diag.message,
            })
    return out


def to_json(obj) -> str:
    """Serialize a model, decision, frontier, quality vector, or report."""
    if isinstance(obj, SystemModel):
        return dumps(model_to_doc(obj))
    if isinstance(obj, CompositeDecision):
        return dumps(decision_to_doc(obj))
    if isinstance(obj, QualityVector):
        return dumps(quality_to_doc(obj))
    if isinstance(obj, WhatIfReport):
        return dumps(whatif_to_doc(obj))
    if isinstance(obj, ImprovementAction):
        return dumps(action_to_doc(obj))
    if isinstance(obj, (list, tuple)) and obj and \
            all(isinstance(d, CompositeDecision) for d in obj):
        return dumps(frontier_to_doc(obj[0].node_id, obj))
    raise TypeError(f"no JSON mapping for {type(obj).__name__}")
