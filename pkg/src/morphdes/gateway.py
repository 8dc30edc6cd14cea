"""Command-line interface and the JSON documents shared with the HTTP service.

Every machine-readable response is produced here (or in
:mod:`morphdes.modelfile`) so the CLI with ``--json`` and the HTTP service
return byte-identical payloads for the same query.  Exit codes: 0 success,
1 diagnostics or infeasibility, 2 usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import modelfile
from .composition import CompositeDecision, solve
from .errors import (
    InfeasibleNodeError,
    ModelfileError,
    MorphdesError,
    TargetNotFoundError,
)
from .improvement import (
    compat_bottlenecks,
    element_bottlenecks,
    evaluate_actions,
    parse_action,
    propose_actions,
)
from .model import ERROR, SystemModel, design_space_size, validate
from .modelfile import (
    decision_to_doc,
    diagnostics_to_doc,
    dumps,
    frontier_to_doc,
    whatif_to_doc,
)
from .ranking import RankingParams, agreement_report, effective_priorities

DEFAULT_PORT = 8177


class CommandFailure(MorphdesError):
    """Command cannot complete; carries the error document."""

    def __init__(self, doc: dict, human: str):
        super().__init__(human)
        self.doc = doc
        self.human = human


# -- shared document builders -------------------------------------------------


def error_doc(kind: str, **fields) -> dict:
    return {"error": kind, **fields}


def doc_space(model: SystemModel) -> dict:
    return {"design_space_size": design_space_size(model)}


def doc_validate(model: SystemModel) -> dict:
    return {"diagnostics": diagnostics_to_doc(validate(model))}


def doc_rank(model: SystemModel, params: RankingParams, recompute: bool) -> dict:
    report = agreement_report(model, params)
    report["recompute"] = recompute
    for leaf_doc in report["leaves"]:
        for row in leaf_doc["items"]:
            if not recompute and row["given"] is not None:
                row["priority"] = row["given"]
            else:
                row["priority"] = row["computed"]
    return report


def doc_solve(model: SystemModel, node: str | None, carry_layers: int = 1,
              params: RankingParams | None = None) -> dict:
    frontier = solve(model, node=node, params=params, carry_layers=carry_layers)
    node_id = node if node is not None else model.root.id
    return frontier_to_doc(node_id, frontier)


def _frontier_decision(model: SystemModel, node: str, ref) -> CompositeDecision:
    frontier = solve(model, node=node)
    if isinstance(ref, int):
        if not 0 <= ref < len(frontier):
            raise CommandFailure(
                error_doc("not-found",
                          message=f"decision index {ref} outside 0..{len(frontier) - 1}"),
                f"decision index {ref} outside 0..{len(frontier) - 1}")
        return frontier[ref]
    wanted = _doc_selection_ids(ref)
    for decision in frontier:
        if decision.selection_ids() == wanted:
            return decision
    raise CommandFailure(
        error_doc("not-found", message=f"no frontier decision at node {node!r} "
                                       f"matches the given selection"),
        f"no frontier decision at node {node!r} matches the given selection")


def _doc_selection_ids(ref) -> dict:
    if isinstance(ref, dict) and "selection" in ref:
        ref = ref["selection"]
    if not isinstance(ref, dict):
        raise CommandFailure(
            error_doc("bad-request", message="decision must be an index or an "
                                             "object with a 'selection' mapping"),
            "decision must be an index or an object with a 'selection' mapping")
    return {
        child: value if isinstance(value, str) else _doc_selection_ids(value)
        for child, value in ref.items()
    }


def doc_bottlenecks(model: SystemModel, node: str, decision_ref) -> dict:
    decision = _frontier_decision(model, node, decision_ref)
    priorities = effective_priorities(model)
    return {
        "node": node,
        "decision": decision_to_doc(decision),
        "elements": [
            {"id": mid, "priority": pr}
            for mid, pr in element_bottlenecks(decision, model, priorities)
        ],
        "pairs": [
            {"pair": list(pair), "level": level}
            for pair, level in compat_bottlenecks(decision, model)
        ],
        "actions": [
            modelfile.action_to_doc(action)
            for action in propose_actions(decision, model, priorities)
        ],
    }


def doc_whatif(model: SystemModel, node: str, decision_ref, action_specs) -> dict:
    decision = _frontier_decision(model, node, decision_ref)
    priorities = effective_priorities(model)
    try:
        actions = [parse_action(model, spec, priorities) for spec in action_specs]
    except (ValueError, TargetNotFoundError) as exc:
        raise CommandFailure(error_doc("bad-request", message=str(exc)), str(exc))
    report = evaluate_actions(decision, actions, model)
    return whatif_to_doc(report)


# -- CLI ----------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="morphdes",
        description="Rank, compose, and improve design alternatives of a "
                    "tree-structured system model.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("model", help="path to a .morph model file")
        return cmd

    cmd = add("validate", "check every model invariant")
    cmd.add_argument("--json", action="store_true")

    cmd = add("rank", "rank leaf alternatives and report agreement with given priorities")
    cmd.add_argument("--p", type=str, default=None, help="concordance threshold")
    cmd.add_argument("--q", type=str, default=None, help="discordance threshold")
    cmd.add_argument("--recompute", action="store_true",
                     help="ignore given priorities and use computed layers")
    cmd.add_argument("--json", action="store_true")

    cmd = add("solve", "compute the Pareto frontier of composite decisions")
    cmd.add_argument("--node", default=None, help="composite part id (default: root)")
    cmd.add_argument("--carry-layers", type=int, default=1, dest="carry_layers")
    cmd.add_argument("--json", action="store_true")

    cmd = add("space", "print the raw design-space size")
    cmd.add_argument("--json", action="store_true")

    cmd = add("bottlenecks", "list bottlenecks and proposed actions for one decision")
    cmd.add_argument("--node", required=True)
    cmd.add_argument("--decision", type=int, required=True,
                     help="index into the node's frontier ordering")
    cmd.add_argument("--json", action="store_true")

    cmd = add("whatif", "evaluate improvement actions against one decision")
    cmd.add_argument("--node", required=True)
    cmd.add_argument("--decision", type=int, required=True)
    cmd.add_argument("--action", action="append", required=True, dest="actions",
                     metavar="SPEC", help="alt:<ID>=<priority> or ic:<ID>,<ID>=<level>")
    cmd.add_argument("--json", action="store_true")

    cmd = add("serve", "serve the JSON API over HTTP")
    cmd.add_argument("--port", type=int, default=None,
                     help=f"default: $MORPHDES_PORT or {DEFAULT_PORT}")
    cmd.add_argument("--host", default="127.0.0.1")
    cmd.add_argument("--ui", default=None, help="directory of static UI files to serve at /")

    return parser


def _load_model(path: str) -> SystemModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandFailure(
            error_doc("not-found", message=f"cannot read model file: {exc}"),
            f"cannot read model file: {exc}")
    return modelfile.parse(text)


def _params_from(model: SystemModel, p: str | None, q: str | None) -> RankingParams:
    base = RankingParams.from_model(model)
    try:
        return RankingParams(
            concordance_p=p if p is not None else base.concordance_p,
            discordance_q=q if q is not None else base.discordance_q,
        )
    except ValueError as exc:
        raise CommandFailure(error_doc("bad-request", message=str(exc)), str(exc))


def _render_quality(doc: dict) -> str:
    return f"({doc['w']}; {', '.join(str(x) for x in doc['n'])})"


def _render_selection(sel) -> str:
    parts = []
    for child, value in sel.items():
        if isinstance(value, str):
            parts.append(value)
        else:
            parts.append(f"({_render_selection(value['selection'])})")
    return "*".join(parts)


def run_cli(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    out, err = sys.stdout, sys.stderr
    try:
        if args.command == "serve":
            from .service import serve

            port = args.port
            if port is None:
                port = int(os.environ.get("MORPHDES_PORT", DEFAULT_PORT))
            model = _load_model(args.model)
            return serve(model, host=args.host, port=port, ui_dir=args.ui,
                         model_path=args.model)

        model = _load_model(args.model)

        if args.command == "validate":
            doc = doc_validate(model)
            has_errors = any(d["severity"] == ERROR for d in doc["diagnostics"])
            if args.json:
                out.write(dumps(doc))
            else:
                for d in doc["diagnostics"]:
                    err.write(f"{d['severity']}: {d['path']}: {d['message']}\n")
                if not has_errors:
                    out.write("model OK\n")
            return 1 if has_errors else 0

        if args.command == "space":
            doc = doc_space(model)
            if args.json:
                out.write(dumps(doc))
            else:
                out.write(f"{doc['design_space_size']}\n")
            return 0

        if args.command == "rank":
            params = _params_from(model, args.p, args.q)
            doc = doc_rank(model, params, args.recompute)
            if args.json:
                out.write(dumps(doc))
            else:
                for leaf_doc in doc["leaves"]:
                    out.write(f"leaf {leaf_doc['leaf']} (weights of {leaf_doc['weights_part']}):\n")
                    for row in leaf_doc["items"]:
                        given = row["given"] if row["given"] is not None else "-"
                        mark = "" if row.get("match", True) else "  *"
                        out.write(f"  {row['alt']:<6} priority {row['priority']}"
                                  f"  given {given}  computed {row['computed']}{mark}\n")
                overall = doc["overall_agreement"]
                if overall is not None:
                    out.write(f"agreement with given priorities: {overall:.2%}\n")
            return 0

        if args.command == "solve":
            doc = doc_solve(model, args.node, args.carry_layers)
            if args.json:
                out.write(dumps(doc))
            else:
                out.write(f"frontier of {doc['node']}: {len(doc['decisions'])} decision(s)\n")
                for i, ddoc in enumerate(doc["decisions"]):
                    out.write(f"  [{i}] N={_render_quality(ddoc)}  "
                              f"{_render_selection(ddoc['selection'])}\n")
            return 0

        if args.command == "bottlenecks":
            doc = doc_bottlenecks(model, args.node, args.decision)
            if args.json:
                out.write(dumps(doc))
            else:
                ddoc = doc["decision"]
                out.write(f"decision [{args.decision}] at {doc['node']}: "
                          f"N={_render_quality(ddoc)}  "
                          f"{_render_selection(ddoc['selection'])}\n")
                for row in doc["elements"]:
                    out.write(f"  element {row['id']} at priority {row['priority']}\n")
                for row in doc["pairs"]:
                    a, b = row["pair"]
                    out.write(f"  pair ({a}, {b}) at level {row['level']}\n")
                for adoc in doc["actions"]:
                    out.write(f"  proposed: {adoc['spec']}  "
                              f"({adoc['from_level']} => {adoc['to_level']})\n")
            return 0

        if args.command == "whatif":
            doc = doc_whatif(model, args.node, args.decision, args.actions)
            if args.json:
                out.write(dumps(doc))
            else:
                out.write(f"before: N={_render_quality(doc['quality_before'])}\n")
                out.write(f"after:  N={_render_quality(doc['quality_after'])}\n")
                out.write(f"delta:  {doc['dominance_delta']}\n")
                for ddoc in doc["now_dominates"]:
                    out.write(f"now dominates {_render_selection(ddoc['selection'])} "
                              f"N={_render_quality(ddoc)}\n")
            return 0

        raise AssertionError(f"unhandled command {args.command!r}")

    except ModelfileError as exc:
        if getattr(args, "json", False):
            out.write(dumps(error_doc(
                "parse-failed", diagnostics=diagnostics_to_doc(exc.diagnostics))))
        for diag in exc.diagnostics:
            err.write(f"{diag}\n")
        return 1
    except CommandFailure as exc:
        if getattr(args, "json", False):
            out.write(dumps(exc.doc))
        err.write(f"error: {exc.human}\n")
        return 1
    except InfeasibleNodeError as exc:
        if getattr(args, "json", False):
            out.write(dumps(error_doc("infeasible-node", node=exc.node_id)))
        err.write(f"error: {exc}\n")
        return 1
    except MorphdesError as exc:
        if getattr(args, "json", False):
            out.write(dumps(error_doc("not-found", message=str(exc))))
        err.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        if getattr(args, "json", False):
            out.write(dumps(error_doc("bad-request", message=str(exc))))
        err.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli())
