"""Operator command line: validate, mine, replay, inspect, serve.

``replay`` drives a full scripted session against an in-process engine so the
acceptance run needs no network; the other subcommands are file-local tools,
and ``serve`` starts the HTTP service.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import combinations
from pathlib import Path

from .bundle import DomainBundle, validate_domain_document
from .dialogue import Answer, DialogueEngine, FinalizePrompt, Question
from .errors import CasecoachError
from .precedents import PrecedentStore
from .space import CaseVector, Value
from .syndromes import (
    TrainingSample,
    is_minimal_antisyndrome,
    mine_minimal_antisyndromes,
)


def _atoms_from_schema(schema) -> list[tuple[str, Value]]:
    """Mining atoms: declared numeric bins, ordinal levels, categorical labels."""
    atoms: list[tuple[str, Value]] = []
    for p in schema.parameters:
        if p.kind == "numeric":
            for lo, hi in p.bins:
                atoms.append((p.name, schema.parse_value(p.name, [lo, hi])))
        elif p.kind == "ordinal":
            for level in p.levels:
                atoms.append((p.name, schema.parse_value(p.name, level)))
        else:
            for label in sorted(p.labels):
                atoms.append((p.name, schema.parse_value(p.name, label)))
    return atoms


def brute_force_minimal_antisyndromes(sample, atoms, k_max, schema):
    """Oracle: test every atom combination directly against the definition."""
    by_name: dict[str, list] = {}
    for name, v in atoms:
        by_name.setdefault(name, []).append((name, v))
    names = sorted(by_name)
    found = []
    for r in range(1, min(k_max, len(names)) + 1):
        for chosen_names in combinations(names, r):
            pools = [by_name[n] for n in chosen_names]
            idx = [0] * r
            while True:
                y = CaseVector(tuple(pools[i][idx[i]] for i in range(r)))
                if is_minimal_antisyndrome(y, sample, schema):
                    found.append(y)
                pos = r - 1
                while pos >= 0:
                    idx[pos] += 1
                    if idx[pos] < len(pools[pos]):
                        break
                    idx[pos] = 0
                    pos -= 1
                if pos < 0:
                    break
    return found


def cmd_validate(args) -> int:
    doc = json.loads(Path(args.domain).read_text())
    problems = validate_domain_document(doc)
    if problems:
        for p in problems:
            print(f"INVALID: {p}")
        return 1
    bundle = DomainBundle.from_dict(doc)
    print(f"OK: domain {bundle.id!r}")
    print(f"  parameters: {bundle.schema.dim}")
    print(f"  solutions: {', '.join(bundle.schema.solution_ids)}")
    for sid, mas in sorted(bundle.antisyndromes.items()):
        print(f"  antisyndromes[{sid}]: {len(mas.entries)} entries")
    return 0


def cmd_mine(args) -> int:
    bundle = DomainBundle.from_file(args.domain)
    schema = bundle.schema
    doc = json.loads(Path(args.sample).read_text())
    sample = TrainingSample(
        doc["solution"], tuple(schema.parse_vector(c) for c in doc["cases"])
    )
    atoms = _atoms_from_schema(schema)
    mined = mine_minimal_antisyndromes(sample, atoms, args.kmax, schema)
    if args.oracle:
        expected = brute_force_minimal_antisyndromes(sample, atoms, args.kmax, schema)
        if {y.key() for y in expected} != {y.key() for y in mined.entries}:
            print("ORACLE MISMATCH: level-wise result differs from brute force", file=sys.stderr)
            return 2
        print(f"oracle check passed ({len(mined.entries)} entries)", file=sys.stderr)
    out = {
        "solution": mined.solution,
        "source": mined.source,
        "entries": [schema.vector_to_json(y) for y in mined.entries],
    }
    text = json.dumps(out, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return 0


def _seed_history(store: PrecedentStore, bundle: DomainBundle, user: str, history: list) -> None:
    for item in history:
        store.record_precedent(
            user=user,
            domain=bundle.id,
            case=bundle.schema.parse_vector(item["case"]),
            decision=item["decision"],
            prognosis=item.get("prognosis", "(not recorded)"),
            caller=user,
            outcome=item.get("outcome"),
            matches_prognosis=item.get("matches_prognosis"),
            discrepancy_explanation=item.get("discrepancy_explanation"),
            error_explanation=item.get("error_explanation"),
            recorded_at=item.get("recorded_at"),
        )


def run_replay(domain_path: str, script_path: str, seed: int | None = None, echo=print) -> int:
    """Run a scripted session; non-zero exit when any expectation mismatches."""
    bundle = DomainBundle.from_file(domain_path)
    script = json.loads(Path(script_path).read_text())
    user = script.get("user", "operator")
    store = PrecedentStore()
    _seed_history(store, bundle, user, script.get("history", []))
    engine = DialogueEngine(bundle, store)
    session = engine.start_session(
        user=user,
        alpha_user=script["solution"],
        evidence=bundle.schema.parse_vector(script["evidence"]),
        seed=script.get("seed", 0) if seed is None else seed,
    )
    echo(f"session {session.id}: {script['solution']} + {len(script['evidence'])} components")

    failures = 0
    for i, step in enumerate(script.get("steps", []), start=1):
        if "action" in step:
            action = step["action"]
            if action.get("kind") == "decision":
                engine.change_decision(session, action["solution"])
                echo(f"[{i}] action: decision -> {action['solution']}")
            elif action.get("kind") == "value":
                engine.revise_value(session, action["name"], action["value"])
                echo(f"[{i}] action: revise {action['name']} = {action['value']}")
            else:
                echo(f"[{i}] UNKNOWN action {action!r}")
                failures += 1
            continue

        result = engine.advance_until_question(session)
        expect = step.get("expect", {})
        if isinstance(result, FinalizePrompt):
            echo(f"[{i}] finalize prompt")
            if expect.get("kind") != "finalize":
                echo(f"[{i}] MISMATCH: expected {expect}, got finalize prompt")
                failures += 1
            continue
        q: Question = result
        echo(f"[{i}] S{q.scenario} {q.kind} subject={list(q.subject)}")
        if expect.get("scenario") is not None and expect["scenario"] != q.scenario:
            echo(f"[{i}] MISMATCH: expected scenario {expect['scenario']}")
            failures += 1
        if expect.get("kind") is not None and expect["kind"] != q.kind:
            echo(f"[{i}] MISMATCH: expected kind {expect['kind']}")
            failures += 1
        subject = expect.get("subject")
        if subject is not None and sorted(subject) != sorted(q.subject):
            echo(f"[{i}] MISMATCH: expected subject {subject}")
            failures += 1
        warning_contains = step.get("expect_warning_contains")
        if warning_contains is not None:
            warning = (q.details.get("warning") or {}).get("error_explanation") or ""
            if warning_contains not in warning:
                echo(f"[{i}] MISMATCH: warning does not mention {warning_contains!r}")
                failures += 1
        respond = step.get("respond")
        if respond:
            engine.submit_answer(
                session,
                Answer(
                    question_id=q.id,
                    kind=respond["kind"],
                    name=respond.get("name"),
                    value=respond.get("value"),
                    solution=respond.get("solution"),
                    attachment=respond.get("attachment"),
                ),
            )

    fin = script.get("finalize")
    if fin:
        engine.advance_until_question(session)
        rec = engine.finalize(session, fin["prognosis"], fin["solution"])
        echo(f"finalized: {rec.id} decision={rec.decision}")

    echo("--- transcript ---")
    for event in session.transcript_view():
        echo(json.dumps(event))
    if failures:
        echo(f"REPLAY FAILED: {failures} expectation(s) mismatched")
        return 1
    echo("REPLAY OK")
    return 0


def cmd_replay(args) -> int:
    started = time.perf_counter()
    code = run_replay(args.domain, args.script, args.seed)
    print(f"elapsed: {time.perf_counter() - started:.2f}s", file=sys.stderr)
    return code


def cmd_inspect(args) -> int:
    store = PrecedentStore(args.datadir)
    user = args.user
    rows = store.list_error_rows(user, caller=user)
    records = store._owned_records(user, caller=user)  # operator tool: acts as the user
    print(f"user {user}: {len(records)} precedents, {len(rows)} with error explanations")
    for rec in sorted(records, key=lambda r: r.seq):
        state = "pending" if rec.is_pending else f"outcome={rec.outcome}"
        print(f"  {rec.id} decision={rec.decision} {state} created={rec.created_at}")
        if rec.error_explanation:
            print(f"    error note: {rec.error_explanation}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app
    from .service.config import ServiceConfig

    config = ServiceConfig.load(args.config)
    if args.port is not None:
        config = config.with_port(args.port)
    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="info")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="casecoach")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a domain file and print a report")
    p.add_argument("domain")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("mine", help="mine minimal antisyndromes from a sample file")
    p.add_argument("domain")
    p.add_argument("sample")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--oracle", action="store_true", help="verify against brute force")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_mine)

    p = sub.add_parser("replay", help="run a scripted session and check expectations")
    p.add_argument("domain")
    p.add_argument("script")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=cmd_replay)

    p = sub.add_parser("inspect", help="summarize a user's stored precedents")
    p.add_argument("datadir")
    p.add_argument("--user", required=True)
    p.set_defaults(fn=cmd_inspect)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--config", default=None)
    p.add_argument("--port", type=int, default=None)
    p.set_defaults(fn=cmd_serve)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except CasecoachError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
