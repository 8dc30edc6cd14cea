"""Model format tour: text round-trips, JSON export, positioned diagnostics.

Run:

    python demos/04_modelfile_tour.py
"""

from morphdes import fixtures
from morphdes.composition import solve
from morphdes.errors import ModelfileError
from morphdes.improvement import apply_action, parse_action
from morphdes.modelfile import decision_to_doc, dumps, parse, serialize

model = fixtures.load_smart_home()

text = serialize(model)
print("Canonical text form starts like this:\n")
print("\n".join(text.splitlines()[:14]))
print("  ...\n")

assert parse(text) == model
assert serialize(parse(text)) == text
print("Round trip holds: parse(serialize(m)) == m, and serializing again is "
      "byte-identical.\n")

edited = apply_action(model, parse_action(model, "ic:K2,L3=3"))
changed = [
    (a, b) for a, b in zip(text.splitlines(), serialize(edited).splitlines())
    if a != b
]
print("A single compatibility upgrade changes exactly these lines:")
for before, after in changed:
    print(f"  - {before.strip()}")
    print(f"  + {after.strip()}")

e1 = solve(model, node="E")[0]
print("\nDecisions export as plain JSON documents:")
print(dumps(decision_to_doc(e1)))

broken = text.replace("est [1, 0, 3, 3]", "est [1, 0, 3]", 1)
try:
    parse(broken)
except ModelfileError as exc:
    diag = exc.diagnostics[0]
    print(f"Diagnostics carry positions: line {diag.span.line}, "
          f"column {diag.span.column}: {diag.message}")
