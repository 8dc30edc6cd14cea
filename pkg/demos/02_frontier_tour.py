"""Frontier tour: composing the smart-home system bottom-up.

Shows the Pareto frontier at every composed group, sketches the quality
lattice for the alarm-control node, and assembles the sixteen root
decisions.  Run:

    python demos/02_frontier_tour.py
"""

from collections import defaultdict

from morphdes import fixtures
from morphdes.composition import brute_force_frontier, solve
from morphdes.model import design_space_size

model = fixtures.load_smart_home()

print(f"Raw design space: {design_space_size(model):,} selection tuples\n")

for node in ["D", "E", "M", "N", "Q", "T"]:
    part = model.part(node)
    frontier = solve(model, node=node)
    print(f"{node} ({part.label}): {len(frontier)} Pareto-efficient decision(s)")
    for decision in frontier:
        print(f"    N={decision.quality}  {decision.signature()}")

# The alarm-control node is the interesting one: four nondominated
# decisions spread over three w-levels.
print("\nQuality lattice at E (w up the page, count profiles across):")
frontier_e = solve(model, node="E")
by_w = defaultdict(list)
for decision in frontier_e:
    by_w[decision.quality.w].append(decision)
for w in range(model.config.l, 0, -1):
    cells = "   ".join(
        f"{d.quality} {d.signature()}" for d in by_w.get(w, [])) or "-"
    print(f"  w={w} | {cells}")

# The flat oracle agrees with the hierarchical composition on single-level
# nodes; for E that means enumerating all 24 triples.
assert brute_force_frontier("E", model) == frontier_e

print("\nRoot frontier (every subsystem combination of the carried candidates):")
root = solve(model)
print(f"  {len(root)} decisions, all at N={root[0].quality}")
for decision in root[:4]:
    print(f"    {decision.signature()}")
print("    ...")

restricted = solve(model, restrict={
    "E": [{"J": "J2", "K": "K1", "L": "L1"}, {"J": "J1", "K": "K2", "L": "L3"}]})
print(f"\nWith the alarm-control candidates narrowed to two: "
      f"{len(restricted)} root decisions")
