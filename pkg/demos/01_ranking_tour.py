"""Ranking tour: from pairwise comparisons to priority layers.

Walks one leaf of the bundled smart-home model through the outranking
pipeline: oriented estimates, the concordance/discordance indices, the
crisp relation, and the peeled layer partition.  Run:

    python demos/01_ranking_tour.py
"""

from fractions import Fraction

from morphdes import fixtures
from morphdes.model import oriented_values
from morphdes.ranking import (
    RankingParams,
    agreement_report,
    concordance,
    discordance,
    layer_partition,
    outranking_relation,
)

model = fixtures.load_smart_home()
leaf = model.part("I")              # authentication point: four options
weights = model.weights_for("D")    # ranked under the access-control weights
params = RankingParams.from_model(model)

print(f"Leaf {leaf.id} ({leaf.label}), weights {weights.magnitudes} "
      f"of part {weights.part_id}, thresholds p={params.concordance_p}, "
      f"q={params.discordance_q}\n")

print("Oriented estimates (minimization criteria negated):")
for alt in leaf.alternatives:
    print(f"  {alt.id:<4} {oriented_values(alt, model.criteria)}")

print("\nConcordance / discordance for every ordered pair:")
for a in leaf.alternatives:
    for b in leaf.alternatives:
        if a is b:
            continue
        c = concordance(a, b, weights, model.criteria)
        d = discordance(a, b, model.criteria)
        mark = " <- outranks" if c >= params.concordance_p and d <= params.discordance_q else ""
        print(f"  {a.id} vs {b.id}:  c={str(c):<6} d={str(d):<6}{mark}")

relation = outranking_relation(leaf.alternatives, weights, model.criteria, params)
partition = layer_partition(relation)
print("\nLayers (1 = best):")
for level, layer in enumerate(partition.layers, 1):
    print(f"  H({level}) = {{{', '.join(sorted(layer))}}}")

print("\nAgreement of recomputed layers with the expert-given priorities:")
report = agreement_report(model)
for leaf_doc in report["leaves"]:
    flags = "".join(
        "=" if row["match"] else "x" for row in leaf_doc["items"])
    print(f"  {leaf_doc['leaf']:<3} {flags:<6} agreement={leaf_doc['agreement']}")
print(f"  overall: {report['overall_agreement']:.0%}")

# Exact arithmetic keeps thresholds honest: a concordance of 13/20 compares
# equal to a declared 0.65, with no binary-float drift.
assert Fraction(13, 20) == params.concordance_p
