"""Round-by-round walkthrough of the weighted radius sweep.

Two coincident masses on the unit interval: 100 agents at 0, 10 agents
at 1, k=11.  Each agent starts with one unit of weight and every
selection costs exactly n/k = 10 units, so the heavy location can pay
for ten centers and the light one for a single center.
"""

from fractions import Fraction

from propclust import select_prf_centers
from propclust.data_io import generate

inst = generate("two_mass")
print(f"n={inst.n} agents, k={inst.k}, quota n/k = {Fraction(inst.n, inst.k)}")
print()

outcome, trace = select_prf_centers(inst)

for idx, rnd in enumerate(trace.rounds, start=1):
    where = inst.candidates[rnd.winner, 0]
    spent = sum(rnd.weights_before, Fraction(0)) - sum(rnd.weights_after, Fraction(0))
    print(
        f"round {idx:2d}: radius {rnd.radius:.1f}  "
        f"candidate {rnd.winner:3d} (at x={where:.0f})  "
        f"support {rnd.support}  weight spent {spent}"
    )

print()
print(f"selected indices: {outcome.selected}")
xs = inst.agents[list(outcome.selected), 0]
print(f"centers at x=0: {int((xs == 0.0).sum())}, centers at x=1: {int((xs == 1.0).sum())}")
