"""Where the squared-distance optimum shortchanges a small group.

Three rings of 12 points each: two small circles near the origin and a
big one far to the right.  The exact k-means optimum (brute force over
all C(36,3) candidate triples) spends two centers on the big circle,
leaving the two small circles to share one; the sweep engine gives each
circle its own center and accepts a higher squared cost for it.
"""

from itertools import combinations

import numpy as np

from propclust import (
    Outcome,
    check_prf_unconstrained,
    kmeans_cost,
    msd_j,
    select_prf_centers,
)
from propclust.data_io import generate

inst = generate("three_circles")


def describe(name, outcome):
    xs = inst.agents[list(outcome.selected), 0]
    small = int((xs < 3.0).sum())
    big = int((xs > 3.0).sum())
    report = check_prf_unconstrained(inst, outcome, seed=0)
    print(f"{name}: centers {outcome.selected}")
    print(f"  centers on the small circles: {small}, on the big circle: {big}")
    print(f"  k-means cost {kmeans_cost(inst, outcome):.3f}, "
          f"msd_1 {msd_j(inst, outcome, 1):.3f}")
    if report.satisfied:
        print("  group representation: no violation found")
    else:
        w = report.witness
        print(f"  group representation: VIOLATED, a group of {len(w.agents)} agents "
              f"deserves {w.required} centers within {w.radius:.3f} but got {w.found}")
    print()


engine_out, _ = select_prf_centers(inst)
describe("radius sweep", engine_out)

# exact squared-cost optimum over every candidate triple
dm2 = inst.distance_matrix**2
triples = np.array(list(combinations(range(inst.n), 3)))
costs = dm2[:, triples].min(axis=2).sum(axis=0)
best = Outcome(tuple(int(i) for i in triples[int(np.argmin(costs))]))
describe("k-means optimum", best)
