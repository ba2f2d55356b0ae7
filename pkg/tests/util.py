"""Shared helpers for the test suite."""

import numpy as np

from propclust import Instance


def random_instance(rng, n_max=12, modes=("unconstrained", "discrete")):
    """A small random instance with deliberate tie opportunities.

    Points are drawn on an integer lattice 20% of the time so that
    coincident points and repeated distances show up regularly.
    """
    n = int(rng.integers(2, n_max + 1))
    k = int(rng.integers(1, min(n, 6) + 1))
    dim = int(rng.integers(1, 4))
    if rng.random() < 0.2:
        pts = rng.integers(0, 4, size=(n, dim)).astype(float)
    else:
        pts = rng.normal(size=(n, dim))
    metric = "euclidean" if rng.random() < 0.7 else "manhattan"
    mode = modes[int(rng.integers(0, len(modes)))]
    if mode == "unconstrained":
        return Instance.unconstrained(pts, k=k, metric=metric)
    m = int(rng.integers(k, n + 4))
    if rng.random() < 0.2:
        cands = rng.integers(0, 4, size=(m, dim)).astype(float)
    else:
        cands = rng.normal(size=(m, dim))
    return Instance.discrete(pts, cands, k=k, metric=metric)


def all_outcomes(inst):
    """Every possible outcome of exactly k distinct candidate indices."""
    from itertools import combinations

    from propclust import Outcome

    return [Outcome(c) for c in combinations(range(inst.m), inst.k)]


def random_outcome(rng, inst, size=None):
    from propclust import Outcome

    size = inst.k if size is None else size
    sel = rng.choice(inst.m, size=size, replace=False)
    return Outcome(tuple(int(j) for j in sel))
