"""Clustering baselines over discrete candidate sets.

Two selection rules to compare against the radius-sweep rule:

* :func:`kmeanspp` - squared-distance-weighted seeding followed by
  medoid-style Lloyd iterations.  Centers are always candidate locations,
  so the result is a valid outcome for any instance, including purely
  precomputed ones.
* :func:`greedy_capture` - grows balls around candidate locations and
  opens a candidate once its ball holds a full quota of uncaptured
  agents; open centers absorb agents as their balls reach them.  May
  open fewer than k centers; the result records how the remainder was
  padded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from propclust.core import InputError, Instance, Outcome

__all__ = [
    "GreedyCaptureResult",
    "greedy_capture",
    "kmeans_cost",
    "kmeanspp",
]


def kmeans_cost(inst: Instance, outcome: Outcome) -> float:
    """Total squared distance from each agent to its nearest selected center."""
    outcome.validate(inst)
    sel = np.asarray(outcome.selected, dtype=np.intp)
    nearest = inst.distance_matrix[:, sel].min(axis=1)
    return float(np.sum(nearest**2))


def kmeanspp(inst: Instance, seed: int = 0, return_history: bool = False):
    """Seeded k-means++ restricted to candidate locations.

    Seeding samples an agent with probability proportional to its squared
    distance to the centers chosen so far (uniformly at first) and opens
    the nearest still-unselected candidate to it.  Lloyd rounds then move
    each cluster's center to the candidate minimizing the within-cluster
    sum of squared distances, keeping centers distinct and keeping the old
    center when a cluster is empty, until the center set repeats or 100
    rounds pass.

    With ``return_history=True`` also returns the center tuple after
    seeding and after each Lloyd round.
    """
    n, m, k = inst.n, inst.m, inst.k
    if m < k:
        raise InputError(f"insufficient candidates: k={k} but only {m} candidate locations")
    dm = inst.distance_matrix
    sq = dm**2
    rng = np.random.default_rng(seed)

    centers: list[int] = []
    chosen = np.zeros(m, dtype=bool)
    for _ in range(k):
        if centers:
            mass = sq[:, centers].min(axis=1)
            total = float(mass.sum())
        else:
            mass = np.ones(n)
            total = float(n)
        if total <= 0.0:
            # all agents sit on chosen centers; any unselected candidate is as good
            pick = int(np.nonzero(~chosen)[0][0])
        else:
            agent = int(rng.choice(n, p=mass / total))
            row = np.where(chosen, np.inf, dm[agent])
            pick = int(np.argmin(row))
        centers.append(pick)
        chosen[pick] = True
    centers.sort()
    history = [tuple(centers)]

    for _ in range(100):
        cols = dm[:, centers]
        assign = np.argmin(cols, axis=1)
        new_centers: list[int] = []
        for j in range(k):
            members = np.nonzero(assign == j)[0]
            blocked = set(new_centers) | set(centers[j + 1 :])
            if members.size == 0:
                new_centers.append(centers[j])
                continue
            cost = sq[members].sum(axis=0)
            for b in blocked:
                cost[b] = np.inf
            new_centers.append(int(np.argmin(cost)))
        new_centers.sort()
        moved = new_centers != centers
        centers = new_centers
        history.append(tuple(centers))
        if not moved:
            break

    outcome = Outcome(tuple(centers))
    if return_history:
        return outcome, tuple(history)
    return outcome


@dataclass(frozen=True)
class GreedyCaptureResult:
    """Ball-growing run: opened centers, underfill status, any padding."""

    outcome: Outcome
    opened: tuple[int, ...]
    openings: tuple[tuple[int, float], ...]
    padded: tuple[int, ...]
    underfilled: bool


def greedy_capture(inst: Instance, pad: bool = False) -> GreedyCaptureResult:
    """Grow balls; open a candidate when it holds ceil(n/k) uncaptured agents.

    Balls grow around every location simultaneously.  An open center
    captures uncaptured agents as its ball reaches them; an unopened
    candidate whose ball holds at least ceil(n/k) uncaptured agents opens
    (lowest index first at equal radius) and captures them.  At most k
    centers can ever open, and fewer may: the result is then flagged
    underfilled and, only with ``pad=True``, filled to k with the unopened
    candidates whose balls would reach a full quota soonest ignoring
    captures (ties to the lowest index).
    """
    n, m, k = inst.n, inst.m, inst.k
    if m < k:
        raise InputError(f"insufficient candidates: k={k} but only {m} candidate locations")
    quota = -(-n // k)
    dm = inst.distance_matrix

    flat_order = np.argsort(dm, axis=None, kind="stable")
    ev_agent, ev_cand = np.unravel_index(flat_order, dm.shape)
    d_sorted = dm.ravel()[flat_order]
    radii = np.unique(dm)
    bounds = np.searchsorted(d_sorted, radii, side="right")

    captured = np.zeros(n, dtype=bool)
    is_open = np.zeros(m, dtype=bool)
    count = np.zeros(m, dtype=np.int64)  # uncaptured agents inside each unopened ball
    opened: list[int] = []
    openings: list[tuple[int, float]] = []
    pos = 0

    def capture(agent: int, radius: float) -> None:
        captured[agent] = True
        inside = dm[agent] <= radius
        count[inside & ~is_open] -= 1

    for j, radius in enumerate(radii):
        end = int(bounds[j])
        block_agents = ev_agent[pos:end]
        block_cands = ev_cand[pos:end]
        pos = end
        # all balls reach their radius-r entrants simultaneously: count every
        # entry first, then let open centers take theirs back out
        entering = ~captured[block_agents] & ~is_open[block_cands]
        np.add.at(count, block_cands[entering], 1)
        reached = is_open[block_cands]
        for a in block_agents[reached]:
            if not captured[a]:
                capture(int(a), float(radius))
        while len(opened) < k:
            eligible = np.nonzero(~is_open & (count >= quota))[0]
            if eligible.size == 0:
                break
            c = int(eligible[0])
            is_open[c] = True
            opened.append(c)
            openings.append((c, float(radius)))
            for a in np.nonzero(~captured & (dm[:, c] <= radius))[0]:
                capture(int(a), float(radius))
        if captured.all():
            break

    underfilled = len(opened) < k
    padded: list[int] = []
    if pad and underfilled:
        # fill with the candidates whose balls reach a quota of agents soonest
        fill_radius = np.partition(dm, quota - 1, axis=0)[quota - 1]
        order = np.lexsort((np.arange(m), fill_radius))
        for c in order:
            if len(opened) + len(padded) == k:
                break
            if not is_open[c]:
                padded.append(int(c))

    outcome = Outcome(tuple(opened) + tuple(padded))
    return GreedyCaptureResult(
        outcome=outcome,
        opened=tuple(opened),
        openings=tuple(openings),
        padded=tuple(padded),
        underfilled=underfilled,
    )
