"""Radius-sweep center selection with exact weighted supports.

The sweep grows a shared radius over the finite schedule of realized
agent-candidate distances.  Whenever a remaining candidate's weighted
support reaches the quota n/k, the candidate with the largest support is
selected (ties to the lowest candidate index), its supporters give up
exactly n/k of weight, and the same radius is examined again before the
sweep advances.

Weights are exact rationals with denominator k.  Internally the engine
stores them as integers scaled by k, which keeps every quota comparison
integer-exact; the public state, trace, and helper operations speak
`fractions.Fraction`.  Selection is sequential by design; concurrent
sweeps over shared instances are safe because instances are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from propclust.core import InputError, Instance, Outcome

__all__ = [
    "SweepRound",
    "SweepState",
    "SweepTrace",
    "initial_state",
    "reduce_weights",
    "select_prf_centers",
    "weighted_support",
]

_SENTINEL = np.iinfo(np.int64).min // 4


@dataclass(frozen=True)
class SweepState:
    """Snapshot of a sweep: exact weights, remaining candidates, selections."""

    weights: tuple[Fraction, ...]
    remaining: frozenset[int]
    selected: tuple[int, ...]
    radius_cursor: int = 0

    def total_weight(self) -> Fraction:
        return sum(self.weights, Fraction(0))


def initial_state(inst: Instance) -> SweepState:
    return SweepState(
        weights=(Fraction(1),) * inst.n,
        remaining=frozenset(range(inst.m)),
        selected=(),
        radius_cursor=0,
    )


def weighted_support(inst: Instance, state: SweepState, candidate: int, radius: float) -> Fraction:
    """Total current weight of agents within ``radius`` of ``candidate``."""
    if candidate not in state.remaining:
        raise InputError(f"candidate {candidate} is not in the remaining pool")
    col = inst.distance_matrix[:, candidate]
    total = Fraction(0)
    for i in np.nonzero(col <= radius)[0]:
        total += state.weights[int(i)]
    return total


def reduce_weights(
    state: SweepState,
    supporters: Sequence[int],
    distances: Sequence[float],
    amount: Fraction,
) -> SweepState:
    """Remove exactly ``amount`` of weight from the supporter set.

    Supporters are zeroed in ascending (distance, agent index) order; the
    last agent touched is reduced fractionally so the total removed is
    exactly ``amount``.  Raises if the supporters do not hold that much.
    """
    supporters = [int(i) for i in supporters]
    if len(supporters) != len(distances):
        raise InputError("supporters and distances must align")
    held = sum((state.weights[i] for i in supporters), Fraction(0))
    if held < amount:
        raise InputError(f"supporter weight {held} is below the reduction amount {amount}")
    order = sorted(range(len(supporters)), key=lambda p: (distances[p], supporters[p]))
    weights = list(state.weights)
    left = Fraction(amount)
    for p in order:
        if left == 0:
            break
        i = supporters[p]
        take = min(weights[i], left)
        weights[i] -= take
        left -= take
    return replace(state, weights=tuple(weights))


@dataclass(frozen=True)
class SweepRound:
    """One selection: who won at which radius, and who paid for it.

    ``supporters`` lists the winner's supporter set ascending by agent
    index, with ``weights_before``/``weights_after`` aligned to it.
    ``support`` is the winner's weighted support at selection time.
    """

    radius: float
    winner: int
    supporters: tuple[int, ...]
    weights_before: tuple[Fraction, ...]
    weights_after: tuple[Fraction, ...]
    support: Fraction


@dataclass(frozen=True)
class SweepTrace:
    rounds: tuple[SweepRound, ...]


def select_prf_centers(inst: Instance) -> tuple[Outcome, SweepTrace]:
    """Select k centers by the weighted radius sweep.

    Works identically for unconstrained instances (candidates are the
    agent multiset) and discrete candidate sets; the only precondition is
    that at least k candidate locations exist.  Returns the ordered
    selection and a per-round audit trace.
    """
    n, m, k = inst.n, inst.m, inst.k
    if m < k:
        raise InputError(f"insufficient candidates: k={k} but only {m} candidate locations")

    D = inst.distance_matrix
    schedule = np.unique(D)
    flat_order = np.argsort(D, axis=None, kind="stable")
    d_sorted = D.ravel()[flat_order]
    # events with distance <= schedule[j] occupy d_sorted[:bounds[j]]
    bounds = np.searchsorted(d_sorted, schedule, side="right")
    ev_agent = flat_order // m
    ev_cand = flat_order % m

    # weights scaled by k: start at k each, quota is n, all arithmetic exact
    w = np.full(n, k, dtype=np.int64)
    support = np.zeros(m, dtype=np.int64)
    quota = n

    selected: list[int] = []
    rounds: list[SweepRound] = []
    pos = 0
    j = 0
    while len(selected) < k:
        end = int(bounds[j])
        if pos < end:
            np.add.at(support, ev_cand[pos:end], w[ev_agent[pos:end]])
            pos = end
        winner = int(np.argmax(support))  # first maximum, so lowest index on ties
        if support[winner] < quota:
            j += 1
            assert j < len(schedule), "sweep exhausted with fewer than k selections"
            continue

        radius = float(schedule[j])
        sup_val = int(support[winner])
        members = np.nonzero(D[:, winner] <= radius)[0]
        before = w[members].copy()

        # pay the quota: zero supporters ascending by (distance to winner, index)
        order = np.lexsort((members, D[members, winner]))
        ordered = members[order]
        wo = w[ordered]
        cums = np.cumsum(wo)
        cut = int(np.searchsorted(cums, quota, side="left"))
        removed_before_cut = int(cums[cut - 1]) if cut > 0 else 0
        deltas = np.zeros(len(ordered), dtype=np.int64)
        deltas[:cut] = wo[:cut]
        deltas[cut] = quota - removed_before_cut
        w[ordered] -= deltas

        touched = ordered[deltas > 0]
        if touched.size:
            within = D[touched] <= radius  # (t, m)
            support -= (deltas[deltas > 0][:, None] * within).sum(axis=0)
        support[winner] = _SENTINEL

        selected.append(winner)
        rounds.append(
            SweepRound(
                radius=radius,
                winner=winner,
                supporters=tuple(int(i) for i in members),
                weights_before=tuple(Fraction(int(b), k) for b in before),
                weights_after=tuple(Fraction(int(a), k) for a in w[members]),
                support=Fraction(sup_val, k),
            )
        )

    return Outcome(tuple(selected)), SweepTrace(tuple(rounds))
