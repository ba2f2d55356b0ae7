"""Domain types and distance primitives shared by every other module.

All types are immutable after construction and every operation is a pure
function, so instances, outcomes, and schedules can be shared freely
between threads or worker processes.

Distances are IEEE floats, but every comparison against a radius uses
values read from one instance-wide distance matrix, so exact float
equality against schedule entries is sound.  Agent weights, by contrast,
are exact rationals (`fractions.Fraction`); the selection quota n/k is
never rounded.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InputError",
    "Instance",
    "Outcome",
    "RadiusSchedule",
    "Weight",
    "build_radius_schedule",
    "distance",
    "nearest_j",
]

#: Agent weights and support totals are exact rationals.
Weight = Fraction

COORDINATE_METRICS = ("euclidean", "manhattan")
PRECOMPUTED = "precomputed"


class InputError(ValueError):
    """Invalid instance, argument, or input file."""


def _as_points(arr, name: str) -> np.ndarray:
    pts = np.array(arr, dtype=float)
    if pts.ndim == 1:
        pts = pts.reshape(-1, 1)
    if pts.ndim != 2 or pts.shape[0] == 0 or pts.shape[1] == 0:
        raise InputError(f"{name} must be a nonempty 2-D array of coordinates")
    if not np.isfinite(pts).all():
        raise InputError(f"{name} contains non-finite coordinates")
    pts.flags.writeable = False
    return pts


def distance(p: Sequence[float], q: Sequence[float], metric: str = "euclidean") -> float:
    """Distance between two coordinate points under the named metric.

    Parameters
    ----------
    p, q : array-like
        Coordinate sequences of equal length.
    metric : str
        Either ``"euclidean"`` or ``"manhattan"``.  The precomputed-matrix
        mode has no pointwise form; build an :class:`Instance` for it.
    """
    a = np.atleast_1d(np.asarray(p, dtype=float))
    b = np.atleast_1d(np.asarray(q, dtype=float))
    if a.shape != b.shape or a.ndim != 1:
        raise InputError(f"points have mismatched shapes {a.shape} and {b.shape}")
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise InputError("points must have finite coordinates")
    if metric == "euclidean":
        return float(np.sqrt(((a - b) ** 2).sum()))
    if metric == "manhattan":
        return float(np.abs(a - b).sum())
    if metric == PRECOMPUTED:
        raise InputError("precomputed metric has no pointwise distance; use Instance.precomputed")
    raise InputError(f"unknown metric {metric!r}")


@dataclass(frozen=True)
class Instance:
    """A center-selection problem: agents, candidate locations, and k.

    Attributes
    ----------
    agents : ndarray or None
        (n, dim) agent coordinates.  ``None`` only in precomputed mode.
    candidates : ndarray or None
        (m, dim) candidate coordinates.  When omitted, candidates are a
        verbatim indexed copy of the agents (the unconstrained mode).
    k : int
        Number of centers to select, 1 <= k <= n.
    metric : str
        "euclidean", "manhattan", or "precomputed".
    matrix : ndarray or None
        Explicit (n, m) agent-candidate distance matrix, precomputed mode only.
    shared_candidates : bool
        True when the candidate multiset is exactly the agent multiset.
        Detected from coordinates; must be declared in precomputed mode.
    """

    agents: np.ndarray | None
    candidates: np.ndarray | None = None
    k: int = 1
    metric: str = "euclidean"
    matrix: np.ndarray | None = None
    shared_candidates: bool | None = None

    def __post_init__(self):
        if self.metric == PRECOMPUTED:
            if self.matrix is None:
                raise InputError("precomputed metric requires a distance matrix")
            if self.agents is not None or self.candidates is not None:
                raise InputError("precomputed instances take a matrix, not coordinates")
            mat = np.array(self.matrix, dtype=float)
            if mat.ndim != 2 or mat.shape[0] == 0 or mat.shape[1] == 0:
                raise InputError("distance matrix must be a nonempty 2-D array")
            if not np.isfinite(mat).all() or (mat < 0).any():
                raise InputError("distance matrix entries must be finite and nonnegative")
            shared = bool(self.shared_candidates)
            if shared and mat.shape[0] != mat.shape[1]:
                raise InputError("shared candidates need a square distance matrix")
            if shared and not np.array_equal(mat, mat.T):
                raise InputError("shared candidates need a symmetric distance matrix")
            mat.flags.writeable = False
            object.__setattr__(self, "matrix", mat)
            object.__setattr__(self, "shared_candidates", shared)
        elif self.metric in COORDINATE_METRICS:
            if self.matrix is not None:
                raise InputError(f"metric {self.metric!r} does not accept a distance matrix")
            if self.agents is None:
                raise InputError("coordinate instances require agent points")
            agents = _as_points(self.agents, "agents")
            if self.candidates is None:
                cands = agents
                shared = True
            else:
                cands = _as_points(self.candidates, "candidates")
                if cands.shape[1] != agents.shape[1]:
                    raise InputError(
                        f"agents have dimension {agents.shape[1]} but candidates have {cands.shape[1]}"
                    )
                shared = cands.shape == agents.shape and bool(np.array_equal(cands, agents))
            object.__setattr__(self, "agents", agents)
            object.__setattr__(self, "candidates", cands)
            object.__setattr__(self, "shared_candidates", shared)
        else:
            raise InputError(f"unknown metric {self.metric!r}")
        if not isinstance(self.k, (int, np.integer)):
            raise InputError(f"k must be an integer, got {self.k!r}")
        object.__setattr__(self, "k", int(self.k))
        if not 1 <= self.k <= self.n:
            raise InputError(f"k must satisfy 1 <= k <= n, got k={self.k} with n={self.n}")

    # -- constructors -------------------------------------------------

    @classmethod
    def unconstrained(cls, points, k: int, metric: str = "euclidean") -> "Instance":
        """Instance whose candidate set is the agent multiset itself."""
        return cls(agents=points, candidates=None, k=k, metric=metric)

    @classmethod
    def discrete(cls, agents, candidates, k: int, metric: str = "euclidean") -> "Instance":
        """Instance with an explicit candidate multiset."""
        return cls(agents=agents, candidates=candidates, k=k, metric=metric)

    @classmethod
    def precomputed(cls, matrix, k: int, shared_candidates: bool = False) -> "Instance":
        """Instance defined by an explicit (n, m) distance matrix."""
        return cls(
            agents=None,
            candidates=None,
            k=k,
            metric=PRECOMPUTED,
            matrix=matrix,
            shared_candidates=shared_candidates,
        )

    # -- shape ---------------------------------------------------------

    @property
    def n(self) -> int:
        return self.matrix.shape[0] if self.agents is None else self.agents.shape[0]

    @property
    def m(self) -> int:
        return self.matrix.shape[1] if self.candidates is None and self.agents is None else self.candidates.shape[0]

    @property
    def dim(self) -> int | None:
        return None if self.agents is None else self.agents.shape[1]

    @property
    def is_unconstrained(self) -> bool:
        return bool(self.shared_candidates)

    def with_k(self, k: int) -> "Instance":
        return replace(self, k=k)

    # -- distances -----------------------------------------------------

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """(n, m) agent-to-candidate distances; the single source of truth."""
        if self.metric == PRECOMPUTED:
            return self.matrix
        out = _pairwise(self.agents, self.candidates, self.metric)
        out.flags.writeable = False
        return out

    @cached_property
    def agent_distances(self) -> np.ndarray:
        """(n, n) agent-to-agent distances."""
        if self.metric == PRECOMPUTED:
            if self.shared_candidates:
                return self.matrix
            raise InputError("agent-agent distances are unavailable for this precomputed instance")
        if self.shared_candidates:
            return self.distance_matrix
        out = _pairwise(self.agents, self.agents, self.metric)
        out.flags.writeable = False
        return out

    @cached_property
    def digest(self) -> str:
        """SHA-256 over a canonical serialization; stable across runs."""
        payload = {
            "schema": "instance/1",
            "metric": self.metric,
            "k": self.k,
            "agents": None if self.agents is None else self.agents.tolist(),
            "candidates": None if self.candidates is None else self.candidates.tolist(),
            "matrix": None if self.matrix is None else self.matrix.tolist(),
            "shared_candidates": self.shared_candidates,
        }
        blob = json.dumps(payload, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _pairwise(a: np.ndarray, b: np.ndarray, metric: str) -> np.ndarray:
    diff = a[:, None, :] - b[None, :, :]
    if metric == "euclidean":
        return np.sqrt((diff**2).sum(axis=-1))
    return np.abs(diff).sum(axis=-1)


@dataclass(frozen=True)
class Outcome:
    """An ordered selection of distinct candidate indices."""

    selected: tuple[int, ...]

    def __post_init__(self):
        sel = tuple(int(i) for i in self.selected)
        if len(set(sel)) != len(sel):
            raise InputError(f"outcome repeats a candidate index: {sel}")
        object.__setattr__(self, "selected", sel)

    def __len__(self) -> int:
        return len(self.selected)

    def validate(self, inst: Instance) -> None:
        """Check every index addresses a candidate of ``inst``."""
        if len(self.selected) == 0:
            raise InputError("outcome selects no candidates")
        for i in self.selected:
            if not 0 <= i < inst.m:
                raise InputError(f"candidate index {i} out of range for {inst.m} candidates")


@dataclass(frozen=True)
class RadiusSchedule:
    """Strictly increasing deduplicated realized distances."""

    radii: np.ndarray

    def __post_init__(self):
        radii = np.asarray(self.radii, dtype=float)
        radii.flags.writeable = False
        object.__setattr__(self, "radii", radii)

    def __len__(self) -> int:
        return len(self.radii)

    def __getitem__(self, j: int) -> float:
        return float(self.radii[j])


def build_radius_schedule(inst: Instance) -> RadiusSchedule:
    """All distinct agent-candidate distances of the instance, ascending.

    In unconstrained mode the candidate multiset is the agent multiset, so
    this is exactly the set of pairwise agent distances.
    """
    return RadiusSchedule(np.unique(inst.distance_matrix))


def nearest_j(inst: Instance, agent: int, outcome: Outcome, j: int) -> list[tuple[int, float]]:
    """The ``j`` selected centers nearest to ``agent``.

    Returns (candidate index, distance) pairs ascending by
    (distance, candidate index); ties go to the lower candidate index.
    """
    outcome.validate(inst)
    if not 0 <= agent < inst.n:
        raise InputError(f"agent index {agent} out of range for {inst.n} agents")
    if not 1 <= j <= len(outcome.selected):
        raise InputError(f"j must satisfy 1 <= j <= {len(outcome.selected)}, got {j}")
    sel = np.asarray(outcome.selected, dtype=np.intp)
    dists = inst.distance_matrix[agent, sel]
    order = np.lexsort((sel, dists))[:j]
    return [(int(sel[o]), float(dists[o])) for o in order]
