"""Proportionally representative center selection.

A radius-sweep selection rule over discrete candidate locations, checkers
for proportional-fairness axioms with verifiable witnesses, classic
clustering baselines, and a deterministic evaluation harness.
"""

from propclust.axioms import (
    AXIOM_CORE,
    AXIOM_PF,
    AXIOM_PRF2,
    AXIOM_PRF3,
    AXIOM_PRF_DISC,
    AXIOM_PRF_UNC,
    AXIOM_UP,
    EXHAUSTIVE_LIMIT,
    AxiomReport,
    Witness,
    check_core,
    check_core_bruteforce,
    check_pf,
    check_pf_bruteforce,
    check_prf2,
    check_prf3,
    check_prf_discrete,
    check_prf_unconstrained,
    check_up,
    recheck_witness,
)
from propclust.baselines import GreedyCaptureResult, greedy_capture, kmeans_cost, kmeanspp
from propclust.core import (
    COORDINATE_METRICS,
    InputError,
    Instance,
    Outcome,
    RadiusSchedule,
    Weight,
    build_radius_schedule,
    distance,
    nearest_j,
)
from propclust.data_io import (
    GENERATORS,
    RunRecord,
    generate,
    instance_from_record,
    instance_to_csv,
    load_csv,
    load_grid,
    read_run_record,
    record_for,
    write_run_record,
)
from propclust.engine import (
    SweepRound,
    SweepTrace,
    initial_state,
    reduce_weights,
    select_prf_centers,
    weighted_support,
)
from propclust.evaluation import (
    ALGORITHM_NAMES,
    METRIC_KEYS,
    AggregateRow,
    ExperimentGrid,
    ResultRow,
    ResultTable,
    aggregate,
    aggregates_to_json,
    metric_order,
    metric_value,
    msd_j,
    run_algorithm,
    run_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "AXIOM_CORE",
    "AXIOM_PF",
    "AXIOM_PRF2",
    "AXIOM_PRF3",
    "AXIOM_PRF_DISC",
    "AXIOM_PRF_UNC",
    "AXIOM_UP",
    "AggregateRow",
    "AxiomReport",
    "COORDINATE_METRICS",
    "EXHAUSTIVE_LIMIT",
    "ExperimentGrid",
    "GENERATORS",
    "GreedyCaptureResult",
    "InputError",
    "Instance",
    "METRIC_KEYS",
    "Outcome",
    "RadiusSchedule",
    "ResultRow",
    "ResultTable",
    "RunRecord",
    "SweepRound",
    "SweepTrace",
    "Weight",
    "Witness",
    "aggregate",
    "aggregates_to_json",
    "build_radius_schedule",
    "check_core",
    "check_core_bruteforce",
    "check_pf",
    "check_pf_bruteforce",
    "check_prf2",
    "check_prf3",
    "check_prf_discrete",
    "check_prf_unconstrained",
    "check_up",
    "distance",
    "generate",
    "greedy_capture",
    "initial_state",
    "instance_from_record",
    "instance_to_csv",
    "kmeans_cost",
    "kmeanspp",
    "load_csv",
    "load_grid",
    "metric_order",
    "metric_value",
    "msd_j",
    "nearest_j",
    "read_run_record",
    "recheck_witness",
    "record_for",
    "reduce_weights",
    "run_algorithm",
    "run_experiment",
    "select_prf_centers",
    "weighted_support",
    "write_run_record",
]
