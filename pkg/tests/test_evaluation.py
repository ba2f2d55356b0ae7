import numpy as np
import pytest

from propclust import (
    ExperimentGrid,
    Instance,
    InputError,
    Outcome,
    aggregate,
    aggregates_to_json,
    metric_order,
    metric_value,
    msd_j,
    run_algorithm,
    run_experiment,
    select_prf_centers,
)
from propclust.data_io import generate
from util import random_instance, random_outcome


def test_msd_unit_pair():
    inst = Instance.unconstrained([(0.0,), (1.0,)], k=2)
    out = Outcome((0, 1))
    assert msd_j(inst, out, 2) == pytest.approx(1.0)
    assert msd_j(inst, out, 2, squared=False) == pytest.approx(1.0)
    assert msd_j(inst, out, 1) == pytest.approx(0.0)


def test_msd_hand_values():
    inst = Instance.unconstrained([(0.0,), (2.0,), (3.0,)], k=2)
    out = Outcome((0, 2))
    # nearest: 0, 1, 0; squared mean = 1/3
    assert msd_j(inst, out, 1) == pytest.approx(1.0 / 3.0)
    assert msd_j(inst, out, 1, squared=False) == pytest.approx(1.0 / 3.0)
    # both centers: (0+9) + (1+4) + (0+9) = 23, mean 23/3
    assert msd_j(inst, out, 2) == pytest.approx(23.0 / 3.0)
    assert msd_j(inst, out, 2, squared=False) == pytest.approx((3 + 3 + 3) / 3.0)


def test_msd_matches_direct_computation():
    rng = np.random.default_rng(40)
    for _ in range(30):
        inst = random_instance(rng)
        out = random_outcome(rng, inst)
        dm = inst.distance_matrix
        for j in range(1, len(out.selected) + 1):
            want = np.mean(
                [
                    sum(sorted(dm[i, c] for c in out.selected)[:j]) ** 1
                    for i in range(inst.n)
                ]
            )
            got = msd_j(inst, out, j, squared=False)
            assert got == pytest.approx(float(want))


def test_msd_rejects_out_of_range_j():
    inst = Instance.unconstrained([(0.0,), (1.0,)], k=2)
    out = Outcome((0,))
    with pytest.raises(InputError):
        msd_j(inst, out, 0)
    with pytest.raises(InputError):
        msd_j(inst, out, 2)


def test_metric_order():
    assert metric_order("msd1", 7) == 1
    assert metric_order("msdhalfk", 7) == 4
    assert metric_order("msdhalfk", 8) == 4
    assert metric_order("msdk", 7) == 7
    with pytest.raises(InputError):
        metric_order("msd2", 7)


def test_metric_value_missing_for_underfilled():
    inst = Instance.unconstrained([(0.0,), (0.0,), (1.0,)], k=3)
    short = Outcome((0, 2))
    assert metric_value(inst, short, "msd1") is not None
    assert metric_value(inst, short, "msdk") is None


def test_run_algorithm_dispatch():
    inst = Instance.unconstrained([(0.0,), (0.0,), (1.0,)], k=2)
    want, _ = select_prf_centers(inst)
    assert run_algorithm("prf", inst).selected == want.selected
    assert len(run_algorithm("kmeanspp", inst, seed=1).selected) == 2
    assert len(run_algorithm("greedy", inst).selected) == 2
    with pytest.raises(InputError):
        run_algorithm("lloyd", inst)


def test_run_algorithm_greedy_is_padded():
    inst = Instance.unconstrained([(0.0,), (0.0,), (1.0,)], k=3)
    assert len(run_algorithm("greedy", inst).selected) == 3


def test_grid_validation():
    inst = Instance.unconstrained([(0.0,), (1.0,)], k=1)
    with pytest.raises(InputError):
        ExperimentGrid(datasets=(("d", inst),), ks=(1,), algorithms=("je-ne-sais-quoi",))
    with pytest.raises(InputError):
        ExperimentGrid(datasets=(("d", inst),), ks=(1,), metrics=("msd2",))
    with pytest.raises(InputError):
        ExperimentGrid(datasets=(("d", inst),), ks=(1,), seeds=())


def test_experiment_row_layout():
    inst = generate("two_blobs")
    grid = ExperimentGrid(
        datasets=(("blobs", inst),),
        ks=(1, 2),
        algorithms=("prf", "kmeanspp"),
        seeds=(0, 1),
        metrics=("msd1", "msdk"),
    )
    table = run_experiment(grid)
    # prf: 2 ks x 2 metrics; kmeanspp: 2 ks x 2 seeds x 2 metrics
    assert len(table.rows) == 4 + 8
    seeds = {r.seed for r in table.rows if r.algorithm == "prf"}
    assert seeds == {None}
    seeds = {r.seed for r in table.rows if r.algorithm == "kmeanspp"}
    assert seeds == {0, 1}
    csv = table.to_csv()
    lines = csv.strip().split("\n")
    assert lines[0] == "dataset,algorithm,k,seed,metric,value"
    assert len(lines) == 13
    assert csv == run_experiment(grid).to_csv()


def test_missing_values_render_empty():
    from propclust import ResultRow, ResultTable

    table = ResultTable((ResultRow("tiny", "prf", 3, None, "msdk", None),))
    assert table.to_csv().strip().split("\n")[1] == "tiny,prf,3,,msdk,"


def test_aggregate_means_and_pct():
    rows = run_experiment(
        ExperimentGrid(
            datasets=(("blobs", generate("two_blobs")),),
            ks=(2,),
            algorithms=("prf", "kmeanspp"),
            seeds=(0, 1, 2),
            metrics=("msd1",),
        )
    )
    aggs = aggregate(rows)
    by_algo = {a.algorithm: a for a in aggs}
    km = by_algo["kmeanspp"]
    vals = [r.value for r in rows.rows if r.algorithm == "kmeanspp"]
    assert km.mean == pytest.approx(sum(vals) / len(vals))
    assert km.pct_vs_kmeanspp == pytest.approx(0.0)
    prf = by_algo["prf"]
    assert prf.pct_vs_kmeanspp == pytest.approx((prf.mean - km.mean) / km.mean * 100.0)


def test_aggregate_handles_missing_groups():
    from propclust import ResultRow, ResultTable

    table = ResultTable(
        (
            ResultRow("d", "prf", 3, None, "msdk", None),
            ResultRow("d", "kmeanspp", 3, 0, "msdk", 2.0),
        )
    )
    aggs = aggregate(table)
    prf = next(a for a in aggs if a.algorithm == "prf")
    assert prf.mean is None
    assert prf.pct_vs_kmeanspp is None


def test_aggregates_json_shape():
    import json

    inst = generate("two_blobs")
    grid = ExperimentGrid(datasets=(("b", inst),), ks=(2,), algorithms=("prf", "kmeanspp"))
    aggs = aggregate(run_experiment(grid))
    data = json.loads(aggregates_to_json(aggs))
    assert {d["algorithm"] for d in data} == {"prf", "kmeanspp"}
    assert set(data[0]) == {"dataset", "algorithm", "k", "metric", "mean", "pct_vs_kmeanspp"}
