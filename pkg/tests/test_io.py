import json

import numpy as np
import pytest

from propclust import (
    Instance,
    InputError,
    Outcome,
    check_up,
    select_prf_centers,
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
    trace_from_json_obj,
    trace_to_json_obj,
    write_run_record,
)
from util import random_instance


# -- point CSV ----------------------------------------------------------------


def test_csv_round_trip_preserves_digest(tmp_path):
    rng = np.random.default_rng(50)
    for i in range(20):
        inst = random_instance(rng)
        p = tmp_path / f"inst{i}.csv"
        p.write_text(instance_to_csv(inst))
        back = load_csv(p, k=inst.k, metric=inst.metric)
        assert back.digest == inst.digest


def test_csv_without_role_column_is_unconstrained(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("x0,x1\n0.0,0.0\n1.0,2.0\n")
    inst = load_csv(p, k=2)
    assert inst.is_unconstrained
    assert inst.n == 2
    assert inst.dim == 2


def test_csv_role_column_splits_rows(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("role,x0\nagent,0.0\nagent,1.0\ncandidate,0.5\n")
    inst = load_csv(p)
    assert not inst.is_unconstrained
    assert inst.n == 2
    assert inst.m == 1


def test_csv_id_column_is_ignored(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("id,x0\nfirst,0.0\nsecond,3.0\n")
    inst = load_csv(p, k=1)
    assert inst.n == 2
    assert inst.agents[1, 0] == 3.0


def test_csv_standardize_uses_sample_std(tmp_path):
    p = tmp_path / "pts.csv"
    p.write_text("x0,x1\n0.0,7.0\n2.0,7.0\n4.0,7.0\n")
    inst = load_csv(p, k=1, standardize=True)
    np.testing.assert_allclose(inst.agents[:, 0], [-1.0, 0.0, 1.0])
    # constant columns pass through instead of dividing by zero
    np.testing.assert_allclose(inst.agents[:, 1], 0.0)


def test_csv_error_messages_carry_line_numbers(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("x0\n1.0\noops\n")
    with pytest.raises(InputError, match="line 3"):
        load_csv(p)
    p.write_text("x0,x1\n1.0\n")
    with pytest.raises(InputError, match="line 2"):
        load_csv(p)
    p.write_text("role,x0\nneither,1.0\n")
    with pytest.raises(InputError, match="role"):
        load_csv(p)
    p.write_text("x0\n")
    with pytest.raises(InputError, match="no data rows"):
        load_csv(p)
    p.write_text("role,x0\nagent,1.0\n")
    with pytest.raises(InputError, match="no candidate rows"):
        load_csv(p)


# -- generators ----------------------------------------------------------------


def test_generators_are_deterministic():
    for name in GENERATORS:
        a = generate(name)
        b = generate(name)
        assert a.digest == b.digest, name


def test_generator_shapes():
    assert generate("two_mass").n == 110
    assert generate("two_mass").k == 11
    hexagon = generate("hexagon")
    assert hexagon.n == 6
    assert hexagon.k == 3
    assert hexagon.is_unconstrained
    circles = generate("three_circles")
    assert circles.n == 36
    assert circles.k == 3
    prf2 = generate("prf2_counterexample")
    assert prf2.n == 4
    assert prf2.m == 4
    assert not prf2.is_unconstrained


def test_generator_params():
    inst = generate("two_mass", a=6, b=2, k=4)
    assert inst.n == 8
    assert inst.k == 4
    with pytest.raises(InputError):
        generate("two_mass", weird_param=1)
    with pytest.raises(InputError):
        generate("no_such_shape")


def test_hexagon_sides_are_float_identical():
    inst = generate("hexagon")
    aa = inst.agent_distances
    sides = sorted(set(np.round(aa[aa > 0], 12)))
    # the six short edges share one exact float value
    short = np.partition(np.unique(aa[aa > 0]), 0)[0]
    assert short == 0.8660254037844386
    count = int((aa == short).sum()) // 2
    assert count >= 6


def test_two_mass_locations():
    inst = generate("two_mass")
    xs = inst.agents.ravel()
    assert (xs[:100] == 0.0).all()
    assert (xs[100:] == 1.0).all()


# -- run records ----------------------------------------------------------------


def test_record_round_trip(tmp_path):
    inst = generate("two_mass")
    outcome, trace = select_prf_centers(inst)
    report = check_up(inst, outcome)
    record = record_for(
        inst,
        "prf",
        outcome,
        trace=trace,
        reports=(report,),
        metrics={"msd1": 0.0},
    )
    p = tmp_path / "run.json"
    write_run_record(p, record)
    back = read_run_record(p, instance=inst)
    assert back == record
    assert back.trace == trace
    assert back.reports == (report,)


def test_record_json_is_schema_versioned(tmp_path):
    inst = generate("hexagon")
    outcome, _ = select_prf_centers(inst)
    record = record_for(inst, "prf", outcome)
    p = tmp_path / "run.json"
    write_run_record(p, record)
    obj = json.loads(p.read_text())
    assert obj["schema_version"] == 1
    assert obj["selected"] == list(outcome.selected)
    assert obj["instance_digest"] == inst.digest
    obj["schema_version"] = 99
    p.write_text(json.dumps(obj))
    with pytest.raises(InputError):
        RunRecord.from_json_obj(obj)


def test_record_digest_guard(tmp_path):
    inst = generate("hexagon")
    other = generate("two_mass")
    outcome, _ = select_prf_centers(inst)
    p = tmp_path / "run.json"
    write_run_record(p, record_for(inst, "prf", outcome))
    with pytest.raises(InputError, match="digest"):
        read_run_record(p, instance=other)


def test_instance_from_record_round_trip():
    rng = np.random.default_rng(51)
    for _ in range(10):
        inst = random_instance(rng)
        outcome, _ = select_prf_centers(inst)
        record = record_for(inst, "prf", outcome)
        rebuilt = instance_from_record(record)
        assert rebuilt.digest == inst.digest


def test_instance_from_record_detects_corruption():
    inst = generate("hexagon")
    outcome, _ = select_prf_centers(inst)
    record = record_for(inst, "prf", outcome)
    tampered = RunRecord.from_json_obj(
        {**record.to_json_obj(), "coordinates": [[0.0, 0.0]] * 6}
    )
    with pytest.raises(InputError, match="corrupt"):
        instance_from_record(tampered)


def test_trace_json_uses_exact_weights():
    inst = Instance.unconstrained([(0.0,), (0.0,), (1.0,)], k=2)
    _, trace = select_prf_centers(inst)
    obj = trace_to_json_obj(trace)
    assert isinstance(obj, list)
    first = obj[0]
    assert set(first) == {
        "radius",
        "winner",
        "support",
        "supporters",
        "weight_before",
        "weight_after",
    }
    # weights survive as exact fraction strings, not floats
    assert all(isinstance(w, str) for w in first["weight_before"])
    assert trace_from_json_obj(obj) == trace


# -- grid files ----------------------------------------------------------------


def test_load_grid(tmp_path):
    csv_path = tmp_path / "pts.csv"
    csv_path.write_text("x0\n0.0\n1.0\n5.0\n")
    grid_path = tmp_path / "grid.json"
    grid_path.write_text(
        json.dumps(
            {
                "datasets": [
                    {"generator": "two_mass", "params": {"a": 6, "b": 2, "k": 2}},
                    {"path": str(csv_path), "name": "pts"},
                ],
                "ks": [1, 2],
                "algorithms": ["prf", "kmeanspp"],
                "seeds": [0, 1],
                "metrics": ["msd1"],
            }
        )
    )
    grid = load_grid(grid_path)
    assert [name for name, _ in grid.datasets] == ["two_mass", "pts"]
    assert grid.ks == (1, 2)
    assert grid.seeds == (0, 1)
    assert grid.metrics == ("msd1",)


def test_load_grid_errors(tmp_path):
    p = tmp_path / "grid.json"
    p.write_text("not json")
    with pytest.raises(InputError, match="JSON"):
        load_grid(p)
    p.write_text(json.dumps({"datasets": []}))
    with pytest.raises(InputError, match="datasets"):
        load_grid(p)
    p.write_text(json.dumps({"datasets": [{"generator": "two_mass"}]}))
    with pytest.raises(InputError):
        load_grid(p)  # ks missing
    p.write_text(json.dumps({"datasets": [{}], "ks": [1]}))
    with pytest.raises(InputError, match="generator"):
        load_grid(p)
