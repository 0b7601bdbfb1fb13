import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gmewit.geometry import InvariantCoords, invariant_state
from gmewit.qubit_algebra import InvalidStateError
from gmewit.sweep import (
    CSV_COLUMNS,
    SLICE_REGIONS,
    SweepConfig,
    SweepRecord,
    arrangement_label,
    clamp_lambda,
    default_lambda_grid,
    format_matrix,
    geometry_slice,
    load_config,
    load_matrix,
    parse_arrangement,
    parse_matrix_text,
    read_records,
    run_sweep,
    write_records,
    write_slice,
)

SMALL = dict(N=10, lambdas=(-0.5, 0.25, -0.9), arrangements=((1, 2), (1, 3), (1, 2, 3), (1, 3, 5)))


def test_default_grid():
    grid = default_lambda_grid()
    assert len(grid) == 120
    assert min(grid) == pytest.approx(-1.2) and max(grid) == pytest.approx(1.2)
    assert -1.0 not in grid
    assert sum(-1 < x < -0.9 for x in grid) > 20
    SweepConfig(N=16, lambdas=tuple(grid), arrangements=((1, 2),))


def test_clamp(caplog):
    assert clamp_lambda(-1.0) == pytest.approx(-0.999)
    assert clamp_lambda(-0.9995) == pytest.approx(-0.999)
    assert "clamped" in caplog.text
    assert clamp_lambda(-1.1) == -1.1
    assert clamp_lambda(-0.999) == -0.999


def test_arrangement_parsing():
    assert parse_arrangement("135") == (1, 3, 5)
    assert parse_arrangement("1-2-12") == (1, 2, 12)
    assert parse_arrangement([1, 4]) == (1, 4)
    assert arrangement_label((1, 3, 5)) == "135"
    assert arrangement_label((1, 2, 12)) == "1-2-12"


def test_config_sites():
    cfg = SweepConfig(N=16, lambdas=(0.0,), arrangements=((1, 2, 3),))
    assert cfg.anchor_site == 5
    assert cfg.sites_of((1, 2, 3)) == (4, 5, 6)


@pytest.mark.parametrize(
    "kw",
    [
        dict(lambdas=(-1.0,)),
        dict(lambdas=()),
        dict(arrangements=((1,),)),
        dict(arrangements=((2, 1),)),
        dict(arrangements=((1, 20),)),
        dict(quantities=("entropy",)),
        dict(N=4),
        dict(N=30),
    ],
)
def test_config_rejects(kw):
    with pytest.raises(ValueError):
        SweepConfig(**{**SMALL, **kw})


def test_load_config(tmp_path):
    p = tmp_path / "c.yaml"
    p.write_text("N: 12\nlambdas: [-0.5, 0.0]\narrangements: ['12', [1, 3], '123']\nseed: 3\n")
    cfg = load_config(p)
    assert cfg.arrangements == ((1, 2), (1, 3), (1, 2, 3))
    assert cfg.lambdas == (-0.5, 0.0) and cfg.seed == 3
    p.write_text("N: 12\nlambdas: default\narrangements: ['12']\n")
    assert len(load_config(p).lambdas) == 120


@pytest.mark.parametrize(
    "text",
    [
        "N: 12\nlambdas: [0.0]\narrangements: ['12']\ncolour: red\n",
        "N: 12\nlambdas: [-1]\narrangements: ['12']\n",
        "N: 12\narrangements: ['12']\n",
        "N: 12\nlambdas: 0.5\narrangements: ['12']\n",
        "- 1\n- 2\n",
    ],
)
def test_load_config_errors(tmp_path, text):
    p = tmp_path / "c.yaml"
    p.write_text(text)
    with pytest.raises(ValueError):
        load_config(p)


@pytest.fixture(scope="module")
def small_records():
    return run_sweep(SweepConfig(**SMALL))


def test_sweep_records(small_records):
    recs = small_records
    assert len(recs) == 3 * 4
    keys = [(r.lam, r.arrangement, r.kind) for r in recs]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for r in recs:
        if r.kind == "concurrence":
            assert 0 <= r.value <= 1 and r.witness_r0 is None
        else:
            assert r.arrangement in ("123", "135") and r.witness_orientation in (0, 1, -1)
    assert {r.sites for r in recs if r.arrangement == "135"} == {"2-4-6"}


def test_sweep_quantity_filter():
    recs = run_sweep(SweepConfig(**{**SMALL, "quantities": ("witness",)}))
    assert {r.kind for r in recs} == {"witness"}


def test_csv_round_trip(tmp_path, small_records):
    path = tmp_path / "out.csv"
    text = write_records(small_records, path)
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert read_records(path) == small_records
    assert write_records(read_records(path)) == text


def test_read_records_bad_header(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_records(p)


@given(
    st.floats(-5, 5, allow_nan=False),
    st.floats(-10, 10, allow_nan=False),
    st.one_of(st.none(), st.floats(0.67, 0.99)),
    st.booleans(),
)
def test_record_row_round_trip(lam, value, r0, flag):
    rec = SweepRecord(lam, "123", "witness", value, r0, None if r0 is None else -1, -7.5, flag, "1-2-3")
    assert SweepRecord.from_row(dict(zip(CSV_COLUMNS, rec.row()))) == rec


def test_sweep_deterministic_and_worker_independent():
    cfg = SweepConfig(**SMALL)
    a = write_records(run_sweep(cfg, workers=1))
    b = write_records(run_sweep(cfg, workers=1))
    c = write_records(run_sweep(cfg, workers=2))
    assert a == b == c


def test_sweep_clamps_grid():
    recs = run_sweep(SweepConfig(**{**SMALL, "lambdas": (-0.9999,), "arrangements": ((1, 2),)}))
    assert [r.lam for r in recs] == [pytest.approx(-0.999)]


def test_slice_below_threshold_has_no_witness_cells():
    regions = {reg for _, _, reg in geometry_slice(0.5, 101)}
    assert "witness-negative" not in regions
    assert "indeterminate" not in regions
    assert regions <= set(SLICE_REGIONS)


def test_slice_witness_cells_near_rim_directions():
    rows = geometry_slice(0.9, 121)
    hits = [(x, y) for x, y, reg in rows if reg == "witness-negative"]
    assert hits
    for x, y in hits:
        ang = math.degrees(math.atan2(y, x))
        nearest = min(abs((ang - a + 180) % 360 - 180) for a in (0, 120, -120))
        assert nearest < 60
        assert math.hypot(x, y) > 0.6
    # the detected-state example lies on the 0 degree rim
    assert any(abs(x - 0.9) < 0.02 and abs(y) < 0.02 for x, y in hits)


def test_slice_separable_cells_inside_a_lobe():
    from gmewit.geometry import is_biseparable_lobe

    for r0 in (0.5, 0.8):
        for x, y, reg in geometry_slice(r0, 61):
            if reg == "separable":
                c = InvariantCoords(1 - r0, r0, x, y)
                assert any(is_biseparable_lobe(c, k) for k in (1, 2, 3))


def test_slice_matches_pointwise_classification():
    from gmewit.geometry import Label, classify_coords

    r0 = 0.85
    for x, y, reg in geometry_slice(r0, 41):
        if reg == "outside-cone":
            continue
        label = classify_coords(InvariantCoords(1 - r0, r0, x, y)).label
        assert (reg == "witness-negative") == (label is Label.GENUINE_TRIPARTITE)


@pytest.mark.parametrize("r0, res", [(0.0, 10), (1.0, 10), (0.5, 1), (0.5, 4096)])
def test_slice_rejects(r0, res):
    with pytest.raises(ValueError):
        geometry_slice(r0, res)


def test_write_slice(tmp_path):
    text = write_slice(geometry_slice(0.9, 3), tmp_path / "s.csv")
    lines = text.splitlines()
    assert lines[0] == "r1,r2,region" and len(lines) == 10
    assert (tmp_path / "s.csv").read_text() == text


def test_matrix_text_round_trip(rng):
    from gmewit.qubit_algebra import random_density_matrix

    rho = random_density_matrix(3, rng)
    back = parse_matrix_text(format_matrix(rho))
    np.testing.assert_array_equal(back, rho)


def test_matrix_parse_forms():
    m = parse_matrix_text("# comment\n1+0i, 0-2.5i\n\n3, 1e-3+1i\n")
    np.testing.assert_array_equal(m, [[1, -2.5j], [3, 0.001 + 1j]])
    for bad in ("1,2\n3\n", "", "1,x\n2,3\n"):
        with pytest.raises(ValueError):
            parse_matrix_text(bad)


def test_load_matrix_validates(tmp_path):
    p = tmp_path / "m.txt"
    p.write_text(format_matrix(np.eye(8) / 8))
    np.testing.assert_allclose(load_matrix(p), np.eye(8) / 8)
    p.write_text(format_matrix(np.eye(8) / 4))
    with pytest.raises(InvalidStateError):
        load_matrix(p)
    p.write_text(format_matrix(invariant_state(InvariantCoords(0.1, 0.9, 0.9, 0, 0))[:4, :4]))
    with pytest.raises(InvalidStateError):
        load_matrix(p)
