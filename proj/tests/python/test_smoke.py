import math

import numpy as np
import pytest

import zeno_qze as zq


def test_free_rabi_oscillation():
    cfg = zq.Config(rabi1=1.3, rabi2=1.0, t_final=10.0, stride=10)
    traj = zq.integrate(cfg)
    assert traj["states"].shape == (len(traj["times"]), zq.NUM_COORDS)
    z1 = zq.coordinate(traj, "z1")
    assert np.max(np.abs(z1 - np.cos(1.3 * traj["times"]))) < 1e-8


def test_round_trip_and_ground_state():
    v = zq.basis_state(0, 0)
    rho = zq.reconstruct_density(v)
    assert rho.shape == (4, 4)
    assert abs(rho[0, 0] - 1.0) < 1e-15
    assert np.allclose(zq.extract_coordinates(rho), v)
    assert zq.von_neumann_entropy(zq.partial_trace_second(rho)) == 0.0


def test_oracle_first_order():
    cfg = zq.Config(rabi1=1.0, rabi2=1.2, alpha1=0.5, alpha2=0.5, t_final=20.0)
    a = zq.compare_with_oracle(cfg, 1e-3)
    b = zq.compare_with_oracle(cfg, 5e-4)
    assert a["max_deviation"] <= 5e-3
    assert a["max_deviation"] / b["max_deviation"] == pytest.approx(2.0, abs=0.05)


def test_strong_monitoring_plateau():
    t, S = zq.entropy_series(zq.Config(alpha1=3.0, alpha2=3.0, t_final=30.0))
    sat = zq.measure_saturation(S, t)
    assert sat is not None
    assert sat["value"] == pytest.approx(0.0377, abs=0.002)
    assert S.max() <= math.log(2) + 1e-12


def test_sweep_records():
    base = zq.Config(t_final=20.0)
    records = zq.run_sweep(base, "alpha_both", [0.0, 1.5], "entropy,period", workers=1)
    assert [r["status"] for r in records] == ["ok", "ok"]
    assert records[0]["z1_period"]["period"] == pytest.approx(2 * math.pi, rel=0.01)
    assert len(records[1]["entropy"]) == len(records[1]["times"])


def test_single_qubit_target():
    S = zq.Interaction(a=0, b=0, c=1, d=0)
    design = zq.design_target_theta(S, 3.0)
    assert zq.theta_slope(design.theta_alt, S, 6.0) < 0
    x, y, z = zq.evolve_bloch([0.0, 0.0, 1.0], S, 1.0, 6.0)
    assert (x, y, z) == pytest.approx((0.0, -1 / 3, math.sqrt(8) / 3), abs=1e-6)
    with pytest.raises(zq.Infeasible):
        zq.design_target_theta(S, 0.5)


def test_two_qubit_target():
    stationary, residual = zq.two_qubit_stationarity(zq.reconstruct_density(zq.basis_state(1, 1)))
    assert stationary and residual < 1e-12
    stationary, _ = zq.two_qubit_stationarity(zq.reconstruct_density(zq.basis_state(0, 1)))
    assert not stationary


def test_errors_map_to_python():
    with pytest.raises(zq.InvalidArgument):
        zq.integrate(zq.Config(dt=-1.0))
    with pytest.raises(zq.ZenoError):
        zq.run_sweep(zq.Config(), "alpha_both", [])
