import math

import numpy as np
import pytest

from coupledwg.damped import DampedParams, evolve_damped_exact
from coupledwg.errors import IntegrationError, ValidationError
from coupledwg.fock import TwoModeDensityMatrix, fock_state, noon_state, purity
from coupledwg.lindblad import (
    DeviationReport,
    IntegratorConfig,
    Trajectory,
    compare,
    default_dt,
    integrate,
    liouvillian_apply,
    trace_distance,
)
from coupledwg.lossless import CouplerParams, evolve_lossless_dm


def dm(state):
    return TwoModeDensityMatrix.from_pure(state)


def test_config_validation():
    IntegratorConfig(dt=0.01, t_max=1.0)
    with pytest.raises(ValidationError):
        IntegratorConfig(dt=0.0, t_max=1.0)
    with pytest.raises(ValidationError):
        IntegratorConfig(dt=0.01, t_max=0.0)
    with pytest.raises(ValidationError):
        IntegratorConfig(dt=0.01, t_max=1.0, method="euler")
    with pytest.raises(ValidationError):
        IntegratorConfig(dt=0.01, t_max=1.0, cutoff=-1)


def test_cutoff_guard():
    cfg = IntegratorConfig(dt=0.01, t_max=0.1, cutoff=3)
    with pytest.raises(ValidationError):
        integrate(dm(fock_state(0, 0, 2)), DampedParams(0, 1, 0), cfg)


def test_default_dt_tracks_fastest_rate():
    assert default_dt(DampedParams(0.0, 0.5, 0.05)) == 0.01
    assert default_dt(DampedParams(0.0, 4.0, 0.05)) == 0.0025
    assert default_dt(DampedParams(8.0, 0.5, 0.05)) == 0.00125


def test_rhs_is_traceless():
    rng = np.random.default_rng(11)
    p = DampedParams(0.3, 0.8, 0.2)
    d2 = 9
    for _ in range(50):
        raw = rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2))
        herm = 0.5 * (raw + raw.conj().T)
        herm = herm / np.trace(herm).real
        out = liouvillian_apply(herm, 2, p)
        assert abs(np.trace(out)) < 1e-12


def test_vacuum_is_stationary():
    p = DampedParams(0.0, 1.0, 0.3)
    cfg = IntegratorConfig(dt=0.01, t_max=2.0)
    traj = integrate(dm(fock_state(0, 0, 2)), p, cfg)
    for state in traj.states:
        assert np.max(np.abs(state - traj.states[0])) < 1e-12


def test_first_sample_is_exact_input():
    rho = dm(noon_state(2, 2))
    traj = integrate(rho, DampedParams(0.0, 1.0, 0.1),
                     IntegratorConfig(dt=0.005, t_max=1.0))
    assert np.array_equal(traj.states[0], rho.entries)
    assert traj.times[0] == 0.0


def test_lossless_limit_matches_closed_propagator():
    p = DampedParams(0.0, 1.0, 0.0)
    rho = dm(fock_state(1, 1, 2))
    t_end = math.pi / 4
    cfg = IntegratorConfig(dt=1e-3, t_max=t_end)
    traj = integrate(rho, p, cfg, sample_times=[t_end])
    ref = evolve_lossless_dm(rho, CouplerParams(0.0, 1.0), t_end)
    assert np.max(np.abs(traj.states[0] - ref.entries)) < 1e-8


def test_photon_number_decay():
    p = DampedParams(0.0, 0.7, 0.2)
    cutoff = 2
    d = cutoff + 1
    rho = dm(fock_state(1, 1, cutoff))
    cfg = IntegratorConfig(dt=1e-3, t_max=1.0)
    traj = integrate(rho, p, cfg, sample_times=[0.5, 1.0])
    grid_total = (np.arange(d)[:, None] + np.arange(d)[None, :]).reshape(-1)
    for t, state in zip(traj.times, traj.states):
        mean = float(np.real(np.diag(state) @ grid_total))
        assert abs(mean - 2.0 * math.exp(-2.0 * p.gamma * t)) < 1e-6


def test_purity_preserved_without_loss():
    p = DampedParams(0.0, 1.2, 0.0)
    traj = integrate(dm(noon_state(2, 2)), p, IntegratorConfig(dt=1e-3, t_max=1.0))
    for state in traj.states:
        assert float(purity(state)) == pytest.approx(1.0, abs=1e-9)


def test_rk4_convergence_order():
    # halving dt must cut the error by roughly 2^4; the analytic zero-loss
    # propagator provides the exact solution
    p = DampedParams(0.0, 1.0, 0.0)
    rho = dm(fock_state(1, 0, 1))
    t_end = 2.0 * math.pi
    ref = evolve_lossless_dm(rho, CouplerParams(0.0, 1.0), t_end)
    errs = []
    for dt in (0.05, 0.025):
        traj = integrate(rho, p, IntegratorConfig(dt=dt, t_max=t_end),
                         sample_times=[t_end])
        errs.append(np.max(np.abs(traj.states[0] - ref.entries)))
    ratio = errs[0] / errs[1]
    assert 12.0 < ratio < 20.0


def test_sample_time_validation():
    rho = dm(fock_state(0, 0, 1))
    p = DampedParams(0.0, 1.0, 0.1)
    cfg = IntegratorConfig(dt=0.01, t_max=1.0)
    with pytest.raises(ValidationError):
        integrate(rho, p, cfg, sample_times=[0.5, 0.5])
    with pytest.raises(ValidationError):
        integrate(rho, p, cfg, sample_times=[0.5, 1.5])
    with pytest.raises(ValidationError):
        integrate(rho, p, cfg, sample_times=[])
    with pytest.raises(ValidationError):
        integrate(rho, p, cfg, sample_times=[-0.5, 0.5])


def test_unstable_step_raises():
    p = DampedParams(0.0, 1.0, 5.0)
    cfg = IntegratorConfig(dt=0.5, t_max=3.0)
    with pytest.raises(IntegrationError):
        integrate(dm(fock_state(1, 1, 2)), p, cfg)


def test_diagnostics_recorded():
    p = DampedParams(0.0, 1.0, 0.1)
    traj = integrate(dm(fock_state(1, 0, 1)), p, IntegratorConfig(dt=0.005, t_max=1.0))
    assert traj.diagnostics["rk4_steps"] >= 200
    assert traj.diagnostics["max_trace_drift"] <= 1e-9
    assert traj.diagnostics["min_eigenvalue"] >= -1e-9
    assert len(traj) == 21


def test_trace_distance_basics():
    rho = dm(fock_state(1, 0, 1))
    sig = dm(fock_state(0, 1, 1))
    assert trace_distance(rho, rho) == 0.0
    assert trace_distance(rho, sig) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValidationError):
        trace_distance(rho.entries, np.eye(16) / 16.0)


def test_compare_against_closed_form():
    p = DampedParams(0.0, 1.0, 0.05)
    rho = dm(fock_state(1, 1, 2))
    times = [0.0, 0.4, 0.8]
    traj = integrate(rho, p, IntegratorConfig(dt=1e-3, t_max=1.0), sample_times=times)
    closed = [evolve_damped_exact(rho, p, t) for t in times]
    report = compare(closed, traj)
    assert isinstance(report, DeviationReport)
    assert report.worst_entry < 1e-8
    assert report.worst_trace_distance < 1e-8
    assert np.max(np.abs(report.entropy_delta)) < 1e-6
    assert np.max(np.abs(report.log_negativity_delta)) < 1e-6
    assert np.max(np.abs(report.purity_delta)) < 1e-6
    payload = report.as_dict()
    assert sorted(payload) == ["entropy_delta", "log_negativity_delta",
                               "max_abs_entry", "purity_delta",
                               "times", "trace_distances"]
    assert payload["times"] == times


def test_compare_length_mismatch():
    p = DampedParams(0.0, 1.0, 0.0)
    rho = dm(fock_state(1, 0, 1))
    traj = integrate(rho, p, IntegratorConfig(dt=0.01, t_max=0.5), sample_times=[0.5])
    with pytest.raises(ValidationError):
        compare([rho, rho], traj)
