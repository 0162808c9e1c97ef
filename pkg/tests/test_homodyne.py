import math

import numpy as np
import pytest

from darkport import (
    AcquisitionConfig,
    DegenerateEnsembleError,
    DomainError,
    GaussianState,
    IQEnsemble,
    IQSample,
    TimeSeries,
    ensemble_from_timeseries,
    extract_iq,
    read_iq_csv,
    read_timeseries_csv,
    sample_phase_space,
    synthesize_timeseries,
    write_iq_csv,
    write_timeseries_csv,
)


def test_default_acquisition_grid():
    config = AcquisitionConfig()
    assert config.n_samples_per_window == 500
    assert config.carrier_bin == 124
    assert config.times()[1] == pytest.approx(5e-11)


def test_off_bin_carrier_rejected():
    with pytest.raises(DomainError):
        AcquisitionConfig(carrier_hz=5.0e9 + 7e6)  # lands between bins


def test_carrier_at_or_above_nyquist_rejected():
    with pytest.raises(DomainError):
        AcquisitionConfig(carrier_hz=10e9)  # bin 250 of 500 is the Nyquist bin
    with pytest.raises(DomainError):
        AcquisitionConfig(carrier_hz=0.0)


def test_noiseless_roundtrip_recovers_center():
    config = AcquisitionConfig()
    rng = np.random.default_rng(4)
    for _ in range(25):
        state = GaussianState(
            mu=float(rng.uniform(0, 500)),
            theta=float(rng.uniform(0, 2 * math.pi)),
            sigma2=float(rng.uniform(0.5, 1e4)),
        )
        series = synthesize_timeseries(config, state, noiseless=True)
        iq = extract_iq(series)
        x0, p0 = state.center
        assert iq.i == pytest.approx(x0, abs=1e-10 * max(1.0, state.mu))
        assert iq.q == pytest.approx(p0, abs=1e-10 * max(1.0, state.mu))


def test_reference_phase_rotation_is_undone():
    state = GaussianState(mu=3.0, theta=1.2, sigma2=2.0)
    for ref in (0.0, 0.5, -2.2, math.pi):
        config = AcquisitionConfig(reference_phase=ref)
        iq = extract_iq(synthesize_timeseries(config, state, noiseless=True))
        x0, p0 = state.center
        assert iq.i == pytest.approx(x0, abs=1e-10)
        assert iq.q == pytest.approx(p0, abs=1e-10)


def test_transduction_gain_cancels():
    state = GaussianState(mu=7.0, theta=0.8, sigma2=1.0)
    for gain in (0.1, 1.0, 250.0):
        config = AcquisitionConfig(volts_per_unit=gain)
        series = synthesize_timeseries(config, state, noiseless=True)
        # the discrete grid does not sample the crest exactly
        assert np.max(np.abs(series.samples)) == pytest.approx(gain * state.mu, rel=1e-4)
        iq = extract_iq(series)
        assert math.hypot(iq.i, iq.q) == pytest.approx(state.mu, rel=1e-10)


def test_extraction_is_linear():
    config = AcquisitionConfig()
    s1 = synthesize_timeseries(config, GaussianState(2.0, 0.3, 0.5), noiseless=True)
    s2 = synthesize_timeseries(config, GaussianState(5.0, 1.9, 0.5), noiseless=True)
    combo = TimeSeries(samples=3.0 * s1.samples - 0.5 * s2.samples, config=config)
    iq1, iq2, iqc = extract_iq(s1), extract_iq(s2), extract_iq(combo)
    assert iqc.i == pytest.approx(3.0 * iq1.i - 0.5 * iq2.i, abs=1e-10)
    assert iqc.q == pytest.approx(3.0 * iq1.q - 0.5 * iq2.q, abs=1e-10)


def test_noisy_chain_matches_state_statistics():
    # mean and variance of the demodulated ensemble agree with the state to
    # within five standard errors at n = 10^4
    config = AcquisitionConfig()
    state = GaussianState(mu=6.0, theta=2.1, sigma2=4.0)
    n = 10_000
    ensemble = ensemble_from_timeseries(config, state, n_samples=n, seed=11)
    sigma = math.sqrt(state.sigma2)
    x0, p0 = state.center
    se_mean = sigma / math.sqrt(n)
    assert abs(ensemble.samples[:, 0].mean() - x0) < 5 * se_mean
    assert abs(ensemble.samples[:, 1].mean() - p0) < 5 * se_mean
    centered = ensemble.samples - ensemble.samples.mean(axis=0)
    pooled = float((centered**2).sum() / (2 * n))
    se_var = state.sigma2 * math.sqrt(1.0 / n)
    assert abs(pooled - state.sigma2) < 5 * se_var


def test_chain_matches_direct_sampling_statistics():
    config = AcquisitionConfig()
    state = GaussianState(mu=2.0, theta=0.0, sigma2=1.5)
    n = 10_000
    via_chain = ensemble_from_timeseries(config, state, n_samples=n, seed=3)
    direct = sample_phase_space(state, n_samples=n, seed=3)
    # independent draws: the difference of means carries sqrt(2) the error
    se = math.sqrt(state.sigma2 / n) * math.sqrt(2.0)
    for axis in (0, 1):
        delta = via_chain.samples[:, axis].mean() - direct.samples[:, axis].mean()
        assert abs(delta) < 5 * se


def test_window_indexing_matches_batch():
    config = AcquisitionConfig()
    state = GaussianState(mu=1.0, theta=0.5, sigma2=2.0)
    ensemble = ensemble_from_timeseries(config, state, n_samples=6, seed=21)
    for w in (0, 3, 5):
        series = synthesize_timeseries(config, state, seed=21, window_index=w)
        iq = extract_iq(series)
        assert iq.i == ensemble.samples[w, 0]
        assert iq.q == ensemble.samples[w, 1]


def test_noise_streams_are_reproducible_and_distinct():
    config = AcquisitionConfig()
    state = GaussianState(mu=0.0, theta=0.0, sigma2=1.0)
    a = synthesize_timeseries(config, state, seed=5, window_index=0)
    b = synthesize_timeseries(config, state, seed=5, window_index=0)
    c = synthesize_timeseries(config, state, seed=5, window_index=1)
    d = synthesize_timeseries(config, state, seed=6, window_index=0)
    assert np.array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)
    assert not np.array_equal(a.samples, d.samples)


def test_phase_space_sampling_statistics():
    state = GaussianState(mu=10.0, theta=1.0, sigma2=3.0)
    n = 10_000
    ensemble = sample_phase_space(state, n_samples=n, seed=2)
    assert len(ensemble) == n
    assert ensemble.source == "phase-space"
    assert ensemble.seed == 2
    x0, p0 = state.center
    se = math.sqrt(state.sigma2 / n)
    assert abs(ensemble.samples[:, 0].mean() - x0) < 5 * se
    assert abs(ensemble.samples[:, 1].mean() - p0) < 5 * se
    again = sample_phase_space(state, n_samples=n, seed=2)
    assert np.array_equal(ensemble.samples, again.samples)


def test_phase_space_prefix_property():
    # shorter draws are prefixes of longer ones with the same seed
    state = GaussianState(mu=1.0, theta=0.0, sigma2=1.0)
    short = sample_phase_space(state, 100, seed=9)
    long = sample_phase_space(state, 5000, seed=9)
    assert np.array_equal(short.samples, long.samples[:100])


def test_ensemble_validation():
    with pytest.raises(DegenerateEnsembleError):
        IQEnsemble(samples=np.empty((0, 2)))
    with pytest.raises(DomainError):
        IQEnsemble(samples=np.zeros((5, 3)))
    ens = IQEnsemble(samples=np.array([[1.0, 2.0]]))
    assert ens[0] == IQSample(1.0, 2.0)


def test_timeseries_csv_roundtrip(tmp_path):
    config = AcquisitionConfig()
    state = GaussianState(mu=4.0, theta=0.2, sigma2=1.0)
    series = synthesize_timeseries(config, state, seed=1)
    path = tmp_path / "window.csv"
    write_timeseries_csv(path, series)
    back = read_timeseries_csv(path, config)
    assert np.allclose(back.samples, series.samples, rtol=1e-10, atol=1e-15)
    header = path.read_text().splitlines()[0]
    assert header == "time_s,voltage_v"


def test_iq_csv_roundtrip(tmp_path):
    state = GaussianState(mu=2.0, theta=0.9, sigma2=0.8)
    ensemble = sample_phase_space(state, 64, seed=13)
    path = tmp_path / "iq.csv"
    write_iq_csv(path, ensemble)
    back = read_iq_csv(path)
    assert back.source == "file"
    assert back.seed is None
    assert np.allclose(back.samples, ensemble.samples, rtol=1e-10, atol=1e-15)


def test_csv_header_mismatch_rejected(tmp_path):
    path = tmp_path / "bogus.csv"
    path.write_text("foo,bar\n1,2\n")
    with pytest.raises(DomainError):
        read_iq_csv(path)
    with pytest.raises(DomainError):
        read_timeseries_csv(path, AcquisitionConfig())
