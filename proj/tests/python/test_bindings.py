import cmath
import math

import numpy as np
import pytest

import hhgq


def field(**kw):
    args = dict(kappa=1e-4, omega=0.057, alpha_abs=265.0)
    args.update(kw)
    return hhgq.FieldConfig(**args)


def test_field_validation():
    with pytest.raises(hhgq.ConfigError):
        field(kappa=0.0)
    f = field()
    assert f.amplitude == pytest.approx(0.053)
    grid = hhgq.TimeGrid.for_field(f, 32)
    assert len(grid) == grid.times.size
    assert grid.times[1] - grid.times[0] == pytest.approx(grid.dt)


def test_toy_spectrum_single_line():
    engine = hhgq.DipoleEngine.toy(hhgq.ToyDipoleParams.monomial([3], 1e-3, 0.053))
    f = field(phase=0.4)
    s = hhgq.spectrum_coherent(engine, f, hhgq.TimeGrid.for_field(f, 64), 1, 9)
    assert list(s.q) == list(range(1, 10))
    assert np.argmax(s.values) == 2
    expected = 3 * (1e-3 * 8 * math.pi / 0.057) ** 2
    assert s.at(3) == pytest.approx(expected, rel=1e-10)
    assert s.to_json()["schema"] == "hhgq.spectrum/1"


def test_harmonic_phase_shift():
    engine = hhgq.DipoleEngine.toy(hhgq.ToyDipoleParams.monomial([1, 3], 1e-3, 0.053))
    f0, f1 = field(), field(phase=0.7)
    grid = hhgq.TimeGrid.for_field(f0, 64)
    a0 = hhgq.harmonic_amplitude(engine, f0, grid, 3)
    a1 = hhgq.harmonic_amplitude(engine, f1, grid, 3)
    assert abs(a1 - a0 * cmath.exp(-3j * 0.7)) < 1e-9 * abs(a0)


def test_states():
    rho = hhgq.phase_averaged_mode_state(2.0, 3, 256, 30)
    pure = hhgq.coherent_mode_state(2.0 * cmath.exp(0.3j), 30, q=3)
    assert hhgq.l1_coherence(rho) < 1e-12
    assert hhgq.l1_coherence(pure) > 0.1
    np.testing.assert_allclose(hhgq.photon_distribution(rho), hhgq.photon_distribution(pure), atol=1e-12)
    assert abs(hhgq.mean_field_amplitude(pure)) == pytest.approx(2.0)
    dense = pure.to_dense()
    assert dense.shape == (31, 31)
    assert np.allclose(dense, dense.conj().T)
    with pytest.raises(hhgq.TruncationError):
        hhgq.coherent_mode_state(5.0, 10)
    with pytest.raises(hhgq.AliasingError):
        hhgq.phase_averaged_mode_state(1.0, 5, 20, 24)


def test_phase_space():
    assert hhgq.fock_moment(2, 3) == 60.0
    q = hhgq.HusimiSampler(hhgq.Coherent(1.0 + 0.5j))
    assert q(1.0 + 0.5j) == pytest.approx(1.0 / math.pi)
    values, errors = hhgq.delta_limit_probe([0.1, 0.05, 0.025], lambda e: abs(e) ** 2, 0.0)
    assert len(values) == len(errors) == 3
    assert errors[0] / errors[1] == pytest.approx(4.0)


def test_density_csv_round_trip(tmp_path):
    rho = hhgq.coherent_mode_state(0.8j, 16, q=1)
    hhgq.write_density_csv(tmp_path / "rho.csv", rho)
    back = hhgq.read_density_csv(tmp_path / "rho.csv", 1)
    np.testing.assert_array_equal(back.to_dense(), rho.to_dense())


def test_scenario_from_config(configs):
    result = hhgq.run_scenario(hhgq.load_config(configs / "d.toml"))
    assert result.all_passed
    assert result.evidence["scenario"] == "D_indistinguishability"
    assert all(r["pass"] for r in result.evidence["records"])


def test_config_errors():
    with pytest.raises(hhgq.ConfigError, match="kappa"):
        hhgq.parse_config("[field]\nkappa = -1.0\nomega = 0.057\nalpha_abs = 1.0\nphase = 0.0\nn_cycles = 8\nenvelope = \"flat\"\n")
