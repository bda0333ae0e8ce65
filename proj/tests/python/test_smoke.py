import math

import pytest

try:
    import blastsim as bs
except ImportError:
    import _blastsim as bs


def prototype_block():
    b = 5.0 * math.tan(math.radians(15.0))
    return bs.RigidBlock(b, 5.0, b, 2000.0, math.radians(35.0))


def test_blast_parameters():
    assert bs.scaled_distance(50.0, 2.0) == pytest.approx(0.543, abs=1e-3)
    w = bs.waveform_from_scenario(bs.BlastScenario(50.0, 2.0))
    assert w.peak_pressure == pytest.approx(32.6, abs=0.1)
    assert bs.pressure_at(w, 0.0) == pytest.approx(w.peak_pressure)
    assert bs.pressure_at(w, w.positive_duration + 1.0) == 0.0


def test_window_error():
    with pytest.raises(ValueError):
        bs.reflected_pressure_peak(100.0)
    assert bs.reflected_pressure_peak(100.0, bs.ZWindow(0.05, 200.0)) > 0.0


def test_model_design():
    proto = bs.BenchCase(prototype_block(), bs.BlastScenario(50.0, 2.0))
    design = bs.design_model(proto, 1 / 200, 1.0)
    assert design.scenario.scaled_distance() == pytest.approx(1.62, abs=0.01)
    assert design.block.half_height == pytest.approx(0.025)
    assert 0.05 <= design.pressure_ratio <= 0.08


def test_hopkinson_scale_set():
    s = bs.scale_set_hopkinson(1 / 200)
    assert s.time == pytest.approx(math.sqrt(1 / 200))
    assert s.charge == pytest.approx((1 / 200) ** 3)
    assert s.scaled_distance == 1.0


def test_rocking_outcomes():
    blk = prototype_block()
    w50 = bs.waveform_from_scenario(bs.BlastScenario(50.0, 2.0))
    hist = bs.simulate_rocking(blk, w50, 60.0)
    assert hist.outcome == bs.Outcome.RockingDecayed
    assert hist.peak_theta() == pytest.approx(0.0687, abs=1e-3)

    w100 = bs.waveform_from_scenario(bs.BlastScenario(100.0, 2.0))
    opts = bs.SimOptions()
    opts.stop_at_first_impact = True
    assert bs.simulate_rocking(blk, w100, 60.0, opts).outcome == bs.Outcome.Overturned


def test_critical_charge():
    result = bs.critical_charge(prototype_block(), 2.0, 40.0, 160.0, 1e-2)
    assert result.critical_mass == pytest.approx(79.8, rel=0.05)
