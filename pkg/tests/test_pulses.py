import numpy as np
import pytest
import scipy.integrate
from pytest import approx

from pulsetrain import pulses
from pulsetrain.errors import DomainError

gaussian = pulses.gaussianPulse(2.0, 6.0, detuning=0.5)
chirped = pulses.rectangularPulse(1.0, 2.0, detuning=-1.0, chirpRate=0.75)


def test_rectangular_pulse_is_constant():
    pulse = pulses.rectangularPulse(np.pi, 1.0, detuning=0.3)
    assert pulse.hasConstantHamiltonian
    assert not pulse.isResonant
    assert pulses.evaluate(pulse, 0.0) == (approx(np.pi), approx(0.3))
    assert pulses.evaluate(pulse, 1.0) == (approx(np.pi), approx(0.3))


def test_gaussian_defaults():
    """Center and width default to T/2 and T/6."""
    assert gaussian.center == approx(3.0)
    assert gaussian.width == approx(1.0)
    rabi, detuning = pulses.evaluate(gaussian, 3.0)
    assert rabi == approx(2.0)
    assert detuning == approx(0.5)
    rabi, _ = pulses.evaluate(gaussian, 4.0)
    assert rabi == approx(2.0 * np.exp(-0.5))


def test_evaluate_outside_pulse():
    with pytest.raises(DomainError):
        pulses.evaluate(gaussian, -0.1)
    with pytest.raises(DomainError):
        pulses.evaluate(gaussian, 6.5)


def test_chirp_detuning():
    assert pulses.evaluate(chirped, 2.0)[1] == approx(0.5)
    assert not chirped.hasConstantHamiltonian


def test_accumulated_detuning():
    assert pulses.accumulatedDetuning(gaussian) == approx(3.0)
    # -1 * 2 + 0.75 * 2**2 / 2
    assert pulses.accumulatedDetuning(chirped, 64) == approx(-0.5, abs=1e-12)


def test_pulse_area():
    assert pulses.pulseArea(pulses.rectangularPulse(2.0, 1.5)) == approx(3.0)
    # truncated at +-3 sigma: sqrt(2 pi) sigma erf(3 / sqrt(2))
    expected = 2.0 * np.sqrt(2 * np.pi) * 0.9973002039367398
    assert pulses.pulseArea(gaussian, 4096) == approx(expected, rel=1e-9)
    sinSquared = pulses.PulseShape("sin-squared", 1.0, 4.0)
    assert pulses.pulseArea(sinSquared, 256) == approx(2.0)


def test_sampled_envelope_is_normalized():
    pulse = pulses.PulseShape("sampled", 3.0, 2.0, samples=[0.0, 2.0, 4.0, 2.0, 0.0])
    assert pulses.evaluate(pulse, 1.0)[0] == approx(3.0)
    assert pulses.evaluate(pulse, 0.25)[0] == approx(0.75)


def test_sampled_detuning():
    pulse = pulses.PulseShape("rectangular", 1.0, 1.0, detuningKind="sampled", detuningSamples=[0.0, 1.0])
    assert pulses.evaluate(pulse, 0.5)[1] == approx(0.5)
    assert pulses.accumulatedDetuning(pulse, 16) == approx(0.5)


def test_invalid_pulses():
    with pytest.raises(DomainError):
        pulses.PulseShape("triangle", 1.0, 1.0)
    with pytest.raises(DomainError):
        pulses.rectangularPulse(1.0, 0.0)
    with pytest.raises(DomainError):
        pulses.PulseShape("sampled", 1.0, 1.0, samples=[1.0])


def test_scaled_copies():
    scaled = chirped.scaledRabi(2j).scaledDetuning(2.0)
    assert scaled.peakRabi == approx(2j)
    assert scaled.chirpRate == approx(1.5)
    assert chirped.peakRabi == approx(1.0)
    assert chirped.chirpRate == approx(0.75)


def test_steps_environment_override(monkeypatch):
    monkeypatch.setenv(pulses.stepsEnvironmentVariable, "64")
    assert pulses.defaultSteps() == 64
    assert pulses.integrationGrid(gaussian).size == 65
    monkeypatch.setenv(pulses.stepsEnvironmentVariable, "many")
    with pytest.raises(DomainError):
        pulses.defaultSteps()


def test_set_globals_rejects_unknown_keys():
    with pytest.raises(DomainError):
        pulses.setGlobals({"no_such_parameter": 1})


rng = np.random.default_rng(20240612)


def randomPulses():
    samples = rng.uniform(-1.0, 1.0, size=9)
    return [
        pulses.rectangularPulse(1.0, 2.5, detuning=rng.uniform(-2.0, 2.0)),
        pulses.gaussianPulse(1.0, 4.0, detuning=rng.uniform(-2.0, 2.0), chirpRate=rng.uniform(-1.0, 1.0)),
        pulses.PulseShape("sin-squared", 1.0, 3.0, detuningKind="chirp", detuning=rng.uniform(-2.0, 2.0), chirpRate=rng.uniform(-1.0, 1.0)),
        pulses.PulseShape("gaussian", 1.0, 4.0, detuningKind="sampled", detuningSamples=samples),
    ]


def test_accumulated_detuning_is_linear_in_the_detuning_scale():
    for _ in range(20):
        for pulse in randomPulses():
            delta = pulses.accumulatedDetuning(pulse, 256)
            for factor in rng.uniform(-3.0, 3.0, size=3):
                scaled = pulses.accumulatedDetuning(pulse.scaledDetuning(factor), 256)
                assert scaled == approx(factor * delta, rel=1e-12, abs=1e-12)
            assert pulses.accumulatedDetuning(pulse.scaledDetuning(0.0), 256) == 0.0


def test_sampled_detuning_is_integrated_exactly():
    for _ in range(50):
        values = rng.uniform(-1.0, 1.0, size=int(rng.integers(2, 40)))
        duration = rng.uniform(0.5, 5.0)
        pulse = pulses.PulseShape("gaussian", 1.5, duration, detuningKind="sampled", detuningSamples=values)
        width = duration / (values.size - 1)
        expected = sum(0.5 * (left + right) * width for left, right in zip(values[:-1], values[1:]))
        assert pulses.accumulatedDetuning(pulse) == approx(expected, rel=1e-13, abs=1e-14)
        # the quadrature grid plays no part
        assert pulses.accumulatedDetuning(pulse, 2) == pulses.accumulatedDetuning(pulse, 4096)


def test_simpson_converges_under_step_halving():
    exact = 2.0 * np.sqrt(2 * np.pi) * 0.9973002039367398
    errors = [abs(pulses.pulseArea(gaussian, steps) - exact) for steps in (128, 256, 512, 1024)]
    for coarse, fine in zip(errors[:-1], errors[1:]):
        assert fine < coarse / 8
    assert errors[-1] < 1e-9

    sinSquared = pulses.PulseShape("sin-squared", 0.7, 5.0)
    assert pulses.pulseArea(sinSquared, 64) == approx(0.35 * 5.0, abs=1e-9)

    # -1.2 * 3 + 0.4 * 3**2 / 2, exact for a linear integrand
    chirp = pulses.PulseShape("sin-squared", 1.0, 3.0, detuningKind="chirp", detuning=-1.2, chirpRate=0.4)
    for steps in (2, 16, 256):
        assert pulses.accumulatedDetuning(chirp, steps) == approx(-1.8, abs=1e-12)


@pytest.mark.parametrize("kind", ["rectangular", "gaussian", "sin-squared"])
def test_pulse_area_vanishes_only_without_field(kind):
    assert pulses.pulseArea(pulses.PulseShape(kind, 0.0, 2.0), 64) == 0.0
    for _ in range(20):
        peakRabi = rng.uniform(1e-6, 3.0) * np.exp(1j * rng.uniform(0.0, 2 * np.pi))
        area = pulses.pulseArea(pulses.PulseShape(kind, peakRabi, 2.0), 64)
        assert area > 0
        assert area == approx(abs(peakRabi) * pulses.pulseArea(pulses.PulseShape(kind, 1.0, 2.0), 64), rel=1e-12)


def test_step_boundaries_contain_every_sample_time():
    pulse = pulses.PulseShape("sampled", 1.0, 4.0, samples=[0.0, 1.0, 0.5, 1.0, 0.0],
                              detuningKind="sampled", detuningSamples=[0.2, -0.1, 0.4, 0.0, 0.3, -0.5, 0.1])
    boundaries = pulses.stepBoundaries(pulse, 10)
    assert boundaries[0] == 0.0
    assert boundaries[-1] == 4.0
    assert np.all(np.diff(boundaries) > 0)
    for values in (pulse.samples, pulse.detuningSamples):
        for time in np.linspace(0.0, 4.0, values.size):
            assert np.min(np.abs(boundaries - time)) < 1e-12
    np.testing.assert_array_equal(pulses.stepBoundaries(gaussian, 10), pulses.integrationGrid(gaussian, 10))


def test_step_boundaries_merge_breakpoints_on_grid_points():
    # samples at multiples of 1/4 fall on the grid of 8 steps over [0, 2]
    pulse = pulses.PulseShape("sampled", 1.0, 2.0, samples=np.linspace(0.0, 1.0, 9))
    boundaries = pulses.stepBoundaries(pulse, 8)
    assert boundaries.size == 9
    np.testing.assert_allclose(boundaries, np.linspace(0.0, 2.0, 9), atol=1e-15)


def test_sampled_chirp_detuning_matches_adaptive_quadrature():
    times = np.linspace(0.0, 3.0, 41)
    pulse = pulses.PulseShape("sin-squared", 1.0, 3.0, detuningKind="sampled", detuningSamples=-1.1 + 0.6 * times)
    reference, _ = scipy.integrate.quad(lambda t: pulse.detuningAt(t), 0.0, 3.0, points=times[1:-1], limit=200)
    assert pulses.accumulatedDetuning(pulse) == approx(reference, abs=1e-10)
    assert pulses.accumulatedDetuning(pulse) == approx(-1.1 * 3.0 + 0.3 * 9.0, abs=1e-12)
