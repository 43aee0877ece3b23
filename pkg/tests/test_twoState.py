import cmath
import math

import numpy as np
import pytest
from pytest import approx

from pulsetrain import oracle
from pulsetrain import pulses
from pulsetrain import twoState
from pulsetrain.errors import DomainError

rng = np.random.default_rng(20240611)


def randomCk():
    vector = rng.normal(size=4)
    vector /= np.linalg.norm(vector)
    return twoState.CKPair(complex(vector[0], vector[1]), complex(vector[2], vector[3]))


def test_ck_normalization():
    pair = twoState.CKPair(0.6 * (1 + 1e-8), 0.8j)
    assert abs(pair.a) ** 2 + abs(pair.b) ** 2 == approx(1.0, abs=1e-15)
    with pytest.raises(DomainError):
        twoState.CKPair(0.6, 0.81j)


def test_ck_matrix_is_su2():
    pair = randomCk()
    matrix = pair.matrix()
    assert np.linalg.det(matrix) == approx(1.0)
    assert oracle.unitarityDefect(matrix) < 1e-14


def test_identity_power():
    power = twoState.su2Power(twoState.CKPair(1.0, 0.0), 7)
    assert power.a == approx(1.0)
    assert power.b == approx(0.0)


def test_degenerate_pi_power():
    """a = -1 has sin(theta) = 0; (-1)^N is the exact answer."""
    for N in (1, 2, 3, 10):
        power = twoState.su2Power(twoState.CKPair(-1.0, 0.0), N)
        assert power.a == approx((-1.0) ** N)
        assert power.b == approx(0.0)


def test_nearly_degenerate_power_stays_normalized():
    pair = twoState.CKPair(cmath.exp(1e-12j), 0.0)
    power = twoState.su2Power(pair, 1000)
    assert abs(power.a) == approx(1.0)
    assert power.a == approx(cmath.exp(1e-9j))


def test_hadamard_like_powers():
    """a = cos(pi/4), b = -i sin(pi/4) repeats with period 8."""
    pair = twoState.CKPair(math.cos(np.pi / 4), -1j * math.sin(np.pi / 4))
    squared = twoState.su2Power(pair, 2)
    assert squared.a == approx(0.0, abs=1e-15)
    assert squared.b == approx(-1j)
    full = twoState.su2Power(pair, 8)
    assert full.a == approx(1.0)
    assert full.b == approx(0.0, abs=1e-14)


def test_power_matches_matrix_power():
    for N in (1, 2, 5, 17, 100):
        pair = randomCk()
        expected = oracle.matrixPower(pair.matrix(), N)
        np.testing.assert_allclose(twoState.su2Power(pair, N).matrix(), expected, atol=1e-12)


def test_power_rejects_bad_counts():
    pair = randomCk()
    for N in (0, -1, 1.5, True):
        with pytest.raises(DomainError):
            twoState.su2Power(pair, N)


def test_compose_and_read_back():
    first, second = randomCk(), randomCk()
    product = twoState.composeCk(first, second)
    np.testing.assert_allclose(product.matrix(), first.matrix() @ second.matrix(), atol=1e-14)
    again = twoState.ckFromMatrix(product.matrix())
    assert again.a == approx(product.a)
    assert again.b == approx(product.b)


def test_power_angle_precision():
    """The angle keeps its relative accuracy when it is tiny."""
    angle = twoState.powerAngle(twoState.CKPair(math.cos(1e-9), -1j * math.sin(1e-9)))
    assert angle.theta == approx(1e-9, rel=1e-12)


def test_resonant_rectangular_solution():
    pulse = pulses.rectangularPulse(np.pi, 1.0)
    pair = twoState.solveTraceless(pulse)
    assert pair.a == approx(0.0, abs=1e-15)
    assert pair.b == approx(-1j)


def test_constant_detuned_solution_matches_exponential():
    pulse = pulses.rectangularPulse(1.3 * cmath.exp(0.4j), 2.0, detuning=0.7)
    pair = twoState.solveTraceless(pulse)
    hamiltonian = twoState.tracelessHamiltonians(pulse, np.array([0.0]))[0]
    np.testing.assert_allclose(pair.matrix(), oracle.constantPropagator(hamiltonian, 2.0), atol=1e-13)


def test_gaussian_solution_matches_oracle():
    pulse = pulses.gaussianPulse(3.0, 4.0, detuning=0.4)
    pair = twoState.solveTraceless(pulse, 2048)
    hamiltonian = oracle.TimeDependentHamiltonian(2, lambda t: twoState.tracelessHamiltonians(pulse, np.array([t]))[0])
    np.testing.assert_allclose(pair.matrix(), oracle.integrate(hamiltonian, 4.0, 4096), atol=1e-9)


def test_gaussian_resonant_area():
    """Resonant real pulses rotate by half their area: a = cos(A/2)."""
    pulse = pulses.gaussianPulse(2.5, 6.0)
    area = pulses.pulseArea(pulse, 2048)
    pair = twoState.solveTraceless(pulse, 2048)
    assert pair.a == approx(math.cos(area / 2), abs=1e-10)
    assert pair.b == approx(-1j * math.sin(area / 2), abs=1e-10)


def test_ms_pair_matches_oracle():
    pulse = pulses.rectangularPulse(1.0, 2.0, detuning=0.3, chirpRate=-0.2)
    coupling = 1.7
    solution = twoState.solveMSPair(coupling, pulse, 1024)
    assert solution.delta == approx(0.2)
    hamiltonian = oracle.TimeDependentHamiltonian(2, lambda t: twoState.pairHamiltonians(coupling, pulse, np.array([t]))[0])
    expected = oracle.integrate(hamiltonian, 2.0, 4096)
    np.testing.assert_allclose(solution.matrix(), expected, atol=1e-9)
    assert np.linalg.det(solution.matrix()) == approx(cmath.exp(-1j * solution.delta))


def test_ms_pair_constant_closed_form():
    pulse = pulses.rectangularPulse(0.8, 1.5, detuning=-0.6)
    solution = twoState.solveMSPair(2.0, pulse)
    hamiltonian = twoState.pairHamiltonians(2.0, pulse, np.array([0.0]))[0]
    np.testing.assert_allclose(solution.matrix(), oracle.constantPropagator(hamiltonian, 1.5), atol=1e-13)


def test_ms_pair_without_coupling():
    pulse = pulses.rectangularPulse(1.0, 1.0, detuning=0.5)
    solution = twoState.solveMSPair(0.0, pulse)
    np.testing.assert_allclose(solution.matrix(), np.diag([1.0, cmath.exp(-0.5j)]), atol=1e-15)
    with pytest.raises(DomainError):
        twoState.solveMSPair(-1.0, pulse)


def test_primed_power_matches_matrix_power():
    pulse = pulses.rectangularPulse(1.1, 1.0, detuning=0.9)
    solution = twoState.solveMSPair(1.4, pulse)
    for N in (1, 2, 7):
        ckN, phase = twoState.primedPower(solution, N)
        assert phase == approx(N * solution.delta)
        np.testing.assert_allclose(twoState.reassemblePairMatrix(ckN, phase),
                                   oracle.matrixPower(solution.matrix(), N), atol=1e-12)


def bruteForcePowers(pair, largest):
    matrix = pair.matrix()
    power = matrix.copy()
    for N in range(2, largest + 1):
        power = power @ matrix
        yield N, power


def test_power_matches_repeated_products():
    for _ in range(1000):
        pair = randomCk()
        for N, expected in bruteForcePowers(pair, 50):
            np.testing.assert_allclose(twoState.su2Power(pair, N).matrix(), expected, rtol=0, atol=1e-10)


def randomSmallAngleCk(theta, nearPi):
    axis = rng.normal(size=3)
    axis /= np.linalg.norm(axis)
    cosine = -math.cos(theta) if nearPi else math.cos(theta)
    return twoState.CKPair(complex(cosine, axis[0] * math.sin(theta)), complex(axis[1], axis[2]) * math.sin(theta)), axis


def test_power_with_small_sine():
    """Angles with 1e-8 < sin(theta) < 1e-6, near 0 and near pi, against the closed form in theta."""
    for case in range(100):
        theta = 10 ** rng.uniform(-8 + 1e-3, -6)
        nearPi = case % 2 == 1
        pair, axis = randomSmallAngleCk(theta, nearPi)
        assert 1e-8 < twoState.powerAngle(pair).sine < 1e-6
        for N in (1, 2, 3, 17, 50, int(rng.integers(51, 10000))):
            sign = (-1) ** (N + 1) if nearPi else 1
            expectedA = (-1) ** N * math.cos(N * theta) if nearPi else math.cos(N * theta)
            expectedA += 1j * sign * axis[0] * math.sin(N * theta)
            expectedB = sign * complex(axis[1], axis[2]) * math.sin(N * theta)
            power = twoState.su2Power(pair, N)
            assert power.a == approx(expectedA, abs=1e-12)
            assert power.b == approx(expectedB, abs=1e-12)


def test_power_with_large_count_past_the_degenerate_limit():
    """sin(theta) under the degenerate threshold while N theta is not small."""
    theta = 5e-9
    N = 10 ** 7
    power = twoState.su2Power(twoState.CKPair(math.cos(theta), -1j * math.sin(theta)), N)
    assert power.a == approx(math.cos(0.05), abs=1e-12)
    assert power.b == approx(-1j * math.sin(0.05), abs=1e-12)

    power = twoState.su2Power(twoState.CKPair(-math.cos(theta), -1j * math.sin(theta)), N)
    assert power.a == approx(math.cos(0.05), abs=1e-12)
    assert power.b == approx(1j * math.sin(0.05), abs=1e-12)
    power = twoState.su2Power(twoState.CKPair(-math.cos(theta), -1j * math.sin(theta)), N + 1)
    assert power.a == approx(-math.cos(0.05 + theta), abs=1e-12)
    assert power.b == approx(-1j * math.sin(0.05 + theta), abs=1e-12)


def test_power_composition():
    for _ in range(200):
        pair = randomCk()
        first, second = int(rng.integers(1, 30)), int(rng.integers(1, 30))
        nested = twoState.su2Power(twoState.su2Power(pair, first), second)
        direct = twoState.su2Power(pair, first * second)
        assert nested.a == approx(direct.a, abs=1e-10)
        assert nested.b == approx(direct.b, abs=1e-10)


def test_power_angle_matches_eigenphases():
    """The SU(2) matrix has eigenvalues exp(+-i theta)."""
    for _ in range(200):
        pair = randomCk()
        angle = twoState.powerAngle(pair)
        if angle.sine < 1e-3:
            continue
        phases = np.sort(np.angle(np.linalg.eigvals(pair.matrix())))
        assert phases[0] == approx(-angle.theta, abs=1e-10)
        assert phases[1] == approx(angle.theta, abs=1e-10)
        assert angle.sine == approx(math.sin(angle.theta), abs=1e-12)


def test_integrator_is_fourth_order():
    pulse = pulses.gaussianPulse(2.5, 4.0, detuning=0.3, chirpRate=-0.4)
    reference = twoState.solveTraceless(pulse, 4096).matrix()
    errors = [np.max(np.abs(twoState.solveTraceless(pulse, steps).matrix() - reference)) for steps in (64, 128, 256)]
    for coarse, fine in zip(errors[:-1], errors[1:]):
        assert 10 < coarse / fine < 22


def test_resonant_ms_pair_is_the_scaled_traceless_solution():
    shapes = [
        pulses.gaussianPulse(1.7 * cmath.exp(0.3j), 4.0),
        pulses.PulseShape("sin-squared", 2.2, 3.0),
        pulses.PulseShape("sampled", 1.4, 2.5, samples=[0.0, 0.6, 1.0, 0.3, 0.0]),
    ]
    for pulse in shapes:
        for coupling in rng.uniform(0.1, 3.0, size=5):
            solution = twoState.solveMSPair(coupling, pulse, 256)
            assert solution.delta == 0.0
            expected = twoState.solveTraceless(pulse.scaledRabi(coupling), 256)
            assert solution.ck.a == approx(expected.a, abs=1e-13)
            assert solution.ck.b == approx(expected.b, abs=1e-13)


def test_ms_pair_with_sampled_detuning_matches_oracle():
    for _ in range(100):
        samples = rng.uniform(-1.0, 1.0, size=int(rng.integers(3, 13)))
        pulse = pulses.PulseShape("gaussian", 1.5, 4.0, detuningKind="sampled", detuningSamples=samples)
        coupling = rng.uniform(0.3, 2.0)
        solution = twoState.solveMSPair(coupling, pulse, 1024)
        hamiltonian = oracle.TimeDependentHamiltonian(2, lambda t: twoState.pairHamiltonians(coupling, pulse, np.array([t]))[0])
        expected = oracle.integrate(hamiltonian, 4.0, 2048, pulse.breakpoints)
        np.testing.assert_allclose(solution.matrix(), expected, rtol=0, atol=1e-8)
        assert solution.delta == approx(float(np.sum(0.5 * (samples[:-1] + samples[1:]) * 4.0 / (samples.size - 1))), abs=1e-14)
