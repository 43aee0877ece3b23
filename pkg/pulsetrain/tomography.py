"""
Error Amplification (pulsetrain.tomography)
-------------------------------------------

Repeating a slightly wrong pulse N times amplifies its error coherently: a pulse meant to have power angle theta_0
but having theta_0 + epsilon produces N-pass populations that depend on N epsilon.  This module generates such
measurement series (optionally with binomial shot noise from a seeded generator) and estimates epsilon back from
them by least squares over a coarse grid followed by golden-section refinement.

The pulse model is the resonant one, a = cos(theta), b = -i sin(theta).
"""

import math

import numpy as np
import scipy.optimize

from . import pulses
from . import twoState
from . import majorana
from . import morrisShore
from .errors import DomainError, NonIdentifiableError

systemKinds = ("two-state", "majorana", "multipod")


class AmplificationModel(object):
    """Population model of an N-pass gate whose single-pass power angle is targetTheta + epsilon."""

    def __init__(self, systemKind, targetTheta, observable=None, states=None, omegas=None):
        """:class:`pulsetrain.tomography.AmplificationModel` initializer.

        :param systemKind: one of two-state, majorana, multipod.
        :type systemKind: :py:class:`str`
        :param targetTheta: nominal power angle in (0, pi).
        :type targetTheta: :py:class:`float`
        :param observable: (from, to) 1-based states of the measured population |U_to,from|^2; defaults to the corner
            element from state 1 to the last state.
        :type observable: :py:class:`tuple`
        :param states: number of states M for the majorana kind.
        :type states: :py:class:`int`
        :param omegas: ground-state couplings for the multipod kind.
        :type omegas: :py:class:`list`
        """
        if systemKind not in systemKinds:
            raise DomainError("unknown system kind \"" + str(systemKind) + "\", expected one of " + ", ".join(systemKinds))
        targetTheta = float(targetTheta)
        if not 0 < targetTheta < math.pi:
            raise DomainError("target theta must lie in (0, pi), got " + repr(targetTheta))
        self.systemKind = systemKind
        self.targetTheta = targetTheta
        self.states = None
        self.omegas = None
        if systemKind == "two-state":
            self.dimension = 2
        elif systemKind == "majorana":
            self.states = majorana.checkStates(states)
            self.dimension = self.states
        else:
            self.omegas = morrisShore.checkCouplings(omegas)[:, 0]
            self.dimension = self.omegas.size + 1

        if observable is None:
            observable = (1, self.dimension)
        observable = tuple(int(index) for index in observable)
        if len(observable) != 2 or not all(1 <= index <= self.dimension for index in observable):
            raise DomainError("observable " + str(observable) + " outside a " + str(self.dimension) + "-state system")
        self.observable = observable

    @property
    def name(self):
        if self.systemKind == "majorana":
            return "majorana-" + str(self.states)
        if self.systemKind == "multipod":
            return "multipod-" + str(self.omegas.size)
        return self.systemKind

    def ck(self, epsilon):
        """Returns the single-pass pair (cos(theta), -i sin(theta)) at theta = targetTheta + epsilon.

        :rtype: :class:`pulsetrain.twoState.CKPair`
        """
        theta = self.targetTheta + epsilon
        return twoState.CKPair(math.cos(theta), -1j * math.sin(theta))

    def population(self, epsilon, N):
        """Returns the observed N-pass population at error epsilon.

        :rtype: :py:class:`float`
        """
        start, end = self.observable
        if self.systemKind == "multipod":
            element = morrisShore.multipodNpass(self.omegas, self.ck(epsilon), 0.0, N)[end - 1, start - 1]
        else:
            element = majorana.wignerElement(twoState.su2Power(self.ck(epsilon), N), self.dimension, end, start)
        return min(1.0, abs(element) ** 2)


class MeasurementSeries(object):
    """Measured populations for a list of pass counts; shots is None for noise-free series."""

    def __init__(self, nValues, populations, shots=None):
        nValues = [twoState.checkPasses(N) for N in nValues]
        populations = np.asarray(populations, dtype=float)
        if len(nValues) != populations.size:
            raise DomainError("series has " + str(len(nValues)) + " pass counts but " + str(populations.size) + " populations")
        if np.any(populations < 0) or np.any(populations > 1):
            raise DomainError("populations must lie in [0, 1]")
        self.nValues = nValues
        self.populations = populations
        self.shots = shots

    def __repr__(self):
        return "MeasurementSeries(nValues=%r, shots=%r)" % (self.nValues, self.shots)


def modelPopulations(model, epsilon, nValues):
    """Returns the model curve: observed populations at error epsilon for each pass count.

    :rtype: :py:class:`numpy.ndarray`
    """
    return np.array([model.population(epsilon, N) for N in nValues])


def amplifiedSeries(model, epsilon, nValues, shots=None, seed=0):
    """Generates the measurement series of a gate with single-pass error epsilon.

    :param model: population model.
    :type model: :class:`pulsetrain.tomography.AmplificationModel`
    :param epsilon: error of the power angle, abs(epsilon) < 0.3.
    :type epsilon: :py:class:`float`
    :param nValues: pass counts.
    :type nValues: :py:class:`list`
    :param shots: shots per population; None for exact populations.
    :type shots: :py:class:`int`
    :param seed: seed of the binomial sampling.
    :type seed: :py:class:`int`

    :rtype: :class:`pulsetrain.tomography.MeasurementSeries`
    """
    halfwidth = pulses.paramsGlobal["tomography_halfwidth"]
    if not abs(epsilon) < halfwidth:
        raise DomainError("epsilon must satisfy |epsilon| < " + str(halfwidth) + ", got " + repr(epsilon))
    if len(nValues) == 0:
        raise DomainError("series needs at least one pass count")
    populations = modelPopulations(model, epsilon, nValues)
    if shots is not None:
        shots = int(shots)
        if shots < 1:
            raise DomainError("shots must be positive, got " + str(shots))
        rng = np.random.default_rng(seed)
        populations = rng.binomial(shots, populations) / shots
    return MeasurementSeries(nValues, populations, shots)


def _fitEpsilon(model, nValues, populations):
    def objective(epsilon):
        return float(np.sum((modelPopulations(model, epsilon, nValues) - populations) ** 2))

    halfwidth = pulses.paramsGlobal["tomography_halfwidth"]
    grid = np.linspace(-halfwidth, halfwidth, pulses.paramsGlobal["tomography_grid_points"])
    residuals = np.array([objective(epsilon) for epsilon in grid])
    if np.ptp(residuals) <= 1e-14 * max(1.0, residuals.max()):
        raise NonIdentifiableError("populations do not depend on epsilon; the error is not identifiable from this series")

    best = int(np.argmin(residuals))
    low, high = grid[max(best - 1, 0)], grid[min(best + 1, grid.size - 1)]
    if 0 < best < grid.size - 1 and residuals[best] < residuals[best - 1] and residuals[best] < residuals[best + 1]:
        result = scipy.optimize.minimize_scalar(objective, bracket=(low, grid[best], high), method="golden",
                                                options={"xtol": 1e-12, "maxiter": pulses.paramsGlobal["golden_maxiter"]})
    else:
        result = scipy.optimize.minimize_scalar(objective, bounds=(low, high), method="bounded", options={"xatol": 1e-12})
    epsilonHat = float(result.x)
    residual = float(result.fun)
    if residuals[best] < residual:
        epsilonHat, residual = float(grid[best]), float(residuals[best])

    # curves even in epsilon only fix its magnitude
    if epsilonHat < 0 and np.allclose(modelPopulations(model, epsilonHat, nValues), modelPopulations(model, -epsilonHat, nValues), rtol=0, atol=1e-12):
        epsilonHat = -epsilonHat
    return epsilonHat, residual


def estimateError(model, series):
    """Estimates the single-pass error epsilon from a multi-pass measurement series.

    When the model curve is even in epsilon (for instance theta_0 = pi/2) only the magnitude is identifiable and the
    nonnegative estimate is returned.

    :param model: population model.
    :type model: :class:`pulsetrain.tomography.AmplificationModel`
    :param series: measurements.
    :type series: :class:`pulsetrain.tomography.MeasurementSeries`

    :return: (epsilon estimate, sum of squared residuals)
    :rtype: :py:class:`tuple`
    """
    if len(set(series.nValues)) < 2:
        raise DomainError("error estimation needs at least two distinct pass counts")
    return _fitEpsilon(model, series.nValues, series.populations)


def estimateSinglePassError(model, population):
    """Estimates epsilon from the single-pass population alone, the baseline the multi-pass estimate improves on.

    :return: (epsilon estimate, squared residual)
    :rtype: :py:class:`tuple`
    """
    return _fitEpsilon(model, [1], np.array([population], dtype=float))


def errorAmplitude(model, epsilon, N):
    """Returns sqrt(|p(epsilon) - p(0)|) of the N-pass population, which grows like N epsilon for small errors.

    :rtype: :py:class:`float`
    """
    return math.sqrt(abs(model.population(epsilon, N) - model.population(0.0, N)))


def cornerDeviation(M, epsilon, N=1, targetTheta=math.pi / 2):
    """Returns 1 - |U_1M|^2 of the N-pass M-state propagator at theta = targetTheta + epsilon.

    :rtype: :py:class:`float`
    """
    model = AmplificationModel("majorana", targetTheta, states=M)
    _, corner, _, _ = majorana.cornerElements(twoState.su2Power(model.ck(epsilon), N), model.states)
    return 1.0 - abs(corner) ** 2
