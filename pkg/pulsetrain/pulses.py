"""
Pulse Shapes (pulsetrain.pulses)
--------------------------------

This module provides the :class:`pulsetrain.pulses.PulseShape` class describing a single pulse (Rabi envelope,
detuning profile and duration), along with the quadratures that reduce a pulse to its scalars: the pulse area and the
accumulated detuning.

It also holds the package-wide numerical parameters, loaded from ``conf/default_params.json`` and overridable through
:func:`setGlobals` or, for the integration grid, the ``PULSETRAIN_STEPS`` environment variable.
"""

import os
import copy
import json

import numpy as np
from scipy.integrate import simpson, trapezoid

from . import oracle
from .errors import DomainError

paramsPath = os.path.join(os.path.dirname(__file__), 'conf/default_params.json')

paramsGlobal = None
with open(paramsPath, 'r') as fh:
    paramsGlobal = json.load(fh)

stepsEnvironmentVariable = "PULSETRAIN_STEPS"

envelopeKinds = ("rectangular", "gaussian", "sin-squared", "sampled")
detuningKinds = ("constant", "chirp", "sampled")


def setGlobals(params):
    """Sets global parameters.  Keys missing from params keep their current values.

    :param params: dictionary of numerical parameters (see ``conf/default_params.json``).
    :type params: :py:class:`dict`
    """
    global paramsGlobal
    unknown = set(params) - set(paramsGlobal)
    if unknown:
        raise DomainError("unknown parameter(s): " + ", ".join(sorted(unknown)))
    newParams = dict(paramsGlobal)
    newParams.update(params)
    paramsGlobal = newParams


def defaultSteps():
    """Returns the number of integration/quadrature steps per pulse.

    :return: steps
    :rtype: :py:class:`int`
    """
    steps = os.environ.get(stepsEnvironmentVariable)
    if steps:
        try:
            steps = int(steps)
        except ValueError:
            raise DomainError(stepsEnvironmentVariable + " must be an integer, got \"" + steps + "\"")
    else:
        steps = paramsGlobal["integration_steps"]
    if steps < 2:
        raise DomainError("integration steps must be at least 2, got " + str(steps))
    return steps


class PulseShape(object):
    """A single pulse: Rabi frequency Omega(t) = peakRabi * f(t) and detuning Delta(t) on [0, duration].

    Instances are treated as immutable; use :meth:`scaledRabi` and :meth:`scaledDetuning` to derive new pulses.
    """

    def __init__(self, kind, peakRabi, duration, center=None, width=None, samples=None,
                 detuningKind="constant", detuning=0.0, chirpRate=0.0, detuningSamples=None):
        """:class:`pulsetrain.pulses.PulseShape` initializer.

        :param kind: envelope kind, one of rectangular, gaussian, sin-squared, sampled.
        :type kind: :py:class:`str`
        :param peakRabi: peak Rabi frequency Omega_0 (complex phase allowed).
        :type peakRabi: :py:class:`complex`
        :param duration: pulse duration T > 0.
        :type duration: :py:class:`float`
        :param center: gaussian center, defaults to T/2.
        :type center: :py:class:`float`
        :param width: gaussian standard deviation, defaults to T/6.
        :type width: :py:class:`float`
        :param samples: envelope values on a uniform grid over [0, T] for the sampled kind.
        :type samples: :py:class:`list`
        :param detuningKind: one of constant, chirp, sampled.
        :type detuningKind: :py:class:`str`
        :param detuning: constant detuning, or the chirp offset Delta_0.
        :type detuning: :py:class:`float`
        :param chirpRate: chirp rate beta of Delta_0 + beta t.
        :type chirpRate: :py:class:`float`
        :param detuningSamples: detuning values on a uniform grid over [0, T] for the sampled detuning kind.
        :type detuningSamples: :py:class:`list`
        """
        if kind not in envelopeKinds:
            raise DomainError("unknown pulse kind \"" + str(kind) + "\", expected one of " + ", ".join(envelopeKinds))
        if detuningKind not in detuningKinds:
            raise DomainError("unknown detuning kind \"" + str(detuningKind) + "\", expected one of " + ", ".join(detuningKinds))

        duration = float(duration)
        if not np.isfinite(duration) or duration <= 0:
            raise DomainError("pulse duration must be positive, got " + str(duration))
        peakRabi = complex(peakRabi)
        if not np.isfinite(peakRabi):
            raise DomainError("peak Rabi frequency must be finite")

        self.kind = kind
        self.peakRabi = peakRabi
        self.duration = duration
        self.center = None
        self.width = None
        self.samples = None

        if kind == "gaussian":
            self.center = duration / 2.0 if center is None else float(center)
            self.width = duration / 6.0 if width is None else float(width)
            if not 0 <= self.center <= duration:
                raise DomainError("gaussian center must lie inside [0, T]")
            if not self.width > 0:
                raise DomainError("gaussian width must be positive")
        elif kind == "sampled":
            values = np.asarray(samples if samples is not None else [], dtype=float)
            if values.ndim != 1 or values.size < 2:
                raise DomainError("sampled envelope needs at least two samples")
            if not np.all(np.isfinite(values)):
                raise DomainError("sampled envelope values must be finite")
            peak = np.max(np.abs(values))
            self.samples = values / peak if peak > 0 else values

        self.detuningKind = detuningKind
        self.detuning = float(detuning)
        self.chirpRate = float(chirpRate) if detuningKind == "chirp" else 0.0
        self.detuningSamples = None
        if detuningKind == "sampled":
            values = np.asarray(detuningSamples if detuningSamples is not None else [], dtype=float)
            if values.ndim != 1 or values.size < 2:
                raise DomainError("sampled detuning needs at least two samples")
            if not np.all(np.isfinite(values)):
                raise DomainError("sampled detuning values must be finite")
            self.detuningSamples = values
            self.detuning = 0.0
        if not (np.isfinite(self.detuning) and np.isfinite(self.chirpRate)):
            raise DomainError("detuning parameters must be finite")

    def __repr__(self):
        return "PulseShape(kind=%r, peakRabi=%r, duration=%r, detuningKind=%r)" % (self.kind, self.peakRabi, self.duration, self.detuningKind)

    @property
    def isResonant(self):
        """True when Delta(t) vanishes identically."""
        if self.detuningKind == "sampled":
            return not np.any(self.detuningSamples)
        return self.detuning == 0 and self.chirpRate == 0

    @property
    def breakpoints(self):
        """Interior sample times of the sampled profiles, where the linear interpolants of Omega(t) and Delta(t) have
        kinks.  Empty for analytic pulses."""
        points = [np.linspace(0.0, self.duration, values.size)[1:-1]
                  for values in (self.samples, self.detuningSamples) if values is not None]
        if not points:
            return np.empty(0)
        return np.unique(np.concatenate(points))

    @property
    def hasConstantHamiltonian(self):
        """True when both Omega(t) and Delta(t) are constant on [0, T]."""
        return self.kind == "rectangular" and self.detuningKind == "constant"

    def envelope(self, times):
        """Returns the normalized envelope f(t) at the given times (no domain check).

        :param times: times in [0, T].
        :type times: :py:class:`numpy.ndarray`

        :return: envelope values.
        :rtype: :py:class:`numpy.ndarray`
        """
        times = np.asarray(times, dtype=float)
        if self.kind == "rectangular":
            return np.ones_like(times)
        elif self.kind == "gaussian":
            return np.exp(-0.5 * ((times - self.center) / self.width) ** 2)
        elif self.kind == "sin-squared":
            return np.sin(np.pi * times / self.duration) ** 2
        grid = np.linspace(0.0, self.duration, self.samples.size)
        return np.interp(times, grid, self.samples)

    def rabi(self, times):
        """Returns Omega(t) = peakRabi * f(t).

        :param times: times in [0, T].
        :type times: :py:class:`numpy.ndarray`

        :return: complex Rabi frequencies.
        :rtype: :py:class:`numpy.ndarray`
        """
        return self.peakRabi * self.envelope(times)

    def detuningAt(self, times):
        """Returns Delta(t).

        :param times: times in [0, T].
        :type times: :py:class:`numpy.ndarray`

        :return: detunings.
        :rtype: :py:class:`numpy.ndarray`
        """
        times = np.asarray(times, dtype=float)
        if self.detuningKind == "constant":
            return np.full_like(times, self.detuning)
        elif self.detuningKind == "chirp":
            return self.detuning + self.chirpRate * times
        grid = np.linspace(0.0, self.duration, self.detuningSamples.size)
        return np.interp(times, grid, self.detuningSamples)

    def scaledRabi(self, factor):
        """Returns a copy of the pulse with Omega_0 multiplied by factor.

        :param factor: complex scale factor.
        :type factor: :py:class:`complex`

        :return: scaled pulse.
        :rtype: :class:`pulsetrain.pulses.PulseShape`
        """
        scaled = copy.deepcopy(self)
        scaled.peakRabi = self.peakRabi * complex(factor)
        return scaled

    def scaledDetuning(self, factor):
        """Returns a copy of the pulse with Delta(t) multiplied by factor.

        :param factor: real scale factor.
        :type factor: :py:class:`float`

        :return: scaled pulse.
        :rtype: :class:`pulsetrain.pulses.PulseShape`
        """
        scaled = copy.deepcopy(self)
        scaled.detuning = self.detuning * factor
        scaled.chirpRate = self.chirpRate * factor
        if self.detuningSamples is not None:
            scaled.detuningSamples = self.detuningSamples * factor
        return scaled


def rectangularPulse(peakRabi, duration, detuning=0.0, chirpRate=None):
    """Convenience constructor for a rectangular pulse with constant or linearly chirped detuning.

    :param peakRabi: Rabi frequency.
    :type peakRabi: :py:class:`complex`
    :param duration: pulse duration.
    :type duration: :py:class:`float`
    :param detuning: constant detuning or chirp offset.
    :type detuning: :py:class:`float`
    :param chirpRate: chirp rate, None for constant detuning.
    :type chirpRate: :py:class:`float`

    :return: pulse
    :rtype: :class:`pulsetrain.pulses.PulseShape`
    """
    if chirpRate is None:
        return PulseShape("rectangular", peakRabi, duration, detuning=detuning)
    return PulseShape("rectangular", peakRabi, duration, detuningKind="chirp", detuning=detuning, chirpRate=chirpRate)


def gaussianPulse(peakRabi, duration, center=None, width=None, detuning=0.0, chirpRate=None):
    """Convenience constructor for a truncated gaussian pulse.

    :return: pulse
    :rtype: :class:`pulsetrain.pulses.PulseShape`
    """
    if chirpRate is None:
        return PulseShape("gaussian", peakRabi, duration, center=center, width=width, detuning=detuning)
    return PulseShape("gaussian", peakRabi, duration, center=center, width=width, detuningKind="chirp", detuning=detuning, chirpRate=chirpRate)


def _checkedTimes(pulse, t):
    times = np.asarray(t, dtype=float)
    slack = 1e-12 * pulse.duration
    if np.any(~np.isfinite(times)) or np.any(times < -slack) or np.any(times > pulse.duration + slack):
        raise DomainError("time " + str(t) + " outside the pulse interval [0, " + str(pulse.duration) + "]")
    return np.clip(times, 0.0, pulse.duration)


def evaluate(pulse, t):
    """Evaluates the pulse at time t.

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param t: time in [0, T].
    :type t: :py:class:`float`

    :return: (Rabi frequency, detuning)
    :rtype: :py:class:`tuple`
    """
    times = _checkedTimes(pulse, t)
    return complex(pulse.rabi(times)), float(pulse.detuningAt(times))


def integrationGrid(pulse, steps=None):
    """Returns the uniform time grid with steps intervals over [0, T].

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param steps: number of intervals, defaults to :func:`defaultSteps`.
    :type steps: :py:class:`int`

    :return: grid of steps + 1 times.
    :rtype: :py:class:`numpy.ndarray`
    """
    if steps is None:
        steps = defaultSteps()
    if steps < 2:
        raise DomainError("integration steps must be at least 2, got " + str(steps))
    return np.linspace(0.0, pulse.duration, int(steps) + 1)


def stepBoundaries(pulse, steps=None):
    """Returns the propagation step boundaries: the integration grid split further at the pulse breakpoints, so that
    no step straddles a kink of a sampled profile.

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param steps: number of uniform intervals, defaults to :func:`defaultSteps`.
    :type steps: :py:class:`int`

    :rtype: :py:class:`numpy.ndarray`
    """
    grid = integrationGrid(pulse, steps)
    return oracle.stepTimes(pulse.duration, grid.size - 1, pulse.breakpoints)


def _sampleGrid(pulse, values):
    return np.linspace(0.0, pulse.duration, values.size)


def accumulatedDetuning(pulse, steps=None):
    """Calculates delta, the integral of Delta(t) over the pulse.

    Constant detuning is integrated in closed form and sampled detuning exactly, by the trapezoid rule on its own
    nodes; the chirp goes through composite Simpson quadrature on the integration grid.

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param steps: quadrature intervals, defaults to the integration grid.
    :type steps: :py:class:`int`

    :return: delta
    :rtype: :py:class:`float`
    """
    if pulse.detuningKind == "constant":
        return pulse.detuning * pulse.duration
    if pulse.detuningKind == "sampled":
        return float(trapezoid(pulse.detuningSamples, x=_sampleGrid(pulse, pulse.detuningSamples)))
    times = integrationGrid(pulse, steps)
    return float(simpson(pulse.detuningAt(times), x=times))


def pulseArea(pulse, steps=None):
    """Calculates the pulse area A, the integral of abs(Omega(t)) over the pulse.

    Sampled envelopes are integrated exactly, segment by segment, including segments where the interpolant changes
    sign.

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param steps: quadrature intervals, defaults to the integration grid.
    :type steps: :py:class:`int`

    :return: area
    :rtype: :py:class:`float`
    """
    if pulse.kind == "rectangular":
        return abs(pulse.peakRabi) * pulse.duration
    if pulse.kind == "sampled":
        left, right = pulse.samples[:-1], pulse.samples[1:]
        width = pulse.duration / (pulse.samples.size - 1)
        total = np.abs(left) + np.abs(right)
        crossing = left * right < 0
        # |y| over a segment through zero integrates to (y0^2 + y1^2) / (2 (|y0| + |y1|)) per unit width
        segments = np.where(crossing, (left ** 2 + right ** 2) / np.where(crossing, total, 1.0), total) * 0.5 * width
        return abs(pulse.peakRabi) * float(np.sum(segments))
    times = integrationGrid(pulse, steps)
    return float(simpson(np.abs(pulse.rabi(times)), x=times))
