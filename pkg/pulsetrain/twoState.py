"""
Two-State Propagators (pulsetrain.twoState)
-------------------------------------------

Cayley-Klein (CK) parameters of single pulses and their N-th powers.

A CK pair (a, b) with abs(a)**2 + abs(b)**2 = 1 parameterizes the SU(2) propagator ``[[a, b], [-b*, a*]]`` of the
traceless two-state Hamiltonian ``H = 1/2 [[-Delta, Omega], [Omega*, Delta]]``.  The Morris-Shore pairs use the
Hamiltonian ``[[0, lambda Omega / 2], [lambda Omega* / 2, Delta]]`` instead, whose propagator is ``exp(-i delta / 2)``
times an SU(2) matrix; :class:`MSPairSolution` stores that SU(2) part (the primed pair) together with delta.
"""

import cmath
import math

import numpy as np

from . import pulses
from .errors import DomainError, NumericError


class CKPair(object):
    """Cayley-Klein pair (a, b).

    Inputs whose norm misses 1 by more than the ``ck_norm_reject`` parameter are rejected, smaller deviations are
    renormalized away.
    """

    def __init__(self, a, b):
        """:class:`pulsetrain.twoState.CKPair` initializer.

        :param a: diagonal CK parameter.
        :type a: :py:class:`complex`
        :param b: off-diagonal CK parameter.
        :type b: :py:class:`complex`
        """
        a = complex(a)
        b = complex(b)
        if not (cmath.isfinite(a) and cmath.isfinite(b)):
            raise NumericError("CK parameters must be finite, got a=" + str(a) + ", b=" + str(b))
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > pulses.paramsGlobal["ck_norm_reject"]:
            raise DomainError("CK parameters are not normalized: |a|^2 + |b|^2 = " + repr(norm))
        if norm != 1.0:
            scale = 1.0 / math.sqrt(norm)
            a *= scale
            b *= scale
        self.a = a
        self.b = b

    def __repr__(self):
        return "CKPair(a=%r, b=%r)" % (self.a, self.b)

    def matrix(self):
        """Returns the 2x2 SU(2) matrix [[a, b], [-b*, a*]].

        :rtype: :py:class:`numpy.ndarray`
        """
        return np.array([[self.a, self.b], [-self.b.conjugate(), self.a.conjugate()]], dtype=complex)


class PowerAngle(object):
    """The angle theta in [0, pi] with cos(theta) = Re a, plus its sine."""

    def __init__(self, theta, sine):
        self.theta = theta
        self.sine = sine

    def __repr__(self):
        return "PowerAngle(theta=%r)" % self.theta


class MSPairSolution(object):
    """Solution of one Morris-Shore two-state system: the primed CK pair (a', b') and the accumulated detuning delta.

    The pair propagator is ``exp(-i delta / 2) [[a', b'], [-b'*, a'*]]``, so its unprimed elements are
    a = a' exp(-i delta / 2) and b = b' exp(-i delta / 2).
    """

    def __init__(self, ck, delta):
        """:class:`pulsetrain.twoState.MSPairSolution` initializer.

        :param ck: primed CK pair.
        :type ck: :class:`pulsetrain.twoState.CKPair`
        :param delta: accumulated detuning.
        :type delta: :py:class:`float`
        """
        self.ck = ck
        self.delta = float(delta)

    def __repr__(self):
        return "MSPairSolution(ck=%r, delta=%r)" % (self.ck, self.delta)

    def unprimed(self):
        """Returns the unprimed pair (a, b), i.e. the top row of the pair propagator.

        :rtype: :class:`pulsetrain.twoState.CKPair`
        """
        phase = cmath.exp(-0.5j * self.delta)
        return CKPair(self.ck.a * phase, self.ck.b * phase)

    def matrix(self):
        """Returns the 2x2 pair propagator, whose determinant is exp(-i delta).

        :rtype: :py:class:`numpy.ndarray`
        """
        return reassemblePairMatrix(self.unprimed(), self.delta)


def reassemblePairMatrix(ck, phase):
    """Builds [[a, b], [-b* exp(-i phase), a* exp(-i phase)]] from an unprimed pair.

    :param ck: unprimed pair (top row of the matrix).
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param phase: accumulated phase; the determinant is exp(-i phase).
    :type phase: :py:class:`float`

    :rtype: :py:class:`numpy.ndarray`
    """
    rotation = cmath.exp(-1j * phase)
    return np.array([[ck.a, ck.b], [-ck.b.conjugate() * rotation, ck.a.conjugate() * rotation]], dtype=complex)


def ckFromMatrix(matrix):
    """Reads the CK pair off the top row of a 2x2 SU(2) matrix.

    :param matrix: 2x2 matrix.
    :type matrix: :py:class:`numpy.ndarray`

    :rtype: :class:`pulsetrain.twoState.CKPair`
    """
    matrix = np.asarray(matrix)
    if matrix.shape != (2, 2):
        raise DomainError("expected a 2x2 matrix, got shape " + str(matrix.shape))
    return CKPair(matrix[0, 0], matrix[0, 1])


def composeCk(first, second):
    """Returns the CK pair of the SU(2) product first.matrix() @ second.matrix().

    :param first: left factor.
    :type first: :class:`pulsetrain.twoState.CKPair`
    :param second: right factor.
    :type second: :class:`pulsetrain.twoState.CKPair`

    :rtype: :class:`pulsetrain.twoState.CKPair`
    """
    return CKPair(first.a * second.a - first.b * second.b.conjugate(),
                  first.a * second.b + first.b * second.a.conjugate())


def checkPasses(N):
    """Validates a pass count and returns it as an :py:class:`int`."""
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise DomainError("number of passes must be a positive integer, got " + str(N))
    return int(N)


def powerAngle(ck):
    """Returns theta = arccos(clamp(Re a, -1, 1)).

    The angle is evaluated as atan2(sqrt(Im(a)**2 + abs(b)**2), Re a), the same angle, which keeps full relative
    precision in sin(theta) near theta = 0 and theta = pi.

    :param ck: CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`

    :rtype: :class:`pulsetrain.twoState.PowerAngle`
    """
    sine = math.hypot(ck.a.imag, abs(ck.b))
    cosine = max(-1.0, min(1.0, ck.a.real))
    return PowerAngle(math.atan2(sine, cosine), sine)


def su2Power(ck, N):
    """Returns the CK pair of the N-th power of the SU(2) matrix of ck.

    a_N = cos(N theta) + i Im(a) sin(N theta) / sin(theta) and b_N = b sin(N theta) / sin(theta).  Both are
    evaluated through the angle phi between theta and the nearer of 0 and pi, using cos(N (pi - phi)) =
    (-1)**N cos(N phi) and sin(N (pi - phi)) = (-1)**(N+1) sin(N phi), so that theta close to pi keeps full
    precision.  When N sin(theta) is below the ``degenerate_sine`` parameter the ratio takes its limit, N at
    theta = 0 and N (-1)**(N+1) at theta = pi.

    :param ck: single-pass CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :class:`pulsetrain.twoState.CKPair`
    """
    N = checkPasses(N)
    angle = powerAngle(ck)
    phi = math.atan2(angle.sine, abs(ck.a.real))
    nearPi = ck.a.real < 0
    sign = (-1) ** (N + 1) if nearPi else 1
    if N * angle.sine < pulses.paramsGlobal["degenerate_sine"]:
        ratio = sign * N
    else:
        ratio = sign * math.sin(N * phi) / angle.sine
    cosine = (-1) ** N * math.cos(N * phi) if nearPi else math.cos(N * phi)
    return CKPair(cosine + 1j * ck.a.imag * ratio, ck.b * ratio)


def primedPower(solution, N):
    """Returns the N-pass pair of a Morris-Shore pair solution.

    The result (a'_N, b'_N) is the su2Power of the primed pair times exp(-i N delta / 2); it is the top row of the
    N-th power of the pair propagator, which equals ``reassemblePairMatrix(ckN, N * delta)``.

    :param solution: single-pass pair solution.
    :type solution: :class:`pulsetrain.twoState.MSPairSolution`
    :param N: number of passes.
    :type N: :py:class:`int`

    :return: (ckN, total phase N delta)
    :rtype: :py:class:`tuple`
    """
    N = checkPasses(N)
    power = su2Power(solution.ck, N)
    phase = cmath.exp(-0.5j * N * solution.delta)
    return CKPair(power.a * phase, power.b * phase), N * solution.delta


def _constantSU2(rabi, detuning, duration):
    # exp(-i H T) for H = 1/2 [[-Delta, Omega], [Omega*, Delta]]
    frequency = 0.5 * math.hypot(detuning, abs(rabi))
    if frequency == 0:
        return CKPair(1.0, 0.0)
    phase = frequency * duration
    sinc = math.sin(phase) / frequency
    if detuning == 0:
        return CKPair(math.cos(phase), -0.5j * rabi * sinc)
    return CKPair(math.cos(phase) + 0.5j * detuning * sinc, -0.5j * rabi * sinc)


def _propagate(hamiltonians, boundaries):
    # classical RK4 on the full 2x2 matrix; hamiltonians sampled at every boundary and every step midpoint
    U = np.eye(2, dtype=complex)
    for n, h in enumerate(np.diff(boundaries)):
        H0, Hm, H1 = hamiltonians[2 * n], hamiltonians[2 * n + 1], hamiltonians[2 * n + 2]
        k1 = -1j * (H0 @ U)
        k2 = -1j * (Hm @ (U + 0.5 * h * k1))
        k3 = -1j * (Hm @ (U + 0.5 * h * k2))
        k4 = -1j * (H1 @ (U + h * k3))
        U = U + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
    if not np.all(np.isfinite(U)):
        raise NumericError("two-state integration diverged")
    return U


def _stepNodes(pulse, steps):
    boundaries = pulses.stepBoundaries(pulse, steps)
    nodes = np.empty(2 * boundaries.size - 1)
    nodes[0::2] = boundaries
    nodes[1::2] = 0.5 * (boundaries[:-1] + boundaries[1:])
    return boundaries, nodes


def tracelessHamiltonians(pulse, times):
    """Returns the traceless Hamiltonians 1/2 [[-Delta, Omega], [Omega*, Delta]] at the given times.

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param times: times in [0, T].
    :type times: :py:class:`numpy.ndarray`

    :return: array of shape (len(times), 2, 2).
    :rtype: :py:class:`numpy.ndarray`
    """
    rabi = pulse.rabi(times)
    detuning = pulse.detuningAt(times)
    hamiltonians = np.empty((len(times), 2, 2), dtype=complex)
    hamiltonians[:, 0, 0] = -0.5 * detuning
    hamiltonians[:, 1, 1] = 0.5 * detuning
    hamiltonians[:, 0, 1] = 0.5 * rabi
    hamiltonians[:, 1, 0] = 0.5 * np.conj(rabi)
    return hamiltonians


def pairHamiltonians(coupling, pulse, times):
    """Returns the Morris-Shore pair Hamiltonians [[0, lambda Omega / 2], [lambda Omega* / 2, Delta]].

    :param coupling: MS coupling lambda.
    :type coupling: :py:class:`float`
    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param times: times in [0, T].
    :type times: :py:class:`numpy.ndarray`

    :return: array of shape (len(times), 2, 2).
    :rtype: :py:class:`numpy.ndarray`
    """
    rabi = coupling * pulse.rabi(times)
    hamiltonians = np.zeros((len(times), 2, 2), dtype=complex)
    hamiltonians[:, 1, 1] = pulse.detuningAt(times)
    hamiltonians[:, 0, 1] = 0.5 * rabi
    hamiltonians[:, 1, 0] = 0.5 * np.conj(rabi)
    return hamiltonians


def solveTraceless(pulse, steps=None):
    """Calculates the CK pair of the propagator of the traceless two-state Hamiltonian over one pulse.

    Rectangular pulses with constant detuning take the closed-form Rabi solution; everything else is integrated by
    fixed-step RK4 on :func:`pulsetrain.pulses.stepBoundaries`, which never straddles a kink of a sampled profile.

    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param steps: RK4 steps, defaults to the integration grid.
    :type steps: :py:class:`int`

    :rtype: :class:`pulsetrain.twoState.CKPair`
    """
    if pulse.hasConstantHamiltonian:
        return _constantSU2(pulse.peakRabi, pulse.detuning, pulse.duration)
    boundaries, times = _stepNodes(pulse, steps)
    U = _propagate(tracelessHamiltonians(pulse, times), boundaries)
    return CKPair(U[0, 0], U[0, 1])


def solveMSPair(coupling, pulse, steps=None):
    """Solves one Morris-Shore two-state system with coupling lambda.

    The pair propagator U is factored as exp(-i delta / 2) times an SU(2) matrix, delta from
    :func:`pulsetrain.pulses.accumulatedDetuning`; the returned primed pair is (U00, U01) exp(i delta / 2).

    :param coupling: MS coupling lambda >= 0.
    :type coupling: :py:class:`float`
    :param pulse: pulse.
    :type pulse: :class:`pulsetrain.pulses.PulseShape`
    :param steps: RK4 steps, defaults to the integration grid.
    :type steps: :py:class:`int`

    :rtype: :class:`pulsetrain.twoState.MSPairSolution`
    """
    coupling = float(coupling)
    if not coupling >= 0:
        raise DomainError("MS coupling must be nonnegative, got " + str(coupling))
    delta = pulses.accumulatedDetuning(pulse, steps)
    if coupling == 0:
        return MSPairSolution(CKPair(cmath.exp(0.5j * delta), 0.0), delta)
    if pulse.hasConstantHamiltonian:
        # [[0, c], [c*, Delta]] = Delta / 2 + traceless part
        return MSPairSolution(_constantSU2(coupling * pulse.peakRabi, pulse.detuning, pulse.duration), delta)
    boundaries, times = _stepNodes(pulse, steps)
    U = _propagate(pairHamiltonians(coupling, pulse, times), boundaries)
    phase = cmath.exp(0.5j * delta)
    return MSPairSolution(CKPair(U[0, 0] * phase, U[0, 1] * phase), delta)
