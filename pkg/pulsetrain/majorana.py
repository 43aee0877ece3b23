"""
Majorana Systems (pulsetrain.majorana)
--------------------------------------

M-state systems whose Hamiltonian is the spin-(M-1)/2 image of the traceless two-state Hamiltonian.  The whole M x M
propagator follows from the single CK pair (a, b) of the two-state problem through the Wigner rotation-matrix
elements, and the N-pass propagator follows from the N-pass pair.  Both N-pass routes are provided: direct
substitution of (a_N, b_N) and diagonalization through the eigenvector parameters (u, v).

Indices k and l are 1-based throughout, state 1 being the first row.
"""

import cmath
import functools
import math

import numpy as np

from . import pulses
from . import twoState
from .errors import DomainError, DegenerateAngleError


class MajoranaSystem(object):
    """An M-state Majorana system driven by one pulse."""

    def __init__(self, M, pulse):
        """:class:`pulsetrain.majorana.MajoranaSystem` initializer.

        :param M: number of states, 2 <= M <= 30.
        :type M: :py:class:`int`
        :param pulse: pulse.
        :type pulse: :class:`pulsetrain.pulses.PulseShape`
        """
        self.M = checkStates(M)
        self.pulse = pulse

    def hamiltonian(self, t):
        """Returns H(t).

        :param t: time in [0, T].
        :type t: :py:class:`float`

        :rtype: :py:class:`numpy.ndarray`
        """
        rabi, detuning = pulses.evaluate(self.pulse, t)
        return buildHamiltonian(self.M, rabi, detuning)


class MajoranaPropagator(object):
    """M x M propagator generated by the CK pair sourceCk."""

    def __init__(self, M, matrix, sourceCk, nPasses=1):
        self.M = M
        self.matrix = matrix
        self.sourceCk = sourceCk
        self.nPasses = nPasses

    def __repr__(self):
        return "MajoranaPropagator(M=%r, nPasses=%r, sourceCk=%r)" % (self.M, self.nPasses, self.sourceCk)


class DiagFactors(object):
    """Eigenvector parameters (u, v) and power angle theta of a CK pair, with a = |u|^2 e^{-i theta} + |v|^2 e^{i theta}
    and b = 2 i u v sin(theta)."""

    def __init__(self, u, v, theta):
        self.u = u
        self.v = v
        self.theta = theta

    def __repr__(self):
        return "DiagFactors(u=%r, v=%r, theta=%r)" % (self.u, self.v, self.theta)


def checkStates(M):
    """Validates the number of states and returns it as an :py:class:`int`."""
    if isinstance(M, bool) or int(M) != M:
        raise DomainError("number of states must be an integer, got " + str(M))
    M = int(M)
    if M < 2:
        raise DomainError("number of states must satisfy M >= 2, got " + str(M))
    if M > pulses.paramsGlobal["max_majorana_states"]:
        raise DomainError("number of states must satisfy M <= " + str(pulses.paramsGlobal["max_majorana_states"]) + ", got " + str(M))
    return M


def buildHamiltonian(M, rabi, detuning):
    """Builds the tridiagonal Majorana Hamiltonian.

    H_kk = (k - (M+1)/2) Delta and H_{k,k+1} = conj(H_{k+1,k}) = sqrt(k (M-k)) Omega / 2, which reduces to
    1/2 [[-Delta, Omega], [Omega*, Delta]] at M = 2.

    :param M: number of states.
    :type M: :py:class:`int`
    :param rabi: Rabi frequency Omega.
    :type rabi: :py:class:`complex`
    :param detuning: detuning Delta.
    :type detuning: :py:class:`float`

    :rtype: :py:class:`numpy.ndarray`
    """
    M = checkStates(M)
    k = np.arange(1, M + 1)
    hamiltonian = np.diag((k - 0.5 * (M + 1)) * detuning).astype(complex)
    couplings = 0.5 * np.sqrt(k[:-1] * (M - k[:-1])) * rabi
    hamiltonian[k[:-1] - 1, k[:-1]] = couplings
    hamiltonian[k[:-1], k[:-1] - 1] = np.conj(couplings)
    return hamiltonian


@functools.lru_cache(maxsize=None)
def _wignerTerms(M):
    # (coefficient, exponent of a, of a*, of b, of -b*) for every r with nonnegative factorial arguments
    factorials = [math.factorial(n) for n in range(M + 1)]
    terms = {}
    for k in range(1, M + 1):
        for l in range(1, M + 1):
            numerator = factorials[k - 1] * factorials[l - 1] * factorials[M - k] * factorials[M - l]
            elementTerms = []
            for r in range(max(0, l - k), min(l - 1, M - k) + 1):
                denominator = factorials[l - 1 - r] * factorials[M - k - r] * factorials[r - l + k] * factorials[r]
                elementTerms.append((math.sqrt(numerator / (denominator * denominator)), M - k - r, l - 1 - r, r, r - l + k))
            terms[(k, l)] = tuple(elementTerms)
    return terms


def _powers(value, count):
    powers = [1.0 + 0j]
    for _ in range(count - 1):
        powers.append(powers[-1] * value)
    return powers


def _wignerSum(terms, aPowers, aConjPowers, bPowers, bConjPowers):
    return sum(coefficient * aPowers[p] * aConjPowers[q] * bPowers[r] * bConjPowers[s] for coefficient, p, q, r, s in terms)


def wignerElement(ck, M, k, l):
    """Calculates the (k, l) element of the M-state propagator generated by ck.

    The sum runs over r from max(0, l-k) to min(l-1, M-k), the range on which every factorial argument is
    nonnegative.

    :param ck: CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param M: number of states.
    :type M: :py:class:`int`
    :param k: row, 1-based.
    :type k: :py:class:`int`
    :param l: column, 1-based.
    :type l: :py:class:`int`

    :rtype: :py:class:`complex`
    """
    M = checkStates(M)
    if not (1 <= k <= M and 1 <= l <= M):
        raise DomainError("element (" + str(k) + ", " + str(l) + ") outside a " + str(M) + "-state propagator")
    a, b = ck.a, ck.b
    return complex(_wignerSum(_wignerTerms(M)[(int(k), int(l))], _powers(a, M), _powers(a.conjugate(), M),
                              _powers(b, M), _powers(-b.conjugate(), M)))


def _wignerMatrix(ck, M):
    a, b = ck.a, ck.b
    aPowers, aConjPowers = _powers(a, M), _powers(a.conjugate(), M)
    bPowers, bConjPowers = _powers(b, M), _powers(-b.conjugate(), M)
    terms = _wignerTerms(M)
    matrix = np.empty((M, M), dtype=complex)
    for k in range(1, M + 1):
        for l in range(1, M + 1):
            matrix[k - 1, l - 1] = _wignerSum(terms[(k, l)], aPowers, aConjPowers, bPowers, bConjPowers)
    return matrix


def propagatorFromCk(ck, M):
    """Assembles the full M-state propagator from a CK pair.

    :param ck: CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param M: number of states.
    :type M: :py:class:`int`

    :rtype: :class:`pulsetrain.majorana.MajoranaPropagator`
    """
    M = checkStates(M)
    return MajoranaPropagator(M, _wignerMatrix(ck, M), ck)


def singlePass(system, steps=None):
    """Calculates the single-pulse propagator of a Majorana system from the two-state CK pair of its pulse.

    :param system: Majorana system.
    :type system: :class:`pulsetrain.majorana.MajoranaSystem`
    :param steps: RK4 steps for non-analytic pulses.
    :type steps: :py:class:`int`

    :rtype: :class:`pulsetrain.majorana.MajoranaPropagator`
    """
    return propagatorFromCk(twoState.solveTraceless(system.pulse, steps), system.M)


def npassPropagator(ck, M, N):
    """Calculates the N-pass propagator by substituting the N-pass CK pair into the Wigner elements.

    :param ck: single-pass CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param M: number of states.
    :type M: :py:class:`int`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :class:`pulsetrain.majorana.MajoranaPropagator`
    """
    N = twoState.checkPasses(N)
    propagator = propagatorFromCk(twoState.su2Power(ck, N), M)
    propagator.nPasses = N
    return propagator


def diagFactors(ck):
    """Calculates the eigenvector parameters (u, v) of a CK pair.

    abs(u)**2 = (sin(theta) - Im a) / (2 sin(theta)), abs(v)**2 = (sin(theta) + Im a) / (2 sin(theta)) and
    u v = -i b / (2 sin(theta)).  The gauge takes u real and nonnegative; when u vanishes, v is taken real and
    nonnegative instead.

    :param ck: CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`

    :rtype: :class:`pulsetrain.majorana.DiagFactors`
    """
    angle = twoState.powerAngle(ck)
    sine = angle.sine
    if sine <= pulses.paramsGlobal["degenerate_sine"]:
        raise DegenerateAngleError("sin(theta) = " + repr(sine) + " is degenerate; use npassPropagator, which handles this limit")
    uSquared = max(0.0, (sine - ck.a.imag) / (2 * sine))
    vSquared = max(0.0, (sine + ck.a.imag) / (2 * sine))
    u = math.sqrt(uSquared)
    if u < pulses.paramsGlobal["gauge_zero"]:
        return DiagFactors(0.0 + 0j, complex(math.sqrt(vSquared)), angle.theta)
    return DiagFactors(complex(u), -1j * ck.b / (2 * u * sine), angle.theta)


def npassCkFromDiagFactors(factors, N):
    """Returns (a_N, b_N) = (|u|^2 e^{-i N theta} + |v|^2 e^{i N theta}, 2 i u v sin(N theta)).

    :param factors: eigenvector parameters.
    :type factors: :class:`pulsetrain.majorana.DiagFactors`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :class:`pulsetrain.twoState.CKPair`
    """
    N = twoState.checkPasses(N)
    angle = N * factors.theta
    return twoState.CKPair(abs(factors.u) ** 2 * cmath.exp(-1j * angle) + abs(factors.v) ** 2 * cmath.exp(1j * angle),
                           2j * factors.u * factors.v * math.sin(angle))


def eigenphases(theta, M):
    """Returns the eigenvalues e^{i (2k - 1 - M) theta}, k = 1..M, of any M-state propagator with power angle theta.

    :rtype: :py:class:`numpy.ndarray`
    """
    M = checkStates(M)
    return np.exp(1j * (2 * np.arange(1, M + 1) - 1 - M) * theta)


def npassViaDiagonalization(ck, M, N):
    """Calculates the N-pass propagator as V D^N V^dagger.

    V is the Wigner-form matrix of the pair (u, v) and D^N = diag(e^{i N (2k - 1 - M) theta}).

    :param ck: single-pass CK pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param M: number of states.
    :type M: :py:class:`int`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :class:`pulsetrain.majorana.MajoranaPropagator`
    """
    M = checkStates(M)
    N = twoState.checkPasses(N)
    factors = diagFactors(ck)
    eigenvectors = _wignerMatrix(twoState.CKPair(factors.u, factors.v), M)
    matrix = (eigenvectors * eigenphases(N * factors.theta, M)) @ eigenvectors.conj().T
    return MajoranaPropagator(M, matrix, npassCkFromDiagFactors(factors, N), N)


def threeStateProbabilities(theta, N):
    """Returns the N-pass transition probabilities (sin^2(N theta), sin^4(N theta)) of the three-state system driven
    by a pulse with real a = cos(theta).

    :rtype: :py:class:`tuple`
    """
    N = twoState.checkPasses(N)
    single = math.sin(N * theta) ** 2
    return single, single * single


def cornerElements(ck, M):
    """Returns the corner elements (U_11, U_1M, U_M1, U_MM) = (a^{M-1}, b^{M-1}, (-b*)^{M-1}, (a*)^{M-1}).

    :rtype: :py:class:`tuple`
    """
    M = checkStates(M)
    power = M - 1
    return ck.a ** power, ck.b ** power, (-ck.b.conjugate()) ** power, ck.a.conjugate() ** power


def topRow(ck, M):
    """Returns the first row, U_1l = sqrt(binomial(M-1, l-1)) a^{M-l} b^{l-1}.

    :rtype: :py:class:`numpy.ndarray`
    """
    M = checkStates(M)
    return np.array([math.sqrt(math.comb(M - 1, l - 1)) * ck.a ** (M - l) * ck.b ** (l - 1) for l in range(1, M + 1)], dtype=complex)


def bottomRow(ck, M):
    """Returns the last row, U_Ml = sqrt(binomial(M-1, l-1)) (a*)^{l-1} (-b*)^{M-l}.

    :rtype: :py:class:`numpy.ndarray`
    """
    M = checkStates(M)
    aConj, bConj = ck.a.conjugate(), -ck.b.conjugate()
    return np.array([math.sqrt(math.comb(M - 1, l - 1)) * aConj ** (l - 1) * bConj ** (M - l) for l in range(1, M + 1)], dtype=complex)
