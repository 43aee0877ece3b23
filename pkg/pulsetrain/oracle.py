"""
Brute-Force Oracles (pulsetrain.oracle)
---------------------------------------

Reference computations used to check the closed-form propagators: direct RK4 integration of the matrix Schrodinger
equation i dU/dt = H(t) U, repeated matrix multiplication, a spectral exponential for constant Hamiltonians and
unitarity diagnostics.

Nothing here calls the two-state, Majorana or Morris-Shore formulas; only Hamiltonians go in.
"""

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericError

minimumSteps = 16
hermiticityTolerance = 1e-12


class TimeDependentHamiltonian(object):
    """A Hermitian matrix-valued function of time."""

    def __init__(self, dimension, evaluator):
        """:class:`pulsetrain.oracle.TimeDependentHamiltonian` initializer.

        :param dimension: matrix dimension.
        :type dimension: :py:class:`int`
        :param evaluator: callable t -> dimension x dimension Hermitian matrix.
        :type evaluator: :py:class:`collections.abc.Callable`
        """
        self.dimension = int(dimension)
        self.evaluator = evaluator

    def __call__(self, t):
        hamiltonian = np.asarray(self.evaluator(t), dtype=complex)
        if hamiltonian.shape != (self.dimension, self.dimension):
            raise DomainError("Hamiltonian at t=" + repr(t) + " has shape " + str(hamiltonian.shape) + ", expected " + str((self.dimension, self.dimension)))
        if np.max(np.abs(hamiltonian - hamiltonian.conj().T)) > hermiticityTolerance:
            raise DomainError("Hamiltonian at t=" + repr(t) + " is not Hermitian")
        return hamiltonian


def stepTimes(duration, steps, breakpoints=None):
    """Returns the RK4 step boundaries: steps uniform intervals over [0, duration], split further at the breakpoints.

    :param duration: final time.
    :type duration: :py:class:`float`
    :param steps: number of uniform intervals.
    :type steps: :py:class:`int`
    :param breakpoints: times inside (0, duration) where H(t) has a kink.
    :type breakpoints: :py:class:`numpy.ndarray`

    :rtype: :py:class:`numpy.ndarray`
    """
    times = np.linspace(0.0, duration, int(steps) + 1)
    if breakpoints is None or len(breakpoints) == 0:
        return times
    breakpoints = np.asarray(breakpoints, dtype=float)
    times = np.unique(np.concatenate((times, breakpoints[(breakpoints > 0) & (breakpoints < duration)])))
    # drop slivers left where a breakpoint meets a grid point up to rounding
    keep = np.concatenate(([True], np.diff(times) > 1e-12 * duration))
    times = times[keep]
    times[-1] = duration
    return times


def integrate(hamiltonian, duration, steps, breakpoints=None):
    """Propagates i dU/dt = H(t) U from U(0) = 1 over [0, duration] with fixed-step classical RK4.

    :param hamiltonian: time-dependent Hamiltonian.
    :type hamiltonian: :class:`pulsetrain.oracle.TimeDependentHamiltonian`
    :param duration: final time.
    :type duration: :py:class:`float`
    :param steps: number of RK4 steps, at least 16.
    :type steps: :py:class:`int`
    :param breakpoints: kink times of H(t); steps never straddle them.
    :type breakpoints: :py:class:`numpy.ndarray`

    :return: U(duration, 0)
    :rtype: :py:class:`numpy.ndarray`
    """
    steps = int(steps)
    if steps < minimumSteps:
        raise DomainError("oracle integration needs at least " + str(minimumSteps) + " steps, got " + str(steps))
    times = stepTimes(duration, steps, breakpoints)
    U = np.eye(hamiltonian.dimension, dtype=complex)
    H1 = hamiltonian(times[0])
    for t, tNext in zip(times[:-1], times[1:]):
        h = tNext - t
        H0 = H1
        Hm = hamiltonian(t + 0.5 * h)
        H1 = hamiltonian(tNext)
        k1 = -1j * (H0 @ U)
        k2 = -1j * (Hm @ (U + 0.5 * h * k1))
        k3 = -1j * (Hm @ (U + 0.5 * h * k2))
        k4 = -1j * (H1 @ (U + h * k3))
        U = U + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(U)):
            raise NumericError("oracle integration diverged at t=" + repr(tNext))
    return U


def constantPropagator(hamiltonian, duration):
    """Calculates exp(-i H T) for a constant Hermitian H through its eigendecomposition.

    :param hamiltonian: Hermitian matrix.
    :type hamiltonian: :py:class:`numpy.ndarray`
    :param duration: time T.
    :type duration: :py:class:`float`

    :rtype: :py:class:`numpy.ndarray`
    """
    energies, vectors = scipy.linalg.eigh(np.asarray(hamiltonian, dtype=complex))
    return (vectors * np.exp(-1j * energies * duration)) @ vectors.conj().T


def matrixPower(matrix, N):
    """Calculates the N-th power of a square matrix by binary exponentiation.

    :param matrix: square matrix.
    :type matrix: :py:class:`numpy.ndarray`
    :param N: positive exponent.
    :type N: :py:class:`int`

    :rtype: :py:class:`numpy.ndarray`
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError("matrix power needs a square matrix, got shape " + str(matrix.shape))
    if isinstance(N, bool) or int(N) != N or N < 1:
        raise DomainError("matrix power needs a positive integer exponent, got " + str(N))
    N = int(N)
    result = None
    base = matrix
    while N:
        if N & 1:
            result = base if result is None else result @ base
        N >>= 1
        if N:
            base = base @ base
    return result


def unitarityDefect(matrix):
    """Returns max |U^dagger U - 1|.

    :rtype: :py:class:`float`
    """
    matrix = np.asarray(matrix, dtype=complex)
    return float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0]))))


def maxAbsDeviation(first, second):
    """Returns the largest elementwise modulus of first - second.

    :rtype: :py:class:`float`
    """
    return float(np.max(np.abs(np.asarray(first, dtype=complex) - np.asarray(second, dtype=complex))))
