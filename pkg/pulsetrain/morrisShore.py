"""
Morris-Shore Systems (pulsetrain.morrisShore)
---------------------------------------------

Two degenerate manifolds, L ground states and M excited states (L >= M), coupled by a constant L x M matrix
Omega_lm that shares one pulse shape: the coupling between ground state l and excited state m is
Omega_lm Omega(t) / 2 and every excited state carries the detuning Delta(t).

The singular-value factorization Omega = P Sigma Q^dagger gives the Morris-Shore basis, S = blockdiag(P^dagger,
Q^dagger), in which the system splits into M independent two-state pairs with couplings lambda_m (the singular
values) and L - M dark states.  The propagator in the original basis is U = S^dagger U_MS S.

Closed forms are provided for the multipod (L ground states, one excited state) and its Lambda and tripod cases.
"""

import cmath
import warnings

import numpy as np
import scipy.linalg

from . import pulses
from . import twoState
from .errors import DegenerateError, DomainError, ShapeError


class MSSystem(object):
    """An L x M Morris-Shore system driven by one pulse."""

    def __init__(self, omega, pulse):
        """:class:`pulsetrain.morrisShore.MSSystem` initializer.

        :param omega: L x M coupling matrix, L >= M.
        :type omega: :py:class:`numpy.ndarray`
        :param pulse: shared pulse shape.
        :type pulse: :class:`pulsetrain.pulses.PulseShape`
        """
        self.omega = checkCouplings(omega)
        self.pulse = pulse

    @property
    def groundCount(self):
        return self.omega.shape[0]

    @property
    def excitedCount(self):
        return self.omega.shape[1]

    @property
    def dim(self):
        return sum(self.omega.shape)

    def hamiltonian(self, t):
        """Returns the full (L+M)-state H(t).

        :param t: time in [0, T].
        :type t: :py:class:`float`

        :rtype: :py:class:`numpy.ndarray`
        """
        rabi, detuning = pulses.evaluate(self.pulse, t)
        return buildHamiltonian(self.omega, rabi, detuning)


class MSDecomposition(object):
    """Morris-Shore basis of a coupling matrix: sL (L x L), sM (M x M), the couplings lambdas (descending) and the
    number of dark states L - M.  rankDeficiency counts couplings below the rank tolerance, which are set to zero."""

    def __init__(self, sL, sM, lambdas, darkCount, rankDeficiency=0):
        self.sL = sL
        self.sM = sM
        self.lambdas = lambdas
        self.darkCount = darkCount
        self.rankDeficiency = rankDeficiency

    @property
    def transformation(self):
        """S = blockdiag(sL, sM)."""
        return scipy.linalg.block_diag(self.sL, self.sM)


class MSPropagator(object):
    """Full-system propagator with the pair solutions it was assembled from."""

    def __init__(self, dim, matrix, pairs, nPasses):
        self.dim = dim
        self.matrix = matrix
        self.pairs = pairs
        self.nPasses = nPasses

    def __repr__(self):
        return "MSPropagator(dim=%r, nPasses=%r)" % (self.dim, self.nPasses)


def checkCouplings(omega):
    """Validates a coupling matrix and returns it as a complex 2-D array."""
    omega = np.asarray(omega, dtype=complex)
    if omega.ndim == 1:
        omega = omega.reshape(-1, 1)
    if omega.ndim != 2 or omega.size == 0:
        raise ShapeError("coupling matrix must be two-dimensional, got shape " + str(omega.shape))
    if not np.all(np.isfinite(omega)):
        raise DomainError("coupling matrix must be finite")
    L, M = omega.shape
    if L < M:
        raise ShapeError("coupling matrix is " + str(L) + " x " + str(M) + " with fewer ground than excited states; "
                         "transpose it (swap the roles of the ground and excited manifolds)")
    if not np.any(omega):
        raise DegenerateError("coupling matrix vanishes identically")
    return omega


def lambdaSystem(omega1, omega2, pulse):
    """Returns the Lambda system: ground states 1, 2 coupled to excited state 3."""
    return MSSystem([[omega1], [omega2]], pulse)


def tripodSystem(omega1, omega2, omega3, pulse):
    """Returns the tripod system: ground states 1, 2, 3 coupled to excited state 4."""
    return MSSystem([[omega1], [omega2], [omega3]], pulse)


def multipodSystem(omegas, pulse):
    """Returns the multipod system with ground couplings omegas and one excited state."""
    return MSSystem(np.asarray(omegas, dtype=complex).reshape(-1, 1), pulse)


def buildHamiltonian(omega, rabi, detuning):
    """Builds the full Hamiltonian [[0_L, Omega Omega(t) / 2], [Omega^dagger Omega*(t) / 2, Delta 1_M]].

    :param omega: L x M coupling matrix.
    :type omega: :py:class:`numpy.ndarray`
    :param rabi: Rabi frequency Omega(t).
    :type rabi: :py:class:`complex`
    :param detuning: detuning Delta(t).
    :type detuning: :py:class:`float`

    :rtype: :py:class:`numpy.ndarray`
    """
    omega = np.asarray(omega, dtype=complex)
    if omega.ndim == 1:
        omega = omega.reshape(-1, 1)
    L, M = omega.shape
    hamiltonian = np.zeros((L + M, L + M), dtype=complex)
    hamiltonian[:L, L:] = 0.5 * rabi * omega
    hamiltonian[L:, :L] = hamiltonian[:L, L:].conj().T
    hamiltonian[L:, L:] = detuning * np.eye(M)
    return hamiltonian


def decompose(omega):
    """Calculates the Morris-Shore basis of a coupling matrix from its singular-value factorization.

    :param omega: L x M coupling matrix, L >= M.
    :type omega: :py:class:`numpy.ndarray`

    :rtype: :class:`pulsetrain.morrisShore.MSDecomposition`
    """
    omega = checkCouplings(omega)
    L, M = omega.shape
    P, singularValues, Qh = scipy.linalg.svd(omega, full_matrices=True)
    lambdas = np.array(singularValues, dtype=float)
    deficient = lambdas < pulses.paramsGlobal["rank_tolerance"] * lambdas[0]
    rankDeficiency = int(np.count_nonzero(deficient))
    if rankDeficiency:
        lambdas[deficient] = 0.0
        warnings.warn("coupling matrix has " + str(rankDeficiency) + " vanishing coupling(s); the corresponding pairs are decoupled")
    return MSDecomposition(P.conj().T, Qh, lambdas, L - M, rankDeficiency)


def reorderingPermutation(L, M):
    """Returns the permutation from pair-block order to Morris-Shore basis order.

    Pair-block order lists (bright ground m, excited m) for m = 1..M followed by the dark states; the Morris-Shore
    basis lists bright ground states, then dark states, then excited states.  Position i of the pair-block order is
    basis state order[i].

    :rtype: :py:class:`numpy.ndarray`
    """
    order = []
    for m in range(M):
        order.extend((m, L + m))
    order.extend(range(M, L))
    return np.array(order, dtype=int)


def _assemble(decomposition, pairMatrices):
    L, M = decomposition.sL.shape[0], decomposition.sM.shape[0]
    blocks = scipy.linalg.block_diag(*(list(pairMatrices) + [np.eye(L - M, dtype=complex)]))
    order = reorderingPermutation(L, M)
    msMatrix = np.zeros((L + M, L + M), dtype=complex)
    msMatrix[np.ix_(order, order)] = blocks
    transformation = decomposition.transformation
    return transformation.conj().T @ msMatrix @ transformation


def _solvePairs(lambdas, pulse, steps):
    solved = {}
    for coupling in lambdas:
        if coupling not in solved:
            solved[coupling] = twoState.solveMSPair(coupling, pulse, steps)
    return [solved[coupling] for coupling in lambdas]


def _pairMatrix(solution, N):
    if N == 1:
        return solution.matrix()
    ckN, phase = twoState.primedPower(solution, N)
    return twoState.reassemblePairMatrix(ckN, phase)


def multiPass(system, N, decomposition=None, steps=None):
    """Calculates the N-pass propagator from the N-pass pairs of every Morris-Shore two-state system.

    :param system: Morris-Shore system.
    :type system: :class:`pulsetrain.morrisShore.MSSystem`
    :param N: number of passes.
    :type N: :py:class:`int`
    :param decomposition: Morris-Shore basis to use, defaults to :func:`decompose` of the couplings.
    :type decomposition: :class:`pulsetrain.morrisShore.MSDecomposition`
    :param steps: RK4 steps for the pair solutions.
    :type steps: :py:class:`int`

    :rtype: :class:`pulsetrain.morrisShore.MSPropagator`
    """
    N = twoState.checkPasses(N)
    if decomposition is None:
        decomposition = decompose(system.omega)
    pairs = _solvePairs(decomposition.lambdas, system.pulse, steps)
    matrix = _assemble(decomposition, [_pairMatrix(solution, N) for solution in pairs])
    return MSPropagator(system.dim, matrix, pairs, N)


def singlePass(system, decomposition=None, steps=None):
    """Calculates the single-pulse propagator of a Morris-Shore system.

    :param system: Morris-Shore system.
    :type system: :class:`pulsetrain.morrisShore.MSSystem`
    :param decomposition: Morris-Shore basis to use, defaults to :func:`decompose` of the couplings.
    :type decomposition: :class:`pulsetrain.morrisShore.MSDecomposition`
    :param steps: RK4 steps for the pair solutions.
    :type steps: :py:class:`int`

    :rtype: :class:`pulsetrain.morrisShore.MSPropagator`
    """
    return multiPass(system, 1, decomposition, steps)


def _multipodCouplings(omegas):
    omegas = np.asarray(omegas, dtype=complex).ravel()
    norm = float(np.linalg.norm(omegas))
    if omegas.size == 0 or norm == 0:
        raise DegenerateError("multipod couplings vanish identically")
    return omegas, norm


def multipodNpass(omegas, ck, delta, N):
    """Calculates the closed-form N-pass propagator of a multipod.

    Ground block 1 + (a'_N - 1) |Omega><Omega| / Omega^2, last column b'_N Omega_l / Omega, last row
    -b'_N* Omega_l* e^{-i N delta} / Omega and corner a'_N* e^{-i N delta}.

    :param omegas: ground-state couplings Omega_l.
    :type omegas: :py:class:`list`
    :param ck: primed single-pass CK pair of the bright pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param delta: accumulated detuning.
    :type delta: :py:class:`float`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :py:class:`numpy.ndarray`
    """
    omegas, norm = _multipodCouplings(omegas)
    ckN, phase = twoState.primedPower(twoState.MSPairSolution(ck, delta), N)
    rotation = cmath.exp(-1j * phase)
    unit = omegas / norm
    L = omegas.size
    matrix = np.eye(L + 1, dtype=complex)
    matrix[:L, :L] += (ckN.a - 1) * np.outer(unit, unit.conj())
    matrix[:L, L] = ckN.b * unit
    matrix[L, :L] = -ckN.b.conjugate() * rotation * unit.conj()
    matrix[L, L] = ckN.a.conjugate() * rotation
    return matrix


def lambdaNpass(omega1, omega2, ck, delta, N):
    """Calculates the closed-form N-pass propagator of the Lambda system (ground states 1, 2, excited state 3).

    :param omega1: coupling of ground state 1.
    :type omega1: :py:class:`complex`
    :param omega2: coupling of ground state 2.
    :type omega2: :py:class:`complex`
    :param ck: primed single-pass CK pair of the bright pair.
    :type ck: :class:`pulsetrain.twoState.CKPair`
    :param delta: accumulated detuning.
    :type delta: :py:class:`float`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :py:class:`numpy.ndarray`
    """
    (omega1, omega2), norm = _multipodCouplings([omega1, omega2])
    ckN, phase = twoState.primedPower(twoState.MSPairSolution(ck, delta), N)
    aN, bN = ckN.a, ckN.b
    rotation = cmath.exp(-1j * phase)
    squared = norm * norm
    weight1, weight2 = abs(omega1) ** 2, abs(omega2) ** 2
    return np.array([
        [(weight2 + aN * weight1) / squared, (aN - 1) * omega1 * omega2.conjugate() / squared, bN * omega1 / norm],
        [(aN - 1) * omega1.conjugate() * omega2 / squared, (weight1 + aN * weight2) / squared, bN * omega2 / norm],
        [-bN.conjugate() * omega1.conjugate() * rotation / norm, -bN.conjugate() * omega2.conjugate() * rotation / norm,
         aN.conjugate() * rotation],
    ], dtype=complex)


def tripodNpass(omega1, omega2, omega3, ck, delta, N):
    """Calculates the closed-form N-pass propagator of the tripod (ground states 1-3, excited state 4).

    :rtype: :py:class:`numpy.ndarray`
    """
    return multipodNpass([omega1, omega2, omega3], ck, delta, N)


def multipodTransformation(omegas):
    """Builds the explicit multipod basis change S, whose columns are the L - 1 dark states, the bright state
    |Omega> / Omega and the excited state, so that S^dagger H S isolates the bright pair.

    With partial norms X_j = sqrt(|Omega_1|^2 + ... + |Omega_j|^2) the first dark state is
    (Omega_2*, -Omega_1*, 0, ...) / X_2 and dark state j >= 2 has entries Omega_l Omega_{j+1}* / (X_j X_{j+1}) for
    l <= j and -X_j / X_{j+1} at l = j + 1.

    :param omegas: ground-state couplings, at least two, Omega_1 and Omega_2 not both zero.
    :type omegas: :py:class:`list`

    :rtype: :py:class:`numpy.ndarray`
    """
    omegas, norm = _multipodCouplings(omegas)
    L = omegas.size
    if L < 2:
        raise ShapeError("a multipod needs at least two ground states")
    partialNorms = np.sqrt(np.cumsum(np.abs(omegas) ** 2))
    if partialNorms[1] == 0:
        raise DegenerateError("Omega_1 and Omega_2 both vanish; reorder the ground states")
    transformation = np.zeros((L + 1, L + 1), dtype=complex)
    transformation[0, 0] = omegas[1].conjugate() / partialNorms[1]
    transformation[1, 0] = -omegas[0].conjugate() / partialNorms[1]
    for j in range(2, L):
        # column j - 1, 1-based dark state j
        transformation[:j, j - 1] = omegas[:j] * omegas[j].conjugate() / (partialNorms[j - 1] * partialNorms[j])
        transformation[j, j - 1] = -partialNorms[j - 1] / partialNorms[j]
    transformation[:L, L - 1] = omegas / norm
    transformation[L, L] = 1.0
    return transformation


def darkBasis(omega):
    """Returns an orthonormal basis of the dark ground states, the null space of Omega^dagger.

    :param omega: L x M coupling matrix.
    :type omega: :py:class:`numpy.ndarray`

    :return: list of L-vectors, empty when there are no dark states.
    :rtype: :py:class:`list`
    """
    omega = checkCouplings(omega)
    nullSpace = scipy.linalg.null_space(omega.conj().T)
    return [nullSpace[:, column] for column in range(nullSpace.shape[1])]
