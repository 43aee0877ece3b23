"""
pulsetrain simulate mode command-line interface
  Computes N-pass propagators and population tables of the configured system.

Usage:
    pulsetrain simulate -h | --help
    pulsetrain simulate --config=<path> [--verify] [--out=<path>] [--params=<params-file>] [--parallel] [--silent]

Options:
    -h, --help                      Show this screen.
    --config=<path>                 JSON run configuration.
    --verify                        Compare every propagator with brute-force integration and report the maximum deviation.
    --out=<path>                    Output filename. "-" will write to standard output. [default: -]
    --params=<params-file>          Overriding numerical parameters file (see conf/default_params.json). [default: ]
    --parallel                      Compute the passes of an N_list sweep on a process pool.
    --silent                        Do not print diagnostics to stderr.

Exit status:
    0 success, 2 invalid configuration, 3 computation error, 4 verification deviation above tolerance.
"""

import sys
import json
import functools
import multiprocessing

import docopt
import jsonpickle
import numpy as np

from . import pulses
from . import twoState
from . import majorana
from . import morrisShore
from . import oracle
from . import runConfig
from . import fileUtils
from . import __version__
from .errors import ConfigError, PulseTrainError

exitConfigError = 2
exitDomainError = 3
exitDeviation = 4

populationHeader = ["N", "from", "to", "population"]


class TrainResult(object):
    """Propagator and populations of a train of N identical pulses.

    populations[k, l] is the probability of ending in state k + 1 when starting in state l + 1.
    """

    def __init__(self, nPasses, propagator, maxAbsDeviation=None):
        self.nPasses = nPasses
        self.propagator = propagator
        self.populations = np.abs(propagator) ** 2
        self.maxAbsDeviation = maxAbsDeviation

    def __repr__(self):
        return "TrainResult(nPasses=%r, maxAbsDeviation=%r)" % (self.nPasses, self.maxAbsDeviation)


def singlePassData(config):
    """Solves the single pulse of the configured system once, so that every N of a sweep reuses it.

    :param config: run configuration.
    :type config: :class:`pulsetrain.runConfig.RunConfig`

    :return: CK pair (Majorana), MS decomposition (ms) or pair solution of the bright pair (multipods).
    :rtype: :py:class:`object`
    """
    if config.systemKind == "majorana":
        return twoState.solveTraceless(config.pulse, config.pulseSteps)
    if config.systemKind == "ms":
        return morrisShore.decompose(config.couplings)
    return twoState.solveMSPair(np.linalg.norm(config.couplings), config.pulse, config.pulseSteps)


def trainPropagator(config, single, N):
    """Returns the N-pass propagator from the closed-form formulas.

    :param config: run configuration.
    :type config: :class:`pulsetrain.runConfig.RunConfig`
    :param single: result of :func:`singlePassData`.
    :type single: :py:class:`object`
    :param N: number of passes.
    :type N: :py:class:`int`

    :rtype: :py:class:`numpy.ndarray`
    """
    params = config.systemParams
    if config.systemKind == "majorana":
        return majorana.npassPropagator(single, params["M"], N).matrix
    if config.systemKind == "ms":
        return morrisShore.multiPass(config.buildSystem(), N, single, config.pulseSteps).matrix
    if config.systemKind == "lambda":
        return morrisShore.lambdaNpass(params["omega1"], params["omega2"], single.ck, single.delta, N)
    if config.systemKind == "tripod":
        return morrisShore.tripodNpass(params["omega1"], params["omega2"], params["omega3"], single.ck, single.delta, N)
    return morrisShore.multipodNpass(params["omegas"], single.ck, single.delta, N)


def oraclePropagator(config, steps=None):
    """Integrates the full Hamiltonian of the configured system over one pulse.

    :param config: run configuration.
    :type config: :class:`pulsetrain.runConfig.RunConfig`
    :param steps: RK4 steps, defaults to the ``oracle_steps`` parameter.
    :type steps: :py:class:`int`

    :rtype: :py:class:`numpy.ndarray`
    """
    system = config.buildSystem()
    hamiltonian = oracle.TimeDependentHamiltonian(config.dimension, system.hamiltonian)
    return oracle.integrate(hamiltonian, config.pulse.duration, steps or pulses.paramsGlobal["oracle_steps"],
                            config.pulse.breakpoints)


def computeTrain(config, single, oracleSingle, N):
    """Computes the :class:`TrainResult` of N passes, with the oracle deviation when oracleSingle is given."""
    propagator = trainPropagator(config, single, N)
    deviation = None
    if oracleSingle is not None:
        deviation = oracle.maxAbsDeviation(propagator, oracle.matrixPower(oracleSingle, N))
    return TrainResult(N, propagator, deviation)


def simulate(config, verify=False, parallel=False):
    """Computes a :class:`TrainResult` for every N of the configuration, in order.

    :param config: run configuration.
    :type config: :class:`pulsetrain.runConfig.RunConfig`
    :param verify: also compare against the oracle.
    :type verify: :py:class:`bool`
    :param parallel: use a process pool for the sweep.
    :type parallel: :py:class:`bool`

    :rtype: :py:class:`list`
    """
    if config.pulse is None or config.nList is None:
        raise ConfigError("simulate needs the \"pulse\" and \"train\" sections")
    single = singlePassData(config)
    oracleSingle = oraclePropagator(config) if verify else None
    compute = functools.partial(computeTrain, config, single, oracleSingle)
    if parallel and len(config.nList) > 1:
        with multiprocessing.Pool() as pool:
            return pool.map(compute, config.nList, chunksize=1)
    return [compute(N) for N in config.nList]


def _populationRows(config, result):
    sources = [config.initialState] if config.initialState is not None else range(1, config.dimension + 1)
    rows = []
    for source in sources:
        for target in range(1, config.dimension + 1):
            row = [result.nPasses, source, target, float(result.populations[target - 1, source - 1])]
            if result.maxAbsDeviation is not None:
                row.append(float(result.maxAbsDeviation))
            rows.append(row)
    return rows


def formatResults(config, results):
    """Renders results in the configured output format.

    :param config: run configuration.
    :type config: :class:`pulsetrain.runConfig.RunConfig`
    :param results: train results.
    :type results: :py:class:`list`

    :rtype: :py:class:`str`
    """
    if config.outputFormat == "jsonpickle":
        return jsonpickle.encode(results) + '\n'

    verified = any(result.maxAbsDeviation is not None for result in results)
    if config.outputFormat == "csv":
        headerList = populationHeader + (["max_abs_deviation"] if verified else [])
        return fileUtils.csvText(headerList, [row for result in results for row in _populationRows(config, result)])

    jsonResults = []
    for result in results:
        entry = {"N": result.nPasses}
        if config.outputWhat in ("propagator", "both"):
            entry["propagator"] = fileUtils.numpyConverter(result.propagator)
        if config.outputWhat in ("populations", "both"):
            entry["populations"] = [dict(zip(populationHeader[1:], row[1:4])) for row in _populationRows(config, result)]
        if result.maxAbsDeviation is not None:
            entry["max_abs_deviation"] = result.maxAbsDeviation
        jsonResults.append(entry)
    return fileUtils.jsonText({"system": config.toDict()["system"], "results": jsonResults})


def run(config, outFilename="-", verify=None, parallel=False, silent=False):
    """Runs a configuration and writes its output.

    :param config: run configuration.
    :type config: :class:`pulsetrain.runConfig.RunConfig`
    :param outFilename: output filename, "-" for standard output.
    :type outFilename: :py:class:`str`
    :param verify: overrides the configuration's verify flag when not None.
    :type verify: :py:class:`bool`
    :param parallel: use a process pool for the sweep.
    :type parallel: :py:class:`bool`
    :param silent: suppress diagnostics on stderr.
    :type silent: :py:class:`bool`

    :return: exit status.
    :rtype: :py:class:`int`
    """
    verify = config.verify if verify is None else verify
    try:
        results = simulate(config, verify, parallel)
    except ConfigError as error:
        if not silent:
            print(error, file=sys.stderr)
        return exitConfigError
    except PulseTrainError as error:
        if not silent:
            print(error, file=sys.stderr)
        return exitDomainError

    fileUtils.writeText(formatResults(config, results), outFilename)

    if verify:
        deviation = max(result.maxAbsDeviation for result in results)
        tolerance = pulses.paramsGlobal["verify_tolerance"]
        if deviation > tolerance:
            if not silent:
                print("Error: max_abs_deviation " + fileUtils.formatNumber(deviation) + " exceeds " + fileUtils.formatNumber(tolerance), file=sys.stderr)
            return exitDeviation
        if not silent:
            print("max_abs_deviation " + fileUtils.formatNumber(deviation), file=sys.stderr)
    return 0


def loadParams(filename):
    """Loads an overriding parameters file into :mod:`pulsetrain.pulses`."""
    try:
        with open(filename, 'r') as paramsFile:
            params = json.load(paramsFile)
        pulses.setGlobals(params)
    except (OSError, ValueError, PulseTrainError):
        raise ConfigError("params file \"" + filename + "\" does not exist or is not parsable.")


def main(argv=None):
    args = docopt.docopt(__doc__, argv=argv, version=__version__)
    if args["--help"]:
        print(__doc__)
        return 0

    try:
        if args["--params"]:
            loadParams(args["--params"])
        config = runConfig.loadConfig(args["--config"])
    except ConfigError as error:
        if not args["--silent"]:
            print(error, file=sys.stderr)
        return exitConfigError

    return run(config, args["--out"], verify=True if args["--verify"] else None, parallel=args["--parallel"], silent=args["--silent"])
