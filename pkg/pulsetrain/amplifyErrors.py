"""
pulsetrain tomo mode command-line interface
  Generates an amplified multi-pass measurement series for a gate with a small power-angle error and estimates the
  error back from it.

Usage:
    pulsetrain tomo -h | --help
    pulsetrain tomo --config=<path> --seed=<u64> [--out=<path>] [--params=<params-file>] [--silent]

Options:
    -h, --help                      Show this screen.
    --config=<path>                 JSON run configuration with "system" and "tomography" sections.
    --seed=<u64>                    Seed of the binomial shot noise (required, no clock seeding).
    --out=<path>                    Output filename. "-" will write to standard output. [default: -]
    --params=<params-file>          Overriding numerical parameters file (see conf/default_params.json). [default: ]
    --silent                        Do not print diagnostics to stderr.

The model follows the system section: majorana with M = 2 is the two-state model, majorana with M > 2 the Majorana
model, and lambda, tripod or multipod systems the multipod model.  The output format follows output.format
(csv writes the series, json the series with the estimate).
"""

import sys

import docopt

from . import tomography
from . import runConfig
from . import fileUtils
from . import simulateTrain
from . import __version__
from .errors import ConfigError, PulseTrainError


def amplificationModel(config):
    """Builds the :class:`pulsetrain.tomography.AmplificationModel` of a configuration.

    :param config: run configuration with a tomography section.
    :type config: :class:`pulsetrain.runConfig.RunConfig`

    :rtype: :class:`pulsetrain.tomography.AmplificationModel`
    """
    if config.tomography is None:
        raise ConfigError("section is required", "tomography")
    settings = config.tomography
    if config.systemKind == "majorana":
        M = config.systemParams["M"]
        if M == 2:
            return tomography.AmplificationModel("two-state", settings["target_theta"], settings["observable"])
        return tomography.AmplificationModel("majorana", settings["target_theta"], settings["observable"], states=M)
    if config.systemKind == "ms":
        raise ConfigError("tomography supports majorana, lambda, tripod and multipod systems", "system.ms")
    return tomography.AmplificationModel("multipod", settings["target_theta"], settings["observable"], omegas=config.couplings)


def estimate(config, seed):
    """Generates the series and the estimate for a configuration.

    :return: (model, series, epsilon estimate, residual)
    :rtype: :py:class:`tuple`
    """
    model = amplificationModel(config)
    settings = config.tomography
    series = tomography.amplifiedSeries(model, settings["epsilon"], settings["n_values"], settings["shots"], seed)
    epsilonHat, residual = tomography.estimateError(model, series)
    return model, series, epsilonHat, residual


def formatEstimate(config, seed, model, series, epsilonHat, residual):
    """Renders a tomography run in the configured output format.

    :rtype: :py:class:`str`
    """
    rows = [[N, float(population)] for N, population in zip(series.nValues, series.populations)]
    if config.outputFormat == "csv":
        return fileUtils.csvText(["N", "population"], rows)
    settings = config.tomography
    return fileUtils.jsonText({
        "model": model.name,
        "observable": list(model.observable),
        "target_theta": settings["target_theta"],
        "epsilon": settings["epsilon"],
        "shots": series.shots,
        "seed": seed,
        "series": [{"N": N, "population": population} for N, population in rows],
        "epsilon_hat": epsilonHat,
        "residual": residual,
    })


def main(argv=None):
    args = docopt.docopt(__doc__, argv=argv, version=__version__)
    if args["--help"]:
        print(__doc__)
        return 0

    try:
        seed = int(args["--seed"])
        if seed < 0 or seed >= 2 ** 64:
            raise ValueError(seed)
    except ValueError:
        if not args["--silent"]:
            print("Error: --seed must be an unsigned 64-bit integer, got " + str(args["--seed"]), file=sys.stderr)
        return simulateTrain.exitConfigError

    try:
        if args["--params"]:
            simulateTrain.loadParams(args["--params"])
        config = runConfig.loadConfig(args["--config"])
        model = amplificationModel(config)
    except ConfigError as error:
        if not args["--silent"]:
            print(error, file=sys.stderr)
        return simulateTrain.exitConfigError
    except PulseTrainError as error:
        if not args["--silent"]:
            print(error, file=sys.stderr)
        return simulateTrain.exitDomainError

    try:
        model, series, epsilonHat, residual = estimate(config, seed)
    except PulseTrainError as error:
        if not args["--silent"]:
            print(error, file=sys.stderr)
        return simulateTrain.exitDomainError

    fileUtils.writeText(formatEstimate(config, seed, model, series, epsilonHat, residual), args["--out"])
    if not args["--silent"]:
        print("epsilon_hat " + fileUtils.formatNumber(epsilonHat) + " residual " + fileUtils.formatNumber(residual), file=sys.stderr)
    return 0
