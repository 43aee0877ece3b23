"""
pulsetrain verify mode command-line interface
  Compares the propagators stored in two simulate-mode result files (JSON or jsonpickle).

Usage:
    pulsetrain verify -h | --help
    pulsetrain verify --a=<path> --b=<path> [--tol=<float>] [--silent]

Options:
    -h, --help                      Show this screen.
    --a=<path>                      First result file.
    --b=<path>                      Second result file.
    --tol=<float>                   Largest accepted elementwise deviation. [default: 1e-6]
    --silent                        Do not print diagnostics to stderr.

Prints one line per common number of passes and the overall max_abs_deviation; exits with 4 when it exceeds the
tolerance.
"""

import sys

import docopt

from . import oracle
from . import fileUtils
from . import simulateTrain
from . import __version__
from .errors import DomainError, PulseTrainError


def compare(first, second):
    """Compares two dictionaries of propagators keyed by number of passes.

    :return: list of (N, deviation) for every N present in both, in increasing N.
    :rtype: :py:class:`list`
    """
    common = sorted(set(first) & set(second))
    if not common:
        raise DomainError("the result files share no number of passes")
    deviations = []
    for N in common:
        if first[N].shape != second[N].shape:
            raise DomainError("propagators for N=" + str(N) + " differ in shape: " + str(first[N].shape) + " vs " + str(second[N].shape))
        deviations.append((N, oracle.maxAbsDeviation(first[N], second[N])))
    return deviations


def main(argv=None):
    args = docopt.docopt(__doc__, argv=argv, version=__version__)
    if args["--help"]:
        print(__doc__)
        return 0

    try:
        tolerance = float(args["--tol"])
    except ValueError:
        if not args["--silent"]:
            print("Error: --tol must be a number, got " + str(args["--tol"]), file=sys.stderr)
        return simulateTrain.exitConfigError

    try:
        deviations = compare(fileUtils.loadPropagators(args["--a"]), fileUtils.loadPropagators(args["--b"]))
    except PulseTrainError as error:
        if not args["--silent"]:
            print(error, file=sys.stderr)
        return simulateTrain.exitDomainError

    rows = [[N, deviation] for N, deviation in deviations]
    sys.stdout.write(fileUtils.csvText(["N", "max_abs_deviation"], rows))
    worst = max(deviation for _, deviation in deviations)
    if worst > tolerance:
        if not args["--silent"]:
            print("Error: max_abs_deviation " + fileUtils.formatNumber(worst) + " exceeds " + fileUtils.formatNumber(tolerance), file=sys.stderr)
        return simulateTrain.exitDeviation
    return 0
