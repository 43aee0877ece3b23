#!/usr/bin/python3
"""
pulsetrain command-line interface
    The pulsetrain package computes propagators of multistate quantum systems driven by trains of identical pulses,
    from the Cayley-Klein parameters of a single pulse, and checks them against brute-force integration.

Usage:
    pulsetrain -h | --help     for this screen.
    pulsetrain --full-help     help documentation on all modes.
    pulsetrain --version       for the version of pulsetrain.
    pulsetrain simulate ...    for propagators and populations of a pulse train. (Most useful command line mode).
    pulsetrain tomo ...        for amplified error estimation of a single-pulse gate.
    pulsetrain verify ...      for comparing the propagators of two stored results.

For help on a specific mode, use the mode option -h or --help.
For example:
    pulsetrain simulate --help   for help documentation about simulate mode.
"""

import sys
from . import simulateTrain
from . import amplifyErrors
from . import comparePropagators
from . import __version__

def main():
    if len(sys.argv) > 1 and sys.argv[1] == "simulate":
        sys.exit(simulateTrain.main())
    elif len(sys.argv) > 1 and sys.argv[1] == "tomo":
        sys.exit(amplifyErrors.main())
    elif len(sys.argv) > 1 and sys.argv[1] == "verify":
        sys.exit(comparePropagators.main())
    elif len(sys.argv) > 1 and (sys.argv[1] == "--version" or sys.argv[1] == "-v"):
        print("Version: ", __version__)
    elif len(sys.argv) > 1 and sys.argv[1] == "--full-help":
        print(__doc__)
        print("-"*80)
        print(simulateTrain.__doc__)
        print("-"*80)
        print(amplifyErrors.__doc__)
        print("-"*80)
        print(comparePropagators.__doc__)
    else:
        print(__doc__)


if __name__ == "__main__": # this is hidden from the console script created by pip, since main() is called directly.
    if len(sys.argv) > 1 and sys.argv[1] == "--profile":
        sys.argv.pop(1)
        import cProfile
        profiler = cProfile.Profile()
        profiler.enable()
        try:
            main()
        finally:
            profiler.disable()
            profiler.print_stats()
    else:
        main()
