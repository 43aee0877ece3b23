"""
File Utilities (pulsetrain.fileUtils)
-------------------------------------

Common output and input helpers used across pulsetrain's CLI: number formatting, complex matrix encoding, writing
result tables and reading stored propagators back.
"""

import sys
import json

import jsonpickle
import jsonpickle.ext.numpy
import numpy

from .errors import DomainError

jsonpickle.ext.numpy.register_handlers()


def formatNumber(value):
    """Formats a real number with 17 significant digits.

    :param value: number.
    :type value: :py:class:`float`

    :rtype: :py:class:`str`
    """
    return '%.17g' % value


def numpyConverter(obj):
    """Converts numpy objects to standard Python types, otherwise just return the object.

    Complex values become [re, im] pairs.

    :param obj:
    :type obj: :py:class:`object`

    :return: object
    :rtype: :py:class:`int`, :py:class:`float`, :py:class:`list`, :py:class:`object`
    """
    if isinstance(obj, (complex, numpy.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    elif isinstance(obj, numpy.integer):
        return int(obj)
    elif isinstance(obj, numpy.floating):
        return float(obj)
    elif isinstance(obj, numpy.ndarray):
        return [numpyConverter(item) for item in obj]
    else:
        return obj


def complexMatrixFromJSON(rows):
    """Decodes a matrix stored as nested lists of [re, im] pairs.

    :param rows: row-major list of rows.
    :type rows: :py:class:`list`

    :rtype: :py:class:`numpy.ndarray`
    """
    try:
        matrix = numpy.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    except (TypeError, ValueError):
        raise DomainError("stored propagator is not a matrix of [re, im] pairs")
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError("stored propagator is not a square matrix")
    return matrix


def csvText(headerList, rows):
    """Returns CSV text, one line per row, numbers formatted by :func:`formatNumber`.

    :rtype: :py:class:`str`
    """
    def cell(value):
        return formatNumber(value) if isinstance(value, float) else str(value)

    lines = [','.join(headerList)] + [','.join(cell(value) for value in row) for row in rows]
    return '\n'.join(lines) + '\n'


def jsonText(data):
    """Returns JSON text with sorted keys and two-space indentation.

    :rtype: :py:class:`str`
    """
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def writeText(text, filename):
    """Writes text to filename, "-" or None meaning standard output.

    :param text: output text.
    :type text: :py:class:`str`
    :param filename: output filename.
    :type filename: :py:class:`str`
    """
    if filename is None or filename == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(filename, 'w', encoding='utf-8', newline='\n') as outFile:
            outFile.write(text)


def loadPropagators(filename):
    """Reads the propagators stored in a simulate-mode result file, JSON or jsonpickle.

    jsonpickle files rebuild Python objects by class name, so only load files written by a trusted run.  Decoding
    is done in safe mode, which refuses the eval-based ``py/repr`` tags.

    :param filename: result filename.
    :type filename: :py:class:`str`

    :return: dictionary of number of passes to propagator matrix.
    :rtype: :py:class:`dict`
    """
    try:
        with open(filename, 'r', encoding='utf-8') as resultFile:
            text = resultFile.read()
    except OSError as error:
        raise DomainError("cannot read result file \"" + str(filename) + "\": " + str(error))

    if '"py/object"' in text:
        try:
            results = jsonpickle.decode(text, safe=True)
            propagators = {int(result.nPasses): numpy.asarray(result.propagator, dtype=complex) for result in results}
        except (AttributeError, TypeError, ValueError):
            raise DomainError("result file \"" + str(filename) + "\" is not a list of pickled train results")
        for propagator in propagators.values():
            if propagator.ndim != 2 or propagator.shape[0] != propagator.shape[1] or not numpy.all(numpy.isfinite(propagator)):
                raise DomainError("result file \"" + str(filename) + "\" holds a propagator that is not a finite square matrix")
        return propagators

    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise DomainError("result file \"" + str(filename) + "\" is not JSON: " + error.msg + " (line " + str(error.lineno) + ")")
    propagators = {}
    for result in document.get("results", []) if isinstance(document, dict) else []:
        if "propagator" in result:
            propagators[int(result["N"])] = complexMatrixFromJSON(result["propagator"])
    if not propagators:
        raise DomainError("result file \"" + str(filename) + "\" holds no propagators")
    return propagators
