"""
Run Configuration (pulsetrain.runConfig)
----------------------------------------

Parsing and validation of the JSON run configuration shared by the command-line modes.

A configuration is a JSON object with the sections ``system`` (exactly one of ``majorana``, ``ms``, ``lambda``,
``tripod``, ``multipod``), ``pulse``, ``train``, ``output``, ``verify`` and ``tomography``.  Complex numbers are
written as ``[re, im]``.  Every error is reported as a :class:`pulsetrain.errors.ConfigError` naming the key path and,
where it can be located, the line of the offending key.
"""

import json
import re

import numpy as np

from . import pulses
from . import majorana
from . import morrisShore
from .errors import ConfigError, PulseTrainError

systemVariants = ("majorana", "ms", "lambda", "tripod", "multipod")
outputFormats = ("csv", "json", "jsonpickle")
outputContents = ("propagator", "populations", "both")

_sectionKeys = {
    "": ("system", "pulse", "train", "output", "verify", "tomography"),
    "pulse": ("kind", "peak_rabi", "duration", "center", "width", "samples", "detuning", "steps"),
    "pulse.detuning": ("kind", "value", "offset", "rate", "samples"),
    "train": ("N", "N_list"),
    "output": ("format", "what", "initial_state"),
    "tomography": ("target_theta", "epsilon", "n_values", "shots", "observable"),
    "system.majorana": ("M",),
    "system.ms": ("omega",),
    "system.lambda": ("omega1", "omega2"),
    "system.tripod": ("omega1", "omega2", "omega3"),
    "system.multipod": ("omegas",),
}


class RunConfig(object):
    """A validated run configuration.

    Two configurations are equal when their effective configurations (:meth:`toDict`) are equal.
    """

    def __init__(self, systemKind, systemParams, pulse=None, pulseSteps=None, nList=None, singleN=True,
                 outputFormat="csv", outputWhat="populations", initialState=None, verify=False, tomography=None):
        self.systemKind = systemKind
        self.systemParams = systemParams
        self.pulse = pulse
        self.pulseSteps = pulseSteps
        self.nList = nList
        self.singleN = singleN
        self.outputFormat = outputFormat
        self.outputWhat = outputWhat
        self.initialState = initialState
        self.verify = verify
        self.tomography = tomography

    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.toDict() == other.toDict()

    def __repr__(self):
        return "RunConfig(system=%r, nList=%r)" % (self.systemKind, self.nList)

    @property
    def couplings(self):
        """Coupling matrix of Morris-Shore variants (L x M), None for Majorana systems."""
        if self.systemKind == "majorana":
            return None
        if self.systemKind == "ms":
            return self.systemParams["omega"]
        if self.systemKind == "multipod":
            return self.systemParams["omegas"].reshape(-1, 1)
        names = ("omega1", "omega2") if self.systemKind == "lambda" else ("omega1", "omega2", "omega3")
        return np.array([[self.systemParams[name]] for name in names], dtype=complex)

    @property
    def dimension(self):
        """Number of states of the configured system."""
        if self.systemKind == "majorana":
            return self.systemParams["M"]
        return sum(self.couplings.shape)

    def buildSystem(self):
        """Returns the configured :class:`pulsetrain.majorana.MajoranaSystem` or :class:`pulsetrain.morrisShore.MSSystem`."""
        if self.pulse is None:
            raise ConfigError("section is required", "pulse")
        if self.systemKind == "majorana":
            return majorana.MajoranaSystem(self.systemParams["M"], self.pulse)
        return morrisShore.MSSystem(self.couplings, self.pulse)

    def toDict(self):
        """Returns the effective configuration as a JSON-serializable dictionary.

        :rtype: :py:class:`dict`
        """
        document = {"system": {self.systemKind: _systemToDict(self.systemKind, self.systemParams)}}
        if self.pulse is not None:
            document["pulse"] = _pulseToDict(self.pulse, self.pulseSteps)
        if self.nList is not None:
            document["train"] = {"N": self.nList[0]} if self.singleN else {"N_list": list(self.nList)}
        output = {"format": self.outputFormat, "what": self.outputWhat}
        if self.initialState is not None:
            output["initial_state"] = self.initialState
        document["output"] = output
        document["verify"] = self.verify
        if self.tomography is not None:
            tomography = dict(self.tomography)
            tomography["n_values"] = list(tomography["n_values"])
            if tomography.get("observable") is not None:
                tomography["observable"] = list(tomography["observable"])
            document["tomography"] = {key: value for key, value in tomography.items() if value is not None}
        return document

    def toJSON(self):
        """Returns the effective configuration as JSON text.

        :rtype: :py:class:`str`
        """
        return json.dumps(self.toDict(), indent=2, sort_keys=True)


def _complexToList(value):
    return [float(value.real), float(value.imag)]


def _systemToDict(kind, params):
    if kind == "majorana":
        return {"M": params["M"]}
    if kind == "ms":
        return {"omega": [[_complexToList(value) for value in row] for row in params["omega"]]}
    if kind == "multipod":
        return {"omegas": [_complexToList(value) for value in params["omegas"]]}
    return {name: _complexToList(value) for name, value in params.items()}


def _pulseToDict(pulse, steps):
    document = {"kind": pulse.kind, "peak_rabi": _complexToList(pulse.peakRabi), "duration": pulse.duration}
    if pulse.kind == "gaussian":
        document["center"] = pulse.center
        document["width"] = pulse.width
    elif pulse.kind == "sampled":
        document["samples"] = [float(value) for value in pulse.samples]
    if pulse.detuningKind == "constant":
        document["detuning"] = {"kind": "constant", "value": pulse.detuning}
    elif pulse.detuningKind == "chirp":
        document["detuning"] = {"kind": "chirp", "offset": pulse.detuning, "rate": pulse.chirpRate}
    else:
        document["detuning"] = {"kind": "sampled", "samples": [float(value) for value in pulse.detuningSamples]}
    if steps is not None:
        document["steps"] = steps
    return document


class _Parser(object):
    """Validation helpers that know the source text, so errors can name the line of a key."""

    _tokens = re.compile(r'"(?:[^"\\]|\\.)*"|[{}\[\]]')
    _colon = re.compile(r'\s*:')

    def __init__(self, text):
        self.text = text

    def lineOf(self, path):
        """Returns the line of the deepest key of path found in the source text, each key searched only inside the
        value of the one before it.  List indexes are ignored.

        :rtype: :py:class:`int` or :py:obj:`None`
        """
        if not path:
            return None
        start, end, found = 0, len(self.text), None
        for key in re.sub(r"\[\d+\]", "", path).split("."):
            position = self._keyPosition(key, start, end)
            if position is None:
                break
            found = position
            start = self._colon.match(self.text, position + len(key) + 2).end()
            end = self._valueEnd(start, end)
        if found is None:
            return None
        return self.text.count("\n", 0, found) + 1

    def _keyPosition(self, key, start, end):
        depth = 0
        for token in self._tokens.finditer(self.text, start, end):
            text = token.group()
            if text in ("{", "["):
                depth += 1
            elif text in ("}", "]"):
                depth -= 1
            elif depth == 1 and text[1:-1] == key and self._colon.match(self.text, token.end(), end):
                return token.start()
        return None

    def _valueEnd(self, start, end):
        opening = re.compile(r"\s*([{\[])").match(self.text, start, end)
        if opening is None:
            return start
        depth = 0
        for token in self._tokens.finditer(self.text, opening.start(1), end):
            text = token.group()
            if text in ("{", "["):
                depth += 1
            elif text in ("}", "]"):
                depth -= 1
                if depth == 0:
                    return token.end()
        return end

    def error(self, message, path):
        return ConfigError(message, path, self.lineOf(path))

    def section(self, document, path, required=False):
        value = document.get(path.split(".")[-1]) if isinstance(document, dict) else None
        if value is None:
            if required:
                raise self.error("section is required", path)
            return None
        if not isinstance(value, dict):
            raise self.error("expected an object", path)
        allowed = _sectionKeys.get(path)
        if allowed is not None:
            for key in value:
                if key not in allowed:
                    raise self.error("unknown key \"" + key + "\", expected one of " + ", ".join(allowed), path + "." + key)
        return value

    def real(self, value, path, positive=False):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not np.isfinite(value):
            raise self.error("expected a finite number, got " + json.dumps(value), path)
        if positive and not value > 0:
            raise self.error("must be positive, got " + json.dumps(value), path)
        return float(value)

    def integer(self, value, path, minimum=None):
        if isinstance(value, bool) or not isinstance(value, int):
            raise self.error("expected an integer, got " + json.dumps(value), path)
        if minimum is not None and value < minimum:
            raise self.error("must be >= " + str(minimum) + ", got " + str(value), path)
        return value

    def complexValue(self, value, path):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return complex(self.real(value, path))
        if not isinstance(value, list) or len(value) != 2:
            raise self.error("expected a complex number written as [re, im]", path)
        return complex(self.real(value[0], path), self.real(value[1], path))

    def realList(self, value, path):
        if not isinstance(value, list) or len(value) == 0:
            raise self.error("expected a nonempty list of numbers", path)
        return [self.real(item, path + "[" + str(index) + "]") for index, item in enumerate(value)]

    def passList(self, value, path):
        if not isinstance(value, list) or len(value) == 0:
            raise self.error("expected a nonempty list of pass counts", path)
        return [self.integer(item, path + "[" + str(index) + "]", 1) for index, item in enumerate(value)]


def _parseSystem(parser, document):
    system = parser.section(document, "system", required=True)
    variants = [key for key in system if key in systemVariants]
    unknown = [key for key in system if key not in systemVariants]
    if unknown:
        raise parser.error("unknown system variant \"" + unknown[0] + "\", expected one of " + ", ".join(systemVariants), "system." + unknown[0])
    if len(variants) != 1:
        if not variants:
            raise parser.error("exactly one system variant is required, one of " + ", ".join(systemVariants), "system")
        raise parser.error("system variants are mutually exclusive, found " + " and ".join(variants), "system." + variants[1])
    kind = variants[0]
    path = "system." + kind
    block = parser.section(system, path, required=True)
    for key in _sectionKeys[path]:
        if key not in block:
            raise parser.error("missing key \"" + key + "\"", path + "." + key)

    if kind == "majorana":
        M = parser.integer(block["M"], path + ".M")
        if M < 2:
            raise parser.error("number of states must satisfy M ≥ 2, got " + str(M), path + ".M")
        try:
            majorana.checkStates(M)
        except PulseTrainError as error:
            raise parser.error(str(error)[len("Error: "):], path + ".M")
        return kind, {"M": M}

    if kind == "ms":
        rows = block["omega"]
        if not isinstance(rows, list) or not rows or not all(isinstance(row, list) and row for row in rows):
            raise parser.error("expected a nonempty list of rows of [re, im] couplings", path + ".omega")
        if len(set(len(row) for row in rows)) != 1:
            raise parser.error("coupling rows must have equal length", path + ".omega")
        omega = np.array([[parser.complexValue(value, path + ".omega") for value in row] for row in rows], dtype=complex)
        params = {"omega": omega}
        couplings = omega
    elif kind == "multipod":
        values = block["omegas"]
        if not isinstance(values, list) or not values:
            raise parser.error("expected a nonempty list of [re, im] couplings", path + ".omegas")
        params = {"omegas": np.array([parser.complexValue(value, path + ".omegas") for value in values], dtype=complex)}
        couplings = params["omegas"].reshape(-1, 1)
    else:
        params = {key: parser.complexValue(block[key], path + "." + key) for key in _sectionKeys[path]}
        couplings = np.array([[params[key]] for key in _sectionKeys[path]], dtype=complex)
    try:
        morrisShore.checkCouplings(couplings)
    except PulseTrainError as error:
        raise parser.error(str(error)[len("Error: "):], path)
    return kind, params


def _parsePulse(parser, document):
    block = parser.section(document, "pulse")
    if block is None:
        return None, None
    for key in ("kind", "peak_rabi", "duration"):
        if key not in block:
            raise parser.error("missing key \"" + key + "\"", "pulse." + key)
    kind = block["kind"]
    if kind not in pulses.envelopeKinds:
        raise parser.error("unknown pulse kind " + json.dumps(kind) + ", expected one of " + ", ".join(pulses.envelopeKinds), "pulse.kind")
    arguments = {
        "peakRabi": parser.complexValue(block["peak_rabi"], "pulse.peak_rabi"),
        "duration": parser.real(block["duration"], "pulse.duration", positive=True),
    }
    if kind == "gaussian":
        if "center" in block:
            arguments["center"] = parser.real(block["center"], "pulse.center")
        if "width" in block:
            arguments["width"] = parser.real(block["width"], "pulse.width", positive=True)
    elif kind == "sampled":
        if "samples" not in block:
            raise parser.error("sampled pulses need \"samples\"", "pulse.samples")
        arguments["samples"] = parser.realList(block["samples"], "pulse.samples")

    detuning = parser.section(block, "pulse.detuning")
    if detuning is not None:
        detuningKind = detuning.get("kind", "constant")
        if detuningKind not in pulses.detuningKinds:
            raise parser.error("unknown detuning kind " + json.dumps(detuningKind) + ", expected one of " + ", ".join(pulses.detuningKinds), "pulse.detuning.kind")
        arguments["detuningKind"] = detuningKind
        if detuningKind == "constant":
            arguments["detuning"] = parser.real(detuning.get("value", 0.0), "pulse.detuning.value")
        elif detuningKind == "chirp":
            arguments["detuning"] = parser.real(detuning.get("offset", 0.0), "pulse.detuning.offset")
            arguments["chirpRate"] = parser.real(detuning.get("rate", 0.0), "pulse.detuning.rate")
        else:
            if "samples" not in detuning:
                raise parser.error("sampled detuning needs \"samples\"", "pulse.detuning.samples")
            arguments["detuningSamples"] = parser.realList(detuning["samples"], "pulse.detuning.samples")

    steps = None
    if "steps" in block:
        steps = parser.integer(block["steps"], "pulse.steps", 2)
    try:
        return pulses.PulseShape(kind, **arguments), steps
    except PulseTrainError as error:
        raise parser.error(str(error)[len("Error: "):], "pulse")


def _parseTrain(parser, document):
    block = parser.section(document, "train")
    if block is None:
        return None, True
    if ("N" in block) == ("N_list" in block):
        raise parser.error("exactly one of \"N\" and \"N_list\" is required", "train")
    if "N" in block:
        return [parser.integer(block["N"], "train.N", 1)], True
    return parser.passList(block["N_list"], "train.N_list"), False


def _parseTomography(parser, document, dimension):
    block = parser.section(document, "tomography")
    if block is None:
        return None
    for key in ("target_theta", "epsilon", "n_values"):
        if key not in block:
            raise parser.error("missing key \"" + key + "\"", "tomography." + key)
    targetTheta = parser.real(block["target_theta"], "tomography.target_theta")
    if not 0 < targetTheta < np.pi:
        raise parser.error("target theta must lie in (0, pi)", "tomography.target_theta")
    epsilon = parser.real(block["epsilon"], "tomography.epsilon")
    if not abs(epsilon) < pulses.paramsGlobal["tomography_halfwidth"]:
        raise parser.error("epsilon must satisfy |epsilon| < " + str(pulses.paramsGlobal["tomography_halfwidth"]), "tomography.epsilon")
    shots = None
    if block.get("shots") is not None:
        shots = parser.integer(block["shots"], "tomography.shots", 1)
    observable = None
    if block.get("observable") is not None:
        observable = block["observable"]
        if not isinstance(observable, list) or len(observable) != 2:
            raise parser.error("expected [from, to]", "tomography.observable")
        observable = [parser.integer(index, "tomography.observable", 1) for index in observable]
        if max(observable) > dimension:
            raise parser.error("state index exceeds the " + str(dimension) + " states of the system", "tomography.observable")
    return {"target_theta": targetTheta, "epsilon": epsilon, "n_values": parser.passList(block["n_values"], "tomography.n_values"),
            "shots": shots, "observable": observable}


def parseConfig(text):
    """Parses and validates a run configuration.

    :param text: JSON configuration text.
    :type text: :py:class:`str`

    :return: validated configuration.
    :rtype: :class:`pulsetrain.runConfig.RunConfig`
    """
    parser = _Parser(text)
    try:
        document = json.loads(text)
    except json.JSONDecodeError as error:
        raise ConfigError("syntax error: " + error.msg + " (column " + str(error.colno) + ")", None, error.lineno)
    if not isinstance(document, dict):
        raise ConfigError("configuration must be a JSON object")
    for key in document:
        if key not in _sectionKeys[""]:
            raise parser.error("unknown key \"" + key + "\", expected one of " + ", ".join(_sectionKeys[""]), key)

    systemKind, systemParams = _parseSystem(parser, document)
    pulse, pulseSteps = _parsePulse(parser, document)
    nList, singleN = _parseTrain(parser, document)
    config = RunConfig(systemKind, systemParams, pulse, pulseSteps, nList, singleN)

    output = parser.section(document, "output")
    if output is not None:
        config.outputFormat = output.get("format", "csv")
        if config.outputFormat not in outputFormats:
            raise parser.error("unknown format " + json.dumps(config.outputFormat) + ", expected one of " + ", ".join(outputFormats), "output.format")
        config.outputWhat = output.get("what", "populations")
        if config.outputWhat not in outputContents:
            raise parser.error("unknown content " + json.dumps(config.outputWhat) + ", expected one of " + ", ".join(outputContents), "output.what")
        if config.outputFormat == "csv" and config.outputWhat != "populations":
            raise parser.error("propagators are written in JSON only; use format \"json\" or what \"populations\"", "output.what")
        if output.get("initial_state") is not None:
            config.initialState = parser.integer(output["initial_state"], "output.initial_state", 1)
            if config.initialState > config.dimension:
                raise parser.error("initial state exceeds the " + str(config.dimension) + " states of the system", "output.initial_state")

    if "verify" in document:
        if not isinstance(document["verify"], bool):
            raise parser.error("expected true or false", "verify")
        config.verify = document["verify"]

    config.tomography = _parseTomography(parser, document, config.dimension)
    return config


def loadConfig(path):
    """Reads and parses a run configuration file.

    :param path: configuration filename.
    :type path: :py:class:`str`

    :rtype: :class:`pulsetrain.runConfig.RunConfig`
    """
    try:
        with open(path, 'r', encoding='utf-8') as configFile:
            text = configFile.read()
    except OSError as error:
        raise ConfigError("cannot read config file \"" + str(path) + "\": " + str(error))
    return parseConfig(text)
