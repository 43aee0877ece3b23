import json
import os

import numpy as np
import pytest
from pytest import approx

from pulsetrain import runConfig
from pulsetrain.errors import ConfigError

configDir = os.path.join(os.path.dirname(__file__), "configs")

minimal = """{
  "system": {"majorana": {"M": 3}},
  "pulse": {"kind": "rectangular", "peak_rabi": [1.0, 0.0], "duration": 2.0},
  "train": {"N": 4}
}
"""


def parseModified(change):
    document = json.loads(minimal)
    change(document)
    return runConfig.parseConfig(json.dumps(document, indent=2))


def test_minimal_config():
    config = runConfig.parseConfig(minimal)
    assert config.systemKind == "majorana"
    assert config.dimension == 3
    assert config.nList == [4]
    assert config.pulse.peakRabi == approx(1.0)
    assert config.pulse.isResonant
    assert config.outputFormat == "csv"
    assert config.outputWhat == "populations"
    assert not config.verify
    assert config.tomography is None


def test_one_state_is_rejected():
    with pytest.raises(ConfigError, match="M ≥ 2") as error:
        runConfig.parseConfig(minimal.replace('"M": 3', '"M": 1'))
    assert error.value.keyPath == "system.majorana.M"
    assert error.value.line == 2


def test_system_variants_are_exclusive():
    def addLambda(document):
        document["system"]["lambda"] = {"omega1": [1.0, 0.0], "omega2": [0.0, 1.0]}

    with pytest.raises(ConfigError, match="mutually exclusive"):
        parseModified(addLambda)
    with pytest.raises(ConfigError, match="exactly one system variant"):
        parseModified(lambda document: document.__setitem__("system", {}))


def test_syntax_error_names_line():
    with pytest.raises(ConfigError) as error:
        runConfig.parseConfig(minimal.replace('"N": 4', '"N": 4,'))
    assert error.value.line == 4
    assert "syntax error" in str(error.value)


sampledBoth = """{
  "system": {"majorana": {"M": 3}},
  "pulse": {
    "kind": "sampled",
    "peak_rabi": [1.0, 0.0],
    "duration": 2.0,
    "samples": [0.0, 1.0, 0.0],
    "detuning": {
      "kind": "sampled",
      "samples": [0.0, "fast", 0.0]
    }
  },
  "train": {"N": 4}
}
"""


def test_error_line_is_searched_inside_the_enclosing_section():
    with pytest.raises(ConfigError, match="finite number") as error:
        runConfig.parseConfig(sampledBoth)
    assert error.value.keyPath == "pulse.detuning.samples[1]"
    assert error.value.line == 10

    with pytest.raises(ConfigError, match="unknown detuning kind") as error:
        runConfig.parseConfig(sampledBoth.replace('"kind": "sampled",\n      "samples"', '"kind": "wobble",\n      "samples"'))
    assert error.value.keyPath == "pulse.detuning.kind"
    assert error.value.line == 9

    with pytest.raises(ConfigError, match="finite number") as error:
        runConfig.parseConfig(sampledBoth.replace('[0.0, 1.0, 0.0]', '[0.0, null, 0.0]').replace('"fast"', '1.0'))
    assert error.value.keyPath == "pulse.samples[1]"
    assert error.value.line == 7


def test_unknown_keys():
    with pytest.raises(ConfigError, match="unknown key") as error:
        parseModified(lambda document: document["pulse"].__setitem__("area", 3.0))
    assert error.value.keyPath == "pulse.area"
    with pytest.raises(ConfigError, match="unknown key"):
        parseModified(lambda document: document.__setitem__("seed", 3))
    with pytest.raises(ConfigError, match="unknown system variant"):
        parseModified(lambda document: document["system"].__setitem__("ladder", {}))


def test_invalid_values():
    with pytest.raises(ConfigError, match="positive"):
        parseModified(lambda document: document["pulse"].__setitem__("duration", -1.0))
    with pytest.raises(ConfigError, match="must be >= 1"):
        parseModified(lambda document: document["train"].__setitem__("N", 0))
    with pytest.raises(ConfigError, match="exactly one of"):
        parseModified(lambda document: document["train"].__setitem__("N_list", [1, 2]))
    with pytest.raises(ConfigError, match="unknown pulse kind"):
        parseModified(lambda document: document["pulse"].__setitem__("kind", "lorentzian"))
    with pytest.raises(ConfigError, match=r"\[re, im\]"):
        parseModified(lambda document: document["pulse"].__setitem__("peak_rabi", [1.0]))


def test_output_section():
    def jsonPropagators(document):
        document["output"] = {"format": "json", "what": "propagator", "initial_state": 2}

    config = parseModified(jsonPropagators)
    assert config.outputFormat == "json"
    assert config.initialState == 2
    with pytest.raises(ConfigError, match="JSON only"):
        parseModified(lambda document: document.__setitem__("output", {"format": "csv", "what": "both"}))
    with pytest.raises(ConfigError, match="exceeds"):
        parseModified(lambda document: document.__setitem__("output", {"initial_state": 4}))


def test_morris_shore_couplings():
    def msSystem(document):
        document["system"] = {"ms": {"omega": [[[1.0, 0.0], [0.0, 0.5]], [[0.2, 0.0], 0.3], [[0.0, 0.0], [1.0, 1.0]]]}}

    config = parseModified(msSystem)
    assert config.couplings.shape == (3, 2)
    assert config.couplings[1, 1] == approx(0.3)
    assert config.dimension == 5

    def wideSystem(document):
        document["system"] = {"ms": {"omega": [[[1.0, 0.0], [0.0, 0.5]]]}}

    with pytest.raises(ConfigError, match="transpose"):
        parseModified(wideSystem)

    def darkTripod(document):
        document["system"] = {"tripod": {"omega1": [0, 0], "omega2": [0, 0], "omega3": [0, 0]}}

    with pytest.raises(ConfigError, match="vanishes"):
        parseModified(darkTripod)


def test_tomography_section():
    config = runConfig.loadConfig(os.path.join(configDir, "tomo_qutrit.json"))
    assert config.pulse is None
    assert config.tomography["n_values"] == list(range(1, 9))
    assert config.tomography["shots"] == 10000
    assert config.tomography["observable"] is None

    def badEpsilon(document):
        document["tomography"] = {"target_theta": 1.0, "epsilon": 0.5, "n_values": [1, 2]}

    with pytest.raises(ConfigError, match="epsilon"):
        parseModified(badEpsilon)


@pytest.mark.parametrize("name", ["majorana3_resonant.json", "lambda_chirp.json", "tripod_multipass.json", "tomo_qutrit.json"])
def test_round_trip(name):
    config = runConfig.loadConfig(os.path.join(configDir, name))
    again = runConfig.parseConfig(config.toJSON())
    assert again == config
    assert again.toJSON() == config.toJSON()


def test_round_trip_of_shaped_pulses():
    def sampled(document):
        document["pulse"] = {"kind": "sampled", "peak_rabi": [0.0, 2.0], "duration": 1.5, "samples": [0.0, 0.5, 1.0, 0.25],
                             "detuning": {"kind": "sampled", "samples": [0.1, -0.1, 0.3]}, "steps": 512}

    config = parseModified(sampled)
    assert config.pulseSteps == 512
    np.testing.assert_allclose(config.pulse.samples, [0.0, 0.5, 1.0, 0.25])
    assert runConfig.parseConfig(config.toJSON()) == config


def test_missing_file():
    with pytest.raises(ConfigError, match="cannot read"):
        runConfig.loadConfig(os.path.join(configDir, "absent.json"))
