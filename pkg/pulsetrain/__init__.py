# !/usr/bin/python3

__version__ = "1.0.0"

from .twoState import CKPair
from .pulses import PulseShape
