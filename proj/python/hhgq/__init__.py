"""Quantum-optical high-harmonic generation toolkit."""

from ._hhgq import *  # noqa: F401,F403
from ._hhgq import __doc__  # noqa: F401

__version__ = "0.1.0"
