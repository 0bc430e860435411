"""Adaptive-gain SIS epidemic control on directed networks."""

from ._episis import *  # noqa: F401,F403
from ._episis import __doc__  # noqa: F401
