"""Elliptic hypergeometric functions: evaluators and identity checks."""

from ehf._ehf import *  # noqa: F401,F403
from ehf._ehf import __version__  # noqa: F401
