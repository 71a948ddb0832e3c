"""Dimensions, learners and exact game oracles for finite multiclass
transductive online learning."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
