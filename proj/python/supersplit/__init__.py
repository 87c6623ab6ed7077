"""Collective two-pole emission spectra of magnetically split superradiant
ensembles, plus a thin-film cavity mapping. Thin wrapper over the C++ core."""

from ._supersplit import *  # noqa: F401,F403
from ._supersplit import __version__, cavity, oracle  # noqa: F401
