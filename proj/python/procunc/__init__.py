"""Uncertainty relations for quantum processes.

Thin wrapper over the compiled core: process-POVM construction, tester
overlaps and the Rényi bound, conditional-min-entropy SDPs, and the
majorization bound synthesis with the flatness process.
"""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
except ImportError:  # in-tree layout: extension on PYTHONPATH next to the build
    from _core import *  # noqa: F401,F403

__version__ = "0.1.0"
