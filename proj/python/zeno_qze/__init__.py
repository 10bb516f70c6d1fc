"""Monitored two-qubit dynamics under continuous null-result measurement.

Thin wrapper around the compiled ``_zeno`` extension. Times are in ns,
Rabi frequencies (2 omega) in 1/ns, entropies in nats.
"""

from ._zeno import *  # noqa: F401,F403
from ._zeno import COORD_NAMES, Config, integrate

__all__ = [name for name in dir() if not name.startswith("_")]


def coordinate(traj, name):
    """Column of ``traj["states"]`` for a coordinate name such as ``"z1"``."""
    return traj["states"][:, COORD_NAMES.index(name)]
