"""Purity-budget geometry of quantum correlations.

Maps finite-dimensional multipartite density matrices to local and nonlocal
budget coordinates, builds the envelopes that partition the budget plane,
bounds resource quantities by position in that plane and follows states
through decoherence and purification.
"""

__all__ = [
    "budget",
    "channels",
    "config",
    "envelopes",
    "resources",
    "states",
]

__version__ = "0.1.0"
