"""Ordered-lattice graph families and bounded pebble games.

The package builds pairs of ordered graphs (A, B) that differ in exactly one
edge yet are indistinguishable in bounded-round finite-variable pebble games,
plays and exactly solves those games, and checks the arithmetic facts the
constructions rely on.
"""

from .params import Params, FULL_K3, REDUCED_K3, GENERAL

__all__ = ["Params", "FULL_K3", "REDUCED_K3", "GENERAL"]
