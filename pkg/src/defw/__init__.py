"""Exact computations in the deformation DGAs D^r W_q and their cohomology."""
from __future__ import annotations

__version__ = "0.1.0"
