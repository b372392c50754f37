"""Exact computations in the quantum torus for the figure-eight knot recurrence."""

__version__ = "0.1.0"
