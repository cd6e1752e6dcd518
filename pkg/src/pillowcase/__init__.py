"""Quantum-group and Weyl quantizations of the pillow case, compared exactly."""

__version__ = "0.1.0"
