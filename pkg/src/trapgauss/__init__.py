"""Gauss map geometry of space-like surfaces in Lorentzian space forms."""

__version__ = "0.1.0"
