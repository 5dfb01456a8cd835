"""Fractional Boussinesq simulation and exact exponent-region checks."""

__version__ = "0.1.0"
