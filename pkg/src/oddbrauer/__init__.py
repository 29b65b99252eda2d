"""Odd-torsion Brauer classes on diagonal quartic surfaces: bounds, local criteria
and the finite verifications behind them."""

__version__ = "0.1.0"
SCHEMA_VERSION = "1"
