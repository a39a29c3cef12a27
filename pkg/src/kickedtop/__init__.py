"""
kickedtop - quantum kicked top recurrence toolkit.

Simulates the kicked top's Floquet dynamics, detects its state-independent
temporal recurrences, certifies the operator identities behind them and
exports Husimi, entropy and classical-map data.
"""

__version__ = "0.1.0"

from kickedtop.core.exceptions import KickedTopError

__all__ = ["__version__", "KickedTopError"]
