"""Null cones of classical group actions, their resolutions and the quotient
maps onto two-column nilpotent orbit closures, all in exact arithmetic."""

__version__ = "0.1.0"
