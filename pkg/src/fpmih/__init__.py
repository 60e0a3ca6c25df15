"""Handover simulator and analytic model for PMIPv6, FPMIPv6 and MIH-assisted schemes."""

__version__ = "0.1.0"
