"""Neutrino flavor mixing, oscillations and mode entanglement in QM and QFT."""

__version__ = "0.1.0"
