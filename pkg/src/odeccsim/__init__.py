"""Simulator for bit-granularity error profiling under on-die ECC."""

__version__ = "0.1.0"
