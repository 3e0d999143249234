"""Simultaneous positive-rank twists of hyperelliptic curves."""

__version__ = "0.1.0"
