"""Deterministic slot-level simulator of jammers versus channel-hopping radios."""

__version__ = "0.1.0"
