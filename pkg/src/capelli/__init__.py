"""Exact verification engine for dual-pair Capelli identities."""

__version__ = "0.1.0"
