"""Exact verification of infinitesimal Moufang-transformation identities."""

__version__ = "0.1.0"
