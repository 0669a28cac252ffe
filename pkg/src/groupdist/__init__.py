"""Hamming distances between finite group multiplication tables."""

__version__ = "0.1.0"
