"""Finitely generated simplicial sets: lifting, subdivision, homotopy and replacement tools."""

__version__ = "0.1.0"
