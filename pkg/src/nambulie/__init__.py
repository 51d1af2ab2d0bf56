"""Exact computations with Nambu brackets, Nambu-Lie groups and Nambu-Lie algebras."""

__version__ = "0.1.0"
