"""Finite-field nilpotent Lie algebras of breadth type (0, 2m) and semifield Lie algebras."""

__version__ = "0.1.0"
