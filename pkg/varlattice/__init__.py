"""Cancellable elements in lattices of semigroup varieties: finite checks and decision procedures."""

__version__ = '1.0.0'
