"""Cubillages of cyclic zonotopes, their symmetric flips and higher Bruhat orders."""

__version__ = "0.1.0"
