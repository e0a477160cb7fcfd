"""Ideal lattices, essential ideals and M-ideals of finite rings."""

__version__ = "0.1.0"
