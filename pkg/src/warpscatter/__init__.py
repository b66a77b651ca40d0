"""Scattering and inverse problems on warped-product manifolds with regular and cusp ends."""

__version__ = "0.1.0"
