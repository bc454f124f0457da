"""Curvature, isoperimetry and spectral bounds on finite graphs."""

__version__ = "0.1.0"
