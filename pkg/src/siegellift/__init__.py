"""Exact Fourier coefficients of even-degree lifts of elliptic eigenforms."""

__version__ = "0.1.0"
