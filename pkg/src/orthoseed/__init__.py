"""Recurrence coefficients of orthonormal polynomials for general measures."""
__version__ = "0.1.0"
