"""Exact verification toolkit for arc-family adjacencies on the
icosahedral quotient surface singularity x^2 + y^3 + z^5 = 0."""

__version__ = "0.1.0"
