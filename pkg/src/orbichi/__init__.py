"""Exact Euler characteristics, strata and quotients of triangulated orbifolds."""

__version__ = "0.1.0"
