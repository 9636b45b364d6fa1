"""Twisted Alexander polynomials, cyclic-cover torsion growth and Mahler
measures for knot groups."""

__version__ = "0.1.0"
