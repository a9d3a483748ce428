"""Exact computations with Hom-Lie superalgebras, super Hom-Gel'fand-Dorfman
bialgebras and Hom-Lie conformal superalgebras given by structure constants."""

__version__ = "0.1.0"
