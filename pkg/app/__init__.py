"""Exact homological algebra for Landau-Ginzburg bulk and boundary dualities"""

__version__ = "1.0.0"
