"""Algebra engine: exact linear algebra, Groebner bases, complexes and LG sectors"""
