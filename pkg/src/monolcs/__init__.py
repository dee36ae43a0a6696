"""Exact monomial-operator algebra, Z_p linear constraint systems and MBQC contextuality checks."""

__version__ = "0.1.0"
