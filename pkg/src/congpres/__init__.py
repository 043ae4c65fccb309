"""Congruence and stable-preorder preservation on finite algebras and on the naturals."""

__version__ = "0.1.0"
