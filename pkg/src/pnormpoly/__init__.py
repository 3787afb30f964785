"""Exact computation and numerical checks for the symmetric-polynomial
families F_{k,r}, G_{k,r}, H_{k,r} and their p-norm inequalities."""

__version__ = "0.1.0"
