"""Exact computation of beta constants and Nevanlinna-type bounds for monomial ideal sheaves on P^n."""

__version__ = "0.1.0"
