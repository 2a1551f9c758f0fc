"""Exact smallest-eigenvalue laws of beta-Laguerre and beta-Jacobi ensembles."""

__version__ = "0.1.0"
