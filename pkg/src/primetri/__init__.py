"""Sums of primes and triangular numbers: exceptional-set scans and witnesses."""

__version__ = "0.1.0"
