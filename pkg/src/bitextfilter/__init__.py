"""Noisy parallel corpus filtering: partial scores, multiplicative
combination and word-budget subset selection."""

__version__ = "0.1.0"
