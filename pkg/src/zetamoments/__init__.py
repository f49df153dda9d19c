"""Moment polynomial toolkit for the Riemann zeta function.

Exact partition/character combinatorics feeding a high precision numeric
pipeline that produces every coefficient of the conjectural polynomial behind
the 2k-th moment of zeta on the critical line.
"""

__version__ = "0.1.0"
