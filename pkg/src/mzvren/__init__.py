"""Exact renormalized multiple zeta values at non-positive integers.

Two routes to the same rationals: an algebraic Birkhoff decomposition of a
Laurent-series-valued character on a Hopf algebra of words in d and y, and
Bernoulli-number closed forms with their generating functions.
"""
from .closedform import zeta_ems_closed, zeta_fkmt
from .exact_arith import bernoulli
from .renorm import zeta_ems_birkhoff, zeta_ems_lemma311

__all__ = ["bernoulli", "zeta_ems_birkhoff", "zeta_ems_lemma311", "zeta_ems_closed", "zeta_fkmt"]
__version__ = "0.1.0"
