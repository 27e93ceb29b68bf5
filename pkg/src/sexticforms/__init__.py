"""Covariants of binary sextics and degree-2 Siegel modular forms with character.

Exact-arithmetic construction of the classical covariants of binary sextics,
their images as (meromorphic) vector-valued Siegel modular forms of degree 2,
and mechanical verification of the module structure of forms with character
over the even-weight scalar ring.
"""

__version__ = "0.1.0"
