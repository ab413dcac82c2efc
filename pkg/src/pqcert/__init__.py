"""Certified two-sided p->q operator norm estimates and their consequences.

Submodules:
  exponents      exact extended exponents (rationals plus infinity)
  norms          plain and mixed vector norms with norming functionals
  matrices       dense-matrix plumbing and the matrix text format
  kernels        the alternating-ascent lower-bound engine (compiled + fallback)
  pqnorm         norm estimates, interpolation bounds, the small-matrix oracle
  hadamard       Sylvester Hadamard blocks and their factorizations
  fss            flat vectors, injectivity moduli, Bernstein widths
  factorization  certified factorization-constant lower bounds
  splitting      banded truncation and the interlaced block split
  verify         named verification suites over the mathematical claims
"""

from .exponents import ExtendedExponent, dual_exponent, interpolate_exponent, parse_exponent
from .norms import MixedNormSpace, NormFunctional, vector_norm
from .pqnorm import (
    NormEstimate,
    SingularSpectrum,
    pq_norm_exact,
    pq_norm_lower,
    pq_norm_oracle,
    pq_norm_upper,
    pq_norm_upper_interpolate,
    schatten_norm,
)

__version__ = "0.1.0"

__all__ = [
    "ExtendedExponent",
    "MixedNormSpace",
    "NormEstimate",
    "NormFunctional",
    "SingularSpectrum",
    "__version__",
    "dual_exponent",
    "interpolate_exponent",
    "parse_exponent",
    "pq_norm_exact",
    "pq_norm_lower",
    "pq_norm_oracle",
    "pq_norm_upper",
    "pq_norm_upper_interpolate",
    "schatten_norm",
    "vector_norm",
]
