"""Exact arithmetic for quadratic iteration: critical orbits and their
square-class certificates, the curve families y^2 = f^n(x) and relatives,
point counting and Frobenius characteristic polynomials over finite fields,
and provably bounded point searches."""

__version__ = "0.1.0"
