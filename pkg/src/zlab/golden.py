"""Frozen reference values.

The mean-value constants were computed at 40 digits by an independent
route (Gauss-Legendre quadrature of the Sigma integrals, then CAS
differentiation of the quotient) and agree with the exact exp-rational
pipeline to every printed digit. See tests/oracles.py.
"""

# kept as text so no precision is lost on import; float() or mpmath.mpf()
# them under the working precision you need
SECTION2_C = "1.753222553429837437355160884638141935633"
SECTION3_C = "1.154882151873687481930726248340660373301"

# printed proportions; the first is an upper bound, the others lower bounds
PRINTED_KAPPA_G = 0.27442
PRINTED_KAPPA_C = 0.86957
PRINTED_KAPPA_D = 0.66036

# acceptance windows
KAPPA_G_WINDOW = (0.2690, 0.274425)
KAPPA_C_WINDOW = (0.86957 - 5e-5, 0.8705)
