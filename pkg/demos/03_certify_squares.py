"""Certifying trace positivity: sums of hermitian squares up to cyclic moves.

The running example is the trace inequality tr(X^2 Y^2) >= tr(XYXY): its
defect polynomial is not a sum of squares literally, but it is cyclically
equivalent to one, and the certificate is a single explicit square.
"""

import numpy as np

from nctrace import (
    NCPoly,
    certify_sos,
    evaluate,
    normalized_trace,
    parse_poly,
    format_poly,
    star_product,
    verify_certificate,
)
from nctrace.sampling import make_rng, random_tuple

p = parse_poly(
    "0.5*Y1^2 Y2^2 + 0.5*Y2^2 Y1^2 - 0.5*Y1 Y2 Y1 Y2 - 0.5*Y2 Y1 Y2 Y1", 2
)
print("p =", format_poly(p))
print()

cert = certify_sos(p, 2)
print(f"certificate at half-degree {cert.degree}:")
for k, b in enumerate(cert.factors, 1):
    print(f"  factor {k}: {format_poly(b)}")
print("  solver residual   :", cert.residual_l1)
print("  recheck from factors (independent arithmetic):", verify_certificate(p, cert))
print()

# The certificate the solver finds is, up to phase and cyclic moves, the
# hand-made one: b = (i/sqrt 2)(Y1 Y2 - Y2 Y1).
s = 1j / np.sqrt(2.0)
b = NCPoly(2, {(1, 2): s, (2, 1): -s})
exact = (p - star_product(b.adjoint(), b)).cyclic_reduce()
print("hand factor (i/sqrt2)[Y1,Y2]: residual is exactly", format_poly(exact))
print()

# Soundness in action: a residual-eps certificate bounds the trace below by
# -eps on norm-one tuples.  Here eps ~ 1e-10 and the true value is >= 0.
rng = make_rng(3)
worst = np.inf
for _ in range(200):
    X = random_tuple(rng, 2, 4, radius=1.0)
    worst = min(worst, normalized_trace(evaluate(p, X)).real)
print("smallest trace over 200 random norm-one tuples:", worst)

# A square certifies itself with a single factor.
simple = certify_sos(parse_poly("Y1^2", 1))
print("certify Y1^2 ->", [format_poly(f) for f in simple.factors])
