"""The refutation side: infeasibility, pseudo-moment witnesses, falsifiers.

Negating the certified polynomial of demo 03 flips every outcome: the
square search fails, a structured pseudo-moment sequence pairs to -2 with
the polynomial, and an explicit 2x2 tuple (the Pauli pair) drives the
normalized trace to -2 exactly.  All three are faces of one duality.
"""

from nctrace import (
    certify_sos,
    dual_witness,
    falsify,
    moment_sequence,
    pair,
    parse_poly,
    format_poly,
    validate_witness,
)

p = parse_poly(
    "0.5*Y1 Y2 Y1 Y2 + 0.5*Y2 Y1 Y2 Y1 - 0.5*Y1^2 Y2^2 - 0.5*Y2^2 Y1^2", 2
)
print("p =", format_poly(p), " (negated squared commutator)")
print()

# 1. The primal search fails, with a quantified gap at this level.
result = certify_sos(p, 2)
print(f"certify: {result.status} at level {result.degree}, "
      f"gap {result.gap:.3f} after {result.iterations} iterations")
print()

# 2. The dual search produces admissible pseudo-moments pairing negatively.
w = dual_witness(p, 2, R=1.0)
print(f"witness: value {w.value:.6f} at R={w.radius} "
      f"(box |theta_I| <= R^|I|, moment matrix PSD)")
check = validate_witness(w)
print("  independent validation:", "PASS" if check.passed else "FAIL",
      f"(min moment eigenvalue {check.min_eigenvalue:.2e})")
print("  theta[1,1,2,2] =", w.theta[(1, 1, 2, 2)])
print("  theta[1,2,1,2] =", w.theta[(1, 2, 1, 2)], " (the Pauli fingerprint)")
print()

# 3. The falsifier finds the concrete tuple: sigma_x, sigma_z.
found = falsify(p, trials=100, N=4, R=1.0, seed=0)
print(f"falsify: trace {found.trace:.12f} on a {found.tuple.N}x{found.tuple.N} "
      f"tuple from the {found.source} (entry {found.index})")
for j, mat in enumerate(found.tuple.matrices, 1):
    print(f"  X{j} =", mat.real.tolist())
print()

# The falsifier's tuple IS a witness: its moments are admissible and pair
# to the same negative trace.
theta = moment_sequence(found.tuple, 4)
print("pairing p with the tuple's own moments:", pair(p, theta).real)
