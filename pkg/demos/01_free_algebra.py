"""Words, involution, products, and cyclic equivalence.

Polynomials in noncommuting variables Y1..Yn are indexed by words: tuples
of letters.  Y1*Y2 and Y2*Y1 are different monomials, but under a trace
they agree, and "equal up to a trace" is exactly cyclic equivalence.
"""

import numpy as np

from nctrace import (
    NCPoly,
    cyclic_canonical,
    evaluate,
    involute_word,
    normalized_trace,
    parse_poly,
    format_poly,
    star_product,
)

# Words are plain tuples of letters.  The involution reverses them.
word = (1, 2, 2, 1, 2)
print("word          ", word)
print("reversed      ", involute_word(word))
print("cyclic class  ", cyclic_canonical(word), "(least rotation, the class key)")
print()

# Polynomials multiply by concatenating words.
a = parse_poly("Y1 + (0,1)*Y2", 2)           # Y1 + i Y2
b = parse_poly("Y1 - (0,1)*Y2", 2)
prod = star_product(a, b)
print("a             ", format_poly(a))
print("b             ", format_poly(b))
print("a * b         ", format_poly(prod))
print("(a*b) adjoint ", format_poly(prod.adjoint()))
print("b* * a*       ", format_poly(star_product(b.adjoint(), a.adjoint())))
print()

# The commutator i(Y1Y2 - Y2Y1) is self-adjoint even though neither term is.
comm = parse_poly("(0,1)*Y1 Y2 - (0,1)*Y2 Y1", 2)
print("i[Y1,Y2]      ", format_poly(comm))
print("self-adjoint? ", comm.is_symmetric())

# Cyclically it is zero: both words are rotations of each other.
print("cyclic_reduce ", format_poly(comm.cyclic_reduce()))

# And indeed its normalized trace vanishes on any Hermitian pair.
rng = np.random.default_rng(5)
mats = []
for _ in range(2):
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    mats.append((g + g.conj().T) / 2)
print("trace on random Hermitian pair:", normalized_trace(evaluate(comm, mats)))

# The weighted coefficient norm is submultiplicative at every radius.
for radius in (0.5, 1.0, 2.0):
    lhs = prod.r_norm(radius)
    rhs = a.r_norm(radius) * b.r_norm(radius)
    print(f"radius {radius}: |a*b| = {lhs:.4f}  <=  |a||b| = {rhs:.4f}")
