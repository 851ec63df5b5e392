"""Shared generators for the test suite; all randomness is seed-driven."""

import numpy as np

from nctrace.algebra import NCPoly


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_poly(rng, nvars, max_degree, n_terms=6, complex_coeffs=True) -> NCPoly:
    """Random sparse polynomial with coefficients of order one."""
    terms = {}
    for _ in range(n_terms):
        length = int(rng.integers(0, max_degree + 1))
        word = tuple(int(x) for x in rng.integers(1, nvars + 1, size=length))
        coeff = rng.normal()
        if complex_coeffs:
            coeff = coeff + 1j * rng.normal()
        terms[word] = terms.get(word, 0.0) + coeff
    return NCPoly(nvars, terms)


def random_hermitian(rng, size: int) -> np.ndarray:
    a = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    return (a + a.conj().T) / 2


def random_hermitian_tuple(rng, nvars: int, size: int, radius: float = 1.0):
    """Hermitian matrices rescaled to spectral norm exactly radius."""
    mats = []
    for _ in range(nvars):
        h = random_hermitian(rng, size)
        norm = np.linalg.norm(h, 2)
        if norm > 0:
            h = h * (radius / norm)
        mats.append(h)
    return mats


def pauli_pair():
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    return [sx, sz]


def commutator_square_poly() -> NCPoly:
    """(1/2)(Y1^2 Y2^2 + Y2^2 Y1^2) - (1/2)(Y1Y2Y1Y2 + Y2Y1Y2Y1)."""
    return NCPoly(
        2,
        {
            (1, 1, 2, 2): 0.5,
            (2, 2, 1, 1): 0.5,
            (1, 2, 1, 2): -0.5,
            (2, 1, 2, 1): -0.5,
        },
    )
