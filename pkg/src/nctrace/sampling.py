"""Seeded random matrix generation and the structured falsification library.

All randomness in the package flows through :func:`make_rng`, which wraps a
counter-based generator keyed by a single 64-bit seed, so identical seeds
reproduce identical streams regardless of call interleaving elsewhere.
"""

from __future__ import annotations

import numpy as np

from .moments import MatrixTuple, as_matrix_tuple


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(seed))


def random_hermitian(rng: np.random.Generator, size: int, radius: float = 1.0) -> np.ndarray:
    """Gaussian Hermitian matrix rescaled to spectral norm ``radius``."""
    a = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    h = (a + a.conj().T) / 2
    norm = np.linalg.norm(h, 2)
    if norm > 0:
        h = h * (radius / norm)
    return h


def random_tuple(rng: np.random.Generator, nvars: int, size: int, radius: float = 1.0) -> MatrixTuple:
    return as_matrix_tuple(
        [random_hermitian(rng, size, radius) for _ in range(nvars)]
    )


def pauli_pair() -> list[np.ndarray]:
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sz = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    return [sx, sz]


def _sign_patterns(size: int) -> list[np.ndarray]:
    alternating = np.array([(-1.0) ** i for i in range(size)])
    half = np.array([1.0 if i < (size + 1) // 2 else -1.0 for i in range(size)])
    spike = np.array([1.0] + [-1.0] * (size - 1)) if size > 1 else np.array([1.0])
    return [np.ones(size), alternating, half, spike]


def structured_library(nvars: int, size: int) -> list[MatrixTuple]:
    """Fixed tuples probed before random search when hunting counterexamples.

    Contains the all-zero tuple, identities, diagonal sign patterns rotated
    across the variables, and the Pauli x/z pair padded with identities to
    the requested number of variables.
    """
    out = [
        as_matrix_tuple([np.zeros((size, size), dtype=complex)] * nvars),
        as_matrix_tuple([np.eye(size, dtype=complex)] * nvars),
    ]
    patterns = _sign_patterns(size)
    for offset in range(len(patterns)):
        mats = [
            np.diag(patterns[(j + offset) % len(patterns)]).astype(complex)
            for j in range(nvars)
        ]
        out.append(as_matrix_tuple(mats))
    sx, sz = pauli_pair()
    pauli_mats = [sx, sz] + [np.eye(2, dtype=complex)] * max(0, nvars - 2)
    out.append(as_matrix_tuple(pauli_mats[:nvars]))
    return out
