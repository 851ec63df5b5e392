"""Dense Hermitian semidefinite feasibility by alternating projections.

The feasible sets are the positive semidefinite cone and an affine set of
real linear equations ``Re<A_k, G> = b_k`` with Hermitian coefficient
matrices; both admit cheap exact projections (eigenvalue clamping and a
least-squares correction), and Dykstra's correction terms make the
alternation converge to a point of the intersection when one exists.  When
the sets do not meet, the measured gap between them stabilizes at a
positive value and the solve reports infeasibility at tolerance; no exact
separation certificates are produced.

A projected subgradient loop on top of the same projections minimizes a
linear functional over the intersection (optionally further cut by an
entrywise magnitude box).  It is deliberately coarse: downstream users
re-verify whatever they extract, so solver accuracy is not load-bearing.

Everything here is single-threaded and deterministic; independent solves
may run concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 200_000
HERMITIAN_TOL = 1e-10
CONSISTENCY_TOL = 1e-8


class InconsistentConstraints(ValueError):
    """The affine equations admit no solution: structurally infeasible."""


class NoFeasiblePoint(RuntimeError):
    """The subgradient loop never produced a feasible iterate."""


def _check_hermitian(M: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    defect = float(np.max(np.abs(M - M.conj().T))) if M.size else 0.0
    if defect > tol:
        raise ValueError(f"matrix is not Hermitian: max asymmetry {defect:.3e}")
    return (M + M.conj().T) / 2


def _embed(M: np.ndarray) -> np.ndarray:
    """Matrix as a real vector; an exact isometry for the Frobenius norm,
    and Re<A, M> becomes the plain dot product of the embeddings."""
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def _unembed(v: np.ndarray, dim: int) -> np.ndarray:
    k = dim * dim
    return v[:k].reshape(dim, dim) + 1j * v[k:].reshape(dim, dim)


class AffineConstraints:
    """Equations ``Re<A_k, G> = b_k`` over Hermitian G, A_k Hermitian.

    Duplicate or linearly dependent rows are allowed; they are detected when
    the constraint system is first used and surfaced via ``n_redundant``.
    """

    def __init__(self, dim: int):
        if dim < 1:
            raise ValueError(f"dimension must be positive, got {dim}")
        self.dim = dim
        self._matrices: list[np.ndarray] = []
        self._rhs: list[float] = []
        self._prepared: _Prepared | None = None

    def add(self, A: np.ndarray, b: float) -> None:
        A = _check_hermitian(A)
        if A.shape != (self.dim, self.dim):
            raise ValueError(
                f"constraint matrix shape {A.shape} does not match dim {self.dim}"
            )
        self._matrices.append(A)
        self._rhs.append(float(b))
        self._prepared = None

    def __len__(self) -> int:
        return len(self._matrices)

    @property
    def matrices(self) -> list[np.ndarray]:
        return list(self._matrices)

    @property
    def rhs(self) -> np.ndarray:
        return np.array(self._rhs)

    @property
    def rank(self) -> int:
        return self._prepare().rank

    @property
    def n_redundant(self) -> int:
        """Number of linearly dependent rows among the constraints."""
        return len(self) - self._prepare().rank

    @property
    def consistent(self) -> bool:
        return self._prepare().consistent

    def _prepare(self) -> "_Prepared":
        if self._prepared is None:
            self._prepared = _Prepared(self)
        return self._prepared

    def residuals(self, G: np.ndarray) -> np.ndarray:
        """Signed violation of each equation at G."""
        if not self._matrices:
            return np.zeros(0)
        prep = self._prepare()
        return prep.C @ _embed(np.asarray(G, dtype=complex)) - prep.b


class _Prepared:
    """Vectorized constraint system with a cached pseudo-inverse."""

    def __init__(self, constraints: AffineConstraints):
        dim = constraints.dim
        k = len(constraints)
        self.dim = dim
        self.b = constraints.rhs
        if k == 0:
            self.C = np.zeros((0, 2 * dim * dim))
            self.pinv = np.zeros((2 * dim * dim, 0))
            self.rank = 0
            self.consistent = True
            self.lstsq_residual = 0.0
            return
        self.C = np.stack([_embed(A) for A in constraints.matrices])
        u, s, vt = np.linalg.svd(self.C, full_matrices=False)
        cutoff = max(s[0], 1.0) * 1e-12 if s.size else 0.0
        keep = s > cutoff
        self.rank = int(np.count_nonzero(keep))
        s_inv = np.where(keep, 1.0 / np.where(keep, s, 1.0), 0.0)
        self.pinv = (vt.T * s_inv) @ u.T
        # Min-norm solution residual reveals mutually contradictory equations.
        nearest = self.C @ (self.pinv @ self.b)
        self.lstsq_residual = float(np.linalg.norm(nearest - self.b))
        self.consistent = self.lstsq_residual <= CONSISTENCY_TOL

    def project_vec(self, v: np.ndarray) -> np.ndarray:
        if self.C.shape[0] == 0:
            return v
        return v - self.pinv @ (self.C @ v - self.b)


def project_psd(H: np.ndarray) -> np.ndarray:
    """Frobenius-nearest positive semidefinite matrix: clamp the spectrum."""
    H = _check_hermitian(H)
    eigvals, eigvecs = np.linalg.eigh(H)
    clipped = np.maximum(eigvals, 0.0)
    return (eigvecs * clipped) @ eigvecs.conj().T


def project_affine(G: np.ndarray, constraints: AffineConstraints) -> np.ndarray:
    """Frobenius-nearest Hermitian matrix satisfying the equations."""
    G = _check_hermitian(G)
    prep = constraints._prepare()
    if not prep.consistent:
        raise InconsistentConstraints(
            "constraints are structurally infeasible: least-squares residual "
            f"{prep.lstsq_residual:.3e} exceeds {CONSISTENCY_TOL:.0e}"
        )
    out = _unembed(prep.project_vec(_embed(G)), constraints.dim)
    return (out + out.conj().T) / 2


def _psd_distance(G: np.ndarray) -> float:
    eigvals = np.linalg.eigvalsh((G + G.conj().T) / 2)
    negative = np.minimum(eigvals, 0.0)
    return float(np.sqrt(np.sum(negative**2)))


def _affine_distance(G: np.ndarray, prep: _Prepared) -> float:
    if prep.C.shape[0] == 0:
        return 0.0
    v = _embed(G)
    return float(np.linalg.norm(prep.project_vec(v) - v))


@dataclass
class SolveReport:
    """Outcome of a feasibility solve."""

    status: str  # "feasible" | "infeasible-at-tolerance" | "max-iterations"
    iterations: int
    dist_psd: float
    dist_affine: float
    solution: np.ndarray = field(repr=False)
    gap: float = 0.0

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"


def _starting_point(constraints: AffineConstraints, dim: int) -> np.ndarray:
    # Scale the identity so pure-trace information in the equations is matched,
    # then move onto the affine set.
    traces = np.array([float(np.trace(A).real) for A in constraints.matrices])
    denom = float(np.sum(traces**2))
    alpha = float(np.dot(traces, constraints.rhs) / denom) if denom > 1e-30 else 0.0
    return project_affine(alpha * np.eye(dim, dtype=complex), constraints)


def feasibility_solve(
    constraints: AffineConstraints,
    dim: int | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> SolveReport:
    """Find a PSD matrix satisfying the equations, or report the gap.

    Alternates projections between the cone and the affine set with
    Dykstra's corrections.  Declares feasibility when the two projected
    points come within ``tol`` in Frobenius norm; declares infeasibility at
    tolerance when the gap stabilizes (relative change below tol/100 across
    a 50-iteration window) at a value above ``tol``.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if dim is None:
        dim = constraints.dim
    elif dim != constraints.dim:
        raise ValueError(
            f"dim {dim} does not match constraint dimension {constraints.dim}"
        )
    prep = constraints._prepare()
    if not prep.consistent:
        raise InconsistentConstraints(
            "constraints are structurally infeasible: least-squares residual "
            f"{prep.lstsq_residual:.3e} exceeds {CONSISTENCY_TOL:.0e}"
        )

    x = _starting_point(constraints, dim)
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    window = 50
    gaps: deque[float] = deque(maxlen=window + 1)
    gap = float("inf")
    iterations = 0
    status = "max-iterations"
    for iterations in range(1, max_iter + 1):
        y = project_psd(x + p)
        p = x + p - y
        x = project_affine(y + q, constraints)
        q = y + q - x
        gap = float(np.linalg.norm(x - y))
        if gap <= tol:
            status = "feasible"
            break
        gaps.append(gap)
        if len(gaps) > window:
            previous = gaps[0]
            if abs(gap - previous) < (tol / 100) * max(gap, 1e-300):
                status = "infeasible-at-tolerance"
                break

    solution = x
    return SolveReport(
        status=status,
        iterations=iterations,
        dist_psd=_psd_distance(solution),
        dist_affine=_affine_distance(solution, prep),
        solution=solution,
        gap=gap,
    )


def _project_box(G: np.ndarray, radii: np.ndarray) -> np.ndarray:
    """Clamp entry magnitudes to the given radii, preserving phases."""
    mags = np.abs(G)
    with np.errstate(invalid="ignore", divide="ignore"):
        scale = np.where(mags > radii, radii / np.where(mags > 0, mags, 1.0), 1.0)
    return G * scale


def _box_distance(G: np.ndarray, radii: np.ndarray) -> float:
    excess = np.maximum(np.abs(G) - radii, 0.0)
    return float(np.linalg.norm(excess))


def _dykstra_polish(x, projections, tol, max_iter):
    """Cyclic Dykstra iteration over several convex sets."""
    corrections = [np.zeros_like(x) for _ in projections]
    for _ in range(max_iter):
        x_before = x
        for i, proj in enumerate(projections):
            y = proj(x + corrections[i])
            corrections[i] = x + corrections[i] - y
            x = y
        if np.linalg.norm(x - x_before) <= tol / 10:
            break
    return x


def minimize_linear(
    objective: np.ndarray,
    constraints: AffineConstraints,
    box: np.ndarray | None = None,
    step: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = 10_000,
    polish_every: int = 250,
    polish_iters: int = 150,
):
    """Minimize ``Re<objective, G>`` over PSD ∩ affine (∩ entrywise box).

    Projected subgradient descent with a diminishing step and cyclically
    applied projections.  A gradient step always leaves the feasible set by
    roughly the step length, so candidate solutions are harvested
    periodically by running Dykstra iterations to land back on the
    intersection; the best feasible candidate seen is retained (monotone
    best-so-far), given a final harder polish, and returned with its
    objective value.  Accuracy is coarse, of order the final step length;
    callers needing guarantees must verify the returned matrix
    independently.

    Raises :class:`NoFeasiblePoint` if no polished candidate ever lands
    within tolerance of all the sets.
    """
    c = _check_hermitian(objective)
    dim = constraints.dim
    if c.shape != (dim, dim):
        raise ValueError(f"objective shape {c.shape} does not match dim {dim}")
    if box is not None:
        box = np.asarray(box, dtype=float)
        if box.shape != (dim, dim):
            raise ValueError(f"box shape {box.shape} does not match dim {dim}")
        if not np.all(np.isfinite(box)) or np.any(box < 0):
            raise ValueError("box radii must be finite and nonnegative")
    prep = constraints._prepare()
    if not prep.consistent:
        raise InconsistentConstraints(
            "constraints are structurally infeasible: least-squares residual "
            f"{prep.lstsq_residual:.3e} exceeds {CONSISTENCY_TOL:.0e}"
        )

    def value_of(G):
        return float(np.real(np.vdot(c, G)))

    projections = [project_psd]
    if box is not None:
        projections.append(lambda G: _project_box(G, box))
    projections.append(lambda G: project_affine(G, constraints))

    def distances(G):
        out = [_psd_distance(G)]
        if box is not None:
            out.append(_box_distance(G, box))
        out.append(_affine_distance(G, prep))
        return max(out)

    gnorm = float(np.linalg.norm(c)) or 1.0
    feas_tol = 100 * max(tol, 1e-12)
    x = _dykstra_polish(
        _starting_point(constraints, dim), projections, tol, 500
    )
    best_x = None
    best_value = np.inf
    for k in range(max_iter):
        x = x - (step / (gnorm * np.sqrt(k + 1.0))) * c
        for proj in projections:
            x = proj(x)
        if (k + 1) % polish_every == 0 or k == max_iter - 1:
            candidate = _dykstra_polish(x, projections, tol, polish_iters)
            if distances(candidate) <= feas_tol:
                v = value_of(candidate)
                if v < best_value:
                    best_value = v
                    best_x = candidate
    if best_x is None:
        raise NoFeasiblePoint(
            f"no feasible iterate found within {max_iter} iterations"
        )
    polished = _dykstra_polish(best_x, projections, tol, 5_000)
    if distances(polished) <= distances(best_x):
        best_x = polished
    return best_x, value_of(best_x)
