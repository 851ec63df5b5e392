"""Certify or refute trace positivity of self-adjoint polynomials.

A self-adjoint polynomial whose trace is nonnegative on all Hermitian
matrix tuples is the target of three complementary procedures:

* :func:`certify_sos` searches, at a chosen half-degree d, for a Gram
  matrix presenting the polynomial as cyclically equivalent to a sum of
  hermitian squares.  Success is constructive: explicit square factors
  with an independently recomputable residual.
* :func:`dual_witness` searches the other side of the duality for a
  pseudo-moment sequence that is structurally admissible (cyclic,
  conjugate symmetric, positive on squares, geometrically bounded) yet
  pairs negatively with the polynomial.
* :func:`falsify` hunts for a concrete matrix tuple with negative
  normalized trace, which is itself a witness through its moments.

Failure of the primal search is only ever "infeasible at tolerance at
level d": raising d enlarges the search space, and no claim of
completeness is made at any finite level.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .algebra import (
    NCPoly,
    Word,
    cyclic_canonical,
    evaluate,
    involute_word,
    normalized_trace,
    pair,
    star_product,
    words_up_to,
)
from .moments import MomentSequence, check_w_membership, moment_matrix, psd_check
from .sampling import make_rng, random_tuple, structured_library
from .sdp import (
    AffineConstraints,
    SolveReport,
    feasibility_solve,
    minimize_linear,
)

SYMMETRY_TOL = 1e-10
RANK_CUTOFF = 1e-8
RHS_IMAG_TOL = 1e-10
FALSIFY_TRACE_TOL = 1e-10


class SolverStalled(RuntimeError):
    """Feasibility solve hit its iteration cap without deciding."""

    def __init__(self, report: SolveReport):
        super().__init__(
            f"solver undecided after {report.iterations} iterations "
            f"(gap {report.gap:.3e})"
        )
        self.report = report


def _require_symmetric(p: NCPoly) -> None:
    if not p.is_symmetric(SYMMETRY_TOL):
        raise ValueError("polynomial is not self-adjoint")


def _class_positions(nvars: int, d: int):
    """Group basis-word pairs (J, K) by the cyclic class of reverse(J)+K.

    Every pair lands in exactly one class; every word of length <= 2d is
    reachable (split it in the middle), so the classes cover all of them.
    """
    basis = words_up_to(nvars, d)
    classes: dict[Word, list[tuple[int, int]]] = {}
    for (row, J), (col, K) in product(enumerate(basis), repeat=2):
        rep = cyclic_canonical(involute_word(J) + K)
        classes.setdefault(rep, []).append((row, col))
    return basis, classes


@dataclass
class GramProblem:
    """Linear side of the square-decomposition search at half-degree d.

    For each cyclic class of words of length <= 2d, the entries of the Gram
    matrix lying over that class must sum to the polynomial's total
    coefficient on the class.  Solutions G that are also PSD factor into
    square terms reproducing the polynomial up to cyclic equivalence.
    """

    degree: int
    basis: list = field(repr=False)
    classes: dict = field(repr=False)
    rhs: dict = field(repr=False)
    constraints: AffineConstraints = field(repr=False)

    @property
    def n_classes(self) -> int:
        return len(self.classes)


def build_gram_problem(p: NCPoly, d: int) -> GramProblem:
    _require_symmetric(p)
    if p.degree() > 2 * d:
        raise ValueError(
            f"polynomial degree {p.degree()} exceeds 2*d = {2 * d}"
        )
    basis, classes = _class_positions(p.nvars, d)
    m = len(basis)
    reduced = p.cyclic_reduce()
    stray = [w for w in reduced.terms if w not in classes]
    if stray:
        raise AssertionError(f"unreachable class representative {stray[0]}")
    rhs = {rep: reduced.coeff(rep) for rep in classes}

    constraints = AffineConstraints(m)
    seen: set[Word] = set()
    for rep in sorted(classes, key=lambda w: (len(w), w)):
        if rep in seen:
            continue
        seen.add(rep)
        A = np.zeros((m, m))
        for row, col in classes[rep]:
            A[row, col] += 1.0
        value = rhs[rep]
        rep_op = cyclic_canonical(involute_word(rep))
        if rep_op == rep:
            # Reversal-closed class: the coefficient matrix is symmetric and
            # the class sum of a self-adjoint polynomial is real.
            if abs(value.imag) > RHS_IMAG_TOL:
                raise AssertionError(
                    f"class {rep} carries imaginary weight {value.imag:.3e}"
                )
            constraints.add(A, value.real)
        else:
            seen.add(rep_op)
            # One complex equation per reversal pair of classes, split into
            # Hermitian real and imaginary parts; the reversed class's
            # equation is the conjugate and adds nothing.
            constraints.add((A + A.T) / 2, value.real)
            constraints.add(0.5j * (A - A.T), value.imag)
    return GramProblem(
        degree=d, basis=basis, classes=classes, rhs=rhs, constraints=constraints
    )


@dataclass
class Certificate:
    """Square factors presenting p as cyclically equivalent to sum(b*.b)."""

    degree: int
    factors: list = field(repr=False)
    residual: NCPoly = field(repr=False)
    residual_l1: float = 0.0

    def sos_poly(self) -> NCPoly:
        if not self.factors:
            return NCPoly.zero(self.residual.nvars)
        total = NCPoly.zero(self.factors[0].nvars)
        for b in self.factors:
            total = total + star_product(b.adjoint(), b)
        return total


@dataclass
class InfeasibilityReport:
    """Negative outcome of the square-decomposition search at level d."""

    degree: int
    gap: float
    iterations: int
    status: str = "infeasible-at-tolerance"


def extract_factors(G: np.ndarray, basis, nvars: int, rank_cutoff: float = RANK_CUTOFF):
    """Spectral square factors of a Gram matrix over a word basis.

    Eigenvalues below ``rank_cutoff`` times the largest are numerical dust
    and are dropped rather than turned into spurious factors.
    """
    G = (G + G.conj().T) / 2
    eigvals, eigvecs = np.linalg.eigh(G)
    top = float(eigvals[-1]) if len(eigvals) else 0.0
    factors = []
    if top <= 0:
        return factors
    for s in range(len(eigvals) - 1, -1, -1):
        lam = float(eigvals[s])
        if lam <= rank_cutoff * top:
            break
        weight = np.sqrt(lam)
        coeffs = {
            word: weight * np.conj(eigvecs[k, s])
            for k, word in enumerate(basis)
            if abs(eigvecs[k, s]) > 1e-14
        }
        factors.append(NCPoly(nvars, coeffs))
    return factors


def certify_sos(
    p: NCPoly,
    d: int | None = None,
    tol: float = 1e-9,
    max_iter: int = 200_000,
):
    """Search for a square decomposition of p up to cyclic equivalence.

    Returns a :class:`Certificate` on success and an
    :class:`InfeasibilityReport` when the Gram problem is infeasible at
    tolerance; raises :class:`SolverStalled` when the solve is undecided at
    its iteration cap.  The certificate's residual is recomputed from the
    extracted factors by plain polynomial arithmetic and is of the order of
    the solver tolerance times the squared basis size.
    """
    _require_symmetric(p)
    if d is None:
        d = (p.degree() + 1) // 2
    problem = build_gram_problem(p, d)
    report = feasibility_solve(problem.constraints, tol=tol, max_iter=max_iter)
    if report.status == "max-iterations":
        raise SolverStalled(report)
    if report.status != "feasible":
        return InfeasibilityReport(
            degree=d, gap=report.gap, iterations=report.iterations
        )
    factors = extract_factors(report.solution, problem.basis, p.nvars)
    total = NCPoly.zero(p.nvars)
    for b in factors:
        total = total + star_product(b.adjoint(), b)
    residual = (p - total).cyclic_reduce()
    return Certificate(
        degree=d,
        factors=factors,
        residual=residual,
        residual_l1=residual.r_norm(1.0),
    )


def verify_certificate(p: NCPoly, cert: Certificate) -> float:
    """Recompute the certificate residual from scratch.

    Uses only polynomial arithmetic on the stored factors, never any solver
    state, so it independently audits what :func:`certify_sos` produced.
    """
    total = NCPoly.zero(p.nvars)
    for b in cert.factors:
        total = total + star_product(b.adjoint(), b)
    return (p - total).cyclic_reduce().r_norm(1.0)


@dataclass
class DualWitness:
    """Admissible pseudo-moments pairing negatively with the polynomial."""

    theta: MomentSequence
    value: float
    radius: float

    @property
    def degree(self) -> int:
        return self.theta.max_degree


def witness_search(
    p: NCPoly,
    d: int | None = None,
    R: float = 1.0,
    tol: float = 1e-9,
    max_iter: int = 20_000,
):
    """Minimize the pairing of p against structured pseudo-moments.

    The free variable is a Hermitian matrix over the half-degree word
    basis, constrained to be PSD, normalized at the empty word, constant on
    each cyclic class, and entrywise bounded by ``R**word_length``.
    Returns the extracted sequence together with the achieved pairing
    value, whatever its sign.
    """
    _require_symmetric(p)
    if R < 1:
        raise ValueError(f"witness box radius must be at least 1, got {R}")
    if d is None:
        d = (p.degree() + 1) // 2
    if p.degree() > 2 * d:
        raise ValueError(f"polynomial degree {p.degree()} exceeds 2*d = {2 * d}")
    basis, classes = _class_positions(p.nvars, d)
    m = len(basis)

    constraints = AffineConstraints(m)
    unit = np.zeros((m, m))
    unit[0, 0] = 1.0
    constraints.add(unit, 1.0)
    for rep in sorted(classes, key=lambda w: (len(w), w)):
        ref, rest = classes[rep][0], classes[rep][1:]
        for pos in rest:
            re_part = _re_entry(ref, m) - _re_entry(pos, m)
            if np.any(re_part):
                constraints.add(re_part, 0.0)
            im_part = _im_entry(ref, m) - _im_entry(pos, m)
            if np.any(im_part):
                constraints.add(im_part, 0.0)

    lengths = np.array([len(w) for w in basis], dtype=float)
    box = float(R) ** (lengths[:, None] + lengths[None, :])

    reduced = p.cyclic_reduce()
    weights = np.zeros((m, m), dtype=complex)
    for rep, positions in classes.items():
        coeff = reduced.coeff(rep)
        if coeff == 0:
            continue
        share = coeff / len(positions)
        for row, col in positions:
            weights[row, col] += share
    objective = (np.conj(weights) + weights.T) / 2

    solution, _ = minimize_linear(
        objective, constraints, box=box, tol=tol, max_iter=max_iter
    )
    theta = _extract_moments(solution, classes, p.nvars, 2 * d, R)
    value = pair(p, theta)
    if abs(value.imag) > 1e-8:
        raise AssertionError(f"pairing unexpectedly complex: {value}")
    return theta, value.real


def dual_witness(
    p: NCPoly,
    d: int | None = None,
    R: float = 1.0,
    tol: float = 1e-9,
    max_iter: int = 20_000,
):
    """Run :func:`witness_search`; keep the result only if decisively negative.

    Returns a :class:`DualWitness` when the minimized pairing falls below
    ``-tol``, None otherwise.  A returned witness satisfies the structural
    invariants (see :func:`validate_witness`) at ten times the tolerance.
    """
    theta, value = witness_search(p, d=d, R=R, tol=tol, max_iter=max_iter)
    if value < -tol:
        return DualWitness(theta=theta, value=value, radius=float(R))
    return None


def _re_entry(pos, m):
    row, col = pos
    A = np.zeros((m, m), dtype=complex)
    A[row, col] += 0.5
    A[col, row] += 0.5
    return A


def _im_entry(pos, m):
    row, col = pos
    A = np.zeros((m, m), dtype=complex)
    if row != col:
        A[row, col] += 0.5j
        A[col, row] -= 0.5j
    return A


def _extract_moments(M: np.ndarray, classes, nvars: int, degree: int, R: float) -> MomentSequence:
    M = (M + M.conj().T) / 2
    per_class: dict[Word, complex] = {}
    for rep, positions in classes.items():
        per_class[rep] = sum(M[row, col] for row, col in positions) / len(positions)
    norm = per_class[()].real
    values: dict[Word, complex] = {}
    for word in words_up_to(nvars, degree):
        v = per_class[cyclic_canonical(word)] / norm
        bound = R ** len(word)
        if abs(v) > bound:
            v = v * (bound / abs(v))
        values[word] = v
    return MomentSequence(nvars, degree, values)


@dataclass
class WitnessValidation:
    """Independent re-check of every structural witness property."""

    membership_passed: bool
    psd_passed: bool
    min_eigenvalue: float
    box_passed: bool
    max_box_excess: float
    normalized: bool

    @property
    def passed(self) -> bool:
        return (
            self.membership_passed
            and self.psd_passed
            and self.box_passed
            and self.normalized
        )


def validate_witness(witness: DualWitness, tol: float = 1e-9) -> WitnessValidation:
    theta = witness.theta
    report = check_w_membership(theta, tol=10 * tol)
    d = theta.max_degree // 2
    ok, min_eig = psd_check(moment_matrix(theta, d), tol=10 * tol)
    excess = 0.0
    for word, value in theta.values.items():
        excess = max(excess, abs(value) - witness.radius ** len(word))
    return WitnessValidation(
        membership_passed=report.passed,
        psd_passed=ok,
        min_eigenvalue=min_eig,
        box_passed=excess <= 10 * tol,
        max_box_excess=excess,
        normalized=abs(theta.values[()] - 1.0) <= 10 * tol,
    )


@dataclass
class Falsification:
    """A matrix tuple on which the polynomial has negative normalized trace."""

    tuple: object
    trace: float
    source: str  # "library" | "random"
    index: int


def falsify(
    p: NCPoly,
    trials: int = 1000,
    N: int = 4,
    R: float = 1.0,
    seed: int = 0,
):
    """Search for a matrix tuple with negative normalized trace.

    A fixed structured library (zero, identities, diagonal sign patterns,
    the Pauli x/z pair padded with identities) is probed first, then
    ``trials`` seeded Gaussian Hermitian tuples rescaled to norm R.  The
    first tuple driving the trace below -1e-10 is returned with its trace;
    the outcome is a deterministic function of the seed.
    """
    _require_symmetric(p)
    for index, candidate in enumerate(structured_library(p.nvars, N)):
        value = _real_trace(p, candidate)
        if value < -FALSIFY_TRACE_TOL:
            return Falsification(
                tuple=candidate, trace=value, source="library", index=index
            )
    rng = make_rng(seed)
    for index in range(trials):
        candidate = random_tuple(rng, p.nvars, N, R)
        value = _real_trace(p, candidate)
        if value < -FALSIFY_TRACE_TOL:
            return Falsification(
                tuple=candidate, trace=value, source="random", index=index
            )
    return None


def _real_trace(p: NCPoly, X) -> float:
    value = normalized_trace(evaluate(p, X))
    return float(value.real)
