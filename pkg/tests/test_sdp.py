import numpy as np
import pytest

from nctrace.sdp import (
    AffineConstraints,
    InconsistentConstraints,
    feasibility_solve,
    minimize_linear,
    project_affine,
    project_psd,
)

from helpers import make_rng, random_hermitian


def test_project_psd_clamps_spectrum():
    out = project_psd(np.diag([3.0, -1.0]))
    assert np.allclose(out, np.diag([3.0, 0.0]))
    assert np.allclose(project_psd(np.zeros((3, 3))), 0.0)


def test_project_psd_fixes_psd_inputs():
    rng = make_rng(40)
    for _ in range(10):
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        G = b @ b.conj().T
        assert np.max(np.abs(project_psd(G) - G)) < 1e-12


def test_project_psd_rejects_non_hermitian():
    with pytest.raises(ValueError):
        project_psd(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_project_psd_idempotent_and_nonexpansive():
    rng = make_rng(41)
    for _ in range(20):
        a = random_hermitian(rng, 5)
        b = random_hermitian(rng, 5)
        pa, pb = project_psd(a), project_psd(b)
        assert np.linalg.norm(project_psd(pa) - pa) < 1e-12
        assert np.linalg.norm(pa - pb) <= np.linalg.norm(a - b) + 1e-12


def _unit_entry_constraints():
    cons = AffineConstraints(2)
    A = np.zeros((2, 2))
    A[0, 0] = 1.0
    cons.add(A, 1.0)
    return cons


def test_project_affine_single_entry():
    cons = _unit_entry_constraints()
    out = project_affine(np.zeros((2, 2)), cons)
    assert np.allclose(out, [[1.0, 0.0], [0.0, 0.0]])


def test_project_affine_keeps_feasible_points():
    cons = _unit_entry_constraints()
    G = np.array([[1.0, 0.5], [0.5, 2.0]])
    assert np.allclose(project_affine(G, cons), G)


def test_project_affine_satisfies_all_constraints():
    rng = make_rng(42)
    for _ in range(10):
        dim = 5
        cons = AffineConstraints(dim)
        for _ in range(6):
            cons.add(random_hermitian(rng, dim), rng.normal())
        out = project_affine(random_hermitian(rng, dim), cons)
        assert np.max(np.abs(cons.residuals(out))) < 1e-10
        assert np.max(np.abs(out - out.conj().T)) < 1e-12


def test_project_affine_detects_inconsistency():
    cons = AffineConstraints(2)
    A = np.zeros((2, 2))
    A[0, 0] = 1.0
    cons.add(A, 0.0)
    cons.add(A, 1.0)
    assert not cons.consistent
    with pytest.raises(InconsistentConstraints):
        project_affine(np.zeros((2, 2)), cons)


def test_dependent_rows_reported():
    cons = AffineConstraints(2)
    A = np.zeros((2, 2))
    A[0, 0] = 1.0
    cons.add(A, 1.0)
    cons.add(2 * A, 2.0)
    cons.add(np.eye(2), 1.0)
    assert cons.n_redundant == 1
    assert cons.consistent


def _trace_and_offdiag(target: float) -> AffineConstraints:
    cons = AffineConstraints(2)
    cons.add(np.eye(2), 1.0)
    B = np.array([[0.0, 1.0], [1.0, 0.0]])
    cons.add(B, target)  # Re<B, G> = G01 + G10
    return cons


def test_feasibility_solve_reachable_offdiagonal():
    report = feasibility_solve(_trace_and_offdiag(0.8), tol=1e-9)
    assert report.feasible
    G = report.solution
    assert np.trace(G).real == pytest.approx(1.0, abs=1e-9)
    assert (G[0, 1] + G[1, 0]).real == pytest.approx(0.8, abs=1e-9)
    assert np.linalg.eigvalsh(G)[0] >= -1e-9


def test_feasibility_solve_unreachable_offdiagonal():
    # At trace one, each off-diagonal entry of a PSD matrix is at most 1/2.
    report = feasibility_solve(_trace_and_offdiag(1.2), tol=1e-9)
    assert report.status == "infeasible-at-tolerance"
    assert report.gap > 1e-3


def test_feasibility_solve_empty_constraints():
    report = feasibility_solve(AffineConstraints(3), tol=1e-9)
    assert report.feasible
    assert np.allclose(report.solution, np.zeros((3, 3)))


def test_feasibility_solve_on_constructed_problems():
    rng = make_rng(43)
    for trial in range(10):
        dim = int(rng.integers(3, 13))
        b = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        target = b @ b.conj().T / dim
        cons = AffineConstraints(dim)
        for _ in range(int(rng.integers(2, 2 * dim))):
            A = random_hermitian(rng, dim)
            cons.add(A, float(np.real(np.vdot(A, target))))
        report = feasibility_solve(cons, tol=1e-9, max_iter=200_000)
        assert report.feasible, f"trial {trial}: {report.status}"
        assert np.max(np.abs(cons.residuals(report.solution))) < 1e-8
        assert np.linalg.eigvalsh(report.solution)[0] >= -1e-9


def test_feasibility_solve_deterministic():
    r1 = feasibility_solve(_trace_and_offdiag(0.8), tol=1e-9)
    r2 = feasibility_solve(_trace_and_offdiag(0.8), tol=1e-9)
    assert r1.iterations == r2.iterations
    assert np.array_equal(r1.solution, r2.solution)


def test_minimize_linear_corner_eigenvalue():
    cons = AffineConstraints(2)
    cons.add(np.eye(2), 1.0)
    c = np.zeros((2, 2))
    c[0, 0] = 1.0
    G, value = minimize_linear(c, cons, tol=1e-9, max_iter=4000)
    assert value == pytest.approx(0.0, abs=2e-2)
    assert value >= -1e-7
    assert np.trace(G).real == pytest.approx(1.0, abs=1e-7)
    assert np.linalg.eigvalsh(G)[0] >= -1e-7


def test_minimize_linear_trace_with_pinned_corner():
    cons = AffineConstraints(2)
    A = np.zeros((2, 2))
    A[0, 0] = 1.0
    cons.add(A, 1.0)
    G, value = minimize_linear(np.eye(2), cons, tol=1e-9, max_iter=4000)
    assert value == pytest.approx(1.0, abs=2e-2)
    assert value >= 1.0 - 1e-7


def test_minimize_linear_zero_objective():
    cons = _trace_and_offdiag(0.8)
    G, value = minimize_linear(np.zeros((2, 2)), cons, tol=1e-9, max_iter=1000)
    assert value == 0.0
    assert np.trace(G).real == pytest.approx(1.0, abs=1e-7)


def test_minimize_linear_respects_box():
    # Minimizing -G01-G10 under the box |G01| <= 0.3 pins the off-diagonal.
    cons = AffineConstraints(2)
    cons.add(np.eye(2), 1.0)
    c = -np.array([[0.0, 1.0], [1.0, 0.0]])
    box = np.array([[2.0, 0.3], [0.3, 2.0]])
    G, value = minimize_linear(c, cons, box=box, tol=1e-9, max_iter=4000)
    assert abs(G[0, 1]) <= 0.3 + 1e-6
    assert value == pytest.approx(-0.6, abs=2e-2)
