"""Eigenvalue computation and Krylov time evolution.

The dense path (scipy eigh, scipy expm) is deliberately kept separate from
the iterative path: the dense routines serve as oracles for the Lanczos
eigensolver and the Krylov propagator, so neither side may be collapsed
into the other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    CapacityError,
    ConvergenceError,
    DomainError,
    PropagationError,
)
from .operators import SectorBasis, SparseOperator, StateVector, project_operator

DENSE_DIM_CAP = 4096
RESIDUAL_TOLERANCE = 1e-8


@dataclass
class SpectrumResult:
    """Ascending eigenvalues, optional eigenvectors (as columns).

    ``ritz_history`` (Lanczos only) records the lowest Ritz value after each
    iteration; it is variational, so it decreases monotonically toward the
    ground energy."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    sector: SectorBasis | None = None
    ritz_history: np.ndarray | None = None

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    def ground_state(self) -> StateVector:
        if self.eigenvectors is None:
            raise DomainError("eigenvectors were not requested")
        return StateVector(self.eigenvectors[:, 0], self.sector)


@dataclass
class EvolutionResult:
    """States on the caller's time grid plus propagation metadata."""

    times: np.ndarray
    states: list[StateVector]
    krylov_dim: int
    steps_taken: int
    min_step: float
    max_error_estimate: float
    norm_drift: float = 0.0

    def state_at(self, index: int) -> StateVector:
        return self.states[index]


def _require_hermitian(h: SparseOperator, who: str):
    if not h.is_hermitian:
        raise DomainError(f"{who} requires a Hermitian operator")


def dense_spectrum(h: SparseOperator, *, compute_vectors: bool = True,
                   sector: SectorBasis | None = None) -> SpectrumResult:
    """Full spectrum by dense Hermitian diagonalization (the oracle path)."""
    if sector is not None and h.dimension != sector.dimension:
        h = project_operator(h, sector)
    if h.dimension > DENSE_DIM_CAP:
        raise CapacityError(
            f"dense diagonalization capped at {DENSE_DIM_CAP}, got {h.dimension}"
        )
    _require_hermitian(h, "dense_spectrum")
    dense = h.to_dense()
    if compute_vectors:
        vals, vecs = scipy.linalg.eigh(dense)
        return SpectrumResult(eigenvalues=vals, eigenvectors=vecs, sector=sector)
    vals = scipy.linalg.eigvalsh(dense)
    return SpectrumResult(eigenvalues=vals, sector=sector)


def _overlaps(basis: np.ndarray, w: np.ndarray) -> np.ndarray:
    """basis^dagger w without materializing a conjugated basis copy."""
    return np.conjugate(np.conjugate(w) @ basis)


def _lanczos_basis(matrix, v0: np.ndarray, max_dim: int, *,
                   breakdown_tol: float):
    """Lanczos tridiagonalization with full reorthogonalization.

    Returns (V, alphas, betas, broke_down) where V has the orthonormal
    basis as columns, len(alphas) = len(betas) + 1, and ``broke_down``
    marks a happy breakdown (the Krylov space became invariant).
    """
    dim = v0.shape[0]
    m = min(max_dim, dim)
    v = np.zeros((dim, m), dtype=complex)
    alphas = []
    betas = []
    v[:, 0] = v0 / np.linalg.norm(v0)
    for j in range(m):
        w = matrix @ v[:, j]
        alpha = np.vdot(v[:, j], w).real
        alphas.append(alpha)
        w = w - alpha * v[:, j]
        if j > 0:
            w = w - betas[-1] * v[:, j - 1]
        # Full reorthogonalization, applied twice; loss of orthogonality is
        # what ruins plain Lanczos in floating point.
        basis = v[:, : j + 1]
        w = w - basis @ _overlaps(basis, w)
        w = w - basis @ _overlaps(basis, w)
        beta = np.linalg.norm(w)
        if j == m - 1:
            betas.append(beta)
            break
        if beta <= breakdown_tol:
            return v[:, : j + 1], np.array(alphas), np.array(betas), True
        betas.append(beta)
        v[:, j + 1] = w / beta
    return v, np.array(alphas), np.array(betas[: len(alphas) - 1]), False


def lanczos_extremal(h: SparseOperator, k: int,
                     sector: SectorBasis | None = None, *,
                     max_iter: int | None = None,
                     tol: float = 1e-10,
                     seed: int = 0) -> SpectrumResult:
    """k lowest eigenpairs by Lanczos with full reorthogonalization.

    Breakdown (an invariant Krylov subspace before k pairs converge) is
    handled by restarting with a fresh random vector orthogonal to the
    current basis; the tridiagonal matrix simply gains a zero coupling.
    A single Krylov sequence cannot see the multiplicity of degenerate
    eigenvalues, so after convergence the iteration injects fresh restart
    vectors until the k lowest values survive two probes unchanged.
    """
    _require_hermitian(h, "lanczos_extremal")
    dim = h.dimension
    if sector is not None and dim != sector.dimension:
        h = project_operator(h, sector)
        dim = h.dimension
    if not 1 <= k <= dim:
        raise DomainError(f"k={k} out of range for dimension {dim}")
    if max_iter is None:
        max_iter = min(dim, max(6 * k + 60, 120))
    rng = np.random.default_rng(seed)
    matrix = h.matrix
    scale = max(h.norm_max(), 1.0)
    breakdown_tol = 1e-13 * scale

    basis = np.zeros((dim, max_iter), dtype=complex)
    alphas = np.zeros(max_iter)
    betas = np.zeros(max_iter)  # betas[j] couples vector j to j+1
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    v /= np.linalg.norm(v)
    basis[:, 0] = v
    size = 0
    prev_beta = 0.0
    history = []
    snapshot = None
    stable_probes = 0
    probe_depth = k + 8  # iterations a probe branch gets before judging it
    cooldown = 0
    for j in range(max_iter):
        w = matrix @ basis[:, j]
        alphas[j] = np.vdot(basis[:, j], w).real
        w = w - alphas[j] * basis[:, j]
        if j > 0 and prev_beta > 0.0:
            w = w - prev_beta * basis[:, j - 1]
        sub = basis[:, : j + 1]
        w = w - sub @ _overlaps(sub, w)
        w = w - sub @ _overlaps(sub, w)
        beta = np.linalg.norm(w)
        size = j + 1

        tri = _tridiagonal(alphas[:size], betas[: size - 1])
        ritz_vals, ritz_vecs = scipy.linalg.eigh(tri)
        history.append(float(ritz_vals[0]))
        converged = False
        if size >= k and cooldown == 0:
            # Residual estimate per Ritz pair: |beta * last component|.
            est = np.abs(beta * ritz_vecs[-1, :k])
            converged = bool(np.all(est <= tol * scale))
        cooldown = max(0, cooldown - 1)
        if size == dim:
            break
        if converged:
            current = ritz_vals[:k]
            if snapshot is not None and np.all(
                np.abs(current - snapshot) <= 100.0 * tol * scale
            ):
                stable_probes += 1
            else:
                stable_probes = 0
            snapshot = current.copy()
            if stable_probes >= 2:
                break
        if j == max_iter - 1:
            raise ConvergenceError(
                f"Lanczos did not converge in {max_iter} iterations "
                f"(k={k}, dim={dim}, worst residual estimate "
                f"{float(np.max(np.abs(beta * ritz_vecs[-1, :min(k, size)]))):.3e})"
            )
        if converged or beta <= breakdown_tol:
            # Probe for degenerate partners (or recover from breakdown)
            # with a fresh vector orthogonal to everything seen so far.
            v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            v = v - sub @ _overlaps(sub, v)
            nrm = np.linalg.norm(v)
            if nrm < 1e-10:
                break
            basis[:, j + 1] = v / nrm
            betas[j] = 0.0
            prev_beta = 0.0
            if converged:
                # Give the fresh branch time to surface a hidden partner
                # before the next stability judgment.
                cooldown = probe_depth
        else:
            basis[:, j + 1] = w / beta
            betas[j] = beta
            prev_beta = beta

    tri = _tridiagonal(alphas[:size], betas[: size - 1])
    ritz_vals, ritz_vecs = scipy.linalg.eigh(tri)
    vals = ritz_vals[:k]
    vecs = basis[:, :size] @ ritz_vecs[:, :k]
    residuals = np.array([
        np.linalg.norm(matrix @ vecs[:, i] - vals[i] * vecs[:, i])
        for i in range(k)
    ])
    if np.any(residuals > RESIDUAL_TOLERANCE * scale):
        raise ConvergenceError(
            f"Lanczos residual check failed: max residual "
            f"{residuals.max():.3e} exceeds {RESIDUAL_TOLERANCE * scale:.3e}"
        )
    return SpectrumResult(eigenvalues=vals, eigenvectors=vecs, sector=sector,
                          ritz_history=np.array(history))


def _tridiagonal(alphas: np.ndarray, betas: np.ndarray) -> np.ndarray:
    tri = np.diag(alphas)
    if len(betas):
        tri += np.diag(betas, 1) + np.diag(betas, -1)
    return tri


def krylov_evolve(h: SparseOperator, psi0: StateVector, times,
                  *, krylov_dim: int = 30, tol: float = 1e-9) -> EvolutionResult:
    """psi(t) = exp(-i H t) psi0 on the caller's time grid.

    Each internal substep builds a Lanczos basis from the current state and
    applies the small-matrix exponential; the step is halved whenever the
    local error estimate beta * |<e_m, exp(-i dt T) e_1>| exceeds ``tol``.
    Substeps are invisible to callers.
    """
    _require_hermitian(h, "krylov_evolve")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise DomainError("times must be a non-empty 1D grid")
    if np.any(np.diff(times) < 0) or times[0] < 0:
        raise DomainError("times must be nondecreasing and start at t >= 0")
    if psi0.dimension != h.dimension:
        raise DomainError(
            f"state dimension {psi0.dimension} does not match operator "
            f"dimension {h.dimension}"
        )
    if abs(psi0.norm() - 1.0) > 1e-10:
        raise DomainError("initial state must be normalized")

    matrix = h.matrix
    # Gershgorin bound on the spectral radius steers the step size.
    radius = float(np.abs(matrix).sum(axis=1).max()) if h.nnz else 1e-30
    radius = max(radius, 1e-30)
    psi = psi0.amplitudes.astype(complex).copy()
    t = 0.0
    dt = min(0.25 * krylov_dim / radius, times[-1] if times[-1] > 0 else 1.0)
    min_dt_seen = np.inf
    max_err = 0.0
    steps = 0
    drift = 0.0
    states: list[StateVector] = []

    for target in times:
        while t < target - 1e-15 * max(1.0, target):
            step = min(dt, target - t)
            while True:
                new_psi, err, happy = _krylov_step(matrix, psi, step, krylov_dim)
                if happy or err <= tol:
                    break
                step /= 2.0
                if step < 1e-14 * max(1.0, target):
                    raise PropagationError(
                        f"time step underflow at t={t:.6g} "
                        f"(error estimate {err:.3e} > tol {tol:.3e})"
                    )
            nrm = np.linalg.norm(new_psi)
            drift = max(drift, abs(nrm - 1.0))
            psi = new_psi / nrm
            t += step
            steps += 1
            min_dt_seen = min(min_dt_seen, step)
            max_err = max(max_err, err)
            if err < tol / 16.0:
                dt = min(step * 1.5, krylov_dim / radius)
            else:
                dt = step
        states.append(StateVector(psi.copy(), psi0.sector))

    return EvolutionResult(
        times=times,
        states=states,
        krylov_dim=krylov_dim,
        steps_taken=steps,
        min_step=float(min_dt_seen) if steps else 0.0,
        max_error_estimate=float(max_err),
        norm_drift=float(drift),
    )


def _krylov_step(matrix, psi: np.ndarray, dt: float, krylov_dim: int):
    """One exp(-i dt H) application; returns (new_psi, error_estimate, happy)."""
    nrm = np.linalg.norm(psi)
    v, alphas, betas, happy = _lanczos_basis(
        matrix, psi, krylov_dim, breakdown_tol=1e-14 * max(nrm, 1.0)
    )
    size = len(alphas)
    tri = _tridiagonal(alphas, betas[: size - 1] if not happy else betas)
    propagator = scipy.linalg.expm(-1j * dt * tri)
    small = propagator[:, 0]
    new_psi = nrm * (v @ small)
    if happy or size == matrix.shape[0]:
        return new_psi, 0.0, True
    residual_beta = betas[-1] if len(betas) == size else 0.0
    err = abs(residual_beta * small[-1]) * nrm
    return new_psi, float(err), False


def observable_series(result: EvolutionResult, o: SparseOperator) -> np.ndarray:
    """<psi(t)| O |psi(t)> per time point; real when O is Hermitian."""
    values = np.empty(len(result.states), dtype=complex)
    for i, state in enumerate(result.states):
        values[i] = o.expectation(state.amplitudes)
    if o.is_hermitian:
        return values.real
    return values


def correlation(h: SparseOperator, psi0: StateVector,
                o_a: SparseOperator, o_b: SparseOperator, times,
                *, krylov_dim: int = 30, tol: float = 1e-10) -> np.ndarray:
    """C_ab(t) = <psi0| O_a(t) O_b |psi0> with O_a(t) = e^{iHt} O_a e^{-iHt}.

    Computed by co-propagating psi0 and O_b psi0:
    C(t) = <psi(t)| O_a |chi(t)> with both vectors evolved under H.
    """
    for op in (o_a, o_b):
        if op.dimension != h.dimension:
            raise DomainError("observable dimension does not match Hamiltonian")
    chi0 = o_b.apply(psi0.amplitudes)
    weight = np.linalg.norm(chi0)
    if weight == 0.0:
        return np.zeros(len(np.atleast_1d(times)), dtype=complex)
    left = krylov_evolve(h, psi0, times, krylov_dim=krylov_dim, tol=tol)
    right = krylov_evolve(
        h, StateVector(chi0 / weight, psi0.sector), times,
        krylov_dim=krylov_dim, tol=tol,
    )
    series = np.empty(len(left.states), dtype=complex)
    for i, (bra, ket) in enumerate(zip(left.states, right.states)):
        series[i] = weight * np.vdot(bra.amplitudes, o_a.apply(ket.amplitudes))
    return series
