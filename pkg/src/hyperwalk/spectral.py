"""Random-walk Laplacian, symmetric eigensolver, Cheeger constant, and
mixing-time machinery.

The Laplacian of a walk with transition matrix P and stationary distribution
pi is L = Pi - (Pi P + P^T Pi) / 2 with Pi = diag(pi): the symmetrized,
stationarity-weighted operator. It is positive semi-definite and its kernel
contains the all-ones vector. The normalized variant
Pi^{-1/2} L Pi^{-1/2} is kept alongside because the Cheeger inequality
Phi^2 / 2 <= lambda <= 2 Phi is checked against *its* smallest nonzero
eigenvalue (the unnormalized one is reported too).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, degrees
from .errors import ConvergenceFailure, NotSymmetric, SizeLimit, Unmixed
from .stationary import rho_normalized, stationary_rho
from .walk import TransitionMatrix, transition_matrix

__all__ = [
    "CHEEGER_SIZE_LIMIT",
    "CheegerCheck",
    "CheegerResult",
    "HypergraphLaplacian",
    "MixingBound",
    "SpectralReport",
    "check_cheeger",
    "cheeger_constant",
    "eigenvalues_symmetric",
    "eigh_symmetric",
    "empirical_mixing_time",
    "laplacian",
    "laplacian_from_walk",
    "mixing_time_bound",
    "spectral_report",
]

# Exhaustive subset enumeration: 2^24 is the most we are willing to walk.
CHEEGER_SIZE_LIMIT = 24


@dataclass
class HypergraphLaplacian:
    vertices: tuple[str, ...]
    L: np.ndarray
    pi: np.ndarray
    normalized: np.ndarray  # Pi^{-1/2} L Pi^{-1/2}


def laplacian_from_walk(P: TransitionMatrix, pi: np.ndarray) -> HypergraphLaplacian:
    PiP = pi[:, None] * P.matrix
    L = np.diag(pi) - (PiP + PiP.T) / 2.0
    inv_sqrt = 1.0 / np.sqrt(pi)
    normalized = L * inv_sqrt[:, None] * inv_sqrt[None, :]
    return HypergraphLaplacian(vertices=P.vertices, L=L, pi=pi, normalized=normalized)


def laplacian(H: Hypergraph) -> HypergraphLaplacian:
    """Laplacian of the lazy walk on H, built from the rho-route stationary
    distribution."""
    return laplacian_from_walk(transition_matrix(H), stationary_rho(H).pi)


# -- symmetric eigensolver ---------------------------------------------------

def eigh_symmetric(M, sym_tol: float = 1e-10, sweep_cap: int = 100,
                   off_tol: float = 1e-12):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps row by row, zeroing each off-diagonal pair, until the off-diagonal
    Frobenius norm falls below off_tol relative to the matrix norm. Returns
    (eigenvalues ascending, eigenvector columns in matching order);
    deterministic for a given input.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise NotSymmetric("matrix is not square")
    asym = np.abs(M - M.T).max(initial=0.0)
    if asym > sym_tol:
        raise NotSymmetric(f"matrix asymmetric by {asym:.3e}")
    A = (M + M.T) / 2.0
    n = A.shape[0]
    V = np.eye(n)
    norm = np.linalg.norm(A, "fro")
    if norm == 0.0 or n == 1:
        order = np.argsort(np.diag(A), kind="stable")
        return np.diag(A)[order].copy(), V[:, order]
    target = off_tol * norm

    def off_norm() -> float:
        # Summed directly over the off-diagonal entries; subtracting the
        # diagonal mass from the full Frobenius norm cancels catastrophically
        # once the off-diagonal part is small.
        off2 = A.copy()
        np.fill_diagonal(off2, 0.0)
        return float(np.linalg.norm(off2, "fro"))

    converged = False
    for _ in range(sweep_cap):
        off = off_norm()
        if off <= target:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) < 1e-300:  # denormal pivot: drop it outright
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = A[:, p].copy()
                col_q = A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                vec_p = V[:, p].copy()
                vec_q = V[:, q].copy()
                V[:, p] = c * vec_p - s * vec_q
                V[:, q] = s * vec_p + c * vec_q
    else:
        off = off_norm()
        converged = off <= target
    if not converged:
        raise ConvergenceFailure(f"Jacobi sweeps exhausted (off-diagonal norm {off:.3e})")
    evals = np.diag(A).copy()
    order = np.argsort(evals, kind="stable")
    return evals[order], V[:, order]


def eigenvalues_symmetric(M) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending."""
    evals, _ = eigh_symmetric(M)
    return evals


# -- Cheeger constant ----------------------------------------------------------

@dataclass
class CheegerResult:
    phi: float
    argmin: tuple[str, ...]


def _cheeger_enumerate(P: np.ndarray, pi: np.ndarray):
    """Exact minimum of boundary flow over pi(S), over all S with
    0 < pi(S) <= 1/2; ties broken by lexicographically smallest sorted index
    tuple. Plain-float accumulation in fixed (ascending) order so independent
    enumerations can agree bit-for-bit."""
    n = len(pi)
    flow_terms = [[float(pi[x] * P[x, y]) for y in range(n)] for x in range(n)]
    pi_list = [float(x) for x in pi]
    best_ratio = None
    best_subset = None
    for mask in range(1, (1 << n) - 1):
        members = [i for i in range(n) if mask >> i & 1]
        pi_s = 0.0
        for i in members:
            pi_s += pi_list[i]
        if pi_s > 0.5:
            continue
        flow = 0.0
        for x in members:
            row = flow_terms[x]
            for y in range(n):
                if not mask >> y & 1:
                    flow += row[y]
        ratio = flow / pi_s
        key = tuple(members)
        if (
            best_ratio is None
            or ratio < best_ratio
            or (ratio == best_ratio and key < best_subset)
        ):
            best_ratio = ratio
            best_subset = key
    return best_ratio, best_subset


def cheeger_constant(H: Hypergraph) -> CheegerResult:
    """Cheeger constant of the lazy walk on H by exhaustive enumeration."""
    n = H.n_vertices
    if n > CHEEGER_SIZE_LIMIT:
        raise SizeLimit(
            f"Cheeger enumeration supports at most {CHEEGER_SIZE_LIMIT} vertices, got {n}"
        )
    if n < 2:
        raise ValueError("Cheeger constant needs at least two vertices")
    P = transition_matrix(H)
    pi = stationary_rho(H).pi
    phi, subset = _cheeger_enumerate(P.matrix, pi)
    return CheegerResult(phi=phi, argmin=tuple(H.vertices[i] for i in subset))


@dataclass
class CheegerCheck:
    lam: float              # smallest nonzero eigenvalue, normalized Laplacian
    lam_unnormalized: float
    phi: float
    holds: bool


def check_cheeger(H: Hypergraph, tol: float = 1e-9) -> CheegerCheck:
    """Verify Phi^2/2 <= lambda <= 2 Phi for the normalized Laplacian."""
    lap = laplacian(H)
    lam = float(eigenvalues_symmetric(lap.normalized)[1])
    lam_plain = float(eigenvalues_symmetric(lap.L)[1])
    phi = cheeger_constant(H).phi
    holds = (phi * phi / 2.0 - tol) <= lam <= (2.0 * phi + tol)
    return CheegerCheck(lam=lam, lam_unnormalized=lam_plain, phi=phi, holds=holds)


# -- mixing time ----------------------------------------------------------------

@dataclass
class MixingBound:
    bound: int
    beta1: float
    beta2: float
    d_min: float
    phi: float
    vacuous: bool


def _bound_from_components(beta1: float, beta2: float, d_min: float,
                           phi: float, eps: float) -> tuple[int, bool]:
    log_term = -math.log(2.0 * eps * math.sqrt(d_min * beta2))
    if log_term <= 0.0:
        return 0, True
    return math.ceil(8.0 * beta1 / (phi * phi) * log_term), False


def mixing_time_bound(H: Hypergraph, eps: float) -> MixingBound:
    """The bound ceil(8 beta1 / Phi^2 * log(1 / (2 eps sqrt(d_min beta2))))
    on the eps-mixing time of the lazy walk.

    The vertex weights are first rescaled per edge so every per-edge constant
    is 1; beta1 = min gamma_e(v)/delta(e) (invariant under that rescaling),
    beta2 = min gamma_e(v) (not invariant, hence the rescaling matters).
    A nonpositive logarithm clamps the bound to 0 and sets the vacuous flag.

    Caveat: the 8*beta1/Phi^2 prefactor vanishes as beta1 shrinks while real
    mixing times do not, so on hypergraphs with strongly skewed vertex
    weights the value can fall below the measured mixing time. It is kept in
    this form deliberately; a prefactor of 2/(beta1 * Phi^2) is the
    conservative alternative.
    """
    if not 0.0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps!r}")
    Hn = rho_normalized(H)
    d, delta = degrees(Hn)
    beta1 = min(
        float((gam / delta[k]).min()) for k, gam in enumerate(Hn._member_gamma)
    )
    beta2 = min(float(gam.min()) for gam in Hn._member_gamma)
    d_min = float(d.min())
    phi = cheeger_constant(Hn).phi
    bound, vacuous = _bound_from_components(beta1, beta2, d_min, phi, eps)
    return MixingBound(
        bound=bound, beta1=beta1, beta2=beta2, d_min=d_min, phi=phi, vacuous=vacuous
    )


def empirical_mixing_time(P: TransitionMatrix, pi: np.ndarray, eps: float,
                          cap: int) -> int:
    """Smallest t <= cap with max-over-starts total variation distance
    (half the L1 distance) between P^t rows and pi at most eps."""
    M = np.eye(P.n)
    for t in range(cap + 1):
        tv = 0.5 * np.abs(M - pi[None, :]).sum(axis=1).max()
        if tv <= eps:
            return t
        M = M @ P.matrix
    raise Unmixed(cap)


# -- aggregate report -------------------------------------------------------------

@dataclass
class SpectralReport:
    vertices: tuple[str, ...]
    eigenvalues: np.ndarray       # of the (unnormalized) Laplacian, ascending
    lam: float                    # smallest nonzero eigenvalue, normalized variant
    lam_unnormalized: float
    cheeger: float
    cheeger_argmin: tuple[str, ...]
    mixing_bound: int
    beta1: float
    beta2: float
    d_min: float
    vacuous_bound: bool

    def as_dict(self) -> dict:
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "lambda": float(self.lam),
            "lambda_unnormalized": float(self.lam_unnormalized),
            "cheeger": float(self.cheeger),
            "cheeger_argmin": list(self.cheeger_argmin),
            "mixing_bound": int(self.mixing_bound),
            "beta1": float(self.beta1),
            "beta2": float(self.beta2),
            "d_min": float(self.d_min),
            "vacuous_bound": bool(self.vacuous_bound),
        }


def spectral_report(H: Hypergraph, eps: float = 0.25) -> SpectralReport:
    lap = laplacian(H)
    evals = eigenvalues_symmetric(lap.L)
    lam_norm = float(eigenvalues_symmetric(lap.normalized)[1])
    cheeger = cheeger_constant(H)
    mix = mixing_time_bound(H, eps)
    return SpectralReport(
        vertices=H.vertices,
        eigenvalues=evals,
        lam=lam_norm,
        lam_unnormalized=float(evals[1]),
        cheeger=cheeger.phi,
        cheeger_argmin=cheeger.argmin,
        mixing_bound=mix.bound,
        beta1=mix.beta1,
        beta2=mix.beta2,
        d_min=mix.d_min,
        vacuous_bound=mix.vacuous,
    )
