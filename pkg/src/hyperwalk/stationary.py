"""Stationary distributions of hypergraph random walks.

Three routes are provided and cross-checked against each other:

* ``stationary_rho`` -- the per-edge-constant construction: normalize each
  edge so its degree is 1, build the |E| x |E| coupling matrix A with
  A[e, f] = sum over v in both edges of omega(f) * gamma_f(v) / d(v), take
  its positive eigenvector for eigenvalue 1, rescale so
  sum_e rho_e * omega(e) = 1, and assemble
  pi_v = sum over incident e of rho_e * omega(e) * gamma_e(v).
* ``stationary_direct`` -- solve pi P = pi, sum pi = 1 as a dense linear
  system (the oracle for the rho route).
* ``stationary_edge_independent`` -- the closed form
  pi_v = d(v) gamma(v) / sum_u d(u) gamma(u) available when vertex weights
  do not depend on the edge.

``naive_stationary`` is the degree-fraction formula d(v)/sum d(u). It is
*not* the stationary distribution in general -- it ignores the vertex
weights entirely -- and is kept as a counterexample generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Hypergraph,
    degrees,
    delta_normalized,
    edge_independent_gamma,
    has_trivial_weights,
    rescale_edges,
)
from .errors import ConvergenceFailure, SingularSystem, NotEdgeIndependent
from .walk import TransitionMatrix, transition_matrix

__all__ = [
    "StationaryResult",
    "edge_coupling_matrix",
    "naive_stationary",
    "rho_normalized",
    "stationary_direct",
    "stationary_edge_independent",
    "stationary_rho",
]

RESIDUAL_TOL = 1e-9


@dataclass
class StationaryResult:
    """A stationary distribution plus how it was obtained.

    ``rho`` holds the per-edge constants (in the delta(e)=1 normalization)
    when the rho route produced the result, and is None otherwise.
    ``residual`` is max |pi P - pi|.
    """

    vertices: tuple[str, ...]
    pi: np.ndarray
    rho: np.ndarray | None
    method: str
    residual: float

    def as_dict(self, H: Hypergraph | None = None) -> dict:
        out = {
            "pi": {v: float(x) for v, x in zip(self.vertices, self.pi)},
            "rho": {} if self.rho is None else {
                str(k): float(r) for k, r in enumerate(self.rho)
            },
            "method": self.method,
            "residual": float(self.residual),
        }
        return out


def _residual(pi: np.ndarray, P: TransitionMatrix) -> float:
    return float(np.abs(pi @ P.matrix - pi).max())


def edge_coupling_matrix(H: Hypergraph) -> np.ndarray:
    """The |E| x |E| matrix whose eigenvalue-1 eigenvector gives the per-edge
    constants. Expects H already normalized to delta(e) = 1; its column sums,
    weighted by the edge weights, reproduce the edge weights exactly."""
    m = H.n_edges
    d, _ = degrees(H)
    A = np.zeros((m, m))
    # membership[j] = indices of edges containing vertex j
    membership: list[list[int]] = [[] for _ in range(H.n_vertices)]
    for k, idx in enumerate(H._member_idx):
        for j in idx:
            membership[int(j)].append(k)
    for f, (idx, gam) in enumerate(zip(H._member_idx, H._member_gamma)):
        w_f = H.edges[f].weight
        for j, g in zip(idx, gam):
            contrib = w_f * g / d[j]
            for e in membership[int(j)]:
                A[e, f] += contrib
    return A


def _perron_unit_eigenvector(A: np.ndarray, tol: float = 1e-12,
                             max_iter: int = 10**6) -> np.ndarray:
    """Positive eigenvector of A for eigenvalue 1, normalized to sum 1.

    Power iteration with a stall check; falls back to a nullspace solve of
    (A - I) when progress flattens out.
    """
    m = A.shape[0]
    rho = np.full(m, 1.0 / m)
    checkpoint = np.inf
    for it in range(max_iter):
        nxt = A @ rho
        total = nxt.sum()
        if not total > 0.0:
            break
        nxt /= total
        diff = np.abs(nxt - rho).max()
        rho = nxt
        if diff < tol:
            return rho
        if (it + 1) % 2000 == 0:
            if diff > 0.5 * checkpoint:
                break  # stalled; elimination will finish the job
            checkpoint = diff
    # Rank-revealing fallback: the kernel of (A - I).
    _, sigma, vt = np.linalg.svd(A - np.eye(m))
    vec = vt[-1]
    if vec.sum() < 0.0:
        vec = -vec
    if vec.min() <= 0.0:
        raise ConvergenceFailure(
            "eigenvector for the per-edge constants is not strictly positive "
            f"(min component {vec.min():.3e})"
        )
    vec = vec / vec.sum()
    if np.abs(A @ vec - vec).max() > 1e-10:
        raise ConvergenceFailure("per-edge constant solve did not converge")
    return vec


def stationary_rho(H: Hypergraph) -> StationaryResult:
    """Stationary distribution via the per-edge constants rho_e.

    The returned ``rho`` refers to the delta(e)=1 normalization of H and
    satisfies sum_e rho_e * omega(e) = 1.
    """
    Hn = delta_normalized(H)
    A = edge_coupling_matrix(Hn)
    rho = _perron_unit_eigenvector(A)
    omega = np.array([e.weight for e in H.edges])
    rho = rho / float(rho @ omega)
    pi = np.zeros(H.n_vertices)
    for k, (idx, gam) in enumerate(zip(Hn._member_idx, Hn._member_gamma)):
        pi[idx] += rho[k] * omega[k] * gam
    residual = _residual(pi, transition_matrix(H))
    if residual > RESIDUAL_TOL:
        raise ConvergenceFailure(
            f"stationary residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e}"
        )
    return StationaryResult(
        vertices=H.vertices, pi=pi, rho=rho, method="rho-eigenvector",
        residual=residual,
    )


def stationary_direct(P: TransitionMatrix) -> StationaryResult:
    """Solve pi P = pi with sum pi = 1 by dense elimination (partial
    pivoting). The oracle the rho route is checked against."""
    n = P.n
    M = P.matrix.T - np.eye(n)
    M[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(M, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"stationary solve failed: {exc}") from None
    residual = _residual(pi, P)
    return StationaryResult(
        vertices=P.vertices, pi=pi, rho=None, method="direct-solve",
        residual=residual,
    )


def stationary_edge_independent(H: Hypergraph) -> StationaryResult:
    """Closed form pi_v proportional to d(v) * gamma(v); only valid when the
    vertex weights are edge-independent."""
    gamma = edge_independent_gamma(H)
    if gamma is None:
        raise NotEdgeIndependent(
            "vertex weights differ across incident edges; the closed form does not apply"
        )
    d, _ = degrees(H)
    pi = d * gamma
    pi /= pi.sum()
    method = "closed-form-trivial" if has_trivial_weights(H) else "closed-form-edge-independent"
    return StationaryResult(
        vertices=H.vertices, pi=pi, rho=None, method=method,
        residual=_residual(pi, transition_matrix(H)),
    )


def naive_stationary(H: Hypergraph) -> np.ndarray:
    """Degree fraction d(v) / sum_u d(u).

    This ignores the vertex weights, so it is generally *not* stationary; it
    coincides with the true distribution only in special cases such as
    trivial weights. Kept as the counterexample generator.
    """
    d, _ = degrees(H)
    return d / d.sum()


def rho_normalized(H: Hypergraph) -> Hypergraph:
    """Rescale each edge's vertex weights so its own per-edge constant
    becomes 1; afterwards pi_v = sum of omega(e) * gamma_e(v) over incident
    edges, already summing to 1 over V."""
    result = stationary_rho(H)
    _, delta = degrees(H)
    return rescale_edges(H, result.rho / delta)
