"""Random-walk transition matrices (lazy, non-lazy, with restart) and
trajectory simulation.

The walker at vertex v picks an incident edge e with probability
omega(e)/d(v), then a member w of e with probability gamma_e(w)/delta(e);
the non-lazy variant excludes staying put by renormalizing over the other
members. All matrices are dense and row-stochastic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Hypergraph, degrees, incidence_matrices
from .errors import BadBeta, SingletonEdge, SizeLimit, UnknownVertex

__all__ = [
    "DENSE_SIZE_LIMIT",
    "PRNG_ALGORITHM",
    "TransitionMatrix",
    "WalkKind",
    "build_transition",
    "nonlazy_transition_matrix",
    "restart_matrix",
    "simulate",
    "transition_matrix",
]

# Dense matrices only; anything larger aborts rather than thrashing.
DENSE_SIZE_LIMIT = 4096

# Recorded in run manifests so seeded runs are reproducible across machines.
PRNG_ALGORITHM = "numpy:pcg64"

_ROW_SUM_TOL = 1e-12


class TransitionMatrix:
    """Row-stochastic |V| x |V| matrix sharing its vertex index with the
    hypergraph (or graph) it came from."""

    __slots__ = ("vertices", "matrix", "_index")

    def __init__(self, vertices, matrix):
        P = np.asarray(matrix, dtype=float)
        names = tuple(str(v) for v in vertices)
        if P.ndim != 2 or P.shape != (len(names), len(names)):
            raise ValueError("transition matrix shape does not match vertex list")
        rows = P.sum(axis=1)
        worst = np.abs(rows - 1.0).max()
        if worst > _ROW_SUM_TOL:
            raise ValueError(f"rows must sum to 1 (off by {worst:.3e})")
        if P.min() < -1e-15:
            raise ValueError("transition probabilities must be nonnegative")
        self.vertices = names
        self.matrix = P
        self._index = {v: i for i, v in enumerate(names)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {vertex!r}") from None

    def __repr__(self) -> str:
        return f"TransitionMatrix(n={self.n})"


def _check_size(n: int) -> None:
    if n > DENSE_SIZE_LIMIT:
        raise SizeLimit(f"dense walk matrices support at most {DENSE_SIZE_LIMIT} vertices, got {n}")


def transition_matrix(H: Hypergraph) -> TransitionMatrix:
    """Lazy walk matrix P = D_V^-1 W D_E^-1 R."""
    _check_size(H.n_vertices)
    inc = incidence_matrices(H)
    P = (inc.W / inc.d[:, None]) @ (inc.R / inc.delta[:, None])
    return TransitionMatrix(H.vertices, P)


def nonlazy_transition_matrix(H: Hypergraph) -> TransitionMatrix:
    """Walk that never stays put: the stay weight is removed from each edge's
    normalization, so the diagonal is exactly zero."""
    _check_size(H.n_vertices)
    for k, e in enumerate(H.edges):
        if len(e) < 2:
            raise SingletonEdge(f"edge #{k} has a single member; non-lazy walk undefined")
    n = H.n_vertices
    d, _ = degrees(H)
    P = np.zeros((n, n))
    for k, (idx, gam) in enumerate(zip(H._member_idx, H._member_gamma)):
        delta = gam.sum()
        # block[a, b] = (omega / d(v_a)) * gamma(w_b) / (delta - gamma(v_a))
        coeff = H.edges[k].weight / (d[idx] * (delta - gam))
        block = np.outer(coeff, gam)
        np.fill_diagonal(block, 0.0)
        P[np.ix_(idx, idx)] += block
    return TransitionMatrix(H.vertices, P)


def restart_matrix(P: TransitionMatrix, beta: float, restart=None) -> TransitionMatrix:
    """Mix a restart step into P: P' = (1-beta) P + beta 1 r^T.

    beta must lie strictly inside (0, 1); the restart distribution defaults
    to uniform over the vertices.
    """
    if not (isinstance(beta, (int, float)) and 0.0 < beta < 1.0):
        raise BadBeta(f"restart probability must lie in (0, 1), got {beta!r}")
    n = P.n
    if restart is None:
        r = np.full(n, 1.0 / n)
    else:
        r = np.asarray(restart, dtype=float)
        if r.shape != (n,):
            raise BadBeta("restart distribution length does not match vertex count")
        if r.min() < 0.0 or abs(r.sum() - 1.0) > 1e-12:
            raise BadBeta("restart distribution must be nonnegative and sum to 1")
    mixed = (1.0 - beta) * P.matrix + beta * r[None, :]
    return TransitionMatrix(P.vertices, mixed)


@dataclass(frozen=True)
class WalkKind:
    """Which walk to build: 'lazy', 'nonlazy', or 'restart' (with beta and an
    optional non-uniform restart distribution)."""

    kind: str
    beta: float | None = None
    restart: tuple[float, ...] | None = None

    @classmethod
    def lazy(cls) -> "WalkKind":
        return cls("lazy")

    @classmethod
    def nonlazy(cls) -> "WalkKind":
        return cls("nonlazy")

    @classmethod
    def restart_walk(cls, beta: float, restart=None) -> "WalkKind":
        if not (isinstance(beta, (int, float)) and 0.0 < beta < 1.0):
            raise BadBeta(f"restart probability must lie in (0, 1), got {beta!r}")
        dist = None if restart is None else tuple(float(x) for x in restart)
        return cls("restart", beta=float(beta), restart=dist)


def build_transition(H: Hypergraph, kind: WalkKind) -> TransitionMatrix:
    if kind.kind == "lazy":
        return transition_matrix(H)
    if kind.kind == "nonlazy":
        return nonlazy_transition_matrix(H)
    if kind.kind == "restart":
        return restart_matrix(transition_matrix(H), kind.beta, kind.restart)
    raise ValueError(f"unknown walk kind {kind.kind!r}")


def simulate(P: TransitionMatrix, start: str, steps: int, seed: int) -> list[str]:
    """Sample a trajectory of `steps` transitions from `start`.

    Reproducible: the same seed yields the same trajectory (PCG64 stream).
    Returns steps + 1 vertex names including the start.
    """
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    i = P.index(start)
    rng = np.random.default_rng(seed)
    cdf = np.cumsum(P.matrix, axis=1)
    path = [i]
    for _ in range(steps):
        u = rng.random()
        i = int(np.searchsorted(cdf[i], u, side="right"))
        if i >= P.n:  # guard the cdf's final rounding gap
            i = P.n - 1
        path.append(i)
    return [P.vertices[j] for j in path]
