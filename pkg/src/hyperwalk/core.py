"""Hypergraph data model: validation, degrees, incidence matrices, clique
graphs, and (de)serialization.

Vertices are opaque strings mapped to dense indices in declaration order, so
every matrix produced downstream is deterministic for a given input.
Hypergraphs and graphs are immutable after construction and safe to share
across threads.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DisconnectedHypergraph,
    DuplicateVertex,
    EmptyEdge,
    NonPositiveWeight,
    NotSymmetric,
    UnknownVertex,
)

__all__ = [
    "Hyperedge",
    "Hypergraph",
    "IncidenceMatrices",
    "WeightedGraph",
    "build_hypergraph",
    "clique_graph",
    "degrees",
    "delta_normalized",
    "demo_hypergraph",
    "dumps_json",
    "edge_independent_gamma",
    "from_text",
    "graph_to_json_dict",
    "has_trivial_weights",
    "incidence_matrices",
    "loads_json",
    "read_hypergraph",
    "rescale_edges",
    "to_json_dict",
    "to_text",
]


def _positive(value, what: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise NonPositiveWeight(f"{what}: expected a number, got {value!r}") from None
    if not math.isfinite(out) or out <= 0.0:
        raise NonPositiveWeight(f"{what}: must be finite and > 0, got {value!r}")
    return out


class Hyperedge:
    """One weighted hyperedge: an edge weight plus a positive weight per member."""

    __slots__ = ("weight", "members")

    def __init__(self, weight: float, members: Mapping[str, float]):
        self.weight = _positive(weight, "hyperedge weight")
        if not members:
            raise EmptyEdge("hyperedge has no members")
        self.members = {
            str(v): _positive(g, f"vertex weight of {v!r}") for v, g in members.items()
        }

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hyperedge):
            return NotImplemented
        return self.weight == other.weight and self.members == other.members

    def __hash__(self):
        return hash((self.weight, tuple(sorted(self.members.items()))))

    def __repr__(self) -> str:
        return f"Hyperedge({self.weight!r}, {self.members!r})"


class Hypergraph:
    """Immutable hypergraph with per-edge vertex weights.

    Enforced at construction: declared vertices are unique, every edge member
    is a declared vertex, all weights are finite positives, and the clique
    graph is connected (a vertex in no edge counts as disconnected).
    """

    __slots__ = ("vertices", "edges", "_index", "_member_idx", "_member_gamma")

    def __init__(self, vertices: Sequence[str], edges: Iterable[Hyperedge]):
        names = tuple(str(v) for v in vertices)
        index: dict[str, int] = {}
        for v in names:
            if v in index:
                raise DuplicateVertex(f"vertex {v!r} declared more than once")
            index[v] = len(index)
        if not names:
            raise DisconnectedHypergraph("hypergraph has no vertices")

        edge_tuple = tuple(edges)
        for i, e in enumerate(edge_tuple):
            if not isinstance(e, Hyperedge):
                raise TypeError(f"edge #{i} is not a Hyperedge")
            for v in e.members:
                if v not in index:
                    raise UnknownVertex(f"edge #{i} references undeclared vertex {v!r}")

        self.vertices = names
        self.edges = edge_tuple
        self._index = index
        # Dense views per edge, member indices ascending: the iteration order
        # every matrix construction uses.
        self._member_idx = []
        self._member_gamma = []
        for e in edge_tuple:
            idx = np.array(sorted(index[v] for v in e.members), dtype=np.intp)
            gam = np.array([e.members[names[j]] for j in idx], dtype=float)
            self._member_idx.append(idx)
            self._member_gamma.append(gam)
        self._check_connected()

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def index(self, vertex: str) -> int:
        try:
            return self._index[vertex]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {vertex!r}") from None

    def _check_connected(self) -> None:
        n = len(self.vertices)
        incident = np.zeros(n, dtype=int)
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for idx in self._member_idx:
            incident[idx] += 1
            root = find(int(idx[0]))
            for j in idx[1:]:
                r = find(int(j))
                if r != root:
                    parent[r] = root
        for j in range(n):
            if incident[j] == 0:
                raise DisconnectedHypergraph(
                    f"vertex {self.vertices[j]!r} is not a member of any hyperedge"
                )
        roots = {find(j) for j in range(n)}
        if len(roots) > 1:
            a, b = sorted(roots)[:2]
            raise DisconnectedHypergraph(
                f"vertices {self.vertices[a]!r} and {self.vertices[b]!r} "
                "are in different components"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(|V|={self.n_vertices}, |E|={self.n_edges})"


def degrees(H: Hypergraph) -> tuple[np.ndarray, np.ndarray]:
    """Vertex degrees d(v) = sum of incident edge weights, and edge degrees
    delta(e) = sum of member vertex weights."""
    d = np.zeros(H.n_vertices)
    delta = np.zeros(H.n_edges)
    for k, (idx, gam) in enumerate(zip(H._member_idx, H._member_gamma)):
        d[idx] += H.edges[k].weight
        delta[k] = gam.sum()
    return d, delta


@dataclass
class IncidenceMatrices:
    """Dense incidence data: R(e,v) = vertex weight, W(v,e) = edge weight on
    incidence, plus the two degree vectors."""

    R: np.ndarray      # |E| x |V|
    W: np.ndarray      # |V| x |E|
    d: np.ndarray      # vertex degrees
    delta: np.ndarray  # edge degrees

    @property
    def D_V(self) -> np.ndarray:
        return np.diag(self.d)

    @property
    def D_E(self) -> np.ndarray:
        return np.diag(self.delta)


def incidence_matrices(H: Hypergraph) -> IncidenceMatrices:
    n, m = H.n_vertices, H.n_edges
    R = np.zeros((m, n))
    W = np.zeros((n, m))
    for k, (idx, gam) in enumerate(zip(H._member_idx, H._member_gamma)):
        R[k, idx] = gam
        W[idx, k] = H.edges[k].weight
    d, delta = degrees(H)
    return IncidenceMatrices(R=R, W=W, d=d, delta=delta)


class WeightedGraph:
    """Undirected weighted graph over a shared vertex index.

    The weight matrix is symmetric and nonnegative; the diagonal holds
    self-loop weights.
    """

    __slots__ = ("vertices", "weights")

    def __init__(self, vertices: Sequence[str], weights):
        W = np.asarray(weights, dtype=float)
        names = tuple(str(v) for v in vertices)
        if W.ndim != 2 or W.shape[0] != W.shape[1] or W.shape[0] != len(names):
            raise ValueError("weight matrix shape does not match the vertex list")
        if not np.all(np.isfinite(W)):
            raise NonPositiveWeight("graph weights must be finite")
        if W.min(initial=0.0) < 0.0:
            raise NonPositiveWeight("graph weights must be nonnegative")
        if np.abs(W - W.T).max(initial=0.0) > 1e-12:
            raise NotSymmetric(
                f"graph weight matrix asymmetric by {np.abs(W - W.T).max():.3e}"
            )
        self.vertices = names
        self.weights = (W + W.T) / 2.0  # exact no-op for symmetric input

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.vertices == other.vertices and np.array_equal(self.weights, other.weights)

    def __repr__(self) -> str:
        return f"WeightedGraph(|V|={self.n_vertices})"


def clique_graph(H: Hypergraph, include_self_loops: bool = True) -> WeightedGraph:
    """Unweighted clique skeleton: (u,v) has weight 1 iff some edge contains
    both. Self-loops are the lazy-walk convention; pass False to drop them."""
    n = H.n_vertices
    A = np.zeros((n, n))
    for idx in H._member_idx:
        A[np.ix_(idx, idx)] = 1.0
    if not include_self_loops:
        np.fill_diagonal(A, 0.0)
    return WeightedGraph(H.vertices, A)


# -- weight transforms -------------------------------------------------------

def rescale_edges(H: Hypergraph, factors) -> Hypergraph:
    """New hypergraph with each edge's vertex weights multiplied by its factor."""
    factors = np.asarray(factors, dtype=float)
    if factors.shape != (H.n_edges,):
        raise ValueError("need exactly one factor per edge")
    edges = [
        Hyperedge(e.weight, {v: g * factors[k] for v, g in e.members.items()})
        for k, e in enumerate(H.edges)
    ]
    return Hypergraph(H.vertices, edges)


def delta_normalized(H: Hypergraph) -> Hypergraph:
    """Rescale every edge's vertex weights so each edge degree delta(e) is 1."""
    _, delta = degrees(H)
    return rescale_edges(H, 1.0 / delta)


def edge_independent_gamma(H: Hypergraph, rtol: float = 1e-12):
    """Per-vertex weight vector if weights are edge-independent, else None.

    Edge-independent means gamma_e(v) agrees (to relative tolerance) across
    all edges incident to v.
    """
    gamma = np.full(H.n_vertices, np.nan)
    for idx, gam in zip(H._member_idx, H._member_gamma):
        for j, g in zip(idx, gam):
            if np.isnan(gamma[j]):
                gamma[j] = g
            elif abs(g - gamma[j]) > rtol * max(abs(g), abs(gamma[j])):
                return None
    return gamma


def has_trivial_weights(H: Hypergraph, atol: float = 1e-12) -> bool:
    return all(abs(gam - 1.0).max() <= atol for gam in H._member_gamma)


# -- serialization -----------------------------------------------------------

def build_hypergraph(data: Mapping) -> Hypergraph:
    """Build and validate a hypergraph from parsed JSON content.

    Expected shape::

        {"vertices": ["a", "b", ...],
         "edges": [{"weight": 1.0, "members": {"a": 2.0, "b": 1.0}}, ...]}
    """
    if not isinstance(data, Mapping):
        raise ValueError("hypergraph JSON must be an object")
    try:
        vertices = data["vertices"]
        raw_edges = data["edges"]
    except KeyError as exc:
        raise ValueError(f"hypergraph JSON is missing key {exc}") from None
    edges = []
    for i, entry in enumerate(raw_edges):
        members = entry.get("members")
        if not members:
            raise EmptyEdge(f"edge #{i} has no members")
        try:
            edges.append(Hyperedge(entry.get("weight"), members))
        except NonPositiveWeight as exc:
            raise NonPositiveWeight(f"edge #{i}: {exc}") from None
    return Hypergraph(vertices, edges)


def _reject_duplicate_keys(pairs):
    seen = set()
    out = {}
    for k, v in pairs:
        if k in seen:
            raise DuplicateVertex(f"duplicate key {k!r} in JSON object")
        seen.add(k)
        out[k] = v
    return out


def loads_json(text: str) -> Hypergraph:
    return build_hypergraph(json.loads(text, object_pairs_hook=_reject_duplicate_keys))


def to_json_dict(H: Hypergraph) -> dict:
    edges = []
    for k, e in enumerate(H.edges):
        members = {
            H.vertices[j]: float(g)
            for j, g in zip(H._member_idx[k], H._member_gamma[k])
        }
        edges.append({"weight": float(e.weight), "members": members})
    return {"vertices": list(H.vertices), "edges": edges}


def dumps_json(H: Hypergraph) -> str:
    return json.dumps(to_json_dict(H), indent=2) + "\n"


def to_text(H: Hypergraph) -> str:
    """Whitespace format: one edge per line, ``weight v1:g1 v2:g2 ...``.

    A ``# vertices:`` header preserves declaration order across a round trip.
    Vertex names must not contain whitespace or ':'.
    """
    for v in H.vertices:
        if ":" in v or any(c.isspace() for c in v):
            raise ValueError(f"vertex name {v!r} cannot be written in text format")
    lines = ["# vertices: " + " ".join(H.vertices)]
    for k, e in enumerate(H.edges):
        parts = [repr(float(e.weight))]
        parts += [
            f"{H.vertices[j]}:{float(g)!r}"
            for j, g in zip(H._member_idx[k], H._member_gamma[k])
        ]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Hypergraph:
    declared: list[str] | None = None
    order: list[str] = []
    seen: set[str] = set()
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("vertices:"):
                declared = body[len("vertices:"):].split()
            continue
        tokens = line.split()
        try:
            weight = float(tokens[0])
        except ValueError:
            raise NonPositiveWeight(f"line {lineno}: bad edge weight {tokens[0]!r}") from None
        members: dict[str, float] = {}
        for tok in tokens[1:]:
            name, _, gtext = tok.rpartition(":")
            if not name:
                raise ValueError(f"line {lineno}: expected 'vertex:weight', got {tok!r}")
            if name in members:
                raise DuplicateVertex(f"line {lineno}: vertex {name!r} listed twice in one edge")
            try:
                members[name] = float(gtext)
            except ValueError:
                raise NonPositiveWeight(f"line {lineno}: bad vertex weight {gtext!r}") from None
            if name not in seen:
                seen.add(name)
                order.append(name)
        if not members:
            raise EmptyEdge(f"line {lineno}: edge has no members")
        edges.append(Hyperedge(weight, members))
    return Hypergraph(declared if declared is not None else order, edges)


def read_hypergraph(path: str) -> Hypergraph:
    """Load a hypergraph file; '*.json' uses the JSON format, anything else
    the whitespace text format."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return loads_json(text)
    return from_text(text)


def graph_to_json_dict(G: WeightedGraph) -> dict:
    """Emit a weighted graph in the hypergraph JSON format (pair edges, loops
    as singleton edges)."""
    edges = []
    n = G.n_vertices
    for u in range(n):
        for v in range(u, n):
            w = G.weights[u, v]
            if w > 0.0:
                if u == v:
                    members = {G.vertices[u]: 1.0}
                else:
                    members = {G.vertices[u]: 1.0, G.vertices[v]: 1.0}
                edges.append({"weight": float(w), "members": members})
    return {"vertices": list(G.vertices), "edges": edges}


def demo_hypergraph() -> Hypergraph:
    """Built-in four-vertex fixture: two overlapping three-vertex edges with a
    single heavier vertex weight.

    This is the smallest hypergraph whose random walk is not time-reversible,
    so it exercises everything the library computes; the CLI ``demo``
    subcommand and much of the test-suite are built on it.
    """
    return Hypergraph(
        ("v1", "v2", "v3", "v4"),
        [
            Hyperedge(1.0, {"v1": 2.0, "v2": 1.0, "v3": 1.0}),
            Hyperedge(1.0, {"v1": 1.0, "v3": 1.0, "v4": 1.0}),
        ],
    )
