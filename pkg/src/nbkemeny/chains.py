"""Transition and incidence matrices for the three random walks.

The vertex walk lives on the n vertices; the edge-space and non-backtracking
walks live on the 2m oriented edges (arcs).  Arcs are ordered
lexicographically by (tail, head), which fixes the layout of every
2m-dimensional matrix in the package.

All builders take an ``exact`` flag: exact matrices hold Fraction/int entries
in an object-dtype numpy array, float matrices are plain float64.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .graphs import Graph, profile

ChainKind = Literal[
    "vertex", "edge", "non-backtracking",
    "adjacency", "degree",
    "incidence-T", "incidence-S", "reversal",
    "edge-adjacency", "nb-adjacency", "edge-degree",
]

TRANSITION_KINDS = ("vertex", "edge", "non-backtracking")


class ChainError(ValueError):
    """Raised when a walk matrix cannot be built for the given graph."""


@dataclass(frozen=True)
class OrientedEdgeIndex:
    """Lexicographic index of the 2m arcs (u, v) of an undirected graph.

    ``rev[i]`` is the position of the reversed arc, an involution with no
    fixed points.
    """

    arcs: tuple[tuple[int, int], ...]
    rev: tuple[int, ...]

    @classmethod
    def from_graph(cls, g: Graph) -> "OrientedEdgeIndex":
        arcs = sorted([(u, v) for u, v in g.edges] + [(v, u) for u, v in g.edges])
        pos = {a: i for i, a in enumerate(arcs)}
        rev = tuple(pos[(v, u)] for u, v in arcs)
        return cls(tuple(arcs), rev)

    def __len__(self) -> int:
        return len(self.arcs)

    def position(self, u: int, v: int) -> int:
        lo, hi = 0, len(self.arcs)
        a = (u, v)
        while lo < hi:
            mid = (lo + hi) // 2
            if self.arcs[mid] < a:
                lo = mid + 1
            else:
                hi = mid
        if lo == len(self.arcs) or self.arcs[lo] != a:
            raise KeyError(f"arc {a} not in graph")
        return lo


@dataclass(frozen=True)
class ChainMatrix:
    """A named dense matrix over either exact or float scalars.

    data is float64 for float mode, object dtype (Fraction/int) for exact
    mode.  Transition kinds are validated row-stochastic at construction.
    """

    kind: str
    data: np.ndarray
    exact: bool

    def __post_init__(self):
        if self.kind in TRANSITION_KINDS:
            r, c = self.data.shape
            if r != c:
                raise ChainError(f"{self.kind} transition matrix must be square")
            sums = self.data.sum(axis=1)
            if self.exact:
                bad = [i for i, s in enumerate(sums) if s != 1]
            else:
                bad = [i for i, s in enumerate(sums) if abs(s - 1.0) > 1e-12]
            if bad:
                raise ChainError(f"row {bad[0]} of {self.kind} matrix is not stochastic")

    @property
    def order(self) -> int:
        return self.data.shape[0]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def as_float(self) -> np.ndarray:
        if self.data.dtype == object:
            return np.array([[float(x) for x in row] for row in self.data], dtype=float)
        return self.data


def _zeros(rows: int, cols: int, exact: bool) -> np.ndarray:
    if exact:
        return np.full((rows, cols), 0, dtype=object)
    return np.zeros((rows, cols))


def adjacency_matrix(g: Graph, exact: bool = False) -> ChainMatrix:
    A = _zeros(g.n, g.n, exact)
    one = 1 if exact else 1.0
    for u, v in g.edges:
        A[u, v] = one
        A[v, u] = one
    return ChainMatrix("adjacency", A, exact)


def degree_matrix(g: Graph, exact: bool = False) -> ChainMatrix:
    D = _zeros(g.n, g.n, exact)
    for v in range(g.n):
        D[v, v] = g.degrees[v] if exact else float(g.degrees[v])
    return ChainMatrix("degree", D, exact)


def vertex_transition(g: Graph, exact: bool = False) -> ChainMatrix:
    """Simple random walk matrix P = D^{-1} A."""
    iso = [v for v in range(g.n) if g.degrees[v] == 0]
    if iso:
        raise ChainError(f"vertex {iso[0]} is isolated; the vertex walk is undefined")
    P = _zeros(g.n, g.n, exact)
    for u, v in g.edges:
        if exact:
            P[u, v] = Fraction(1, g.degrees[u])
            P[v, u] = Fraction(1, g.degrees[v])
        else:
            P[u, v] = 1.0 / g.degrees[u]
            P[v, u] = 1.0 / g.degrees[v]
    return ChainMatrix("vertex", P, exact)


def incidence_operators(
    g: Graph, idx: OrientedEdgeIndex | None = None, exact: bool = False
) -> tuple[ChainMatrix, ChainMatrix, ChainMatrix]:
    """Startpoint operator T (n x 2m), endpoint operator S (2m x n), and the
    arc-reversal involution tau (2m x 2m).

    T(u, a) = 1 iff arc a starts at u; S(a, w) = 1 iff arc a ends at w;
    tau maps each arc to its reversal.  These satisfy A = T S and C = S T.
    """
    if idx is None:
        idx = OrientedEdgeIndex.from_graph(g)
    two_m = len(idx)
    T = _zeros(g.n, two_m, exact)
    S = _zeros(two_m, g.n, exact)
    tau = _zeros(two_m, two_m, exact)
    one = 1 if exact else 1.0
    for a, (u, v) in enumerate(idx.arcs):
        T[u, a] = one
        S[a, v] = one
        tau[a, idx.rev[a]] = one
    return (
        ChainMatrix("incidence-T", T, exact),
        ChainMatrix("incidence-S", S, exact),
        ChainMatrix("reversal", tau, exact),
    )


def edge_adjacency(g: Graph, idx: OrientedEdgeIndex | None = None, exact: bool = False) -> ChainMatrix:
    """C = S T: arc a -> arc b allowed iff b starts where a ends."""
    if idx is None:
        idx = OrientedEdgeIndex.from_graph(g)
    two_m = len(idx)
    C = _zeros(two_m, two_m, exact)
    one = 1 if exact else 1.0
    tails: dict[int, list[int]] = {}
    for b, (x, _) in enumerate(idx.arcs):
        tails.setdefault(x, []).append(b)
    for a, (_, v) in enumerate(idx.arcs):
        for b in tails[v]:
            C[a, b] = one
    return ChainMatrix("edge-adjacency", C, exact)


def nb_adjacency(g: Graph, idx: OrientedEdgeIndex | None = None, exact: bool = False) -> ChainMatrix:
    """B = S T - tau: edge adjacency with reversals forbidden."""
    if idx is None:
        idx = OrientedEdgeIndex.from_graph(g)
    C = edge_adjacency(g, idx, exact)
    B = C.data.copy()
    zero = 0 if exact else 0.0
    for a in range(len(idx)):
        B[a, idx.rev[a]] = zero
    return ChainMatrix("nb-adjacency", B, exact)


def edge_degree_matrix(g: Graph, idx: OrientedEdgeIndex | None = None, exact: bool = False) -> ChainMatrix:
    """Diagonal D_e with the degree of each arc's head."""
    if idx is None:
        idx = OrientedEdgeIndex.from_graph(g)
    two_m = len(idx)
    D = _zeros(two_m, two_m, exact)
    for a, (_, v) in enumerate(idx.arcs):
        D[a, a] = g.degrees[v] if exact else float(g.degrees[v])
    return ChainMatrix("edge-degree", D, exact)


def edge_transition(g: Graph, idx: OrientedEdgeIndex | None = None, exact: bool = False) -> ChainMatrix:
    """Edge-space walk P_e = D_e^{-1} C: step to a uniform arc out of the
    current arc's head (reversal allowed)."""
    iso = [v for v in range(g.n) if g.degrees[v] == 0]
    if iso:
        raise ChainError(f"vertex {iso[0]} is isolated; the edge walk is undefined")
    if idx is None:
        idx = OrientedEdgeIndex.from_graph(g)
    two_m = len(idx)
    P = _zeros(two_m, two_m, exact)
    tails: dict[int, list[int]] = {}
    for b, (x, _) in enumerate(idx.arcs):
        tails.setdefault(x, []).append(b)
    for a, (_, v) in enumerate(idx.arcs):
        d = g.degrees[v]
        w = Fraction(1, d) if exact else 1.0 / d
        for b in tails[v]:
            P[a, b] = w
    return ChainMatrix("edge", P, exact)


def nb_transition(g: Graph, idx: OrientedEdgeIndex | None = None, exact: bool = False) -> ChainMatrix:
    """Non-backtracking walk P_nb = (D_e - I)^{-1} B.

    Requires min degree >= 2 (otherwise D_e - I is singular) and a
    non-cycle graph (on a cycle the walk never mixes orientations, so the
    chain is reducible).
    """
    low = [v for v in range(g.n) if g.degrees[v] <= 1]
    if low:
        raise ChainError(
            f"vertex {low[0]} has degree {g.degrees[low[0]]}; the non-backtracking "
            "walk needs min degree >= 2"
        )
    if profile(g).is_cycle:
        raise ChainError("graph is a cycle; the non-backtracking walk is reducible")
    if idx is None:
        idx = OrientedEdgeIndex.from_graph(g)
    two_m = len(idx)
    P = _zeros(two_m, two_m, exact)
    tails: dict[int, list[int]] = {}
    for b, (x, _) in enumerate(idx.arcs):
        tails.setdefault(x, []).append(b)
    for a, (u, v) in enumerate(idx.arcs):
        d = g.degrees[v] - 1
        w = Fraction(1, d) if exact else 1.0 / d
        back = idx.rev[a]
        for b in tails[v]:
            if b != back:
                P[a, b] = w
    return ChainMatrix("non-backtracking", P, exact)


_BUILDERS = {
    "vertex": vertex_transition,
    "adjacency": adjacency_matrix,
    "degree": degree_matrix,
}

_EDGE_BUILDERS = {
    "edge": edge_transition,
    "non-backtracking": nb_transition,
    "edge-adjacency": edge_adjacency,
    "nb-adjacency": nb_adjacency,
    "edge-degree": edge_degree_matrix,
}


def build_matrix(g: Graph, kind: str, exact: bool = False) -> ChainMatrix:
    """Construct any named matrix for a graph (CLI entry point)."""
    if kind in _BUILDERS:
        return _BUILDERS[kind](g, exact)
    if kind in _EDGE_BUILDERS:
        return _EDGE_BUILDERS[kind](g, None, exact)
    if kind in ("incidence-T", "incidence-S", "reversal"):
        T, S, tau = incidence_operators(g, None, exact)
        return {"incidence-T": T, "incidence-S": S, "reversal": tau}[kind]
    raise ChainError(f"unknown matrix kind {kind!r}")
