"""Kemeny's constant by four independent routes, with cross-validation.

Routes
------
mfpt       definition: K = sum_j m(i, j) pi_j, checked constant over i
spectrum   K = sum over non-unit eigenvalues of 1/(1 - rho)
charpoly   K = p''(1) / (2 p'(1)) from the characteristic polynomial
resistance K = d^T R d / (4m) via the Laplacian pseudoinverse (vertex walk)

The three walks of a graph (vertex, edge-space, non-backtracking) are tied
together by ``kemeny_triple``, which runs every applicable route per walk,
records disagreements, and checks the edge/vertex shift identity
K_e = K_v + 2m - n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import ratmath
from .chains import ChainError, ChainMatrix, edge_transition, nb_transition, vertex_transition
from .graphs import Graph, profile

Scalar = Union[Fraction, float]


class EngineError(RuntimeError):
    """Raised when a walk computation cannot proceed (reducible chain,
    non-simple unit eigenvalue, disconnected graph)."""


class CrossCheckError(EngineError):
    """Raised when independently computed route values disagree beyond
    tolerance."""


# ---------------------------------------------------------------------------
# stationary distribution and mean first-passage times

def stationary(P: ChainMatrix) -> np.ndarray:
    """Stationary distribution of an irreducible chain, by linear solve.

    Replaces one balance equation with the normalization sum(pi) = 1 and
    verifies the result; a reducible chain surfaces as a singular system or
    a failed verification.
    """
    N = P.order
    if P.exact:
        rows = P.data.tolist()
        A = [[(1 if i == j else 0) - rows[j][i] for j in range(N)] for i in range(N)]
        A[N - 1] = [1] * N
        b = [Fraction(0)] * (N - 1) + [Fraction(1)]
        try:
            pi = ratmath.exact_solve(A, b)
        except ValueError as exc:
            raise EngineError("chain is reducible: stationary system is singular") from exc
        for j in range(N):
            if sum(rows[i][j] * pi[i] for i in range(N)) != pi[j]:
                raise EngineError("chain is reducible: stationary verification failed")
            if pi[j] <= 0:
                raise EngineError("chain is reducible: stationary vector not positive")
        return np.array(pi, dtype=object)
    A = np.eye(N) - P.data.T
    A[N - 1, :] = 1.0
    b = np.zeros(N)
    b[N - 1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise EngineError("chain is reducible: stationary system is singular") from exc
    if np.max(np.abs(P.data.T @ pi - pi)) > 1e-10 or np.min(pi) <= 0:
        raise EngineError("chain is reducible: stationary verification failed")
    return pi


def mfpt(P: ChainMatrix) -> np.ndarray:
    """Mean first-passage time matrix, one linear solve per target state.

    For target j, solve (I - P) m = 1 with row j replaced by m_j = 0; the
    diagonal is zero by convention.
    """
    N = P.order
    if P.exact:
        rows = P.data.tolist()
        out = np.zeros((N, N), dtype=object)
        for j in range(N):
            A = [[(1 if i == k else 0) - rows[i][k] for k in range(N)] for i in range(N)]
            A[j] = [1 if k == j else 0 for k in range(N)]
            b = [Fraction(1)] * N
            b[j] = Fraction(0)
            try:
                col = ratmath.exact_solve(A, b)
            except ValueError as exc:
                raise EngineError("chain is reducible: passage-time system is singular") from exc
            for i in range(N):
                out[i, j] = col[i]
        return out
    out = np.zeros((N, N))
    I = np.eye(N)
    ones = np.ones(N)
    for j in range(N):
        A = I - P.data
        A[j, :] = 0.0
        A[j, j] = 1.0
        b = ones.copy()
        b[j] = 0.0
        try:
            out[:, j] = np.linalg.solve(A, b)
        except np.linalg.LinAlgError as exc:
            raise EngineError("chain is reducible: passage-time system is singular") from exc
    return out


def kemeny_mfpt(P: ChainMatrix) -> tuple[Scalar, float]:
    """Kemeny's constant from mean first-passage times.

    Returns (K, spread) where K = sum_j m(0, j) pi_j and spread is the
    max-min gap of that sum over all start states (zero in theory).
    """
    pi = stationary(P)
    M = mfpt(P)
    kappa = M @ pi
    if P.exact:
        lo = min(kappa)
        hi = max(kappa)
        return kappa[0], float(hi - lo)
    lo = float(np.min(kappa))
    hi = float(np.max(kappa))
    return float(kappa[0]), hi - lo


# ---------------------------------------------------------------------------
# spectrum route

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of a transition matrix, sorted by descending real part
    then descending imaginary part."""

    values: tuple[complex, ...]

    def __post_init__(self):
        if any(abs(v) > 1 + 1e-9 for v in self.values):
            raise EngineError("spectral radius exceeds 1 beyond tolerance")

    @classmethod
    def of_chain(cls, P: ChainMatrix) -> "Spectrum":
        Pf = P.as_float()
        if P.kind == "vertex":
            # the simple walk is similar to a symmetric matrix: use the
            # stable symmetric solver on D^{1/2} P D^{-1/2}
            rowmax = Pf.max(axis=1)
            deg = np.round(1.0 / rowmax)
            if np.allclose(Pf * rowmax[:, None] * deg[:, None], Pf, atol=1e-12):
                half = np.sqrt(deg)
                sym = (half[:, None] * Pf) / half[None, :]
                ev = np.linalg.eigvalsh((sym + sym.T) / 2.0).astype(complex)
            else:
                ev = np.linalg.eigvals(Pf)
        else:
            ev = np.linalg.eigvals(Pf)
        order = np.lexsort((-ev.imag, -ev.real))
        return cls(tuple(complex(v) for v in ev[order]))


def kemeny_spectrum(
    P: ChainMatrix,
    *,
    unit_tol: float = 1e-9,
    gap_tol: float = 1e-6,
    imag_tol: float = 1e-9,
) -> float:
    """Kemeny's constant as sum of 1/(1 - rho) over non-unit eigenvalues.

    The unit eigenvalue is the one of maximal real part; it must sit within
    unit_tol of 1 and be separated from the rest by gap_tol.  Complex pairs
    cancel in the sum; the leftover imaginary part must be below imag_tol.
    """
    spec = Spectrum.of_chain(P)
    ev = np.array(spec.values, dtype=complex)
    i1 = int(np.argmax(ev.real))
    if abs(ev[i1] - 1.0) > unit_tol:
        raise EngineError(f"unit eigenvalue not found (closest {ev[i1]:.12g})")
    rest = np.delete(ev, i1)
    if rest.size and np.min(np.abs(rest - 1.0)) < gap_tol:
        raise EngineError("unit eigenvalue is not simple within tolerance")
    total = np.sum(1.0 / (1.0 - rest))
    if abs(total.imag) > imag_tol:
        raise EngineError(f"imaginary residual {total.imag:.3g} in eigenvalue sum")
    return float(total.real)


# ---------------------------------------------------------------------------
# characteristic-polynomial route

def kemeny_from_charpoly(coeffs: Sequence) -> Scalar:
    """Kemeny's constant from characteristic-polynomial coefficients
    (ascending).  Any nonzero scalar multiple of the polynomial gives the
    same value: K = p''(1) / (2 p'(1)).

    Exact inputs (int/Fraction) give a Fraction; float inputs give a float.
    """
    exact = all(isinstance(c, (int, Fraction)) for c in coeffs)
    if exact:
        p1 = sum(Fraction(c) for c in coeffs)
        d1 = sum(j * Fraction(c) for j, c in enumerate(coeffs))
        d2 = sum(j * (j - 1) * Fraction(c) for j, c in enumerate(coeffs))
        if p1 != 0:
            raise EngineError("1 is not a root of the characteristic polynomial")
        if d1 == 0:
            raise EngineError("unit root is not simple: linear coefficient vanishes")
        return d2 / (2 * d1)
    cs = np.asarray([float(c) for c in coeffs])
    j = np.arange(len(cs))
    scale = float(np.max(np.abs(cs))) or 1.0
    p1 = float(np.sum(cs))
    d1 = float(np.sum(j * cs))
    d2 = float(np.sum(j * (j - 1) * cs))
    if abs(p1) > 1e-6 * scale:
        raise EngineError("1 is not a root of the characteristic polynomial")
    if d1 == 0.0:
        raise EngineError("unit root is not simple: linear coefficient vanishes")
    return d2 / (2.0 * d1)


def _kemeny_charpoly_float(Pf: np.ndarray) -> float:
    """Float charpoly route without materializing coefficients.

    Writes p(x) = (x - 1) g(x) by deflating the unit root with a Householder
    similarity that sends the all-ones eigenvector to a coordinate axis; then
    p''(1)/(2 p'(1)) = g'(1)/g(1) = tr((I - P22)^{-1}) by Jacobi's formula,
    where P22 is the deflated block.  Evaluating the derivative ratio at the
    root directly avoids the cancellation a finite-difference probe of the
    determinant suffers there, and uses only an LU solve, so the route stays
    independent of the eigensolver.
    """
    N = Pf.shape[0]
    if N == 1:
        return 0.0
    w = np.ones(N)
    w[0] += np.sqrt(N)
    H = np.eye(N) - (2.0 / (w @ w)) * np.outer(w, w)
    P22 = (H @ Pf @ H)[1:, 1:]
    M = np.eye(N - 1) - P22
    try:
        X = np.linalg.solve(M, np.eye(N - 1))
    except np.linalg.LinAlgError as exc:
        raise EngineError("unit root is not simple: deflated system singular") from exc
    k = float(np.trace(X))
    if not np.isfinite(k):
        raise EngineError("unit root is not simple: deflated trace diverged")
    return k


def kemeny_charpoly(P: ChainMatrix) -> Scalar:
    """Kemeny's constant via the characteristic polynomial.

    Exact mode: integer pencil determinants interpolated to exact
    coefficients, then K = p''(1)/(2 p'(1)) over Fractions.  Float mode:
    the same derivative ratio taken at the deflated unit root through
    Jacobi's formula.
    """
    if P.exact:
        coeffs = ratmath.charpoly_pencil(P.data.tolist())
        return kemeny_from_charpoly(coeffs)
    return _kemeny_charpoly_float(P.data)


# ---------------------------------------------------------------------------
# resistance route (vertex walk only)

@dataclass(frozen=True)
class ResistanceData:
    """Effective resistances of a connected graph.

    lpinv is the Laplacian pseudoinverse, resistance the pairwise matrix
    r(i, j) = lpinv[i,i] + lpinv[j,j] - 2 lpinv[i,j].
    """

    lpinv: np.ndarray
    resistance: np.ndarray
    exact: bool


def resistance(g: Graph, exact: bool = True) -> ResistanceData:
    """Effective resistance data via (L + J/n)^{-1} - J/n."""
    if not g.is_connected():
        raise EngineError("effective resistance needs a connected graph")
    n = g.n
    if exact:
        shift = Fraction(1, n)
        L = [[shift for _ in range(n)] for _ in range(n)]
        for v in range(n):
            L[v][v] += g.degrees[v]
        for u, v in g.edges:
            L[u][v] -= 1
            L[v][u] -= 1
        inv = ratmath.exact_inverse(L)
        lp = np.array(
            [[inv[i][j] - shift for j in range(n)] for i in range(n)], dtype=object
        )
        R = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(n):
                R[i, j] = lp[i, i] + lp[j, j] - 2 * lp[i, j]
        return ResistanceData(lp, R, True)
    L = np.diag(np.array(g.degrees, dtype=float))
    for u, v in g.edges:
        L[u, v] -= 1.0
        L[v, u] -= 1.0
    lp = np.linalg.inv(L + 1.0 / n) - 1.0 / n
    diag = np.diag(lp)
    R = diag[:, None] + diag[None, :] - 2.0 * lp
    return ResistanceData(lp, R, False)


def kemeny_resistance(g: Graph, exact: bool = True) -> Scalar:
    """Kemeny's constant of the simple walk: K = d^T R d / (4m)."""
    if g.m == 0:
        if g.n == 1:
            return Fraction(0) if exact else 0.0
        raise EngineError("graph has no edges")
    R = resistance(g, exact).resistance
    d = g.degrees
    if exact:
        total = sum(d[i] * R[i, j] * d[j] for i in range(g.n) for j in range(g.n))
        return total / (4 * g.m)
    dv = np.array(d, dtype=float)
    return float(dv @ R @ dv / (4.0 * g.m))


def moment(g: Graph, v: int, exact: bool = True) -> Scalar:
    """Degree-weighted resistance moment sum_i deg(i) r(i, v)."""
    if not 0 <= v < g.n:
        raise EngineError(f"vertex {v} out of range")
    if g.m == 0:
        if g.n == 1:
            return Fraction(0) if exact else 0.0
        raise EngineError("graph has no edges")
    R = resistance(g, exact).resistance
    if exact:
        return sum(g.degrees[i] * R[i, v] for i in range(g.n))
    dv = np.array(g.degrees, dtype=float)
    return float(dv @ R[:, v])


def kemeny_one_sum(g1: Graph, v1: int, g2: Graph, v2: int, exact: bool = True) -> Scalar:
    """Kemeny's constant of the 1-sum of two graphs glued at v1 ~ v2:

        K = (m1 (K1 + mu2(v2)) + m2 (K2 + mu1(v1))) / (m1 + m2)

    Degenerate single-vertex parts contribute zero and reduce the formula
    to the other part's constant.
    """
    m1, m2 = g1.m, g2.m
    if m1 + m2 == 0:
        raise EngineError("1-sum of two single vertices has no edges")
    k1 = kemeny_resistance(g1, exact)
    k2 = kemeny_resistance(g2, exact)
    mu1 = moment(g1, v1, exact)
    mu2 = moment(g2, v2, exact)
    num = m1 * (k1 + mu2) + m2 * (k2 + mu1)
    if exact:
        return num / Fraction(m1 + m2)
    return float(num) / (m1 + m2)


# ---------------------------------------------------------------------------
# the cross-validated report

_IDENTITY_NOTE = "k_edge = k_vertex + 2m - n"


@dataclass
class KemenyReport:
    """Per-walk Kemeny constants with per-route values and residuals."""

    n: int
    m: int
    k_vertex: Scalar
    k_edge: Scalar
    k_nb: Optional[Scalar]
    routes: dict[str, dict[str, Scalar]]
    residuals: dict[str, float]
    kappa_spread: dict[str, float]
    modes: dict[str, str]
    identity_residual: float
    identity_exact: bool
    nb_omitted: Optional[str]
    tolerance: float
    failed: bool = field(default=False)

    def to_json_dict(self) -> dict:
        def render(x):
            if isinstance(x, Fraction):
                return ratmath.format_scalar(x)
            if x is None:
                return None
            return float(f"{float(x):.12g}")

        return {
            "n": self.n,
            "m": self.m,
            "modes": self.modes,
            "kemeny": {
                "vertex": render(self.k_vertex),
                "edge": render(self.k_edge),
                "non-backtracking": render(self.k_nb),
            },
            "routes": {
                walk: {route: render(v) for route, v in vals.items()}
                for walk, vals in self.routes.items()
            },
            "residuals": {k: render(v) for k, v in self.residuals.items()},
            "kappa_spread": {k: render(v) for k, v in self.kappa_spread.items()},
            "identity": _IDENTITY_NOTE,
            "identity_residual": render(self.identity_residual),
            "identity_exact": self.identity_exact,
            "nb_omitted": self.nb_omitted,
            "tolerance": self.tolerance,
            "failed": self.failed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _run_routes(P: ChainMatrix, g: Graph | None = None) -> tuple[dict[str, Scalar], float]:
    vals: dict[str, Scalar] = {}
    k_m, spread = kemeny_mfpt(P)
    vals["mfpt"] = k_m
    vals["spectrum"] = kemeny_spectrum(P)
    vals["charpoly"] = kemeny_charpoly(P)
    if g is not None:
        vals["resistance"] = kemeny_resistance(g, exact=P.exact)
    return vals, spread


def _max_pairwise(vals: dict[str, Scalar]) -> float:
    xs = [float(v) for v in vals.values()]
    return max(abs(a - b) for a in xs for b in xs)


def kemeny_triple(
    g: Graph,
    mode: str = "auto",
    cap: int = 64,
    tol: float = 1e-9,
) -> KemenyReport:
    """Compute and cross-validate the three Kemeny constants of a graph.

    Parameters
    ----------
    g : Graph
        Connected graph on at least two vertices.
    mode : {'auto', 'exact', 'float'}
        Scalar mode; 'auto' uses exact rationals for walks with at most
        ``cap`` states and floats beyond.
    cap : int
        State-count cap for auto-exact.
    tol : float
        Tolerance for route residuals and the shift identity; exceeding it
        sets the ``failed`` flag.

    Returns
    -------
    KemenyReport
    """
    if mode not in ("auto", "exact", "float"):
        raise ValueError(f"unknown mode {mode!r}")
    prof = profile(g)
    if not prof.connected:
        raise EngineError("graph must be connected")
    if g.n < 2:
        raise EngineError("walks need at least two vertices")

    def use_exact(states: int) -> bool:
        if mode == "exact":
            return True
        if mode == "float":
            return False
        return states <= cap

    routes: dict[str, dict[str, Scalar]] = {}
    residuals: dict[str, float] = {}
    spreads: dict[str, float] = {}
    modes: dict[str, str] = {}

    ex_v = use_exact(g.n)
    Pv = vertex_transition(g, exact=ex_v)
    routes["vertex"], spreads["vertex"] = _run_routes(Pv, g)
    residuals["vertex"] = _max_pairwise(routes["vertex"])
    modes["vertex"] = "exact" if ex_v else "float"
    k_vertex = routes["vertex"]["mfpt"]

    two_m = 2 * g.m
    ex_e = use_exact(two_m)
    Pe = edge_transition(g, exact=ex_e)
    routes["edge"], spreads["edge"] = _run_routes(Pe)
    residuals["edge"] = _max_pairwise(routes["edge"])
    modes["edge"] = "exact" if ex_e else "float"
    k_edge = routes["edge"]["mfpt"]

    k_nb: Optional[Scalar] = None
    nb_omitted: Optional[str] = None
    if prof.min_degree < 2:
        nb_omitted = "graph has a vertex of degree < 2"
    elif prof.is_cycle:
        nb_omitted = "graph is a cycle: the non-backtracking walk is reducible"
    else:
        ex_nb = use_exact(two_m)
        Pnb = nb_transition(g, exact=ex_nb)
        routes["non-backtracking"], spreads["non-backtracking"] = _run_routes(Pnb)
        residuals["non-backtracking"] = _max_pairwise(routes["non-backtracking"])
        modes["non-backtracking"] = "exact" if ex_nb else "float"
        k_nb = routes["non-backtracking"]["mfpt"]

    shift = 2 * g.m - g.n
    identity_exact = ex_v and ex_e
    if identity_exact:
        ident = abs(k_edge - k_vertex - shift)
        identity_residual = float(ident)
    else:
        identity_residual = abs(float(k_edge) - float(k_vertex) - shift)

    failed = (
        any(r > tol for r in residuals.values())
        or any(s > tol for s in spreads.values())
        or identity_residual > tol
    )
    return KemenyReport(
        n=g.n,
        m=g.m,
        k_vertex=k_vertex,
        k_edge=k_edge,
        k_nb=k_nb,
        routes=routes,
        residuals=residuals,
        kappa_spread=spreads,
        modes=modes,
        identity_residual=identity_residual,
        identity_exact=identity_exact,
        nb_omitted=nb_omitted,
        tolerance=tol,
        failed=failed,
    )
