"""Exact and asymptotic counts of Eulerian orientations and circuits.

Exact counters:

* :func:`count_eulerian_orientations` -- memoised backtracking over edges.
* :func:`count_eulerian_circuits_best` -- sum over Eulerian orientations of
  (arborescence count) * prod (d_v/2 - 1)!.
* :func:`count_eulerian_circuits_trails` -- direct enumeration of closed
  trails, divided by the number of rotations.

A circuit and its reversal are counted as different circuits, so EC(K3) = 2.

The asymptotic estimates are evaluated in log space.  For a connected graph
with all degrees even, with t(G) the number of spanning trees and

    P_jk = 1 - 1/(4(d_j+1)^2) - 1/(2(d_j+1)(d_k+1)) - 1/(4(d_k+1)^2),

    EO ~ 2^(m + (n-1)/2) pi^(-(n-1)/2) t^(-1/2) prod_edges P_jk
    EC ~ prod_j (d_j/2 - 1)! 2^(m - (n-1)/2) pi^(-(n-1)/2) t^(1/2) C1 C2 C3 C4

where C1..C4 come from :func:`correction_constants`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .graph import Graph, GraphError, laplacian
from .linalg import exact_determinant, principal_minor, real_inverse

EO_MAX_EDGES = 40
BEST_MAX_EDGES = 24
TRAIL_MAX_EDGES = 14


class NotEulerianCandidateError(GraphError):
    pass


class DisconnectedError(GraphError):
    pass


class TooManyEdgesError(GraphError):
    pass


class NonDivisibleTotalError(ArithmeticError):
    pass


class ExactCountUnavailableError(ValueError):
    pass


def _require_eulerian(g: Graph, need_connected: bool = True) -> None:
    if not g.all_degrees_even():
        raise NotEulerianCandidateError("every vertex must have even degree")
    if need_connected and not g.is_connected():
        raise DisconnectedError("graph must be connected")


def _edge_order(g: Graph) -> list[tuple[int, int]]:
    # Edges sorted by their later endpoint keep few vertices half-finished,
    # which keeps the memo table small.  The count does not depend on order.
    return sorted(g.edges, key=lambda e: (e[1], e[0]))


def _remaining_after(n: int, edges: list[tuple[int, int]]) -> list[tuple[int, ...]]:
    rem = [0] * n
    out = []
    for u, v in reversed(edges):
        out.append(tuple(rem))
        rem[u] += 1
        rem[v] += 1
    return out[::-1]


def count_eulerian_orientations(g: Graph) -> int:
    """Number of orientations with in-degree equal to out-degree everywhere."""
    if not g.all_degrees_even():
        return 0
    if g.m > EO_MAX_EDGES:
        raise TooManyEdgesError(f"EO counting limited to {EO_MAX_EDGES} edges")
    edges = _edge_order(g)
    rem = _remaining_after(g.n, edges)
    m = len(edges)

    @lru_cache(maxsize=None)
    def go(i: int, imb: tuple[int, ...]) -> int:
        if i == m:
            return 1
        u, v = edges[i]
        r = rem[i]
        total = 0
        for s in (1, -1):
            iu, iv = imb[u] + s, imb[v] - s
            if abs(iu) > r[u] or abs(iv) > r[v]:
                continue
            nxt = list(imb)
            nxt[u], nxt[v] = iu, iv
            total += go(i + 1, tuple(nxt))
        return total

    return go(0, (0,) * g.n)


def eulerian_orientations(g: Graph) -> Iterator[tuple[int, ...]]:
    """Yield Eulerian orientations as direction bits over ``g.edges``.

    Bit 0 orients edge (u, v) as u -> v, bit 1 as v -> u.
    """
    if not g.all_degrees_even():
        return
    edges = list(g.edges)
    rem = _remaining_after(g.n, edges)
    imb = [0] * g.n
    bits = [0] * len(edges)

    def go(i):
        if i == len(edges):
            yield tuple(bits)
            return
        u, v = edges[i]
        r = rem[i]
        for bit, s in ((0, 1), (1, -1)):
            imb[u] += s
            imb[v] -= s
            if abs(imb[u]) <= r[u] and abs(imb[v]) <= r[v]:
                bits[i] = bit
                yield from go(i + 1)
            imb[u] -= s
            imb[v] += s

    yield from go(0)


def directed_laplacian(g: Graph, bits) -> np.ndarray:
    """Out-degree Laplacian of the orientation ``bits`` of ``g``."""
    lap = np.zeros((g.n, g.n), dtype=np.int64)
    for (u, v), b in zip(g.edges, bits):
        tail, head = (u, v) if b == 0 else (v, u)
        lap[tail, tail] += 1
        lap[tail, head] -= 1
    return lap


def arborescence_count(g: Graph, bits, root: int = 0) -> int:
    """Spanning arborescences of the orientation, all edges pointing to ``root``."""
    return exact_determinant(principal_minor(directed_laplacian(g, bits), root))


def _factorial_weight(g: Graph) -> int:
    return math.prod(math.factorial(d // 2 - 1) for d in g.degrees)


def count_eulerian_circuits_best(g: Graph) -> int:
    """Eulerian circuits via the BEST theorem summed over Eulerian orientations."""
    _require_eulerian(g)
    if g.m == 0:
        raise NotEulerianCandidateError("graph has no edges")
    if g.m > BEST_MAX_EDGES:
        raise TooManyEdgesError(f"BEST-sum limited to {BEST_MAX_EDGES} edges")
    total = sum(arborescence_count(g, bits) for bits in eulerian_orientations(g))
    return total * _factorial_weight(g)


def count_eulerian_circuits_trails(g: Graph) -> int:
    """Eulerian circuits by enumerating closed trails.

    Every circuit has exactly m rotations, one per starting directed edge, so
    the number of closed trails over all first steps is m times the answer.
    """
    _require_eulerian(g)
    m = g.m
    if m == 0:
        raise NotEulerianCandidateError("graph has no edges")
    if m > TRAIL_MAX_EDGES:
        raise TooManyEdgesError(f"trail enumeration limited to {TRAIL_MAX_EDGES} edges")
    adj = [[] for _ in range(g.n)]
    for e, (u, v) in enumerate(g.edges):
        adj[u].append((v, e))
        adj[v].append((u, e))
    used = [False] * m

    def walk(v: int, start: int, left: int) -> int:
        if left == 0:
            return int(v == start)
        total = 0
        for w, e in adj[v]:
            if not used[e]:
                used[e] = True
                total += walk(w, start, left - 1)
                used[e] = False
        return total

    linear = 0
    for e, (u, v) in enumerate(g.edges):
        for a, b in ((u, v), (v, u)):
            used[e] = True
            linear += walk(b, a, m - 1)
            used[e] = False
    count, rest = divmod(linear, m)
    if rest:
        raise NonDivisibleTotalError(f"{linear} closed trails not divisible by m = {m}")
    return count


# -- asymptotic formulas ------------------------------------------------------------

def spanning_tree_count(g: Graph) -> int:
    """Matrix-Tree theorem: determinant of the Laplacian without row/col 0."""
    if g.n == 1:
        return 1
    return exact_determinant(principal_minor(laplacian(g), 0))


def edge_factor(dj: int, dk: int) -> float:
    a, b = dj + 1, dk + 1
    return 1 - 1 / (4 * a * a) - 1 / (2 * a * b) - 1 / (4 * b * b)


def log_edge_factor_product(g: Graph) -> float:
    d = g.degrees
    return math.fsum(math.log(edge_factor(d[u], d[v])) for u, v in g.edges)


@dataclass(frozen=True)
class CorrectionConstants:
    c1: float
    c2: float
    c3: float
    c4: float
    c1_symmetric: float  # exp(-beta' W beta / 2), diagonal terms included

    @property
    def product(self) -> float:
        return self.c1 * self.c2 * self.c3 * self.c4

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3, self.c4))


def correction_constants(g: Graph) -> CorrectionConstants:
    """C1..C4 of the Eulerian-circuit estimate.

    W = (Q + J)^-1, alpha_j = W_jj, beta = Q alpha, and
    r_k = tr(L_k W L_k W) with L_k = diag(Q e_k), which equals
    q_k' (W o W) q_k for the k-th column q_k of Q.
    """
    if not g.is_connected():
        raise DisconnectedError("Q + J is singular for a disconnected graph")
    q = laplacian(g).astype(float)
    n = g.n
    w = real_inverse(q + np.ones((n, n)))
    w = (w + w.T) / 2
    alpha = np.diag(w).copy()
    beta = q @ alpha
    d = np.array(g.degrees, dtype=float)
    quad = beta[:, None] * w * beta[None, :]
    upper = np.triu(quad, k=1).sum()
    c1 = math.exp(-upper)
    c1_sym = math.exp(-quad.sum() / 2)
    c2 = math.exp(-np.sum(beta ** 2 / (2 * (d + 1))))
    r = np.einsum("jk,jl,lk->k", q, w * w, q)
    c3 = math.exp(np.sum(r / (2 * (d + 1))))
    c4 = math.exp(log_edge_factor_product(g))
    return CorrectionConstants(c1, c2, c3, c4, c1_sym)


def log_eo_approx(g: Graph, t: int | None = None) -> float:
    _require_eulerian(g)
    n, m = g.n, g.m
    if n < 2:
        raise NotEulerianCandidateError("need at least two vertices")
    t = spanning_tree_count(g) if t is None else t
    h = (n - 1) / 2
    return (m + h) * math.log(2) - h * math.log(math.pi) - 0.5 * math.log(t) + log_edge_factor_product(g)


def eo_approx(g: Graph) -> float:
    """Asymptotic estimate of the number of Eulerian orientations."""
    return math.exp(log_eo_approx(g))


def log_ec_approx(g: Graph, t: int | None = None, consts: CorrectionConstants | None = None) -> float:
    _require_eulerian(g)
    n, m = g.n, g.m
    if n < 2:
        raise NotEulerianCandidateError("need at least two vertices")
    t = spanning_tree_count(g) if t is None else t
    c = correction_constants(g) if consts is None else consts
    h = (n - 1) / 2
    log_fact = math.fsum(math.lgamma(dj / 2) for dj in g.degrees)
    log_c = math.log(c.c1) + math.log(c.c2) + math.log(c.c3) + log_edge_factor_product(g)
    return log_fact + (m - h) * math.log(2) - h * math.log(math.pi) + 0.5 * math.log(t) + log_c


def ec_approx(g: Graph) -> float:
    """Asymptotic estimate of the number of Eulerian circuits."""
    return math.exp(log_ec_approx(g))


def relative_error(approx: float, exact: int) -> float:
    if not exact:
        raise ExactCountUnavailableError("exact count is zero")
    return (approx - exact) / exact


def error_metrics(g: Graph) -> tuple[float, float | None]:
    """Signed relative errors (approx - exact)/exact of the EO and EC estimates.

    The EC error is ``None`` when the graph exceeds the BEST-sum edge limit.
    """
    if not g.all_degrees_even() or not g.is_connected() or g.m == 0:
        raise ExactCountUnavailableError("exact counts are zero or undefined for this graph")
    t = spanning_tree_count(g)
    err_eo = relative_error(math.exp(log_eo_approx(g, t)), count_eulerian_orientations(g))
    err_ec = None
    if g.m <= BEST_MAX_EDGES:
        err_ec = relative_error(math.exp(log_ec_approx(g, t)), count_eulerian_circuits_best(g))
    return err_eo, err_ec


@dataclass(frozen=True)
class EulerianReport:
    eo_exact: int | None
    ec_exact: int | None
    eo_approx: float | None
    ec_approx: float | None
    t: int
    constants: CorrectionConstants | None
    error_eo: float | None
    error_ec: float | None


def eulerian_report(g: Graph, exact: bool = True, approx: bool = True) -> EulerianReport:
    """Everything the Eulerian module knows about ``g``, honouring size limits.

    Fields that cannot be computed (odd degrees, disconnected, over a limit)
    are ``None``; odd-degree graphs get exact counts of 0.
    """
    t = spanning_tree_count(g)
    eulerian = g.all_degrees_even()
    usable = eulerian and g.is_connected() and g.m > 0 and g.n >= 2
    eo = ec = None
    if exact:
        if not eulerian:
            eo = ec = 0
        else:
            eo = count_eulerian_orientations(g) if g.m <= EO_MAX_EDGES else None
            if usable and g.m <= BEST_MAX_EDGES:
                ec = count_eulerian_circuits_best(g)
    eo_a = ec_a = consts = None
    if approx and usable:
        consts = correction_constants(g)
        eo_a = math.exp(log_eo_approx(g, t))
        ec_a = math.exp(log_ec_approx(g, t, consts))
    err_eo = relative_error(eo_a, eo) if eo and eo_a is not None else None
    err_ec = relative_error(ec_a, ec) if ec and ec_a is not None else None
    return EulerianReport(eo, ec, eo_a, ec_a, t, consts, err_eo, err_ec)
