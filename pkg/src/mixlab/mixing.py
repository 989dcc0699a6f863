"""Algebraic connectivity, Cheeger constant, walk spectral gap and the
classification of graphs into the three mixing classes F, C and M.

A graph is in ``F_gamma`` when ``lambda2 >= gamma * n``, in ``C_gamma`` when
``i(G) >= gamma * n`` and in ``M_gamma`` when both ``1 - chi2 >= gamma`` and
``min degree >= gamma * n``.  Membership uses a tolerance band: a margin of
at least ``-MEMBERSHIP_TOL`` counts, and ``|margin| < MEMBERSHIP_TOL`` is
flagged as marginal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, GraphError, degree_matrix, laplacian
from .linalg import LinalgError, Spectrum, generalized_eigenvalues, symmetric_eigenvalues

MEMBERSHIP_TOL = 1e-9
CHEEGER_MAX_N = 24


class TooLargeError(GraphError):
    pass


class SingleVertexError(GraphError):
    pass


class InvalidGammaError(ValueError):
    pass


class NonPositiveParameterError(ValueError):
    pass


class IndefiniteBError(LinalgError):
    pass


class NoPositiveEigenvalueError(LinalgError):
    pass


# -- spectra ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralSummary:
    laplacian_spectrum: Spectrum
    walk_spectrum: np.ndarray | None  # descending; None with an isolated vertex
    lambda2: float
    spectral_gap: float | None
    min_degree: int
    max_degree: int

    @property
    def chi2(self) -> float | None:
        if self.walk_spectrum is None or len(self.walk_spectrum) < 2:
            return None
        return float(self.walk_spectrum[1])


def normalized_adjacency(g: Graph) -> np.ndarray:
    """D^-1/2 A D^-1/2, symmetric and similar to the walk matrix."""
    s = 1.0 / np.sqrt(np.array(g.degrees, dtype=float))
    return s[:, None] * g.adjacency() * s[None, :]


def algebraic_connectivity(g: Graph) -> float:
    if g.n < 2:
        return 0.0
    if not g.is_connected():
        return 0.0
    return float(np.linalg.eigvalsh(laplacian(g).astype(float))[1])


def walk_eigenvalues(g: Graph) -> np.ndarray:
    """Eigenvalues of the random-walk matrix, descending."""
    if g.min_degree == 0:
        raise GraphError("walk spectrum undefined with an isolated vertex")
    return symmetric_eigenvalues(normalized_adjacency(g)).values[::-1]


def spectral_summary(g: Graph, method: str = "lapack") -> SpectralSummary:
    spec = symmetric_eigenvalues(laplacian(g).astype(float), method=method)
    if g.n < 2 or not g.is_connected():
        # Exact zero: a disconnected Laplacian has a repeated zero eigenvalue.
        lam2 = 0.0
    else:
        lam2 = float(spec.values[1])
    walk = gap = None
    if g.min_degree > 0:
        walk = symmetric_eigenvalues(normalized_adjacency(g), method=method).values[::-1]
        if g.n >= 2:
            gap = float(1.0 - walk[1])
    return SpectralSummary(spec, walk, lam2, gap, g.min_degree, g.max_degree)


# -- Cheeger constant -------------------------------------------------------------

@dataclass(frozen=True)
class CheegerResult:
    value: float
    witness: tuple[int, ...]
    cut: int


def _lex_smallest(masks: np.ndarray) -> int:
    """Bitmask whose sorted vertex tuple is lexicographically smallest."""
    cand = masks.astype(np.uint64)
    prefix = np.uint64(0)
    while True:
        rem = cand & ~prefix
        if np.any(rem == 0):
            return int(prefix)
        low = rem & (~rem + np.uint64(1))
        first = low.min()
        cand = cand[low == first]
        prefix |= first


def cheeger_constant(g: Graph) -> CheegerResult:
    """Exact isoperimetric number by enumerating every cut.

    Vertex 0 is fixed on one side, so the 2^(n-1) - 1 cuts are each visited
    once; the cut sizes are built incrementally over the subset lattice.
    Ties go to the lexicographically smallest witness set.
    """
    n = g.n
    if n < 2:
        raise SingleVertexError("Cheeger constant needs at least two vertices")
    if n > CHEEGER_MAX_N:
        raise TooLargeError(f"exact Cheeger enumeration limited to n <= {CHEEGER_MAX_N}")
    k = n - 1
    size = 1 << k
    # Index t encodes S = {0} union {b+1 : bit b of t}.
    cut = np.empty(size, dtype=np.int32)
    cut[0] = g.degrees[0]
    idx = np.arange(size, dtype=np.uint32)
    for b in range(k):
        v = b + 1
        half = 1 << b
        nb_rest = np.uint32(g.masks[v] >> 1)
        inside = np.bitwise_count(idx[:half] & nb_rest).astype(np.int32) + (g.masks[v] & 1)
        cut[half:2 * half] = cut[:half] + g.degrees[v] - 2 * inside
    s_size = np.bitwise_count(idx).astype(np.int32) + 1
    small = np.minimum(s_size, n - s_size)
    cut, small, idx, s_size = cut[:-1], small[:-1], idx[:-1], s_size[:-1]  # drop S = V
    ratio = cut / small
    best = ratio.min()
    hits = np.flatnonzero(ratio == best)
    full = np.uint64((1 << n) - 1)
    s_masks = (idx[hits].astype(np.uint64) << np.uint64(1)) | np.uint64(1)
    sz = s_size[hits]
    cands = [s_masks[2 * sz <= n], full ^ s_masks[2 * sz >= n]]
    mask = _lex_smallest(np.concatenate(cands))
    witness = tuple(v for v in range(n) if mask >> v & 1)
    return CheegerResult(float(best), witness, int(cut[hits[0]]))


# -- classification -----------------------------------------------------------------

@dataclass(frozen=True)
class MixingClassification:
    gamma: float
    in_F: bool
    in_C: bool
    in_M: bool
    margins: tuple[float, float, float]
    marginal: tuple[bool, bool, bool]
    lambda2: float
    cheeger: float
    spectral_gap: float | None
    min_degree: int
    cheeger_method: str = "exact"  # or "bound": i >= lambda2/2 used in place of i

    @property
    def is_mixing(self) -> bool:
        return self.in_F and self.in_C and self.in_M


def _member(margin: float) -> tuple[bool, bool]:
    return margin >= -MEMBERSHIP_TOL, abs(margin) < MEMBERSHIP_TOL


def classify(g: Graph, gamma: float, summary: SpectralSummary | None = None,
             cheeger: float | None = None) -> MixingClassification:
    """Membership of ``g`` in F_gamma, C_gamma and M_gamma, with margins.

    Above ``CHEEGER_MAX_N`` vertices the exact Cheeger constant is replaced by
    the lower bound lambda2/2, which can only under-report C-membership.
    """
    if not gamma > 0 or not math.isfinite(gamma):
        raise InvalidGammaError(f"gamma must be positive, got {gamma}")
    n = g.n
    s = summary if summary is not None else spectral_summary(g)
    method = "exact"
    if cheeger is None:
        if n < 2:
            cheeger = 0.0
        elif n <= CHEEGER_MAX_N:
            cheeger = cheeger_constant(g).value
        else:
            cheeger, method = s.lambda2 / 2, "bound"
    mF = s.lambda2 - gamma * n
    mC = cheeger - gamma * n
    deg_margin = s.min_degree - gamma * n
    if s.spectral_gap is None:
        mM = -math.inf if s.min_degree == 0 else deg_margin
    else:
        mM = min(s.spectral_gap - gamma, deg_margin)
    (fF, kF), (fC, kC), (fM, kM) = _member(mF), _member(mC), _member(mM)
    if s.spectral_gap is None:
        fM, kM = False, False
    return MixingClassification(gamma, fF, fC, fM, (mF, mC, mM), (kF, kC, kM),
                                s.lambda2, cheeger, s.spectral_gap, s.min_degree, method)


# -- pencil eigenvalue bound ------------------------------------------------------------------------

def lemma1_rho(a: float, b1: float, b2: float) -> float:
    """Lower bound a*b2 / (b1*sqrt(b1^2 + b2^2)) on nonzero generalized eigenvalues."""
    if not (a > 0 and b1 > 0 and b2 > 0):
        raise NonPositiveParameterError(f"a, b1, b2 must be positive, got {(a, b1, b2)}")
    return a * b2 / (b1 * math.hypot(b1, b2))


@dataclass(frozen=True)
class LemmaOneInstance:
    """PSD ``A`` with kernel vector ``w``, symmetric ``B`` and the constants
    ``a`` (floor of ||Au||/||u|| on w-perp), ``b1 >= ||B||`` and
    ``b2 <= w'Bw / w'w``."""

    A: np.ndarray
    B: np.ndarray
    w: np.ndarray
    a: float
    b1: float
    b2: float

    def violations(self, tol: float = 1e-9) -> list[str]:
        out = []
        A, B, w = self.A, self.B, self.w
        scale = max(1.0, float(np.abs(A).max()))
        if np.linalg.norm(A @ w) > tol * scale * np.linalg.norm(w):
            out.append("A w != 0")
        # Smallest singular value of A restricted to the complement of w.
        u = w / np.linalg.norm(w)
        basis = np.linalg.svd(np.eye(len(w)) - np.outer(u, u))[0][:, :-1]
        if len(w) > 1:
            floor = np.linalg.svd(A @ basis, compute_uv=False).min()
            if floor < self.a - tol * scale:
                out.append(f"||Au|| floor {floor:.6g} < a = {self.a:.6g}")
        if np.linalg.norm(B, 2) > self.b1 * (1 + tol):
            out.append("||B|| > b1")
        if w @ B @ w < self.b2 * (w @ w) * (1 - tol):
            out.append("w'Bw < b2 ||w||^2")
        return out


def min_positive_generalized_eigenvalue(inst: LemmaOneInstance, tol: float = 1e-9) -> float:
    """Smallest lambda > tol with det(A - lambda B) = 0, for positive definite B."""
    B = np.asarray(inst.B, dtype=float)
    if np.linalg.eigvalsh((B + B.T) / 2).min() <= 0:
        raise IndefiniteBError("B must be positive definite")
    lam = generalized_eigenvalues(inst.A, B)
    pos = lam[lam > tol]
    if pos.size == 0:
        raise NoPositiveEigenvalueError("no positive generalized eigenvalue")
    return float(pos.min())


def laplacian_degree_instance(g: Graph) -> LemmaOneInstance:
    """A = Q/n, B = D/n, w = ones; generalized eigenvalues are 1 - chi."""
    n = g.n
    A = laplacian(g) / n
    B = degree_matrix(g) / n
    return LemmaOneInstance(A, B, np.ones(n), algebraic_connectivity(g) / n,
                            g.max_degree / n, g.min_degree / n)


def normalized_instance(g: Graph) -> LemmaOneInstance:
    """A = D^-1/2 Q D^-1/2, B = n D^-1, w = D^1/2 ones; eigenvalues lambda/n."""
    n = g.n
    d = np.array(g.degrees, dtype=float)
    s = 1.0 / np.sqrt(d)
    A = s[:, None] * laplacian(g) * s[None, :]
    B = np.diag(n / d)
    gap = spectral_summary(g).spectral_gap
    return LemmaOneInstance(A, B, np.sqrt(d), gap, n / g.min_degree, 1.0)


# -- gamma translation between the three classes --------------------------------------

def f_to_c(gamma0: float) -> float:
    # i >= lambda2 / 2
    return gamma0 / 2


def c_to_f(gamma0: float) -> float:
    # i^2 <= lambda2 (2 maxdeg - lambda2) <= 2 n lambda2
    return gamma0 ** 2 / 2


def f_to_m(gamma0: float) -> float:
    # min d >= (n-1)/n lambda2 >= gamma0 n / 2; the walk gap is the smallest
    # positive root for A = Q/n, B = D/n with a = gamma0, b1 = 1, b2 = gamma0/2.
    return min(gamma0 / 2, lemma1_rho(gamma0, 1.0, gamma0 / 2))


def m_to_f(gamma0: float) -> float:
    # A = D^-1/2 Q D^-1/2, B = n D^-1: a = gamma0, b1 = n/min d <= 1/gamma0, b2 = 1.
    return lemma1_rho(gamma0, 1.0 / gamma0, 1.0)


def theorem1_components(gamma0: float) -> dict[str, float]:
    """Level reached in each target class from each source class at gamma0."""
    if not 0 < gamma0 <= 1:
        raise InvalidGammaError(f"gamma0 must lie in (0, 1], got {gamma0}")
    fc, cf, fm, mf = f_to_c(gamma0), c_to_f(gamma0), f_to_m(gamma0), m_to_f(gamma0)
    return {
        "F->F": gamma0, "F->C": fc, "F->M": fm,
        "C->F": cf, "C->C": gamma0, "C->M": f_to_m(cf),
        "M->F": mf, "M->C": f_to_c(mf), "M->M": gamma0,
    }


def theorem1_gamma(gamma0: float) -> float:
    """A level gamma such that membership in F, C or M at gamma0 implies
    membership in all three at gamma."""
    return min(theorem1_components(gamma0).values())


# -- classical inequalities -------------------------------------------------------------

@dataclass
class InequalityCheck:
    name: str
    slack: float | None  # >= 0 when the inequality holds; None when skipped
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.slack is None or self.slack >= -MEMBERSHIP_TOL


@dataclass
class InequalityReport:
    lambda2: float
    cheeger: float
    checks: list[InequalityCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __getitem__(self, name: str) -> InequalityCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def validate_fiedler_inequalities(g: Graph, seed: int = 0) -> InequalityReport:
    """Evaluate the classical bounds on lambda2 and i(G) for ``g``.

    Checks (slack >= 0 means the bound holds):

    - ``degree_upper``: lambda2 <= n/(n-1) * min d
    - ``degree_lower``: lambda2 >= 2 min d - n + 2
    - ``cheeger_lower``: lambda2 / 2 <= i(G)
    - ``cheeger_upper``: i(G) <= sqrt(lambda2 (2 max d - lambda2)), skipped for K2, K3
    - ``vertex_deletion``: lambda2(G) <= lambda2(G - v) + 1 for every v
    - ``edge_addition``: lambda2(G) <= lambda2(G + e) for one random absent e
    """
    n = g.n
    lam = algebraic_connectivity(g)
    cheeger = cheeger_constant(g).value if n >= 2 else 0.0
    dmin, dmax = g.min_degree, g.max_degree
    rep = InequalityReport(lam, cheeger)
    add = rep.checks.append
    if n >= 2:
        add(InequalityCheck("degree_upper", n / (n - 1) * dmin - lam))
    add(InequalityCheck("degree_lower", lam - (2 * dmin - n + 2)))
    add(InequalityCheck("cheeger_lower", cheeger - lam / 2))
    if n <= 3 and g.m == n * (n - 1) // 2:
        # The upper bound fails for K2 and K3 (i = 1 > 0, i = 2 > sqrt(3)).
        add(InequalityCheck("cheeger_upper", None, "skipped: K2/K3 are exceptions"))
    else:
        add(InequalityCheck("cheeger_upper", math.sqrt(max(lam * (2 * dmax - lam), 0.0)) - cheeger))
    if n >= 3:
        worst = min(algebraic_connectivity(g.remove_vertex(v)) + 1 - lam for v in range(n))
        add(InequalityCheck("vertex_deletion", worst))
    else:
        add(InequalityCheck("vertex_deletion", None, "skipped: n < 3"))
    absent = [(u, v) for u in range(n) for v in range(u + 1, n) if not g.has_edge(u, v)]
    if absent:
        u, v = absent[np.random.default_rng(seed).integers(len(absent))]
        add(InequalityCheck("edge_addition", algebraic_connectivity(g.add_edge(u, v)) - lam,
                            f"added edge ({u}, {v})"))
    else:
        add(InequalityCheck("edge_addition", None, "skipped: complete graph"))
    return rep
