"""Monte-Carlo estimates for G(n, p), exact binomial tails, and corpus sweeps
that produce the error-versus-connectivity chart data."""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from statistics import NormalDist
from typing import Iterable, Iterator, Sequence

import numpy as np

from .eulerian import (BEST_MAX_EDGES, EO_MAX_EDGES, correction_constants, count_eulerian_circuits_best,
                       count_eulerian_orientations, log_ec_approx, log_eo_approx, spanning_tree_count)
from .graph import Graph, derive_seed, even_subgraph_corpus, sample_gnp, write_graph6, UnsupportedSizeError
from .mixing import CHEEGER_MAX_N, classify, spectral_summary


class InvalidParameterError(ValueError):
    pass


def _jobs(jobs: int | None) -> int:
    env = os.environ.get("MIXLAB_JOBS")
    if env:
        return max(1, int(env))
    return max(1, int(jobs or 1))


def _ordered_map(func, items: Iterable, jobs: int | None):
    jobs = _jobs(jobs)
    if jobs == 1:
        yield from map(func, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(func, items, chunksize=16)


# -- binomial tail ------------------------------------------------------------------

def binomial_tail(M: int, p: float, threshold: float) -> float:
    """Pr(X <= threshold * M) for X ~ Binomial(M, p), summed exactly term by term."""
    if M < 1 or not 0 < p < 1 or not 0 <= threshold <= 1:
        raise InvalidParameterError(f"need M >= 1, 0 < p < 1, 0 <= threshold <= 1; got {(M, p, threshold)}")
    kmax = math.floor(threshold * M + 1e-12)
    lp, lq = math.log(p), math.log1p(-p)
    lgM = math.lgamma(M + 1)
    terms = (math.exp(lgM - math.lgamma(k + 1) - math.lgamma(M - k + 1) + k * lp + (M - k) * lq)
             for k in range(kmax + 1))
    return min(1.0, math.fsum(terms))


def wilson_interval(successes: int, trials: int, level: float = 0.95) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + level / 2)
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if successes == 0 else max(0.0, centre - half)
    hi = 1.0 if successes == trials else min(1.0, centre + half)
    return lo, hi


# -- G(n, p) Monte-Carlo ------------------------------------------------------------------

@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    p: float
    gamma: float
    trials: int
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise InvalidParameterError(f"p must lie in (0, 1), got {self.p}")
        if self.trials < 1:
            raise InvalidParameterError("trials must be >= 1")
        if not self.gamma > 0:
            raise InvalidParameterError("gamma must be positive")
        if self.n < 2:
            raise InvalidParameterError("n must be >= 2")


@dataclass(frozen=True)
class ExperimentResult:
    config: ExperimentConfig
    successes: int
    frequency: float
    wilson_interval: tuple[float, float]
    frequency_F: float
    frequency_C: float
    frequency_M: float
    cheeger_method: str  # "exact" or "bound" (C-membership certified by lambda2/2)

    def as_dict(self) -> dict:
        out = asdict(self)
        out["wilson_interval"] = list(self.wilson_interval)
        return out


def _trial(args) -> tuple[bool, bool, bool]:
    n, p, gamma, seed = args
    c = classify(sample_gnp(n, p, seed), gamma)
    return c.in_F, c.in_C, c.in_M


def estimate_mixing_probability(cfg: ExperimentConfig, jobs: int | None = 1) -> ExperimentResult:
    """Fraction of seeded G(n, p) samples that are gamma-mixing.

    Trial i uses seed ``derive_seed(cfg.seed, i)`` so the result does not
    depend on how trials are spread over workers.
    """
    work = ((cfg.n, cfg.p, cfg.gamma, derive_seed(cfg.seed, i)) for i in range(cfg.trials))
    hits = np.array(list(_ordered_map(_trial, work, jobs)), dtype=bool)
    both = hits.all(axis=1)
    k = int(both.sum())
    freq = hits.mean(axis=0)
    return ExperimentResult(
        cfg, k, k / cfg.trials, wilson_interval(k, cfg.trials),
        float(freq[0]), float(freq[1]), float(freq[2]),
        "exact" if cfg.n <= CHEEGER_MAX_N else "bound",
    )


# -- corpus sweep ----------------------------------------------------------------------

CSV_FIELDS = ("graph6", "n", "m", "lambda2", "lambda2_over_n", "eo_exact", "eo_approx",
              "error_eo", "ec_exact", "ec_approx", "error_ec")


@dataclass(frozen=True)
class ChartRow:
    graph6: str
    n: int
    m: int
    lambda2: float
    lambda2_over_n: float
    eo_exact: int | None
    eo_approx: float
    error_eo: float | None
    ec_exact: int | None
    ec_approx: float
    error_ec: float | None


def chart_row(g: Graph, eo_max_edges: int = EO_MAX_EDGES, ec_max_edges: int = BEST_MAX_EDGES) -> ChartRow:
    lam2 = spectral_summary(g).lambda2
    t = spanning_tree_count(g)
    eo_a = math.exp(log_eo_approx(g, t))
    ec_a = math.exp(log_ec_approx(g, t, correction_constants(g)))
    eo = count_eulerian_orientations(g) if g.m <= eo_max_edges else None
    ec = count_eulerian_circuits_best(g) if g.m <= ec_max_edges else None
    return ChartRow(
        write_graph6(g), g.n, g.m, lam2, lam2 / g.n,
        eo, eo_a, (eo_a - eo) / eo if eo else None,
        ec, ec_a, (ec_a - ec) / ec if ec else None,
    )


def _row_job(args) -> ChartRow:
    g, eo_max, ec_max = args
    return chart_row(g, eo_max, ec_max)


def corpus_sweep(n: int, sample: int | None = None, seed: int = 0,
                 eo_max_edges: int = EO_MAX_EDGES, ec_max_edges: int = BEST_MAX_EDGES,
                 jobs: int | None = 1) -> Iterator[ChartRow]:
    """Chart rows for every connected even-degree spanning subgraph of K_n.

    n <= 7 is enumerated in full unless ``sample`` is given; n = 8, 9 are
    sampled (default 2000 draws).  Exact counts above the edge limits are
    left empty.
    """
    if not 4 <= n <= 9:
        raise UnsupportedSizeError(f"corpus sweep supports 4 <= n <= 9, got {n}")
    graphs = even_subgraph_corpus(n, connected_only=True, seed=seed, sample=sample)
    work = ((g, eo_max_edges, ec_max_edges) for g in graphs)
    yield from _ordered_map(_row_job, work, jobs)


def quartile_means(rows: Sequence[ChartRow], metric: str = "eo") -> tuple[float, float]:
    """Mean |error| over the bottom and top quartile of lambda2/n.

    Rows without an exact count for ``metric`` are ignored.  Quartiles are cut
    at the 25th and 75th percentiles, so ties at a cut point stay together.
    """
    key = "error_eo" if metric == "eo" else "error_ec"
    pts = [(r.lambda2_over_n, abs(getattr(r, key))) for r in rows if getattr(r, key) is not None]
    if len(pts) < 4:
        raise ValueError("need at least four rows with exact counts")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    lo, hi = np.quantile(x, [0.25, 0.75])
    return float(y[x <= lo].mean()), float(y[x >= hi].mean())


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def write_chart_csv(rows: Iterable[ChartRow], out) -> int:
    """Write rows as CSV with the fixed header; returns the row count."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    count = 0
    for r in rows:
        w.writerow([_fmt(getattr(r, f)) for f in CSV_FIELDS])
        count += 1
    return count


def chart_csv(rows: Iterable[ChartRow]) -> str:
    buf = io.StringIO()
    write_chart_csv(rows, buf)
    return buf.getvalue()


def read_chart_csv(text: str) -> list[dict]:
    return list(csv.DictReader(io.StringIO(text)))


def scatter_svg(xs: Sequence[float], ys: Sequence[float], title: str = "",
                xlabel: str = "lambda2 / n", ylabel: str = "Error",
                width: int = 480, height: int = 360) -> str:
    """Plain static scatter plot as an SVG document."""
    pad_l, pad_r, pad_t, pad_b = 60, 20, 30, 45
    xs, ys = np.asarray(xs, float), np.asarray(ys, float)
    x0, x1 = (float(xs.min()), float(xs.max())) if xs.size else (0.0, 1.0)
    y0, y1 = (float(min(ys.min(), 0.0)), float(max(ys.max(), 0.0))) if ys.size else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    pw, ph = width - pad_l - pad_r, height - pad_t - pad_b
    sx = lambda x: pad_l + (x - x0) / (x1 - x0) * pw
    sy = lambda y: pad_t + (y1 - y) / (y1 - y0) * ph
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad_l}" y1="{pad_t + ph}" x2="{pad_l + pw}" y2="{pad_t + ph}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{pad_t}" x2="{pad_l}" y2="{pad_t + ph}" stroke="black"/>',
        f'<line x1="{pad_l}" y1="{sy(0):.2f}" x2="{pad_l + pw}" y2="{sy(0):.2f}" stroke="#999" stroke-dasharray="4 3"/>',
    ]
    for frac in (0, 0.5, 1):
        xv, yv = x0 + frac * (x1 - x0), y0 + frac * (y1 - y0)
        parts.append(f'<text x="{sx(xv):.2f}" y="{pad_t + ph + 15}" font-size="10" '
                     f'text-anchor="middle">{xv:.3g}</text>')
        parts.append(f'<text x="{pad_l - 5}" y="{sy(yv) + 3:.2f}" font-size="10" '
                     f'text-anchor="end">{yv:.3g}</text>')
    parts.append(f'<text x="{pad_l + pw / 2}" y="{height - 8}" font-size="12" text-anchor="middle">{xlabel}</text>')
    parts.append(f'<text x="14" y="{pad_t + ph / 2}" font-size="12" text-anchor="middle" '
                 f'transform="rotate(-90 14 {pad_t + ph / 2})">{ylabel}</text>')
    if title:
        parts.append(f'<text x="{width / 2}" y="18" font-size="13" text-anchor="middle">{title}</text>')
    for x, y in zip(xs, ys):
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2" fill="steelblue" fill-opacity="0.6"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
