"""Power-law fits and closed-form predictors for ego-level structure."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFitError, InsufficientDataError
from .triangles import DegreeProfile, VertexStats


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    xmin: float
    ks: float
    n_tail: int


@dataclass(frozen=True)
class ClusteringFit:
    c0: float
    alpha: float
    r2: float


def _powerlaw_ccdf(v, xmin, gamma, shift):
    base = xmin - 0.5 if shift else xmin
    return ((v - 0.5 if shift else v) / base) ** (1.0 - gamma)


def _fit_sorted_tail(tail, xmin, shift):
    """MLE and KS for an ascending array of tail samples (all >= xmin)."""
    base = xmin - 0.5 if shift else xmin
    logsum = math.fsum(np.log(tail / base))
    if tail[0] == tail[-1] or logsum <= 0:
        raise DegenerateFitError("all tail samples are equal")
    n = len(tail)
    gamma = 1.0 + n / logsum
    vals, first = np.unique(tail, return_index=True)
    emp = 1.0 - first / n  # P(X >= v)
    ks = float(np.max(np.abs(emp - _powerlaw_ccdf(vals, xmin, gamma, shift))))
    return PowerLawFit(gamma, float(xmin), ks, n)


def fit_degree_exponent(samples, xmin=None, discrete_shift=True, min_tail=10) -> PowerLawFit:
    """Power-law exponent by maximum likelihood.

    gamma = 1 + n / sum(ln(x / (xmin - 1/2))) over samples x >= xmin; the
    half shift approximates the discrete power law by a continuous one and
    is switched off with ``discrete_shift=False``. With ``xmin=None`` every
    observed value up to the 90th percentile is tried and the one giving the
    smallest KS distance between the tail and the fit wins.
    """
    x = np.sort(np.asarray(samples, dtype=np.float64))
    if len(x) == 0 or x[0] <= 0:
        raise ValueError("samples must be non-empty and positive")
    if xmin is not None:
        tail = x[np.searchsorted(x, xmin):]
        if len(tail) < min_tail:
            raise InsufficientDataError(f"{len(tail)} tail samples, need {min_tail}")
        return _fit_sorted_tail(tail, xmin, discrete_shift)

    top = np.quantile(x, 0.9, method="lower")
    best = None
    for cand in np.unique(x[x <= top]):
        tail = x[np.searchsorted(x, cand):]
        if len(tail) < min_tail or tail[0] == tail[-1]:
            continue
        fit = _fit_sorted_tail(tail, cand, discrete_shift)
        if best is None or fit.ks < best.ks:
            best = fit
    if best is None:
        raise InsufficientDataError("no candidate xmin leaves a usable tail")
    return best


def fit_clustering_powerlaw(profile: DegreeProfile, min_bin=5) -> ClusteringFit:
    """Least-squares fit of ln C(k) = ln C0 - alpha ln k over well-populated classes."""
    use = (profile.count >= min_bin) & (profile.clustering > 0) & (profile.k > 0)
    if use.sum() < 3:
        raise InsufficientDataError(f"{int(use.sum())} usable degree classes, need 3")
    lx = np.log(profile.k[use].astype(np.float64))
    ly = np.log(profile.clustering[use])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(((ly - ly.mean()) ** 2).sum())
    ss_res = float((resid ** 2).sum())
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return ClusteringFit(float(math.exp(intercept)), float(-slope), r2)


def ego_tail_exponent(gamma, alpha):
    """Tail exponent (gamma + 1 - alpha) / (2 - alpha) of the per-vertex <d_u^v>_ego distribution.

    Works on floats or exact types (Fraction) alike.
    """
    if alpha >= 2:
        raise ValueError("change of variables degenerate at alpha >= 2")
    return (gamma + 1 - alpha) / (2 - alpha)


def predicted_mean_ego_distribution(vs: VertexStats):
    """Weighted multiset of C_u (d_u - 1) with weight d_u, over non-isolated vertices."""
    ok = vs.degree > 0
    values = 2.0 * vs.triangles[ok] / vs.degree[ok]
    return values, vs.degree[ok].astype(np.int64)


def c_ego_rand(c_glo: float) -> float:
    """Ego clustering expected from independent triangle closure: 2c - c^2."""
    if not 0.0 <= c_glo <= 1.0:
        raise ValueError("c_glo must lie in [0, 1]")
    return 2.0 * c_glo - c_glo * c_glo


def _weighted(values, weights):
    v = np.asarray(values, dtype=np.float64)
    if v.size == 0:
        raise ValueError("empty sample")
    w = np.ones(len(v)) if weights is None else np.asarray(weights, dtype=np.float64)
    if len(w) != len(v):
        raise ValueError("weights do not match values")
    order = np.argsort(v, kind="stable")
    return v[order], w[order]


def ccdf(values, weights=None):
    """Distinct sorted values and P(X >= value)."""
    v, w = _weighted(values, weights)
    keep = w > 0
    v, w = v[keep], w[keep]
    if v.size == 0:
        raise ValueError("empty sample")
    uniq, first = np.unique(v, return_index=True)
    mass_before = np.concatenate(([0.0], np.cumsum(w)))[first]
    total = mass_before[-1] + w[first[-1]:].sum()
    return uniq, 1.0 - mass_before / total


def _ecdf_at(sorted_v, cum_w, points):
    idx = np.searchsorted(sorted_v, points, side="right")
    return np.where(idx > 0, cum_w[np.maximum(idx - 1, 0)], 0.0) / cum_w[-1]


def ks_distance(a, b, weights_a=None, weights_b=None) -> float:
    """Sup-norm distance between two (weighted) empirical CDFs."""
    va, wa = _weighted(a, weights_a)
    vb, wb = _weighted(b, weights_b)
    ca, cb = np.cumsum(wa), np.cumsum(wb)
    pts = np.union1d(va, vb)
    return float(np.max(np.abs(_ecdf_at(va, ca, pts) - _ecdf_at(vb, cb, pts))))
