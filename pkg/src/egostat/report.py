"""Full pipeline and rendering of the three summary tables."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from ._backend import BACKEND
from .diameter import effective_diameter90
from .ego import (assortativity_ego, assortativity_global, clustering_ego,
                  ego_instance_summary, lower_median_from_hist, neighbor_degree_stats)
from .errors import EgostatError, UndefinedMetricError
from .fit import (c_ego_rand, ccdf, ego_tail_exponent, fit_clustering_powerlaw,
                  fit_degree_exponent, ks_distance, predicted_mean_ego_distribution)
from .graph import Graph
from .triangles import (analyze_triangles, average_edge_multiplicity, degree_profile,
                        edge_fourclique_counts, global_clustering)

LARGE_GRAPH_EDGES = 10**6
SIG_DIGITS = 6


def sig(x, digits=SIG_DIGITS):
    """Round floats to ``digits`` significant digits; pass ints, bools, None and strings through."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if x == 0 or not math.isfinite(x):
            return x
        return float(f"{x:.{digits - 1}e}")
    return x


@dataclass
class ReportBundle:
    dataset: str
    table1: dict
    table2: dict
    table3: dict
    fit: dict
    undefined: dict = field(default_factory=dict)
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ReportBundle":
        return cls(**json.loads(text))

    def flat(self):
        for section in ("table1", "table2", "table3", "fit"):
            for k, v in sorted(getattr(self, section).items()):
                yield f"{section}.{k}", v

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["metric", "value", "reason"])
        w.writerow(["dataset", self.dataset, ""])
        for key, v in self.flat():
            w.writerow([key, "" if v is None else _fmt(v), self.undefined.get(key, "")])
        return buf.getvalue()

    def to_markdown(self) -> str:
        t1, t2, t3 = self.table1, self.table2, self.table3
        name = self.dataset

        def row(*cells):
            return "| " + " | ".join(cells) + " |"

        def f(section, key, pct=False):
            v = getattr(self, section)[key]
            if v is None:
                return "n/a"
            if pct:
                return f"{100 * v:.6g}%"
            return _fmt(v)

        out = [
            "### Dataset description", "",
            row("Dataset", r"\|V\|", r"\|E\|", "90% Eff Diameter", "r_glo", "C_glo"),
            row(*["---"] * 6),
            row(name, f("table1", "n"), f("table1", "m"), f("table1", "eff_diameter90"),
                f("table1", "r_glo"), f("table1", "c_glo")),
            "", "### Degree distributions at global and ego network levels", "",
            row("Network", "med(d_u)", "<d_u>", f"<d_u>_nn ({t2['annd_definition']})",
                "<d_u^v>", "<d_u^v>_nn", "P_glo", "frac(d_u^v = 0)"),
            row(*["---"] * 8),
            row(name, f("table2", "median_degree"), f("table2", "mean_degree"), f("table2", "annd"),
                f("table2", "ego_mean_degree"), f("table2", "ego_annd"), f("table2", "p_glo"),
                f("table2", "frac_zero", pct=True)),
            "", "### Assortativities and clustering at global and ego network levels", "",
            row("Network", "P_glo", "C_glo", "C_ego^rand", "C_ego", "r_glo", "r_ego"),
            row(*["---"] * 7),
            row(name, f("table3", "p_glo"), f("table3", "c_glo"), f("table3", "c_ego_rand"),
                f("table3", "c_ego"), f("table3", "r_glo"), f("table3", "r_ego")),
        ]
        if self.undefined:
            out += ["", "Undefined metrics:"]
            out += [f"- {k}: {v}" for k, v in sorted(self.undefined.items())]
        return "\n".join(out) + "\n"


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


class _Collector:
    """Evaluates metrics, turning undefined ones into None plus a recorded reason."""

    def __init__(self):
        self.undefined = {}

    def __call__(self, key, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except EgostatError as exc:
            self.undefined[key] = getattr(exc, "reason", None) or str(exc)
            return None

    def skip(self, key, reason):
        self.undefined[key] = reason
        return None


def build_report(g: Graph, dataset="graph", seed=0, skip_4clique=False, skip_diameter=False,
                 annd_def="instance", diameter_sources=1000, force=False, provenance=None) -> ReportBundle:
    if annd_def not in ("vertex", "instance"):
        raise ValueError("annd_def must be 'vertex' or 'instance'")
    big = g.m > LARGE_GRAPH_EDGES and not force
    u = _Collector()
    vs, es = analyze_triangles(g)
    mult = es.multiplicity

    if skip_4clique or big:
        q = u.skip("table3.c_ego", "4-clique pass skipped")
        u.skip("table3.c_ego_excluding_low", "4-clique pass skipped")
    else:
        q = edge_fourclique_counts(g, mult)

    c_glo = u("table1.c_glo", global_clustering, vs)
    r_glo = u("table1.r_glo", lambda: assortativity_global(g).r)
    if skip_diameter or big:
        diam = u.skip("table1.eff_diameter90", "diameter skipped")
    else:
        diam = u("table1.eff_diameter90", effective_diameter90, g, diameter_sources, seed)
    table1 = {"n": g.n, "m": g.m, "eff_diameter90": diam, "r_glo": r_glo, "c_glo": c_glo}

    p_glo = 2 * g.m / (g.n * (g.n - 1)) if g.n > 1 else u.skip("table2.p_glo", "fewer than two vertices")
    summ = u("table2.ego_mean_degree", ego_instance_summary, g, vs, mult)
    nds = u("table2.annd", neighbor_degree_stats, g, mult)
    if nds is not None and nds.ego is None:
        u.skip("table2.ego_annd", "graph has no triangles")
    deg_hist = np.bincount(g.degrees) if g.n else None
    table2 = {
        "median_degree": lower_median_from_hist(deg_hist) if g.n else u.skip("table2.median_degree", "empty graph"),
        "mean_degree": 2 * g.m / g.n if g.n else u.skip("table2.mean_degree", "empty graph"),
        "annd_definition": annd_def,
        "annd": None if nds is None else (nds.vertex if annd_def == "vertex" else nds.instance),
        "annd_vertex": None if nds is None else nds.vertex,
        "annd_instance": None if nds is None else nds.instance,
        "ego_mean_degree": None if summ is None else summ.mean,
        "ego_median_degree": None if summ is None else summ.median,
        "ego_annd": None if nds is None else nds.ego,
        "p_glo": p_glo,
        "frac_zero": None if summ is None else summ.frac_zero,
    }
    if nds is None:
        for k in ("annd_vertex", "annd_instance", "ego_annd"):
            u.skip(f"table2.{k}", u.undefined["table2.annd"])
    if summ is None:
        for k in ("ego_median_degree", "frac_zero"):
            u.skip(f"table2.{k}", u.undefined["table2.ego_mean_degree"])

    table3 = {
        "p_glo": p_glo,
        "c_glo": c_glo,
        "c_ego_rand": None if c_glo is None else c_ego_rand(c_glo),
        "c_ego": None if q is None else u("table3.c_ego", clustering_ego, g, mult, q),
        "c_ego_excluding_low": None if q is None else u("table3.c_ego_excluding_low", clustering_ego, g, mult, q,
                                                        exclude_low_degree=True),
        "r_glo": r_glo,
        "r_ego": u("table3.r_ego", lambda: assortativity_ego(g, mult).r),
        "m_glo": u("table3.m_glo", average_edge_multiplicity, g, mult),
    }
    for k in ("p_glo", "c_glo", "r_glo"):
        src = "table2.p_glo" if k == "p_glo" else f"table1.{k}"
        if src in u.undefined:
            u.skip(f"table3.{k}", u.undefined[src])
    if c_glo is None:
        u.skip("table3.c_ego_rand", u.undefined["table1.c_glo"])

    fit = _fit_block(g, vs, mult, u)
    prov = {"tool_version": __version__, "seed": seed, "backend": BACKEND,
            "options": {"skip_4clique": skip_4clique or big, "skip_diameter": skip_diameter or big,
                        "annd_def": annd_def, "diameter_sources": diameter_sources}}
    prov.update(provenance or {})
    rnd = lambda d: {k: sig(v) for k, v in d.items()}
    return ReportBundle(dataset, rnd(table1), rnd(table2), rnd(table3), rnd(fit), u.undefined, prov)


def _fit_block(g, vs, mult, u):
    deg = g.degrees[g.degrees > 0]
    gfit = u("fit.gamma", fit_degree_exponent, deg) if len(deg) else u.skip("fit.gamma", "graph has no edges")
    cfit = u("fit.alpha", fit_clustering_powerlaw, degree_profile(g, vs))
    pos = mult[mult > 0]
    efit = u("fit.eta", fit_degree_exponent, pos) if len(pos) else u.skip("fit.eta", "graph has no triangles")
    pred = None
    if gfit is not None and cfit is not None:
        pred = u("fit.predicted_tail_exponent", ego_tail_exponent, gfit.exponent, cfit.alpha)
    else:
        u.skip("fit.predicted_tail_exponent", "gamma or alpha unavailable")
    ks_et = None
    vals, w = predicted_mean_ego_distribution(vs)
    keep = vals > 0
    if len(pos) and keep.any():
        ks_et = ks_distance(pos, vals[keep], None, w[keep])
    else:
        u.skip("fit.ks_ego_theory", "no positive ego instances")
    out = {
        "gamma": gfit and gfit.exponent, "gamma_xmin": gfit and gfit.xmin, "gamma_ks": gfit and gfit.ks,
        "alpha": cfit and cfit.alpha, "c0": cfit and cfit.c0, "alpha_r2": cfit and cfit.r2,
        "eta": efit and efit.exponent, "eta_xmin": efit and efit.xmin, "eta_ks": efit and efit.ks,
        "predicted_tail_exponent": pred,
        "eta_below_predicted": None if (efit is None or pred is None) else bool(efit.exponent < pred),
        "eta_below_gamma": None if (efit is None or gfit is None) else bool(efit.exponent <= gfit.exponent),
        "ks_ego_theory": ks_et,
    }
    for key, src in (("gamma_xmin", "gamma"), ("gamma_ks", "gamma"), ("c0", "alpha"), ("alpha_r2", "alpha"),
                     ("eta_xmin", "eta"), ("eta_ks", "eta")):
        if f"fit.{src}" in u.undefined:
            u.skip(f"fit.{key}", u.undefined[f"fit.{src}"])
    if out["eta_below_predicted"] is None:
        u.skip("fit.eta_below_predicted", "eta or predicted exponent unavailable")
    if out["eta_below_gamma"] is None:
        u.skip("fit.eta_below_gamma", "eta or gamma unavailable")
    return out


@dataclass
class Comparison:
    """CCDFs of global degrees (G), positive ego instance degrees (E) and the predicted multiset (T)."""

    grid: np.ndarray
    ccdf_global: np.ndarray
    ccdf_ego: np.ndarray
    ccdf_theory: np.ndarray
    ks_ego_theory: float
    top_decile_threshold: float
    ego_dominates_top_decile: bool

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["value", "ccdf_G", "ccdf_E", "ccdf_T"])
        for row in zip(self.grid, self.ccdf_global, self.ccdf_ego, self.ccdf_theory):
            w.writerow([_fmt(float(x)) for x in row])
        return buf.getvalue()

    def summary(self) -> dict:
        return {"ks_E_T": sig(self.ks_ego_theory),
                "top_decile_threshold": sig(self.top_decile_threshold),
                "ego_dominates_top_decile": self.ego_dominates_top_decile,
                "points": len(self.grid)}


def _ccdf_on(grid, values, weights=None):
    x, p = ccdf(values, weights)
    # P(X >= g) is the tail probability at the first observed value >= g
    idx = np.searchsorted(x, grid, side="left")
    padded = np.concatenate((p, [0.0]))
    return padded[idx]


def compare(g: Graph, vs=None, mult=None) -> Comparison:
    """Side-by-side CCDFs of global degrees, ego-instance degrees and the predicted multiset."""
    if g.m == 0:
        raise UndefinedMetricError("graph has no edges")
    if vs is None or mult is None:
        vs, es = analyze_triangles(g)
        mult = es.multiplicity
    deg = g.degrees[g.degrees > 0]
    pos = mult[mult > 0]
    if len(pos) == 0:
        raise UndefinedMetricError("no positive ego instance degrees (graph has no triangles)")
    vals, w = predicted_mean_ego_distribution(vs)
    keep = vals > 0
    vals, w = vals[keep], w[keep]
    grid = np.union1d(np.union1d(deg, pos), vals).astype(np.float64)
    cg, ce, ct = _ccdf_on(grid, deg), _ccdf_on(grid, pos), _ccdf_on(grid, vals, w)
    thr = float(np.quantile(deg, 0.9, method="lower"))
    pe = _ccdf_on(np.array([thr]), pos)[0]
    pg = _ccdf_on(np.array([thr]), deg)[0]
    return Comparison(grid, cg, ce, ct, ks_distance(pos, vals, None, w), thr, bool(pe >= pg))
