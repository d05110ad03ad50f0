"""Fit model parameters to coincidence histograms.

Objective: Poisson-weighted chi-square over all six traces. Search:
derivative-free Nelder-Mead simplex on transformed coordinates (logistic
between the bounds, in log space when the lower bound is positive), seeded
from a coarse multi-start grid. Synthetic data generation for recovery
studies lives here too.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .emission import (CorrelationSet, EmissionParams, TRACE_KEYS,
                       convolve_correlations, g2_traces)
from .cascade import CascadeParams

FITTABLE = ("k", "sigma", "gamma_s", "gamma_x", "gamma_xx", "p", "irf_fwhm")

DEFAULT_BOUNDS = {
    "k": (0.0, 1.0),
    "sigma": (0.05, 10.0),
    "gamma_s": (0.0, 5.0),
    "gamma_x": (0.05, 10.0),
    "gamma_xx": (0.05, 10.0),
    "p": (0.001, 5.0),
    "irf_fwhm": (0.0, 2.0),
}


@dataclass(frozen=True)
class FitSpec:
    free: tuple
    fixed: EmissionParams
    bounds: dict = field(default_factory=dict)
    tolerance: float = 1e-10
    max_evals: int = 4000

    def __post_init__(self):
        if not self.free:
            raise ValueError("free parameter set is empty")
        for name in self.free:
            if name not in FITTABLE:
                raise ValueError(f"unknown fit parameter {name!r}")
        for name, (lo, hi) in self.bounds.items():
            if not np.isfinite(lo) or not np.isfinite(hi) or lo >= hi:
                raise ValueError(f"bad bounds for {name}: ({lo}, {hi})")
            if name == "k" and (lo < 0.0 or hi > 1.0):
                raise ValueError("k bounds must lie within [0, 1]")

    def bounds_for(self, name):
        return self.bounds.get(name, DEFAULT_BOUNDS[name])


@dataclass
class FitResult:
    estimates: dict
    uncertainties: dict
    objective: float
    evals: int
    converged: bool
    start_objectives: tuple = ()


def apply_overrides(base, overrides):
    """EmissionParams with selected parameters replaced."""
    cas = base.cascade
    cas = CascadeParams(
        gamma_xx=overrides.get("gamma_xx", cas.gamma_xx),
        gamma_x=overrides.get("gamma_x", cas.gamma_x),
        gamma_s=overrides.get("gamma_s", cas.gamma_s),
        p=overrides.get("p", cas.p),
    )
    return EmissionParams(
        s_r=base.s_r,
        sigma=overrides.get("sigma", base.sigma),
        cascade=cas,
        k=overrides.get("k", base.k),
        irf_fwhm=overrides.get("irf_fwhm", base.irf_fwhm),
        quadrature_nodes=base.quadrature_nodes,
    )


def model_traces(params, tau_grid):
    """Convolved g2 traces on the data grid."""
    corr = g2_traces(params, tau_grid)
    if params.irf_fwhm > 0.0:
        corr = convolve_correlations(corr, params.irf_fwhm)
    return corr


def chi_square(params, data):
    """Poisson-weighted chi-square between model and counts.

    Per bin: (exposure * g2_model - counts)^2 / max(counts, 1).
    """
    if data.counts is None or data.counts_scale is None:
        raise ValueError("data carries no counts; fit needs a counts CSV")
    model = model_traces(params, data.tau_grid)
    total = 0.0
    for key in TRACE_KEYS:
        counts = data.counts[key]
        mu = data.counts_scale * model.traces[key]
        total += float(np.sum((mu - counts) ** 2 / np.maximum(counts, 1.0)))
    return total


# ---------------------------------------------------------------------------
# parameter transforms: unconstrained u <-> bounded physical value

def _to_physical(u, lo, hi, log_scale):
    s = 1.0 / (1.0 + np.exp(-u))
    if log_scale:
        return float(np.exp(np.log(lo) + (np.log(hi) - np.log(lo)) * s))
    return float(lo + (hi - lo) * s)


def _to_internal(value, lo, hi, log_scale):
    if log_scale:
        frac = (np.log(value) - np.log(lo)) / (np.log(hi) - np.log(lo))
    else:
        frac = (value - lo) / (hi - lo)
    frac = np.clip(frac, 1e-9, 1.0 - 1e-9)
    return float(np.log(frac / (1.0 - frac)))


def _transforms(spec):
    out = []
    for name in spec.free:
        lo, hi = spec.bounds_for(name)
        out.append((name, lo, hi, lo > 0.0))
    return out


def fit(data, spec):
    """Multi-start Nelder-Mead refinement of the free parameters."""
    transforms = _transforms(spec)
    evals = 0

    def objective(u):
        nonlocal evals
        evals += 1
        overrides = {name: _to_physical(ui, lo, hi, ls)
                     for ui, (name, lo, hi, ls) in zip(u, transforms)}
        return chi_square(apply_overrides(spec.fixed, overrides), data)

    # coarse multi-start grid: 3 quantile points per free parameter
    fracs = (0.15, 0.5, 0.85)
    axes = [[_to_internal(lo + f * (hi - lo) if not ls
                          else np.exp(np.log(lo) + f * (np.log(hi) - np.log(lo))),
                          lo, hi, ls) for f in fracs]
            for (name, lo, hi, ls) in transforms]
    starts = np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(axes), -1).T
    start_objs = np.array([objective(u) for u in starts])
    best_start = starts[int(np.argmin(start_objs))]

    res = scipy.optimize.minimize(
        objective, best_start, method="Nelder-Mead",
        options={"xatol": 1e-7, "fatol": spec.tolerance,
                 "maxfev": max(spec.max_evals - evals, 1),
                 "initial_simplex": _initial_simplex(best_start)})
    converged = bool(res.success)
    u_best = res.x
    estimates = {name: _to_physical(ui, lo, hi, ls)
                 for ui, (name, lo, hi, ls) in zip(u_best, transforms)}
    best_obj = float(res.fun)
    uncertainties = _curvature_uncertainties(data, spec, estimates, best_obj)
    return FitResult(estimates=estimates, uncertainties=uncertainties,
                     objective=best_obj, evals=evals, converged=converged,
                     start_objectives=tuple(float(v) for v in start_objs))


def _initial_simplex(u0):
    n = len(u0)
    simplex = np.tile(u0, (n + 1, 1))
    for i in range(n):
        simplex[i + 1, i] += 0.25
    return simplex


def _curvature_uncertainties(data, spec, estimates, best_obj):
    """1-sigma uncertainties from the second difference of chi-square.

    delta(chi2) = 1 at one standard deviation for a quadratic objective.
    """
    out = {}
    for name in spec.free:
        val = estimates[name]
        lo, hi = spec.bounds_for(name)
        h = max(1e-3 * (abs(val) + 1e-3), 1e-6)
        overrides = dict(estimates)
        vals = []
        for delta in (-h, 0.0, h):
            v = min(max(val + delta, lo), hi)
            overrides[name] = v
            vals.append(chi_square(apply_overrides(spec.fixed, overrides), data))
        curv = (vals[0] - 2.0 * vals[1] + vals[2]) / (h * h)
        out[name] = float(np.sqrt(2.0 / curv)) if curv > 0.0 else float("inf")
    return out


def synth_histogram(params, tau_grid, exposure_scale, seed):
    """Poisson counts with mean exposure_scale * g2 on the given grid."""
    if exposure_scale <= 0.0:
        raise ValueError("exposure_scale must be > 0")
    model = model_traces(params, tau_grid)
    rng = np.random.default_rng(seed)
    counts = {key: rng.poisson(exposure_scale * model.traces[key]).astype(float)
              for key in TRACE_KEYS}
    return CorrelationSet(tau_grid=np.asarray(tau_grid, dtype=float),
                          traces={k: counts[k] / exposure_scale
                                  for k in TRACE_KEYS},
                          counts=counts, counts_scale=float(exposure_scale))


def format_report(result, spec):
    """Plain-text fit report."""
    lines = ["fit report", "=========="]
    for name in spec.free:
        est = result.estimates[name]
        err = result.uncertainties[name]
        line = f"{name:10s} = {est:.6g} +- {err:.3g}"
        if name == "gamma_s" and est <= max(err, 1e-3):
            line += "   (consistent with no spin-scattering)"
        lines.append(line)
    lines.append(f"objective  = {result.objective:.6g}")
    lines.append(f"evals      = {result.evals}")
    lines.append(f"converged  = {result.converged}")
    return "\n".join(lines) + "\n"
