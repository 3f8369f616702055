"""Superpotential families of the translated-parameter type.

A family bundles the affine part W0(x, m) = k0(x) + m*k1(x) with the two
log-derivative corrections W1+(x, m) and W1-(x, m), their analytic
x-derivatives, the non-singularity predicate and pole bookkeeping.  Instances
are immutable, every evaluation is a pure vectorised function of x, and the
complex PT-symmetric family shares all code paths (real families simply
return float64 arrays whose cast to complex has an exactly zero imaginary
part).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .errors import InvalidParameterError, PoleError, UsageError

DEFAULT_POLE_RADIUS = 1e-3

# Window growth on infinite domain sides stops once |W| exceeds this cap or
# evaluation stops being finite.  The remainder check subtracts V = W^2
# values, whose rounding noise is eps * W_edge^2; the cap keeps that noise
# three decades under the 1e-9 flatness tolerance while windows still reach
# far into the asymptotic region.
_EDGE_W_CAP = 1e2
_EDGE_X_CAP = 1e6
_TANH_GAMMA = 0.995


class Verdict(NamedTuple):
    valid: bool
    violated: str | None


@dataclass(frozen=True)
class ParamPoint:
    """Numeric values for the family constants plus the translated parameter m."""

    m: float
    c: float | None = None
    beta: float | None = None
    d: float | None = None
    omega: float | None = None
    B: float | None = None
    ell: int | None = None

    _CONSTANTS = ("c", "beta", "d", "omega", "B", "ell")

    def __post_init__(self):
        for name in ("m", "c", "beta", "d", "omega", "B"):
            v = getattr(self, name)
            if v is not None and not math.isfinite(float(v)):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.ell is not None and (int(self.ell) != self.ell or self.ell < 0):
            raise ValueError(f"ell must be a nonnegative integer, got {self.ell!r}")

    def constants(self) -> dict:
        return {
            k: getattr(self, k) for k in self._CONSTANTS if getattr(self, k) is not None
        }

    def to_dict(self) -> dict:
        return {"m": self.m, **self.constants()}

    def with_m(self, m: float) -> "ParamPoint":
        return dataclasses.replace(self, m=float(m))


@dataclass(frozen=True)
class GridSpec:
    """How to lay out verification abscissae inside a family's domain.

    boundary_margin is a fraction of the width for finite domains and an
    absolute inset next to a finite endpoint of a half-infinite domain.
    mapping applies to infinite domains only; "linear" is silently upgraded
    to the tanh compression there because an infinite line has no linear
    layout.
    """

    n_points: int = 512
    boundary_margin: float = 0.05
    pole_exclusion_radius: float = DEFAULT_POLE_RADIUS
    mapping: str = "auto"

    def __post_init__(self):
        if self.n_points < 16:
            raise ValueError("n_points must be >= 16")
        if not (0.0 < self.boundary_margin < 0.5):
            raise ValueError("boundary_margin must lie in (0, 0.5)")
        if self.pole_exclusion_radius <= 0.0:
            raise ValueError("pole_exclusion_radius must be > 0")
        if self.mapping not in ("auto", "linear", "tanh"):
            raise ValueError(f"unknown mapping {self.mapping!r}")


def _quiet(fn):
    """Silence IEEE warnings inside evaluators: intermediate overflow at deep
    asymptotic points (1/sinh^2 underflowing through inf) is expected and
    benign; genuine NaNs still propagate and fail verdicts loudly."""

    def wrapped(*args):
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            return fn(*args)

    wrapped._quiet_wrapped = True
    return wrapped


@dataclass(frozen=True)
class SuperpotentialFamily:
    """Evaluation contract for one family at fixed constants.

    The callables are closures over the constants; m stays a call argument
    because every check sweeps it.  ``w1minus`` is always its own transcribed
    formula rather than ``w1plus`` at m - 1, so the translation identity is a
    genuine two-route check.  ``denom_plus``/``denom_minus`` expose the gauge
    denominators D with W1 = D'/D.
    """

    name: str
    tag: str
    domain: tuple[float, float]
    params: ParamPoint
    is_real: bool
    k0: Callable
    k0_deriv: Callable
    k1: Callable
    k1_deriv: Callable
    w1plus: Callable
    w1plus_deriv: Callable
    w1minus: Callable
    w1minus_deriv: Callable
    denom_plus: Callable
    denom_minus: Callable
    validity_fn: Callable[[float], Verdict] = field(repr=False, default=None)
    poles_fn: Callable[[float], tuple] = field(repr=False, default=None)
    scan_clear_fn: Callable[[float], bool] = field(repr=False, default=None)

    _EVALUATORS = (
        "k0", "k0_deriv", "k1", "k1_deriv",
        "w1plus", "w1plus_deriv", "w1minus", "w1minus_deriv",
        "denom_plus", "denom_minus",
    )

    def __post_init__(self):
        for fname in self._EVALUATORS:
            fn = getattr(self, fname)
            if not getattr(fn, "_quiet_wrapped", False):
                object.__setattr__(self, fname, _quiet(fn))

    def w0(self, x, m):
        return self.k0(x) + m * self.k1(x)

    def w0_deriv(self, x, m):
        return self.k0_deriv(x) + m * self.k1_deriv(x)

    def W(self, x, m):
        return self.w0(x, m) + self.w1plus(x, m) - self.w1minus(x, m)

    def W_deriv(self, x, m):
        return self.w0_deriv(x, m) + self.w1plus_deriv(x, m) - self.w1minus_deriv(x, m)

    def validity(self, m: float) -> Verdict:
        if self.validity_fn is None:
            return Verdict(True, None)
        return self.validity_fn(m)

    def poles(self, m: float) -> tuple:
        """x positions of all denominator roots inside the domain at this m."""
        if self.poles_fn is None:
            return ()
        return self.poles_fn(m)

    def scan_clear(self, m: float) -> bool:
        """Independent numeric root scan: True when no offending root found."""
        if self.scan_clear_fn is None:
            return True
        return self.scan_clear_fn(m)


def _as_x(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def eval_w(family: SuperpotentialFamily, x, m: float | None = None,
           pole_radius: float = DEFAULT_POLE_RADIUS):
    """W(x, m) as complex, guarding a pole_radius neighbourhood of each pole."""
    return _eval_guarded(family, x, m, pole_radius, family.W)


def eval_w_deriv(family: SuperpotentialFamily, x, m: float | None = None,
                 pole_radius: float = DEFAULT_POLE_RADIUS):
    """dW/dx assembled from the analytic component derivatives."""
    return _eval_guarded(family, x, m, pole_radius, family.W_deriv)


def _eval_guarded(family, x, m, pole_radius, fn):
    m = family.params.m if m is None else float(m)
    xs, scalar = _as_x(x)
    lo, hi = family.domain
    if np.any(xs <= lo) or np.any(xs >= hi):
        raise UsageError(f"x outside the open domain ({lo}, {hi}) of {family.name}")
    for root in family.poles(m):
        dist = np.abs(xs - root)
        if np.any(dist < pole_radius):
            bad = float(np.asarray(xs)[dist < pole_radius].flat[0])
            raise PoleError(bad, root)
    out = np.asarray(fn(xs, m), dtype=np.complex128)
    return complex(out[()]) if scalar else out


def _edge_ok(family, m_values, x_edge: float) -> bool:
    xs = np.asarray([x_edge])
    try:
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            for m in m_values:
                w = family.W(xs, m)
                wd = family.W_deriv(xs, m)
                if not (np.all(np.isfinite(w)) and np.all(np.isfinite(wd))):
                    return False
                if np.max(np.abs(w)) > _EDGE_W_CAP:
                    return False
    except (PoleError, FloatingPointError, ValueError):
        return False
    return True


def _expand_edge(family, m_values, start: float, sign: float) -> float:
    """Largest |edge| in a doubling sequence that still evaluates cleanly."""
    edge = start
    good = None
    for _ in range(40):
        if abs(edge) > _EDGE_X_CAP:
            break
        if _edge_ok(family, m_values, sign * edge):
            good = edge
            edge *= 2.0
        else:
            break
    if good is None:
        edge = start / 2.0
        while edge > 1e-3:
            if _edge_ok(family, m_values, sign * edge):
                return edge
            edge /= 2.0
        raise InvalidParameterError(
            "evaluable window", f"{family.name}: no evaluable window edge found"
        )
    return good


def _tanh_points(a: float, b: float, n: int, symmetric: bool,
                 dense_end: str = "lo") -> np.ndarray:
    scale = float(np.arctanh(_TANH_GAMMA))
    if symmetric:
        t = np.linspace(-_TANH_GAMMA, _TANH_GAMMA, n)
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        return mid + half * np.arctanh(t) / scale
    t = np.linspace(0.0, _TANH_GAMMA, n)
    if dense_end == "lo":
        return a + (b - a) * np.arctanh(t) / scale
    return (b - (b - a) * np.arctanh(t) / scale)[::-1]


def make_grid(family: SuperpotentialFamily, spec: GridSpec | None = None,
              m_values=None, exclude_poles: bool = True) -> np.ndarray:
    """Verification abscissae strictly inside the family's domain.

    Validity is enforced for every m in m_values (raising
    InvalidParameterError naming the violated inequality), infinite sides are
    compressed through x = a + L*atanh(u), and every point keeps
    pole_exclusion_radius distance from every detected denominator root of
    every requested m.
    """
    spec = spec or GridSpec()
    if m_values is None:
        m_values = (family.params.m,)
    m_values = tuple(float(m) for m in m_values)
    for m in m_values:
        verdict = family.validity(m)
        if not verdict.valid:
            raise InvalidParameterError(
                verdict.violated,
                f"{family.tag}: m = {m} violates {verdict.violated}",
            )

    lo, hi = family.domain
    lo_inf, hi_inf = math.isinf(lo), math.isinf(hi)
    margin = spec.boundary_margin

    if not lo_inf and not hi_inf:
        a = lo + margin * (hi - lo)
        b = hi - margin * (hi - lo)
        layout, symmetric, dense_end = "linear", True, "lo"
    elif not lo_inf:
        a = lo + margin
        b = _expand_edge(family, m_values, max(2.0 * a, a + 1.0), +1.0)
        layout, symmetric, dense_end = "tanh", False, "lo"
    elif not hi_inf:
        b = hi - margin
        a = -_expand_edge(family, m_values, max(2.0 * abs(b), abs(b) + 1.0), -1.0)
        layout, symmetric, dense_end = "tanh", False, "hi"
    else:
        b = _expand_edge(family, m_values, 1.0, +1.0)
        a = -_expand_edge(family, m_values, 1.0, -1.0)
        layout, symmetric, dense_end = "tanh", True, "lo"

    poles: list[float] = []
    if exclude_poles:
        for m in m_values:
            poles.extend(family.poles(m))

    n_gen = spec.n_points
    points = np.empty(0)
    for _ in range(4):
        if layout == "linear":
            points = np.linspace(a, b, n_gen)
        else:
            points = _tanh_points(a, b, n_gen, symmetric, dense_end)
        if poles:
            keep = np.ones(points.shape, dtype=bool)
            for p in poles:
                keep &= np.abs(points - p) >= spec.pole_exclusion_radius
            points = points[keep]
        if points.size >= spec.n_points:
            break
        n_gen += 2 * (spec.n_points - points.size) + 8
    if points.size > spec.n_points:
        idx = np.floor(np.linspace(0.0, points.size - 1e-9, spec.n_points)).astype(int)
        points = points[idx]
    return points


PERTURBATION_MODES = (
    "wminus-slope",    # W1- += size*x : breaks the translation relation
    "wplus-slope",     # W1+ += size*x : breaks it from the other side
    "wminus-offset",   # W1- += size   : value-only translation defect
    "paired-mx-slope", # W1+- += size*(m resp. m-1)*x : translation intact,
                       #                 compatibility broken
    "k1-slope",        # k1 += size*x  : breaks the factorization constants
)


def with_perturbation(family: SuperpotentialFamily, mode: str,
                      size: float) -> SuperpotentialFamily:
    """A copy of the family with a controlled defect injected.

    Used by negative-control tests and the CLI's hidden perturbation hook;
    poles and validity are inherited unchanged (the injected terms are
    entire).
    """
    if mode not in PERTURBATION_MODES:
        raise UsageError(f"unknown perturbation mode {mode!r}")
    size = float(size)
    w1p, w1pd = family.w1plus, family.w1plus_deriv
    w1m, w1md = family.w1minus, family.w1minus_deriv
    k1, k1d = family.k1, family.k1_deriv

    if mode == "wminus-slope":
        patch = dict(
            w1minus=lambda x, m: w1m(x, m) + size * np.asarray(x, dtype=float),
            w1minus_deriv=lambda x, m: w1md(x, m) + size,
        )
    elif mode == "wplus-slope":
        patch = dict(
            w1plus=lambda x, m: w1p(x, m) + size * np.asarray(x, dtype=float),
            w1plus_deriv=lambda x, m: w1pd(x, m) + size,
        )
    elif mode == "wminus-offset":
        patch = dict(w1minus=lambda x, m: w1m(x, m) + size)
    elif mode == "paired-mx-slope":
        patch = dict(
            w1plus=lambda x, m: w1p(x, m) + size * m * np.asarray(x, dtype=float),
            w1plus_deriv=lambda x, m: w1pd(x, m) + size * m,
            w1minus=lambda x, m: w1m(x, m) + size * (m - 1.0) * np.asarray(x, dtype=float),
            w1minus_deriv=lambda x, m: w1md(x, m) + size * (m - 1.0),
        )
    else:
        patch = dict(
            k1=lambda x: k1(x) + size * np.asarray(x, dtype=float),
            k1_deriv=lambda x: k1d(x) + size,
        )
    return dataclasses.replace(family, name=f"{family.name}+{mode}@{size:g}", **patch)
