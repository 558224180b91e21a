"""Time sweeps of the correlation measures, sudden-birth detection, steering
windows, and the built-in demonstration panel parameter sets.

All sweeps evaluate the closed-form covariance pointwise, so identical inputs
produce bit-identical datasets regardless of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import covariance_closed_form
from .errors import InvalidInput
from .gaussian import (
    SteeringClass,
    classify_steering,
    renyi2_entanglement,
    steering_a_to_b,
    steering_b_to_a,
)
from .model import ReducedParams

#: gamma*t interval and resolution used by the panel datasets by default.
DEFAULT_GRID_STOP = 5.0
DEFAULT_GRID_POINTS = 1001

#: Refinement width (in gamma*t) for bisected birth times and window edges.
REFINE_TOL = 1e-8

MEASURE_NAMES = ("g_ab", "g_ba", "g_delta", "e2")


@dataclass(frozen=True)
class MeasureSample:
    """Correlation measures of the dynamical state at one scaled time."""

    gamma_t: float
    g_ab: float
    g_ba: float
    e2: float
    steering_class: SteeringClass

    @property
    def g_delta(self) -> float:
        """Steering asymmetry, recomputed so it can never drift out of sync."""
        return abs(self.g_ab - self.g_ba)


@dataclass(frozen=True)
class SteeringWindow:
    """Maximal interval of constant steering classification."""

    kind: SteeringClass
    start: float
    end: float

    def __post_init__(self):
        if not self.start < self.end:
            raise InvalidInput("window start must precede its end")


@dataclass(frozen=True)
class TimeSweep:
    """A measure series together with the parameters that generated it."""

    params: ReducedParams
    epsilon: float
    samples: tuple[MeasureSample, ...]

    @property
    def times(self) -> np.ndarray:
        return np.array([s.gamma_t for s in self.samples])

    def column(self, name: str) -> np.ndarray:
        if name not in MEASURE_NAMES:
            raise InvalidInput(f"unknown measure {name!r}")
        return np.array([getattr(s, name) for s in self.samples])


def default_grid() -> np.ndarray:
    return np.linspace(0.0, DEFAULT_GRID_STOP, DEFAULT_GRID_POINTS)


def evaluate_measures(rp: ReducedParams, gamma_t, epsilon=1e-9) -> MeasureSample:
    """All four measures plus the steering class at a single scaled time."""
    cm = covariance_closed_form(rp, gamma_t)
    return MeasureSample(
        gamma_t=float(gamma_t),
        g_ab=steering_a_to_b(cm),
        g_ba=steering_b_to_a(cm),
        e2=renyi2_entanglement(cm),
        steering_class=classify_steering(cm, epsilon),
    )


def sweep_time(rp: ReducedParams, grid, epsilon=1e-9) -> TimeSweep:
    """One sample per grid point, deterministic in grid order."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or len(grid) == 0:
        raise InvalidInput("grid must be a non-empty 1-d sequence")
    if len(grid) > 1 and not np.all(np.diff(grid) > 0.0):
        raise InvalidInput("grid must be strictly increasing")
    samples = tuple(evaluate_measures(rp, t, epsilon) for t in grid)
    return TimeSweep(rp, epsilon, samples)


def _measure_at(rp: ReducedParams, gamma_t: float, which: str) -> float:
    cm = covariance_closed_form(rp, gamma_t)
    if which == "g_ab":
        return steering_a_to_b(cm)
    if which == "g_ba":
        return steering_b_to_a(cm)
    if which == "g_delta":
        return abs(steering_a_to_b(cm) - steering_b_to_a(cm))
    if which == "e2":
        return renyi2_entanglement(cm)
    raise InvalidInput(f"unknown measure {which!r}")


def _bisect_crossing(rp, which, epsilon, t_lo, t_hi, tol):
    """Locate the epsilon-crossing of a measure inside (t_lo, t_hi]."""
    f_lo = _measure_at(rp, t_lo, which) - epsilon
    f_hi = _measure_at(rp, t_hi, which) - epsilon
    if f_lo * f_hi > 0.0:  # no sign change; caller guaranteed one, keep the grid edge
        return t_hi
    while t_hi - t_lo > tol:
        mid = 0.5 * (t_lo + t_hi)
        if (_measure_at(rp, mid, which) - epsilon) * f_lo > 0.0:
            t_lo = mid
        else:
            t_hi = mid
    return 0.5 * (t_lo + t_hi)


def detect_birth(sweep: TimeSweep, which: str, refine_tol=REFINE_TOL):
    """First scaled time at which a measure exceeds the sweep's epsilon.

    Grid detection refined by bisection on the closed form; None when the
    measure never comes alive on the grid.
    """
    values = sweep.column(which)
    times = sweep.times
    above = np.nonzero(values > sweep.epsilon)[0]
    if len(above) == 0:
        return None
    idx = int(above[0])
    if idx == 0:
        return float(times[0])
    return float(
        _bisect_crossing(
            sweep.params, which, sweep.epsilon, times[idx - 1], times[idx], refine_tol
        )
    )


def _boundary_time(sweep: TimeSweep, i: int, refine_tol) -> float:
    """Refine the class-change boundary between grid samples i and i+1.

    At a change at least one steering measure flips across epsilon; the
    boundary is the earliest such crossing.
    """
    lo, hi = sweep.samples[i], sweep.samples[i + 1]
    crossings = []
    for which in ("g_ab", "g_ba"):
        if (getattr(lo, which) > sweep.epsilon) != (getattr(hi, which) > sweep.epsilon):
            crossings.append(
                _bisect_crossing(
                    sweep.params, which, sweep.epsilon,
                    lo.gamma_t, hi.gamma_t, refine_tol,
                )
            )
    return min(crossings) if crossings else 0.5 * (lo.gamma_t + hi.gamma_t)


def steering_windows(sweep: TimeSweep, refine_tol=REFINE_TOL):
    """Maximal runs of constant steering class covering the grid span.

    Interior boundaries are refined by bisection on the classifying measures;
    the first window starts at the grid start and the last one is truncated
    by the grid end.
    """
    samples = sweep.samples
    if len(samples) < 2:
        raise InvalidInput("need at least two samples to build windows")
    windows = []
    run_start = samples[0].gamma_t
    run_kind = samples[0].steering_class
    for i in range(len(samples) - 1):
        if samples[i + 1].steering_class is run_kind:
            continue
        edge = _boundary_time(sweep, i, refine_tol)
        windows.append(SteeringWindow(run_kind, run_start, edge))
        run_start = edge
        run_kind = samples[i + 1].steering_class
    windows.append(SteeringWindow(run_kind, run_start, samples[-1].gamma_t))
    return tuple(windows)


def _panel_params(c1, c2, nth1, nth2, r):
    return ReducedParams(c1=c1, c2=c2, nth1=nth1, nth2=nth2, r=r,
                         gamma=2.0 * math.pi * 140.0)


#: Built-in demonstration panels at cooperativities (15, 35): the "2" series
#: varies the thermal occupations at squeezing r = 1, the "3" series varies
#: the squeezing at occupations (1, 1).
PANEL_PARAMS = {
    "2a": _panel_params(15.0, 35.0, 0.5, 1.0, 1.0),
    "2b": _panel_params(15.0, 35.0, 1.0, 0.5, 1.0),
    "2c": _panel_params(15.0, 35.0, 1.0, 1.2, 1.0),
    "2d": _panel_params(15.0, 35.0, 1.0, 1.5, 1.0),
    "3a": _panel_params(15.0, 35.0, 1.0, 1.0, 0.1),
    "3b": _panel_params(15.0, 35.0, 1.0, 1.0, 0.5),
    "3c": _panel_params(15.0, 35.0, 1.0, 1.0, 1.0),
    "3d": _panel_params(15.0, 35.0, 1.0, 1.0, 1.1),
    "3-inset": _panel_params(15.0, 35.0, 1.0, 1.0, 1.7),
}


def figure_panels(panel: str, grid=None, epsilon=1e-9) -> TimeSweep:
    """Measure dataset of one built-in panel on the default (or given) grid."""
    try:
        rp = PANEL_PARAMS[panel]
    except KeyError:
        raise InvalidInput(
            f"unknown panel {panel!r}; choose from {', '.join(PANEL_PARAMS)}"
        ) from None
    if grid is None:
        grid = default_grid()
    return sweep_time(rp, grid, epsilon)
