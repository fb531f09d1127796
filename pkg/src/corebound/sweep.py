"""Parameter sweeps over expected edge count, and numerical-breakdown scans.

A sweep fixes (k, r) and an *overhead* x (the vertex-to-edge ratio), then
walks the expected edge count e over an integer range with v = round(x * e)
and p = e / C(v, k).  Two scopes exist:

* ``local``  -- the quantities are subset-local: formation on all v vertices
  of a v-vertex instance (the e_u = u style experiments use overhead 1).
* ``global`` -- the quantities are whole-graph: the geometric bound on
  at-least-one-core, and peeling-based Monte Carlo.

Rows where e exceeds the number of candidate edges clamp p to 1 (such points
are still well defined); every computed value is emitted verbatim together
with its validity flag.

Breakdown detection per formula method follows two signals, whichever fires
first along increasing e: the value's validity flag, or a monotonicity
heuristic (the curves decrease once past their peak in the stable regime, so
a strict increase after having descended from the running maximum marks
numerical failure).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import montecarlo
from .global_prob import at_least_one_bound, interleaving_bounds
from .kernels import trial_seed
from .local_prob import connectivity_prob, covering_prob, interleaved_local_prob
from .numerics import ProbValue, choose

__all__ = [
    "FORMULA_METHODS",
    "SWEEP_METHODS",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "BreakdownDetector",
    "run_sweep",
    "find_breakdown",
]

FORMULA_METHODS = ("connectivity", "covering", "interleaved-lower", "interleaved-upper")
SWEEP_METHODS = FORMULA_METHODS + ("mc",)
SCOPES = ("local", "global")

# Relative slack for the monotonicity heuristic, so flat tails of equal
# floats do not fire on last-ulp noise.
_INCREASE_RTOL = 1e-9


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: methods evaluated on a range of expected edge counts."""

    k: int
    r: int
    overhead: float
    e_min: int
    e_max: int
    methods: tuple[str, ...]
    trials: int = 10_000
    seed: int = 0
    scope: str = "global"

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"k must be >= 2, got {self.k}")
        if self.r < 1:
            raise ValueError(f"r must be >= 1, got {self.r}")
        if self.overhead <= 0:
            raise ValueError(f"overhead must be positive, got {self.overhead}")
        if self.e_min > self.e_max or self.e_min < 1:
            raise ValueError(f"empty or invalid e range [{self.e_min}, {self.e_max}]")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in SWEEP_METHODS:
                raise ValueError(f"unknown method {m!r}; pick from {SWEEP_METHODS}")
        if self.scope not in SCOPES:
            raise ValueError(f"scope must be one of {SCOPES}, got {self.scope!r}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass
class SweepRow:
    e: int
    v: int
    p: float
    values: dict[str, ProbValue] = field(default_factory=dict)
    mc: montecarlo.McEstimate | None = None


@dataclass
class SweepResult:
    spec: SweepSpec
    rows: list[SweepRow]
    breakdown_at: dict[str, int | None]


def point_geometry(k: int, overhead: float, e: int) -> tuple[int, float]:
    """(v, p) for expected edge count e: v = round(overhead * e), p = e / C(v, k).

    Rounding is half-up so ties resolve identically everywhere.  p is clamped
    to 1 when e exceeds the candidate edge count (the e = u style scans start
    in that regime); C(v, k) = 0 gives p = 0.
    """
    v = max(1, int(math.floor(overhead * e + 0.5)))
    m = choose(v, k)
    p = min(1.0, e / m) if m > 0 else 0.0
    return v, p


def _formula_value(method: str, scope: str, v: int, p: float, k: int, r: int) -> ProbValue:
    if scope == "local":
        if method == "connectivity":
            return connectivity_prob(v, k, p)
        if method == "covering":
            return covering_prob(v, k, p, r)
        if method == "interleaved-lower":
            return interleaved_local_prob(v, k, p / r, r)
        if method == "interleaved-upper":
            return interleaved_local_prob(v, k, p, r)
    else:
        if method in ("connectivity", "covering"):
            return at_least_one_bound(v, p, k, r, method=method)
        if method == "interleaved-lower":
            return interleaving_bounds(v, p, k, r)[0]
        if method == "interleaved-upper":
            return interleaving_bounds(v, p, k, r)[1]
    raise ValueError(f"unknown formula method {method!r}")


def _mc_value(scope: str, v: int, p: float, k: int, r: int,
              trials: int, seed: int) -> montecarlo.McEstimate:
    if scope == "local":
        predicate = "connectivity" if r == 1 else "min-degree"
        return montecarlo.mc_local(v, k, p, r, predicate, trials, seed)
    return montecarlo.mc_global(v, k, p, r, trials, seed)


class BreakdownDetector:
    """Feed (e, value, valid) in increasing e; reports the first failing e.

    Fires on the first invalid value, or on a strict relative increase that
    happens strictly below the running maximum (i.e. after the curve has
    already descended from its peak).
    """

    def __init__(self) -> None:
        self.threshold: int | None = None
        self._prev: float | None = None
        self._run_max = -math.inf

    def push(self, e: int, value: float, valid: bool) -> None:
        if self.threshold is not None:
            return
        if not valid:
            self.threshold = e
            return
        if (self._prev is not None
                and value > self._prev * (1.0 + _INCREASE_RTOL) + 1e-300
                and self._prev < self._run_max):
            self.threshold = e
            return
        self._run_max = max(self._run_max, value)
        self._prev = value


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every requested method at every point of the sweep."""
    formula_methods = [m for m in spec.methods if m != "mc"]
    detectors = {m: BreakdownDetector() for m in formula_methods}
    rows: list[SweepRow] = []
    for e in range(spec.e_min, spec.e_max + 1):
        v, p = point_geometry(spec.k, spec.overhead, e)
        row = SweepRow(e=e, v=v, p=p)
        # interleaved-lower/upper share one pair of computations per point
        if "interleaved-lower" in formula_methods and "interleaved-upper" in formula_methods \
                and spec.scope == "global":
            lower, upper = interleaving_bounds(v, p, spec.k, spec.r)
            row.values["interleaved-lower"] = lower
            row.values["interleaved-upper"] = upper
        for m in formula_methods:
            if m not in row.values:
                row.values[m] = _formula_value(m, spec.scope, v, p, spec.k, spec.r)
        if "mc" in spec.methods:
            # stable per-point seed: rows keep their draws if the range changes
            row.mc = _mc_value(spec.scope, v, p, spec.k, spec.r,
                               spec.trials, trial_seed(spec.seed, e))
        if v >= spec.k:  # points below the smallest possible core are structural zeros
            for m in formula_methods:
                pv = row.values[m]
                detectors[m].push(e, pv.value, pv.valid)
        rows.append(row)
    return SweepResult(spec, rows, {m: detectors[m].threshold for m in formula_methods})


def find_breakdown(k: int, r: int, overhead: float, method: str,
                   scope: str = "local", cap: int = 500) -> int | None:
    """Scan e upward until the method's value breaks down; None if no failure
    at or below ``cap``.  Only formula methods can break down."""
    if method not in FORMULA_METHODS:
        raise ValueError(f"breakdown scan needs a formula method, got {method!r}")
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}, got {scope!r}")
    detector = BreakdownDetector()
    for e in range(1, cap + 1):
        v, p = point_geometry(k, overhead, e)
        if v < k:  # no core can exist yet; not part of the curve
            continue
        pv = _formula_value(method, scope, v, p, k, r)
        detector.push(e, pv.value, pv.valid)
        if detector.threshold is not None:
            return detector.threshold
    return None
