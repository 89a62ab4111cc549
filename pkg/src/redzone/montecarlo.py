"""Seeded, deterministic Monte Carlo simulation of system lifetimes.

One replication samples a lifetime per unit, then advances an event queue in
which a unit fails exactly when its effective consumed life (lab credit +
aged shelf time + on-job time) crosses its sampled lifetime.  Between
maintenance events consumption is linear, so crossings are solved in closed
form; there is no integration step.  Simultaneous events are ordered
failure < replace < rotate, and equal-time failures break ties by slot
index.

Randomness comes from splitmix64 streams: 64-bit state advanced by the
golden-gamma increment 0x9E3779B97F4A7C15 and finalized by the standard
avalanche mix (xor-shift 30 / multiply 0xBF58476D1CE4E5B9 / xor-shift 27 /
multiply 0x94D049BB133111EB / xor-shift 31), period 2**64.  Per-replication
seeds are derived by mixing the master seed with the replication index, so
replications are independent of execution order and thread count.  Uniform
variates are ((u64 >> 11) + 0.5) * 2**-53, strictly inside (0, 1).  The
generator is implemented here, in integer arithmetic, so byte-identical
output does not depend on any library version; golden vectors are frozen in
the tests.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ValidationError
from .maintenance import FleetSnapshot, Policy, plan_type1, plan_type2
from .system import ACTIVE, FAILED, ON_SHELF, SystemConfig, Unit, effective_age

__all__ = [
    "SimConfig",
    "Event",
    "Trace",
    "MetricSummary",
    "Metrics",
    "EmpiricalHazardCurve",
    "SplitMix64",
    "derive_seed",
    "run_replication",
    "run_ensemble",
    "empirical_hazard",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, replication_index: int) -> int:
    """Per-replication seed: avalanche mix of master + index * golden gamma.

    Both the index step and the finalizer are bijections on 64-bit words, so
    distinct indices always yield distinct seeds for a fixed master.
    """
    if replication_index < 0:
        raise DomainError("replication_index must be >= 0")
    return _mix64((master_seed + replication_index * _GAMMA) & _MASK64)


class SplitMix64:
    """Minimal splitmix64 stream; see the module docstring for constants."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix64(self._state)

    def uniform(self) -> float:
        """A double strictly inside (0, 1): ((u64 >> 11) + 0.5) * 2**-53."""
        return ((self.next_u64() >> 11) + 0.5) * (2.0 ** -53)


@dataclass(frozen=True)
class SimConfig:
    """Ensemble parameters.

    ``horizon`` defaults to five mean lifetimes; replications still alive
    there are censored rather than simulated unboundedly.  ``dt_event`` is a
    reporting tolerance for age-budget crossings, not an integration step.
    """

    replications: int = 1000
    master_seed: int = 0
    horizon: float | None = None
    dt_event: float = 1e-6
    bin_width: float = 5.0
    workers: int = 1

    def __post_init__(self):
        if self.replications < 1:
            raise ValidationError("replications must be >= 1")
        if self.horizon is not None and not self.horizon > 0.0:
            raise ValidationError("horizon must be > 0")
        if not self.dt_event > 0.0:
            raise ValidationError("dt_event must be > 0")
        if not self.bin_width > 0.0:
            raise ValidationError("bin_width must be > 0")
        if self.workers < 1:
            raise ValidationError("workers must be >= 1")


@dataclass(frozen=True)
class Event:
    """One trace entry.  ``slot`` is an index, "shelf", or None."""

    time: float
    kind: str
    unit: str | None = None
    slot: int | str | None = None
    unit_out: str | None = None


@dataclass(frozen=True)
class Trace:
    """Ordered event log of one simulated system life.

    ``trdd`` is the first time fewer than two unfailed units occupy slots
    with no shelf unit able to restore redundancy; ``tdt`` the time of zero
    unfailed in-slot units (None when censored at the horizon).  ``dp`` is
    the observable shelf-empty decision point (rotation policy).
    """

    events: tuple[Event, ...]
    trdd: float | None
    tdt: float | None
    dp: float | None
    censored: bool
    end_time: float
    lifetimes: dict[str, float]
    seed: int

    @property
    def tdr(self) -> float | None:
        if self.tdt is None or self.dp is None:
            return None
        return self.tdt - self.dp


def _consumed(unit: Unit, alpha: float) -> float:
    return effective_age(unit, alpha)


def run_replication(config: SystemConfig, policy: Policy, seed: int, *,
                    horizon: float | None = None, n_slots: int = 2,
                    with_spare: bool = True, lifetime_model=None) -> Trace:
    """Simulate one system life and return its trace.

    ``n_slots``/``with_spare`` select the fleet: the production architecture
    is two slots plus a shelf spare; single-unit and no-spare fleets exist
    for oracle configurations.  ``lifetime_model`` overrides the configured
    lifetime distribution (anything with ``sample(u) -> weeks``).
    """
    if n_slots not in (1, 2):
        raise ValidationError("n_slots must be 1 or 2")
    model = lifetime_model if lifetime_model is not None else config.unit_lifetime
    if horizon is None:
        horizon = 5.0 * model.mean
    alpha = config.shelf_aging_factor
    rng = SplitMix64(seed)

    roster: list[Unit] = []
    slots: list[Unit | None] = []
    for i in range(n_slots):
        u = Unit(id=f"controller_{i + 1}",
                 lifetime=float(model.sample(rng.uniform())),
                 status=ACTIVE)
        roster.append(u)
        slots.append(u)
    shelf: Unit | None = None
    if with_spare:
        shelf = Unit(id=f"controller_{n_slots + 1}",
                     lifetime=float(model.sample(rng.uniform())),
                     lab_burnin_credit=config.lab_burnin,
                     status=ON_SHELF)
        roster.append(shelf)

    events: list[Event] = []
    trdd: float | None = None
    dp: float | None = None
    tdt: float | None = None
    censored = False
    t = 0.0
    rotation_index = 1

    def shelf_usable() -> bool:
        return shelf is not None and not shelf.failed

    # A spare can be dead on arrival only when the lab credit already
    # exhausts its sampled lifetime; record it for transparency.
    if shelf is not None and _consumed(shelf, alpha) >= shelf.lifetime:
        shelf.status = FAILED
        events.append(Event(0.0, "failure", shelf.id, "shelf"))

    while True:
        candidates: list[tuple[float, int, int]] = []  # (time, priority, slot/row)
        for i, u in enumerate(slots):
            if u is not None and not u.failed:
                candidates.append((t + (u.lifetime - _consumed(u, alpha)), 0, i))
        if shelf_usable() and alpha > 0.0:
            candidates.append((t + (shelf.lifetime - _consumed(shelf, alpha)) / alpha, 0, 99))
        if policy.kind == "type2":
            candidates.append((rotation_index * policy.rotation_period, 1, -1))
        if not candidates:
            break
        t_next = min(c[0] for c in candidates)
        if t_next > horizon:
            step = horizon - t
            for u in slots:
                if u is not None and not u.failed:
                    u.onjob_age += step
            if shelf_usable():
                shelf.shelf_age += step
            t = horizon
            censored = True
            break

        step = t_next - t
        for u in slots:
            if u is not None and not u.failed:
                u.onjob_age += step
        if shelf_usable():
            shelf.shelf_age += step
        t = t_next

        due = [c for c in candidates if c[0] == t_next]
        # failures first, ascending slot index, then the shelf row
        for _, prio, row in sorted(due, key=lambda c: (c[1], c[2])):
            if prio == 0 and row != 99:
                u = slots[row]
                if u is None or u.failed:
                    continue
                u.status = FAILED
                events.append(Event(t, "failure", u.id, row))
                action = plan_type1(
                    FleetSnapshot(t, tuple(slots), shelf, alpha), row)
                if action is not None:
                    incoming = shelf
                    incoming.status = ACTIVE
                    slots[row] = incoming
                    shelf = None
                    events.append(Event(t, "replace", incoming.id, row, unit_out=u.id))
            elif prio == 0 and row == 99:
                # the shelf unit may have been installed by an equal-time
                # replacement; its exhausted budget then fails it in a slot
                # on the next pass instead
                if shelf is not None and not shelf.failed:
                    shelf.status = FAILED
                    events.append(Event(t, "failure", shelf.id, "shelf"))
            else:
                action = plan_type2(FleetSnapshot(t, tuple(slots), shelf, alpha), t)
                rotation_index += 1
                if action is not None:
                    outgoing = slots[action.slot]
                    incoming = shelf
                    incoming.status = ACTIVE
                    outgoing.status = ON_SHELF
                    slots[action.slot] = incoming
                    shelf = outgoing
                    events.append(Event(t, "rotate", incoming.id, action.slot,
                                        unit_out=outgoing.id))

        alive = sum(1 for u in slots if u is not None and not u.failed)
        occupied = sum(1 for u in slots if u is not None)
        if trdd is None and alive < 2 and not shelf_usable():
            trdd = t
        if dp is None and policy.kind == "type2" and alive == n_slots == occupied \
                and shelf is None:
            dp = t
            events.append(Event(t, "dp"))
        if alive == 0:
            tdt = t
            events.append(Event(t, "system_death"))
            break

    lifetimes = {u.id: u.lifetime for u in roster}
    return Trace(events=tuple(events), trdd=trdd, tdt=tdt, dp=dp,
                 censored=censored, end_time=t, lifetimes=lifetimes, seed=seed)


@dataclass(frozen=True)
class MetricSummary:
    """Mean, sample standard deviation, and 95% interval of one metric."""

    mean: float
    std: float
    ci_low: float
    ci_high: float
    n: int


def _summarize(values: np.ndarray) -> MetricSummary | None:
    n = len(values)
    if n == 0:
        return None
    mean = float(np.mean(values))
    std = 0.0 if n < 2 else float(np.std(values, ddof=1))
    half = 1.96 * std / math.sqrt(n)
    return MetricSummary(mean=mean, std=std, ci_low=mean - half, ci_high=mean + half, n=n)


@dataclass(frozen=True, eq=False)
class EmpiricalHazardCurve:
    """Binned rate estimates: deaths per unit of at-risk system time."""

    midpoints: np.ndarray
    rates: np.ndarray
    deaths: np.ndarray
    exposure: np.ndarray


@dataclass(eq=False)
class Metrics:
    """Ensemble statistics over N replications.

    Value arrays hold the defined observations only (a censored replication
    has no total lifetime); ``censored_count`` reports how many were cut at
    the horizon and ``usable`` is False when every replication was.  The
    red-zone assessment is attached by the analysis layer.
    """

    n_replications: int
    censored_count: int
    usable: bool
    trdd: MetricSummary | None
    tdt: MetricSummary | None
    dp: MetricSummary | None
    tdr: MetricSummary | None
    trdd_values: np.ndarray
    tdt_values: np.ndarray
    dp_values: np.ndarray
    tdr_values: np.ndarray
    hazard: EmpiricalHazardCurve | None
    red_zone: object | None = None


def run_ensemble(config: SystemConfig, policy: Policy, sim: SimConfig, *,
                 n_slots: int = 2, with_spare: bool = True,
                 lifetime_model=None) -> Metrics:
    """Run N independent replications and aggregate in index order.

    Seeds come from :func:`derive_seed`, so the result is identical whether
    replications run serially or on a thread pool.
    """
    model = lifetime_model if lifetime_model is not None else config.unit_lifetime
    horizon = sim.horizon if sim.horizon is not None else 5.0 * model.mean

    def one(i: int) -> Trace:
        return run_replication(config, policy, derive_seed(sim.master_seed, i),
                               horizon=horizon, n_slots=n_slots,
                               with_spare=with_spare, lifetime_model=lifetime_model)

    if sim.workers > 1:
        with ThreadPoolExecutor(max_workers=sim.workers) as pool:
            traces = list(pool.map(one, range(sim.replications)))
    else:
        traces = [one(i) for i in range(sim.replications)]

    censored_count = sum(1 for tr in traces if tr.censored)
    usable = censored_count < len(traces)
    trdd_values = np.array([tr.trdd for tr in traces if tr.trdd is not None], dtype=float)
    tdt_values = np.array([tr.tdt for tr in traces if tr.tdt is not None], dtype=float)
    dp_values = np.array([tr.dp for tr in traces if tr.dp is not None], dtype=float)
    tdr_values = np.array([tr.tdr for tr in traces if tr.tdr is not None], dtype=float)
    hazard = empirical_hazard(traces, sim.bin_width) if usable else None
    return Metrics(
        n_replications=len(traces),
        censored_count=censored_count,
        usable=usable,
        trdd=_summarize(trdd_values),
        tdt=_summarize(tdt_values),
        dp=_summarize(dp_values),
        tdr=_summarize(tdr_values),
        trdd_values=trdd_values,
        tdt_values=tdt_values,
        dp_values=dp_values,
        tdr_values=tdr_values,
        hazard=hazard,
    )


def empirical_hazard(traces, bin_width: float) -> EmpiricalHazardCurve:
    """Binned hazard estimator: system deaths over at-risk system time.

    Bin j covers [j*w, (j+1)*w); its rate is (deaths in bin) / (total time
    systems spent at risk inside the bin).  Bins with zero at-risk time are
    omitted.  Needs at least one uncensored trace.
    """
    if not bin_width > 0.0:
        raise DomainError("bin_width must be > 0")
    traces = list(traces)
    deaths_t = np.array([tr.tdt for tr in traces if not tr.censored and tr.tdt is not None],
                        dtype=float)
    if len(deaths_t) == 0:
        raise DomainError("empirical_hazard needs at least one uncensored trace")
    ends = np.sort(np.array([tr.end_time for tr in traces], dtype=float))
    n_bins = int(math.ceil(ends[-1] / bin_width))
    edges = np.arange(n_bins + 1, dtype=float) * bin_width
    deaths, _ = np.histogram(deaths_t, bins=edges)

    # exposure_j = sum_i clip(end_i - e_j, 0, w), via prefix sums over sorted ends
    prefix = np.concatenate(([0.0], np.cumsum(ends)))
    lo = np.searchsorted(ends, edges[:-1], side="right")
    hi = np.searchsorted(ends, edges[1:], side="right")
    inside_sum = prefix[hi] - prefix[lo]
    inside_cnt = hi - lo
    above_cnt = len(ends) - hi
    exposure = (inside_sum - edges[:-1] * inside_cnt) + bin_width * above_cnt

    keep = exposure > 0.0
    mid = edges[:-1] + 0.5 * bin_width
    with np.errstate(divide="ignore", invalid="ignore"):
        rates = np.where(keep, deaths / np.where(keep, exposure, 1.0), np.nan)
    return EmpiricalHazardCurve(midpoints=mid[keep], rates=rates[keep],
                                deaths=deaths[keep].astype(float), exposure=exposure[keep])
