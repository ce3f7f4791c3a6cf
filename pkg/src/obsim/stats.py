"""Seedable Monte Carlo trial runner and statistical comparison helpers.

Trial i of a run always consumes the draw stream derived from
(master seed, i), so a report is a pure function of
(process, state, trials, seed, policy) and is byte-identical however many
worker threads execute it. Counts are exact integers; derived reals are
computed once from the totals.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from statistics import NormalDist
from typing import Mapping, Optional, Sequence

from .core import YES, ObservationProcess, observe
from .randomness import TrialStream, substream_seed


def wilson_interval(yes: int, trials: int, confidence: float) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion.

    Chosen over the normal approximation because it stays inside [0, 1] and
    behaves at the boundary counts that deterministic processes produce:
    yes = 0 pins the lower bound to 0, yes = trials pins the upper to 1.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    if not 0 <= yes <= trials:
        raise ValueError(f"yes count must be in [0, {trials}], got {yes!r}")
    if not 0.0 < confidence < 1.0:
        raise ValueError(f"confidence must be in (0, 1), got {confidence!r}")
    z = NormalDist().inv_cdf(0.5 + 0.5 * confidence)
    n = float(trials)
    p_hat = yes / n
    denom = 1.0 + z * z / n
    center = (p_hat + z * z / (2.0 * n)) / denom
    margin = (z / denom) * math.sqrt(p_hat * (1.0 - p_hat) / n + z * z / (4.0 * n * n))
    low = 0.0 if yes == 0 else max(0.0, center - margin)
    high = 1.0 if yes == trials else min(1.0, center + margin)
    return low, high


class ResetPolicy(Enum):
    FRESH = "fresh"        # re-prepare the initial state each trial
    EVOLVING = "evolving"  # feed the post-state forward (trajectory runs)


@dataclass(frozen=True)
class TrialReport:
    """Exact counts plus derived estimates for one batch of trials."""

    process_id: str
    state: str
    trials: int
    yes: int
    p_hat: float
    wilson_low: float
    wilson_high: float
    analytic: Optional[float]
    z_score: Optional[float]
    seed: int
    final_state: object = None
    records: Optional[tuple] = None


def build_report(
    process_id: str,
    state_desc: str,
    trials: int,
    yes: int,
    analytic: Optional[float],
    seed: int,
    final_state: object = None,
    records: Optional[tuple] = None,
) -> TrialReport:
    p_hat = yes / trials
    low, high = wilson_interval(yes, trials, 0.99)
    z = None
    if analytic is not None and 0.0 < analytic < 1.0:
        z = (p_hat - analytic) / math.sqrt(analytic * (1.0 - analytic) / trials)
    return TrialReport(
        process_id, state_desc, trials, yes, p_hat, low, high, analytic, z, seed,
        final_state, records,
    )


def _count_chunk(kernel, state, seed: int, start: int, stop: int) -> int:
    yes = 0
    for i in range(start, stop):
        outcome, _ = kernel(state, TrialStream(seed, i))
        if outcome is YES:
            yes += 1
    return yes


def run_trials(
    process: ObservationProcess,
    initial_state: object,
    trials: int,
    seed: int,
    policy: ResetPolicy = ResetPolicy.FRESH,
    workers: int = 1,
    collect_records: bool = False,
) -> TrialReport:
    """Run ``trials`` observations and report exact counts.

    FRESH re-prepares ``initial_state`` every trial and may fan out over
    worker threads (the report does not depend on the worker count).
    EVOLVING feeds each post-state forward and is inherently sequential.
    Record collection forces the sequential path.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    process.check_scenario(initial_state)

    analytic = None
    if process.analytic is not None and policy is ResetPolicy.FRESH:
        analytic = process.analytic(initial_state)

    records: list | None = [] if collect_records else None
    final_state: object = None
    yes = 0

    if policy is ResetPolicy.EVOLVING:
        state = initial_state
        for i in range(trials):
            if records is not None:
                outcome, state, rec = observe(process, state, TrialStream(seed, i), index=i)
                records.append(rec)
            else:
                outcome, state = process.kernel(state, TrialStream(seed, i))
            if outcome is YES:
                yes += 1
        final_state = state
    elif records is not None:
        for i in range(trials):
            outcome, _post, rec = observe(process, initial_state, TrialStream(seed, i), index=i)
            records.append(rec)
            if outcome is YES:
                yes += 1
    elif workers > 1:
        chunk = -(-trials // workers)
        bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda b: _count_chunk(process.kernel, initial_state, seed, b[0], b[1]),
                    bounds,
                )
            )
        yes = sum(parts)  # ordered exact integer reduction
    else:
        yes = _count_chunk(process.kernel, initial_state, seed, 0, trials)

    return build_report(
        process.id,
        str(initial_state),
        trials,
        yes,
        analytic,
        seed,
        final_state=final_state,
        records=tuple(records) if records is not None else None,
    )


@dataclass(frozen=True)
class SweepPoint:
    """One grid point: parameter labels plus the bound process and state."""

    params: "dict[str, float]"
    process: ObservationProcess
    state: object


@dataclass(frozen=True)
class SweepResult:
    points: tuple[SweepPoint, ...]
    reports: tuple[TrialReport, ...]
    chi_square: Optional[float]
    dof: int
    p_value: Optional[float]


def chi_square_against_analytic(
    reports: Sequence[TrialReport],
) -> tuple[Optional[float], int, Optional[float]]:
    """Goodness of fit of observed yes counts against the analytic values.

    Points with analytic p in {0, 1} carry zero expected variance and are
    excluded; they are asserted exactly elsewhere. One degree of freedom per
    remaining point (two cells each, fixed total).
    """
    terms = []
    for r in reports:
        p = r.analytic
        if p is None or p <= 0.0 or p >= 1.0:
            continue
        expected_yes = r.trials * p
        terms.append((r.yes - expected_yes) ** 2 / (expected_yes * (1.0 - p)))
    if not terms:
        return None, 0, None
    stat = math.fsum(terms)
    dof = len(terms)
    from scipy.stats import chi2  # deferred: keeps bare library imports light

    return stat, dof, float(chi2.sf(stat, dof))


def sweep(
    points: Sequence[SweepPoint],
    trials: int,
    seed: int,
    workers: int = 1,
) -> SweepResult:
    """Run every grid point at ``trials`` trials; point k uses the derived
    seed substream_seed(seed, k)."""
    if not points:
        raise ValueError("sweep grid must be nonempty")
    reports = tuple(
        run_trials(
            pt.process,
            pt.state,
            trials,
            substream_seed(seed, k),
            policy=ResetPolicy.FRESH,
            workers=workers,
        )
        for k, pt in enumerate(points)
    )
    stat, dof, p_value = chi_square_against_analytic(reports)
    return SweepResult(tuple(points), reports, stat, dof, p_value)


def estimator_status(yes: int, trials: int, analytic: float) -> str:
    """'ok' within 4 standard errors, 'flag' between 4 and 5, 'fail' beyond."""
    if analytic <= 0.0 or analytic >= 1.0:
        return "ok" if yes == round(trials * analytic) else "fail"
    se = math.sqrt(analytic * (1.0 - analytic) / trials)
    dev = abs(yes / trials - analytic)
    if dev <= 4.0 * se:
        return "ok"
    if dev <= 5.0 * se:
        return "flag"
    return "fail"
