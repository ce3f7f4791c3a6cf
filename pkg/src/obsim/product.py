"""Product observations: testing the conjunction of several properties.

The product test for a meet of properties: make a non-deterministic choice
of one component test, perform it, and adopt its outcome as the outcome of
the conjunction. The choice makes the conjunction testable even when the
component tests are mutually incompatible, and it is the reason a system as
plain as a piece of wood can respond non-deterministically: the product of
non-burnability and floatability on dry intact wood answers yes exactly when
the choice fell on floatability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .core import (
    YES,
    Branch,
    NotDecidableError,
    ObservationProcess,
    Outcome,
    is_actual,
    PropertyDef,
)
from .exemplars import DRY_INTACT, FLOATABILITY, NON_BURNABILITY
from .randomness import DrawSource, TrialStream
from .stats import TrialReport, build_report

_WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class ProductObservation:
    """A set of component processes plus a choice distribution (uniform by
    default). All components must act on the same scenario variant."""

    components: tuple[ObservationProcess, ...]
    weights: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if not self.components:
            raise ValueError("ProductObservation needs at least one component")
        scenario = self.components[0].scenario
        for comp in self.components[1:]:
            if comp.scenario is not scenario:
                raise ValueError(
                    f"components mix scenarios: {scenario.__name__} vs {comp.scenario.__name__}"
                )
        if self.weights is not None:
            if len(self.weights) != len(self.components):
                raise ValueError("weights and components differ in length")
            if any(w < 0.0 for w in self.weights):
                raise ValueError("weights must be nonnegative")
            if abs(sum(self.weights) - 1.0) > _WEIGHT_TOL:
                raise ValueError(f"weights must sum to 1, got {sum(self.weights)!r}")

    @property
    def scenario(self) -> type:
        return self.components[0].scenario

    def effective_weights(self) -> tuple[float, ...]:
        if self.weights is not None:
            return self.weights
        n = len(self.components)
        return tuple(1.0 / n for _ in range(n))

    def choose(self, rng: DrawSource) -> int:
        """Draw a component index per the weights (one draw)."""
        r = rng.draw()
        acc = 0.0
        last = 0
        for i, w in enumerate(self.effective_weights()):
            acc += w
            last = i
            if r < acc:
                return i
        return last  # guard against float drift in the cumulative sum


def product_observe(
    prod: ProductObservation, state: object, rng: DrawSource
) -> tuple[Outcome, object, str]:
    """Choose a component, run it, adopt its outcome; the chosen component id
    is returned for audit."""
    chosen = prod.components[prod.choose(rng)]
    chosen.check_scenario(state)
    outcome, post = chosen.kernel(state, rng)
    return outcome, post, chosen.id


def product_analytic(prod: ProductObservation, state: object) -> float:
    """Weight-average of the component yes-probabilities."""
    weights = prod.effective_weights()
    total = 0.0
    for comp, w in zip(prod.components, weights):
        total += w * comp.analytic_prob(state)
    return total


def product_process(prod: ProductObservation, id: str | None = None) -> ObservationProcess:
    """Expose a product as an ordinary ObservationProcess."""
    have_analytic = all(c.analytic is not None for c in prod.components)
    have_branches = all(c.branches is not None for c in prod.components)

    def kernel(state, rng):
        outcome, post, _ = product_observe(prod, state, rng)
        return outcome, post

    def analytic(state):
        return product_analytic(prod, state)

    def branches(state) -> tuple[Branch, ...]:
        out = []
        for comp, w in zip(prod.components, prod.effective_weights()):
            if w <= 0.0:
                continue
            for b in comp.branches(state):
                out.append(Branch(b.outcome, b.post, w * b.prob))
        return tuple(out)

    return ObservationProcess(
        id=id or "product(" + ",".join(c.id for c in prod.components) + ")",
        scenario=prod.scenario,
        kernel=kernel,
        analytic=analytic if have_analytic else None,
        branches=branches if have_branches else None,
        posts_exact=all(c.posts_exact for c in prod.components),
        description="choose one component per the weights (one draw), then run it",
    )


def meet_actual(prod: ProductObservation, state: object) -> bool:
    """The meet (conjunction) is actual iff every component is actual, i.e.
    the product answers yes with certainty whatever the choice."""
    for comp in prod.components:
        if comp.analytic is None:
            raise NotDecidableError(f"component {comp.id!r} has no analytic yes-probability")
    return all(is_actual(PropertyDef(comp.id, comp), state) for comp in prod.components)


@dataclass(frozen=True)
class NdcReport:
    """Demonstration record for the non-deterministic choice argument."""

    trial_report: TrialReport
    meet_is_actual: bool
    component_deterministic: Mapping[str, bool]
    choice_counts: Mapping[str, int]


def ndc_theorem_demo(trials: int, seed: int) -> NdcReport:
    """Run product(non-burnability, floatability) on fresh dry intact wood.

    Each component is individually deterministic on that state, the meet is
    not actual, and the product's yes-frequency converges to 1/2: the system
    behaves non-deterministically exactly because the choice does.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    prod = ProductObservation((NON_BURNABILITY, FLOATABILITY))
    yes = 0
    counts = {c.id: 0 for c in prod.components}
    for i in range(trials):
        outcome, _post, chosen = product_observe(prod, DRY_INTACT, TrialStream(seed, i))
        if outcome is YES:
            yes += 1
        counts[chosen] += 1
    report = build_report(
        process_id="product(non-burnability,floatability)",
        state_desc=str(DRY_INTACT),
        trials=trials,
        yes=yes,
        analytic=product_analytic(prod, DRY_INTACT),
        seed=seed,
    )
    deterministic = {
        c.id: c.analytic_prob(DRY_INTACT) in (0.0, 1.0) for c in prod.components
    }
    return NdcReport(report, meet_actual(prod, DRY_INTACT), deterministic, counts)
