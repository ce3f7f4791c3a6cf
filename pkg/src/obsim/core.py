"""Outcomes, observation processes, properties, and replayable records.

An observation is a yes/no test: a kernel that consumes a scenario state and
a draw stream and produces a binary outcome plus a post-state. A property is
a named process together with the actuality rule: the property is actual in
a state exactly when the process answers yes with analytic probability 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

from .randomness import DrawSource, RecordingStream, SequenceStream


class Outcome(Enum):
    """Binary outcome of a completed observation. There is no third value."""

    YES = "yes"
    NO = "no"

    @property
    def is_yes(self) -> bool:
        return self is Outcome.YES

    def inverted(self) -> "Outcome":
        return Outcome.NO if self is Outcome.YES else Outcome.YES


YES = Outcome.YES
NO = Outcome.NO


class ObsimError(Exception):
    """Base class for library errors."""


class ScenarioMismatchError(ObsimError):
    """A process was applied to a state of the wrong scenario variant."""


class NotDecidableError(ObsimError):
    """The requested verdict needs analytics the process does not provide."""


@dataclass(frozen=True)
class Branch:
    """One outcome branch of a process at a given state.

    ``post`` is the exact post-state where the branch has a unique one;
    processes whose post-state family is a continuum supply a reachable
    representative and mark themselves ``posts_exact=False``.
    """

    outcome: Outcome
    post: object
    prob: float


Kernel = Callable[[object, DrawSource], "tuple[Outcome, object]"]


@dataclass(frozen=True)
class ObservationProcess:
    """A named observational procedure on one scenario variant.

    kernel        maps (state, draw stream) to (outcome, post-state); total on
                  states of ``scenario``; the number of draws consumed per call
                  is documented per process.
    analytic      optional closed-form yes-probability in [0, 1].
    branches      optional finite enumeration of outcome branches with exact
                  probabilities (see Branch for the post-state contract).
    repeat_probs  optional analytic answer for continuum post-state families:
                  the distinct yes-probabilities the process takes over all
                  states reachable via a yes outcome.
    """

    id: str
    scenario: type
    kernel: Kernel
    analytic: Optional[Callable[[object], float]] = None
    branches: Optional[Callable[[object], "tuple[Branch, ...]"]] = None
    posts_exact: bool = True
    repeat_probs: Optional[Callable[[object], "tuple[float, ...]"]] = None
    description: str = ""

    def check_scenario(self, state: object) -> None:
        if not isinstance(state, self.scenario):
            raise ScenarioMismatchError(
                f"process {self.id!r} acts on {self.scenario.__name__}, "
                f"got {type(state).__name__}"
            )

    def analytic_prob(self, state: object) -> float:
        if self.analytic is None:
            raise NotDecidableError(f"process {self.id!r} has no analytic yes-probability")
        self.check_scenario(state)
        return self.analytic(state)


@dataclass(frozen=True)
class PropertyDef:
    """A property: a name, its test process, and (optionally) the state-level
    fact that a yes outcome asserts.

    ``holds`` defaults to actuality (analytic yes-probability exactly 1).
    Processes that move the state to the very value they report, like the
    snap-to-cavity ruler, override it with the literal state predicate.
    """

    name: str
    process: ObservationProcess
    holds: Optional[Callable[[object], bool]] = None

    def holds_in(self, state: object) -> bool:
        if self.holds is not None:
            return self.holds(state)
        return self.process.analytic_prob(state) == 1.0


@dataclass(frozen=True)
class ObservationRecord:
    """Audit record of one observation: replaying the kernel on ``pre_state``
    with ``draws`` reproduces ``(outcome, post_state)`` bit-exactly."""

    process_id: str
    pre_state: object
    outcome: Outcome
    post_state: object
    draws: tuple[float, ...]
    index: int = 0


def observe(
    process: ObservationProcess,
    state: object,
    rng: DrawSource,
    index: int = 0,
) -> tuple[Outcome, object, ObservationRecord]:
    """Run one observation and return (outcome, post-state, audit record)."""
    process.check_scenario(state)
    recorder = RecordingStream(rng)
    outcome, post = process.kernel(state, recorder)
    record = ObservationRecord(process.id, state, outcome, post, tuple(recorder.draws), index)
    return outcome, post, record


def replay(process: ObservationProcess, record: ObservationRecord) -> tuple[Outcome, object]:
    """Re-run the kernel with the recorded draws."""
    return process.kernel(record.pre_state, SequenceStream(record.draws))


def verify_replay(process: ObservationProcess, record: ObservationRecord) -> bool:
    """True when the recorded draws reproduce the recorded outcome and post-state."""
    outcome, post = replay(process, record)
    return outcome is record.outcome and post == record.post_state


def is_actual(prop: PropertyDef, state: object) -> bool:
    """Actuality as certainty in principle: the analytic yes-probability is
    exactly 1. Sampled frequencies can refute but never certify this."""
    return prop.process.analytic_prob(state) == 1.0


def repeat_probabilities(process: ObservationProcess, state: object) -> tuple[float, ...]:
    """Analytic yes-probabilities of ``process`` over every state reachable
    from ``state`` via a yes outcome. Empty when yes is unreachable."""
    if process.analytic is None:
        raise NotDecidableError(f"process {process.id!r} has no analytic yes-probability")
    process.check_scenario(state)
    if process.repeat_probs is not None:
        if process.analytic(state) <= 0.0:
            return ()
        return tuple(process.repeat_probs(state))
    if process.branches is not None and process.posts_exact:
        return tuple(
            process.analytic(b.post)
            for b in process.branches(state)
            if b.outcome is YES and b.prob > 0.0
        )
    raise NotDecidableError(
        f"process {process.id!r}: yes-post-state family is not enumerable and no "
        "analytic repeat answer is declared"
    )


def repeat_yes_certain(process: ObservationProcess, state: object) -> bool:
    """True when every state reachable via a yes outcome would again answer
    yes with certainty. Vacuously true when yes is unreachable."""
    return all(p == 1.0 for p in repeat_probabilities(process, state))
