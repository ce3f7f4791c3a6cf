"""Sphere-and-elastic measurement machines and the snap-to-cavity ruler.

The two-outcome machine: a point particle sits on the surface of a sphere of
diameter L. An elastic band is stripped between the two antipodal points
p- = -(L/2) rho and p+ = +(L/2) rho. The particle falls orthogonally onto the
band, landing at signed distance (L/2) cos(gamma) from the midpoint (gamma is
the angle between the particle direction and rho). The band then breaks at a
hidden point drawn from its breakage profile; the particle is carried to p+
exactly when the break lands strictly below it (on the p- side), else to p-.

With a uniformly breakable band the yes-probability ("ends at p+") is

    P = (1 + cos gamma) / 2 = cos^2(gamma / 2),

the same two-outcome statistics as a spin-1/2 measurement at relative angle
gamma. A band breakable only at a fixed point makes the observation fully
deterministic; a band uniformly breakable only on its middle segment of
fractional width eps interpolates between the two regimes:

    P = clamp((1 + cos gamma / eps) / 2, 0, 1),

deterministic wherever |cos gamma| >= eps, irreducibly probabilistic inside.
Probabilities are scale-free, so break positions are kept as fractions of the
band length measured from the p- end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .core import NO, YES, Branch, ObservationProcess, Outcome, ScenarioMismatchError
from .randomness import DrawSource

_NORM_TOL = 1e-9


def _norm3(v) -> float:
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2])


def _check_unit(v, what: str) -> None:
    if abs(_norm3(v) - 1.0) > _NORM_TOL:
        raise ValueError(f"{what} must be a unit vector, got norm {_norm3(v)!r}")


def _neg(v):
    return (-v[0], -v[1], -v[2])


@dataclass(frozen=True)
class SpherePoint:
    """Particle state: a unit direction on the sphere surface."""

    direction: tuple[float, float, float]

    def __post_init__(self):
        _check_unit(self.direction, "SpherePoint.direction")

    def __str__(self) -> str:
        x, y, z = self.direction
        return f"sphere({x:.6g},{y:.6g},{z:.6g})"


@dataclass(frozen=True)
class UniformBreak:
    """Band uniformly breakable over its whole length."""

    def __str__(self) -> str:
        return "uniform"


@dataclass(frozen=True)
class PointBreak:
    """Band breakable at a single fixed point.

    ``position`` is the break point as a fraction of the band length from the
    p- end, in [0, 1].
    """

    position: float

    def __post_init__(self):
        if not 0.0 <= self.position <= 1.0:
            raise ValueError(f"PointBreak.position must be in [0, 1], got {self.position!r}")

    def __str__(self) -> str:
        return f"point({self.position:.6g})"


@dataclass(frozen=True)
class SegmentBreak:
    """Band uniformly breakable only on the middle segment of fractional
    width ``width``; width 1 behaves like UniformBreak, width 0 like
    PointBreak(0.5)."""

    width: float

    def __post_init__(self):
        if not 0.0 <= self.width <= 1.0:
            raise ValueError(f"SegmentBreak.width must be in [0, 1], got {self.width!r}")

    def __str__(self) -> str:
        return f"segment({self.width:.6g})"


BreakageProfile = Union[UniformBreak, PointBreak, SegmentBreak]


@dataclass(frozen=True)
class ElasticApparatus:
    """Measurement setup: band orientation, physical length, breakage profile."""

    orientation: tuple[float, float, float]
    length: float = 1.0
    profile: BreakageProfile = UniformBreak()

    def __post_init__(self):
        _check_unit(self.orientation, "ElasticApparatus.orientation")
        if not self.length > 0.0:
            raise ValueError(f"ElasticApparatus.length must be positive, got {self.length!r}")


def sphere_point_at(gamma: float, rho=(0.0, 0.0, 1.0), axis=(1.0, 0.0, 0.0)) -> SpherePoint:
    """Particle direction at angle ``gamma`` from ``rho``, tilted toward
    ``axis`` (orthonormalized against rho)."""
    _check_unit(rho, "rho")
    d = axis[0] * rho[0] + axis[1] * rho[1] + axis[2] * rho[2]
    e = (axis[0] - d * rho[0], axis[1] - d * rho[1], axis[2] - d * rho[2])
    n = _norm3(e)
    if n < 1e-12:
        raise ValueError("axis must not be parallel to rho")
    e = (e[0] / n, e[1] / n, e[2] / n)
    s, c = math.sin(gamma), math.cos(gamma)
    return SpherePoint((s * e[0] + c * rho[0], s * e[1] + c * rho[1], s * e[2] + c * rho[2]))


def _cos_between(u, rho) -> float:
    # exact endpoints first so post-states sit at cos = +/-1 bit-exactly
    if u == rho:
        return 1.0
    if u == _neg(rho):
        return -1.0
    c = u[0] * rho[0] + u[1] * rho[1] + u[2] * rho[2]
    return max(-1.0, min(1.0, c))


def _prob_from_cos(c: float, profile: BreakageProfile) -> float:
    if isinstance(profile, UniformBreak):
        return 0.5 * (1.0 + c)
    if isinstance(profile, PointBreak):
        return 1.0 if 0.5 * (1.0 + c) > profile.position else 0.0
    w = profile.width
    if w == 0.0:
        # degenerate middle-point band: the limit of the segment formula
        if c > 0.0:
            return 1.0
        if c < 0.0:
            return 0.0
        return 0.5
    return max(0.0, min(1.0, 0.5 * (1.0 + c / w)))


def _decide(c: float, profile: BreakageProfile, rng: DrawSource) -> Outcome:
    # yes iff the break lands strictly below the particle; ties resolve to no.
    # comparisons are kept in centered form (around the band midpoint) so the
    # deterministic regimes of the segment profile are exact in floats.
    if isinstance(profile, PointBreak):
        return YES if 0.5 * (1.0 + c) > profile.position else NO
    if isinstance(profile, UniformBreak):
        return YES if rng.draw() - 0.5 < 0.5 * c else NO
    return YES if (rng.draw() - 0.5) * profile.width < 0.5 * c else NO


def quantum_machine_prob(gamma: float, profile: BreakageProfile) -> float:
    """Closed-form yes-probability at angle ``gamma`` (radians, in [0, pi]).

    Uniform: (1 + cos gamma) / 2. Segment(eps): clamp((1 + cos gamma/eps)/2, 0, 1),
    with the eps = 0 limit 1 / 0 / 0.5 by sign of cos gamma. Point(x): 1 when the
    particle lands strictly above the break point, else 0 (ties to no).
    """
    if not 0.0 <= gamma <= math.pi:
        raise ValueError(f"gamma must be in [0, pi], got {gamma!r}")
    return _prob_from_cos(math.cos(gamma), profile)


def quantum_machine_observe(
    state: SpherePoint, apparatus: ElasticApparatus, rng: DrawSource
) -> tuple[Outcome, SpherePoint]:
    """One machine observation. Consumes one draw for uniform and segment
    profiles, none for a fixed break point. Post-state is the band endpoint
    the particle was carried to: +rho on yes, -rho on no."""
    if not isinstance(state, SpherePoint):
        raise ScenarioMismatchError(
            f"quantum machine acts on SpherePoint, got {type(state).__name__}"
        )
    rho = apparatus.orientation
    outcome = _decide(_cos_between(state.direction, rho), apparatus.profile, rng)
    return outcome, SpherePoint(rho if outcome is YES else _neg(rho))


def quantum_machine_process(apparatus: ElasticApparatus, id: str | None = None) -> ObservationProcess:
    """Bind an apparatus into an ObservationProcess over SpherePoint states."""
    rho = apparatus.orientation
    profile = apparatus.profile
    post_plus = SpherePoint(rho)
    post_minus = SpherePoint(_neg(rho))

    def kernel(state: SpherePoint, rng: DrawSource) -> tuple[Outcome, SpherePoint]:
        outcome = _decide(_cos_between(state.direction, rho), profile, rng)
        return outcome, post_plus if outcome is YES else post_minus

    def analytic(state: SpherePoint) -> float:
        return _prob_from_cos(_cos_between(state.direction, rho), profile)

    def branches(state: SpherePoint) -> tuple[Branch, ...]:
        p = analytic(state)
        out = []
        if p > 0.0:
            out.append(Branch(YES, post_plus, p))
        if p < 1.0:
            out.append(Branch(NO, post_minus, 1.0 - p))
        return tuple(out)

    return ObservationProcess(
        id=id or f"quantum-machine[{profile}]",
        scenario=SpherePoint,
        kernel=kernel,
        analytic=analytic,
        branches=branches,
        description=(
            "drop the particle onto the stripped band, wait for the hidden break, "
            "yes when it is carried to the + endpoint; one draw per call for "
            "uniform/segment profiles, zero for a fixed point"
        ),
    )


@dataclass(frozen=True)
class SawtoothRuler:
    """Cavity lattice along a line: centers at offset + k * pitch."""

    pitch: float = 1.0
    offset: float = 0.0

    def __post_init__(self):
        if not self.pitch > 0.0:
            raise ValueError(f"SawtoothRuler.pitch must be positive, got {self.pitch!r}")

    def center(self, k: int) -> float:
        return self.offset + k * self.pitch


@dataclass(frozen=True)
class LinePosition:
    """Horizontal coordinate of the line particle."""

    x: float

    def __post_init__(self):
        if not math.isfinite(self.x):
            raise ValueError(f"LinePosition.x must be finite, got {self.x!r}")

    def __str__(self) -> str:
        return f"line({self.x:.6g})"


def _nearest_cavity(ruler: SawtoothRuler, x: float) -> tuple[int, float]:
    """(lower cavity index, fractional offset in [0, 1))."""
    t = (x - ruler.offset) / ruler.pitch
    base = math.floor(t)
    return base, t - base


def sawtooth_observe(
    state: LinePosition, ruler: SawtoothRuler, rng: DrawSource
) -> tuple[int, LinePosition]:
    """Snap the particle into the nearest cavity; returns (cavity index,
    post-state at its center). Exactly midway (a tooth tip) a single fair
    draw picks either neighbour; otherwise no draws are consumed."""
    if not isinstance(state, LinePosition):
        raise ScenarioMismatchError(f"sawtooth acts on LinePosition, got {type(state).__name__}")
    base, frac = _nearest_cavity(ruler, state.x)
    if frac == 0.5:
        k = base + 1 if rng.draw() >= 0.5 else base
    elif frac > 0.5:
        k = base + 1
    else:
        k = base
    return k, LinePosition(ruler.center(k))


def sawtooth_position_process(
    ruler: SawtoothRuler, target: int, id: str | None = None
) -> ObservationProcess:
    """Yes/no wrapper: did the particle snap into cavity ``target``?"""

    def kernel(state: LinePosition, rng: DrawSource) -> tuple[Outcome, LinePosition]:
        k, post = sawtooth_observe(state, ruler, rng)
        return (YES if k == target else NO), post

    def analytic(state: LinePosition) -> float:
        base, frac = _nearest_cavity(ruler, state.x)
        if frac == 0.5:
            return 0.5 if target in (base, base + 1) else 0.0
        k = base + 1 if frac > 0.5 else base
        return 1.0 if k == target else 0.0

    def branches(state: LinePosition) -> tuple[Branch, ...]:
        base, frac = _nearest_cavity(ruler, state.x)
        if frac == 0.5:
            return tuple(
                Branch(YES if k == target else NO, LinePosition(ruler.center(k)), 0.5)
                for k in (base, base + 1)
            )
        k = base + 1 if frac > 0.5 else base
        return (Branch(YES if k == target else NO, LinePosition(ruler.center(k)), 1.0),)

    return ObservationProcess(
        id=id or f"sawtooth-position[{target}]",
        scenario=LinePosition,
        kernel=kernel,
        analytic=analytic,
        branches=branches,
        description=(
            "snap to the nearest cavity center, yes when it is the target cavity; "
            "one draw only at a tooth tip"
        ),
    )
