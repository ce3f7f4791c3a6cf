"""
Ephemeral properties of a breaking elastic band
===============================================

Left-handedness must be re-created by every observation: break the longest
fragment, and whether the longer piece lands in the left hand is a fair coin
no matter what happened before. Fragmentation (a blind pick coming up
shorter than half the original length) starts impossible on the unbroken
band, turns probabilistic as breaks accumulate, and becomes certain the
moment every fragment is below half: one process, predictable in some states
and unpredictable in others.
"""

import math

from obsim import (
    FRAGMENTATION,
    LEFT_HANDEDNESS,
    ElasticBandState,
    PropertyDef,
    TrialStream,
    is_actual,
)

state = ElasticBandState.unbroken(1.0)
fragmentation = PropertyDef("fragmentation", FRAGMENTATION)

print(f"{'break':>5} {'fragments':>9} {'longest':>8} {'sub-half':>8} "
      f"{'P(frag)':>8} {'actual':>6} {'left-handed':>11}")
for step in range(12):
    p = FRAGMENTATION.analytic(state)
    print(
        f"{step:5d} {len(state.fragments):9d} {state.max_fragment():8.4f} "
        f"{state.subhalf_count():8d} {p:8.4f} {str(is_actual(fragmentation, state)):>6} ",
        end="",
    )
    outcome, state = LEFT_HANDEDNESS.kernel(state, TrialStream(2024, step))
    print(f"{outcome.value:>11}")

total = math.fsum(state.fragments)
print(f"\nlength after {len(state.fragments) - 1} breaks: {total:.12f} (conserved)")
print("fragmentation is actual exactly when the longest fragment drops below 1/2;")
print("left-handedness stays a fair coin forever: it is created by each observation.")
