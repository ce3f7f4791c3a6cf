"""
Auditable randomness
====================

Every observation can be recorded: the record stores the pre-state, the
outcome, the post-state, and the exact unit-interval draws the kernel
consumed. Re-running the kernel on the recorded draws reproduces the
observation bit for bit, so any reported statistic can be audited after the
fact. Trial i of a run always uses the stream derived from (seed, i), which
is why reports do not depend on thread count or evaluation order.
"""

from obsim import (
    LEFT_HANDEDNESS,
    ElasticBandState,
    SequenceStream,
    TrialStream,
    observe,
    replay,
    verify_replay,
)

state = ElasticBandState.unbroken(1.0)

print("three recorded observations of left-handedness:")
records = []
for i in range(3):
    outcome, state, record = observe(LEFT_HANDEDNESS, state, TrialStream(5, i), index=i)
    records.append(record)
    print(f"  trial {i}: draws={record.draws} -> {outcome.value}, now {state}")

print("\nreplaying each record against its kernel:")
for record in records:
    outcome, post = replay(LEFT_HANDEDNESS, record)
    print(f"  trial {record.index}: replay gives {outcome.value}, "
          f"bit-exact: {verify_replay(LEFT_HANDEDNESS, record)}")

print("\nforcing a chosen break with a hand-built stream:")
outcome, post = LEFT_HANDEDNESS.kernel(ElasticBandState.unbroken(1.0), SequenceStream((0.9,)))
print(f"  draw 0.9 -> {outcome.value}, fragments {post.fragments}")
outcome, post = LEFT_HANDEDNESS.kernel(ElasticBandState.unbroken(1.0), SequenceStream((0.1,)))
print(f"  draw 0.1 -> {outcome.value}, fragments {post.fragments}")
