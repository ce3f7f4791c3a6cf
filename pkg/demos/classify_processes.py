"""
A taxonomy of observation processes
===================================

Every registered exemplar classified along three axes: what the observation
does to the observed fact (discovery, creation, destruction), whether its
outcome is predictable (deterministic, intermediary, nowhere-deterministic),
and whether a confirmed fact stays certain under repetition (intrinsic) or
must be re-created each time (ephemeral). Creation and destruction verdicts
carry a concrete witness state with a replayable record.
"""

from obsim import default_suite, taxonomy_table, verify_replay

suite = default_suite()
rows = taxonomy_table(suite)

print(f"{'property':<18} {'effect':<24} {'predictability':<23} {'persistence':<10} witness")
for row in rows:
    witness = str(row.witness) if row.witness is not None else "-"
    print(
        f"{row.property_name:<18} {row.effect.value:<24} "
        f"{row.predictability.value:<23} {row.persistence.value:<10} {witness}"
    )

print("\nwitness records replay bit-exactly:")
for (prop, _probe), row in zip(suite, rows):
    if row.witness_record is not None:
        ok = verify_replay(prop.process, row.witness_record)
        print(f"  {row.property_name:<18} record with draws {row.witness_record.draws} -> {ok}")
