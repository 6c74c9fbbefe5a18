"""Intervals for rho-invariants, derivation trees and replay."""

from concordance.laurent import parse_poly
from concordance.ledger import (
    RhoInterval,
    RhoQuantity,
    axiom,
    link_rho0,
    replay,
    run_scenario,
    surgery_step,
)
from concordance.twistlab import surgery_chain_data

# the packaged surgery chain: declared geometry, computed L^2 signature
env, failures = run_scenario(surgery_chain_data())
for key, iv in env.items():
    print(f"{key:14s} {str(iv.quantity):22s} {str(iv):12s} {iv.origin}")
print("expectation failures:", failures)

# every derived interval can explain itself
print("\n".join(env["rho0_L2"].provenance()))

# replay recomputes each node; a forged bound is caught
good = surgery_step(link_rho0("L2", 2), axiom(link_rho0("L1", 2), -2, "example"), 1, "pre", 1)
print("replay good:", replay(good).ok)
forged = RhoInterval(-2, -1, good.quantity, good.rule, good.params, good.premises)
print("replay forged:", replay(forged).failures)
