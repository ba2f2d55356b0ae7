"""Why coalition-based fairness alone is not enough.

On the two-mass instance the lopsided outcome (one center for the 100
coincident agents, ten for the 10) survives both the coalition check
and the total-distance check: nobody can point to an unselected
candidate that serves a full quota of agents better.  The coincident-
group entitlement is the axiom that rejects it.
"""

from propclust import Outcome, check_core, check_pf, check_up
from propclust.data_io import generate

inst = generate("two_mass")

# one center on the heavy mass, all ten remaining on the light one
swapped = Outcome((0,) + tuple(range(100, 110)))

for name, checker in [("pf  ", check_pf), ("core", check_core), ("up  ", check_up)]:
    report = checker(inst, swapped)
    verdict = "satisfied" if report.satisfied else "VIOLATED"
    print(f"{name}  {verdict}")
    if not report.satisfied:
        w = report.witness
        print(
            f"      {len(w.agents)} coincident agents are entitled to "
            f"{w.required} centers within radius {w.radius:g} but got {w.found}"
        )
