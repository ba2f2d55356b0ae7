"""The ball-growing baseline can return fewer than k centers.

With agents (0, 0, 1) and k=3 the quota is ceil(3/3) = 1, so balls
open at the two occupied locations and capture everyone; a third ball
would never hold an uncaptured agent.  The result is flagged rather
than silently padded; padding is opt-in.
"""

from propclust import Instance, greedy_capture

inst = Instance.unconstrained([(0.0,), (0.0,), (1.0,)], k=3)

result = greedy_capture(inst)
print(f"k requested: {inst.k}")
print(f"opened:      {result.opened} (underfilled: {result.underfilled})")
print(f"outcome:     {result.outcome.selected}")

padded = greedy_capture(inst, pad=True)
print(f"with pad=True: {padded.outcome.selected} (added {padded.padded})")
