"""
Loose cycles and the cycle rooting sum
======================================

"""

from hypertrace import loose_cycle, trace
from hypertrace.oracle import c_H_oracle
from hypertrace.traces import c_unicyclic, omega_cycle, weighted

c3 = loose_cycle(3, 3)

# rooting sum with unit weights
print(omega_cycle((1, 1, 1)))

# closed-form coefficient against the Euler-rooting count
for w in [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 2, 3)]:
    ws = weighted(c3, w)
    print(w, c_unicyclic(ws), c_H_oracle(ws))

print([trace(c3, d) for d in (3, 6, 9, 12)])
