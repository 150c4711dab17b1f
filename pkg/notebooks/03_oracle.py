"""
Brute-force traces and graph ground truth
=========================================

"""

import numpy as np

from hypertrace import UnsupportedTopologyError, hyperstar, loose_cycle, trace
from hypertrace.oracle import adjacency_matrix, matrix_power_trace, trace_bruteforce

# the oracle works for any hypergraph, closed form or not
h = hyperstar(2, 3)
print(trace(h, 6), trace_bruteforce(h, 6))

# for graphs, traces are traces of adjacency powers
c4 = loose_cycle(4, 2)
a = np.array(adjacency_matrix(c4))
print([matrix_power_trace(c4, d) for d in range(7)])
print([int(np.trace(np.linalg.matrix_power(a, d))) for d in range(7)])

# walks that wind once round C4 have no closed-form term, so trace() declines
try:
    trace(c4, 4)
except UnsupportedTopologyError as exc:
    print("declined:", exc)
print(trace(c4, 2))
