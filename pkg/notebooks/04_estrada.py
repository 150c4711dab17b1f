"""
Certified Estrada indices
=========================

"""

import numpy as np

from hypertrace import compare_ee, estrada_truncated, hyperpath, hyperstar, loose_cycle
from hypertrace.oracle import adjacency_matrix

# a triangle: the enclosure contains e^2 + 2/e
c3 = loose_cycle(3, 2)
v = estrada_truncated(c3)
print(v.lower_decimal(), v.upper_decimal(), v.depth)
print(np.exp(np.linalg.eigvalsh(np.array(adjacency_matrix(c3), dtype=float))).sum())

# deeper truncation shrinks the interval
for depth in (9, 12, 15, 18):
    v = estrada_truncated(hyperstar(3, 3), depth)
    print(depth, v.lower_decimal(), v.upper_decimal())

# the hyperstar beats the hyperpath; too shallow a depth gives no verdict
print(compare_ee(hyperstar(3, 3), hyperpath(3, 3))[0])
print(compare_ee(hyperstar(3, 3), hyperpath(3, 3), 6)[0])
