"""
Tensor traces of small hypertrees
=================================

"""

from hypertrace import hyperpath, hyperstar, single_edge, trace
from hypertrace.traces import trace_terms

# one 3-edge: Tr_0 counts the eigenvalues, Tr_3 = m^(m-1)
e = single_edge(3)
print([trace(e, d) for d in (0, 1, 2, 3, 6)])

# traces vanish unless m divides d
p = hyperpath(3, 3)
print({d: trace(p, d) for d in range(1, 10)})

# star and path agree at Tr_3 and split from Tr_6 on
s = hyperstar(3, 3)
for d in (3, 6, 9):
    print(d, trace(s, d), trace(p, d))

# which connected pieces contribute to Tr_9 of the star
for shape, value in trace_terms(s, 9):
    print(shape.edge_subset, value)
