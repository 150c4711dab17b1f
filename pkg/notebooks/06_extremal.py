"""
Extremal hypergraphs at desk scale
==================================

"""

from hypertrace.enumerate import enumerate_pm_hypertrees, enumerate_unicyclic
from hypertrace.verify import check_extremal_theorem, check_structure_lemma, problem_sweep

# perfect-matching hypertrees: the comb-shaped tree wins
print(len(enumerate_pm_hypertrees(3, 5)))
r = check_extremal_theorem("pm_hypertrees", 3, 5)
print(r["status"], [c["verdict"] for c in r["comparisons"]])

# unicyclic with a triangle: pendant edges stacked on one core vertex
print(len(enumerate_unicyclic(3, 5, 3)))
r = check_extremal_theorem("unicyclic_girth3", 3, 5)
print(r["status"], r["maximizer"])

# all girths together, reported without a verdict
for c in problem_sweep(2, 5)["comparisons"]:
    print(c["girth"], c["verdict"])

for which in ("tree_root", "cored_multiplicity", "pm_decomposition"):
    print(which, check_structure_lemma(which)["status"])
