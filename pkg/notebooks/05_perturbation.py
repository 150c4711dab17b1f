"""
Relocating subtrees: exact perturbation checks
==============================================

"""

from hypertrace import LemmaInstance, check_perturbation
from hypertrace.verify import load_instances, run_lemma_suite

# move a pendant edge from the middle of a path toward its end
inst = LemmaInstance.from_dict(
    {"lemma": "3.3", "m": 3, "components": {"T1": {"family": "edge"}, "T": {"family": "edge"}}, "d": [3, 6, 9]}
)
for row in check_perturbation(inst)["rows"]:
    print(row["d"], row["lhs"], row["relation"], row["rhs"], "strict expected" if row["strict_expected"] else "")

# the bundled instance library
for lemma in sorted({i.lemma for i in load_instances()}):
    print(lemma, run_lemma_suite(lemma)["status"])
