"""Which L=3 security profiles leave superposition coding optimal?

For each profile, prints the checker's verdict and compares the rate of the
code it points to with the superposition sum rate.
"""
import itertools

from smdc.codec import CodeSpec, build_code
from smdc.region import check_superposition_optimal, sup_sum_rate

m = (1, 1, 1)
for N in itertools.product(range(1), range(2), range(3)):
    w = check_superposition_optimal(m, N)
    spec = CodeSpec(3, 7, m, N)
    if w.optimal:
        code = build_code(spec, "superposition")
    else:
        scheme = "pairwise-a" if w.condition == "Condition1" else "pairwise-b"
        code = build_code(spec, scheme, alpha=w.pair[0], beta=w.pair[1])
    print(f"N={N}  {w.verdict:<10} {code.scheme:<13} rate={code.normalized_rates.total}"
          f"  superposition={sup_sum_rate(spec.m_hat, N)}")
