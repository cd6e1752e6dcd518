"""
Verification suites and reports
===============================

Each suite sweeps a parameter range and records the worst residual.
The same reports are produced by `python -m pillowcase suite ...`.
"""
from pillowcase.suites import SuiteParams, run_suites, SUITES

print("available suites:", ", ".join(SUITES))

params = SuiteParams(r_range=(3, 5), pq_range=(-2, 2), tol=1e-8)
report = run_suites(["uq-relations", "product-to-sum", "equivalence"], params)
print(report.to_csv())
print("all passed:", report.passed)
