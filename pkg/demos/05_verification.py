"""
Running the verification suite
==============================
"""

from aperiodic.verify import run_suite

report = run_suite("fast")
for c in report.checks:
    print(f"{c.status:4s}  {c.kind:8s}  {c.name}")

print()
print("overall:", "pass" if report.overall else "fail")
for c in report.failures():
    # the tabulated S-+ spectrum disagrees with the S+- spectrum, which any
    # product MN / NM must share
    print(f"  {c.name}: measured {c.measured}, table {c.expected}")
