"""Run every check of the verification suite on a group.

Run with ``python demos/03_verification_suite.py [PRESET] [WIDTH_CAP]``.
"""
import sys

from singular_bruhat import CoxeterGroup, manifest, run_suite
from singular_bruhat.verify import summary

name = sys.argv[1] if len(sys.argv) > 1 else "B3"
cap = int(sys.argv[2]) if len(sys.argv) > 2 else 5

print("checks:")
for check, statement in manifest():
    print(f"  {check:<26} {statement}")

W = CoxeterGroup.from_preset(name)
print(f"\n{W}, expressions up to width {cap}\n")
results = run_suite(W, cap)
print(summary(results, timings=True))
sys.exit(0 if all(r.passed for r in results) else 1)
