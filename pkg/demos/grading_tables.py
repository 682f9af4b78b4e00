"""
Grading form, commutator map and three-cocycle on a finite quotient
===================================================================

For the level-one extension of type D4 the grading group is Z2 x Z2.  We
print its tables and run the exhaustive cocycle suite.
"""

from simplecurrents import ExtensionSpec, grading_data, run_suite
from simplecurrents.cocycle import exponent_str

spec = ExtensionSpec.affine("D4", 1)
data = grading_data(spec)
print("grading group:", data.group.invariant_factors)
print("representatives:", [tuple(str(x) for x in r) for r in data.group.reps])

# Entries are exponents q of exp(pi i q); the h table is indexed by group positions.
n = data.group.order
for k in range(n):
    print(f"h(., ., {k}):")
    for i in range(n):
        print("   ", " ".join(exponent_str(data.h[i][j][k]) for j in range(n)))

# %%
# The same identities, checked exhaustively, and once more with a broken A0.
for inject in (False, True):
    report = run_suite("cocycle", "Z2xZ2", inject=inject)
    print(report.to_text())
