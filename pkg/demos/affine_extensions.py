"""
Simple-current extensions of affine vacuum algebras
===================================================

Walk through the four classical families and watch the classifier decide
between a vertex operator algebra, a superalgebra and the general abelian
intertwining algebra.
"""

from simplecurrents import ExtensionSpec, classify, frac_str, minimal_weights, simple_current_list

# The simple currents of L(level, 0) sit at the nodes whose mark is one.
for name in ("A3", "B4", "C3", "D5", "E6", "E7", "E8"):
    print(f"{name}: minimal nodes {minimal_weights(name)}")

# E8 at level 2 is the one case where the list is known to be incomplete.
print(simple_current_list("E8", 2).warnings[0])


def show(name, level):
    verdict = classify(ExtensionSpec.affine(name, level))
    group = " x ".join(f"Z{k}" for k in verdict.grading_group.invariant_factors) or "trivial"
    weights = ", ".join(frac_str(s.lowest_weight) for s in verdict.summands)
    print(f"{name} level {level}: {verdict.kind}, group {group}, lowest weights [{weights}]")
    return verdict


# %%
# Type A: a VOA whenever the level is a multiple of 2(n+1).  For odd n these
# are the only such levels; for even n odd multiples of n+1 also work.
for level in (1, 3, 6):
    show("A2", level)
for level in (4, 8):
    show("A3", level)

# %%
# Types B and C: one extra summand, whose parity follows the level.
show("B3", 1)
show("B3", 2)
show("C2", 1)

# %%
# Type D: the full centre gives a genuinely graded structure; when 8 divides
# rank times level the spinor summands give holomorphic pairs.
v = show("D4", 2)
for vac, spinor in v.holomorphic_pairs:
    print(f"  holomorphic pair: {vac} + {spinor}")
for sub in v.sub_extensions:
    print(f"  by one class of order {sub['order']}: {sub['kind']}")
