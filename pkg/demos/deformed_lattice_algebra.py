"""
Deforming a lattice vertex algebra by Delta(alpha, z)
=====================================================

On the A1 root lattice, the operator Delta(alpha/2, z) turns the vacuum
algebra into its nontrivial module.  We look at the operator on a few
vectors and compare characters.
"""

from fractions import Fraction

from simplecurrents import FockSpace, ModuleLabel, RationalLattice, delta_apply, lattice_character, virasoro
from simplecurrents.fock import heis_vector
from simplecurrents.identities import check_delta_axioms, deformed_character

space = FockSpace([[2]], "A1")
half = (Fraction(1, 2),)

# Delta acts on omega with two extra terms: one at z^-1 and one at z^-2.
for exponent, vector in delta_apply(space, half, virasoro(space)).coefficients:
    print(f"z^{exponent}: {vector}")

# On the weight-one vector the shift is <alpha, beta> z^-1 times the vacuum.
print(delta_apply(space, half, heis_vector(space, (1,))).dumps())

# %%
# The four defining properties of Delta, checked coefficient by coefficient.
report = check_delta_axioms(space, half, cutoff=4)
for r in report.reports():
    print(f"{r.name:14s} {'PASS' if r.passed else 'FAIL'} ({r.checked} coefficients)")

# %%
# The deformed L(0) spectrum agrees with a direct count of the coset module.
deformed = deformed_character(space, half, 5)
coset = lattice_character(ModuleLabel.lattice(RationalLattice(((2,),)).full(), half), 5)
for weight, count in deformed.items():
    print(f"q^{weight}: {count} (coset count {coset.get(weight, 0)})")
print("characters agree:", deformed == coset)
