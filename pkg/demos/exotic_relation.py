"""
A relation of degree 6 that is not generated in degree 2
========================================================
"""

# %%
# beta is the ordinary Weil number of the fourfold orbit with divisor
# 1 + s1 + s2 + s3.  Together with the four elliptic classes it satisfies
# alpha1 alpha2 alpha3 alpha4^c (beta^c)^2 = q^3.
from weiltate.relations import (
    GeneratorSet,
    Relation,
    RelationLattice,
    bounded_membership,
    find_exotic,
    is_relation,
    lattice_membership,
)
from weiltate.weilmodel import FieldContext, construct_beta, standard_classes

ctx = FieldContext.standard()
gens = GeneratorSet(ctx, tuple(standard_classes(ctx) + [construct_beta(ctx)]))
e = gens.vector(alpha1=1, alpha2=1, alpha3=1, alpha4_c=1, beta_c=2)
print("relation holds:", is_relation(gens, e, 3))

# %%
# Degree-2 relations are the products alpha * alpha^c.  Their integer span
# misses the relation above; the Hermite form names the obstructing column.
lat = RelationLattice.degree2(gens)
m = lattice_membership(Relation(e, 3), lat, gens.slots + ("q",))
print(m.member, m.obstruction)
print("brute force in [-3, 3]:", bounded_membership(Relation(e, 3), lat))

# %%
# A search up to degree 6 finds exactly this relation and its conjugate.
for x in find_exotic(gens, 6):
    print(x.relation.name(gens))
