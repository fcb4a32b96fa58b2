"""
Sections of the eight-element Galois group
==========================================

Take K of degree 8 over Q with Galois group (Z/2)^3, a prime p split
completely in K, and complex conjugation c = s1s2s3.  An ordinary Weil
q-number in K is pinned down (up to roots of unity) by its divisor, and
that divisor picks one prime out of each pair {g, c.g}.
"""

# %%
# There are 2^4 such choices.  The library stores divisors in doubled
# units, so an ordinary divisor has entries 0 or 2.
from weiltate.groupring import element_name
from weiltate.weilmodel import FieldContext, classify_section, enumerate_sections, orbits

ctx = FieldContext.standard()
sections = enumerate_sections(ctx)
print(len(sections), "sections")

# %%
# Conjugate Weil numbers give the same isogeny class, and translating by a
# Galois element gives a conjugate field embedding.  Grouping by both:
for orbit in orbits(ctx, mod_c=True, mod_galois=True):
    info = classify_section(ctx, orbit[0])
    support = [element_name(g) for g in orbit[0].support()]
    print(f"{len(orbit) // 2} class(es)  field degree {info.field_degree}  e.g. {support}")

# %%
# The four singletons live in quadratic subfields, so they are Frobenius
# numbers of ordinary elliptic curves.  The remaining orbit generates all
# of K and belongs to simple abelian fourfolds.
