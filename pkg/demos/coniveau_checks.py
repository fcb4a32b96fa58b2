"""
Pairs of eigenvalues and divisibility by q
==========================================

For a product of elliptic curves, an eigenvalue monomial of Frobenius on
H^n is divisible by q^j whenever j disjoint factors pair up to q.  This
script checks when the converse holds.
"""

# %%
from weiltate.coniveau import ProductSpec, analyze, verify_lemma1, verify_thm2
from weiltate.weilmodel import FieldContext, standard_classes

# %%
# Three elliptic Weil numbers: if their product is divisible by p, two of
# them multiply to q.  Exhaustive over every rank up to 3.
rep = verify_lemma1(3)
print("pair lemma:", rep.configurations_checked, "configurations,", len(rep.counterexamples), "counterexamples")

# %%
# The standard triple never becomes divisible by p, whatever the exponents.
ctx = FieldContext.standard()
rep = verify_thm2(ctx, 6)
print("triple:", rep.configurations_checked, "tuples, zero at", rep.details["plain_zero_element"])

# %%
# On H^3 of E1 x E2 x E3 the two coniveaux agree monomial by monomial.
spec = ProductSpec.of(ctx, standard_classes(ctx)[:3])
report = analyze(spec, 3)
for r in report.records:
    print(f"{r.name:30s} tate={r.tate} witnessed={r.witnessed}")

# %%
# Adding the fourth curve opens a gap in H^4: eight monomials are divisible
# by q but contain no pair multiplying to q.
spec4 = ProductSpec.of(ctx, standard_classes(ctx))
print([r.name for r in analyze(spec4, 4).gaps])
