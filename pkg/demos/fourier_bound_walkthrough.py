"""
Roots of the Fourier b-function from quasi-degrees
===================================================

The matrix below has a non-normal semigroup: (0, 1) sits inside the cone
but the nearest lattice point of NA on that ray is 4*(0, 1).
"""

from gkzbfun.bfun import fourier_bound
from gkzbfun.groebner import toric_ideal
from gkzbfun.linform import frac_str
from gkzbfun.polyhedra import cone_facets, is_normal
from gkzbfun.strata import fourier_strata

A = [[-1, 0, 3], [1, 1, 1]]
t = 1

# The toric ideal is principal here
for g in toric_ideal(A).generators:
    print("toric generator:", g.format())

print("normal:", is_normal(A))
for f in cone_facets(A):
    print("facet on columns", f.columns, "with inward normal", f.functional)

###############################################################################
# Degrees of S_A / d_t S_A are covered by shifted monoids sigma + N*S.
# They come from standard pairs of the initial ideal of I_A + <d_t>.

strata = fourier_strata(A, t)
for s in strata:
    print(f"stratum {s.shift} + N{list(s.span_columns)}")

###############################################################################
# Each stratum contributes the value s at which beta - sigma - s*a_t lands in
# span(A_S).  With beta symbolic the answers are affine forms in b1, b2.

rb = fourier_bound(A, None, t)
print(rb.format())

###############################################################################
# Plugging in numbers gives the same set as solving with numbers directly.

beta0 = [1, 2]
print("evaluated:", [frac_str(x) for x in sorted(rb.evaluate(beta0))])
print("direct:   ", [frac_str(r.const) for r in fourier_bound(A, beta0, t).roots])
