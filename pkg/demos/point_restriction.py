"""
Restriction to a generic point
==============================

For homogeneous A the roots are 0, 1, ..., k-1 where k - 1 is the top
nonzero degree of R_A modulo I_A and d generic linear forms.
"""

from gkzbfun.bfun import point_bound
from gkzbfun.groebner import generic_section_quotient

for A in ([[1, 1, 1], [0, 1, 2]], [[1, 1], [0, 1]], [[1, 1, 1, 1], [0, 1, 3, 4]]):
    rb = point_bound(A)
    print(A)
    print("  Hilbert function of the section:", generic_section_quotient(A, [3, 5, 7, 11][: len(A[0])]))
    print("  k =", rb.k_reported, " roots:", list(rb.integer_roots))
    if "normal_bound" in rb.metadata:
        print("  normal, so k <= d =", rb.metadata["normal_bound"])
    else:
        print("  not normal")
