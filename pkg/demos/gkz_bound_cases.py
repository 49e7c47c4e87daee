"""
Three regimes of the GKZ b-function bound
=========================================

Where a_t sits relative to the remaining columns A' decides the shape of
the answer.
"""

from gkzbfun.bfun import gkz_bound
from gkzbfun.diophantine import jbar_generators

A = [[-1, 0, 3], [1, 1, 1]]

###############################################################################
# a_1 = (0, 1) lies inside cone(a_0, a_2).  Only integer roots appear, up to
# the least m with m*a_1 in NA' (here m = 4).

rb = gkz_bound(A, None, 1)
print(rb.format())

###############################################################################
# a_2 = (3, 1) lies outside cone(a_0, a_1).  The obstruction module is
# generated in degree 3*a_0 and one step along a_2 already lands in NA',
# so the integer part is {0}.  Its strata add three beta-dependent roots.

jb = jbar_generators(A, 2)
print("generators:", jb.generators, "min k:", jb.min_k)
rb = gkz_bound(A, None, 2)
print(rb.format())

###############################################################################
# When A' drops rank the bound is linear: the functional v with v.A' = 0
# and v.a_t = 1 turns an Euler operator into x_t*d_t - v.beta.

rb = gkz_bound([[1, 0], [0, 1]], None, 0)
print(rb.format())
print("v =", [str(x) for x in rb.metadata["v"]])
