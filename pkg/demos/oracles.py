"""
Cross-checking the algebra against brute force
==============================================

Every stratum list can be compared with the exact degree set on a box,
and a toric Groebner basis must identify exactly the monomials of equal
A-degree.
"""

import random

from gkzbfun import exact
from gkzbfun.groebner import toric_ideal
from gkzbfun.strata import Stratum, fourier_strata, gkz_strata, strata_box_check

A = [[-1, 0, 3], [1, 1, 1]]

for t in range(3):
    for mode, fn in (("fourier", fourier_strata), ("gkz", gkz_strata)):
        rep = strata_box_check(fn(A, t), mode, A, t, box_radius=10)
        print(f"t={t} {mode:8s} ok={rep.ok} degrees={rep.degrees_checked}")

###############################################################################
# A corrupted list is caught: drop one stratum and add a spurious one.

bad = fourier_strata(A, 1)[1:] + [Stratum((-3, 3), (2,))]
rep = strata_box_check(bad, "fourier", A, 1, box_radius=6)
print(len(rep.violations), "violations, e.g.", rep.violations[0])

###############################################################################
# Normal forms modulo I_A agree exactly when the A-degrees agree.

G = toric_ideal(A)
rng = random.Random(0)
agree = 0
for _ in range(500):
    u = tuple(rng.randint(0, 6) for _ in range(3))
    v = tuple(rng.randint(0, 6) for _ in range(3))
    same = exact.matvec(A, u) == exact.matvec(A, v)
    agree += (G.normal_form_monomial(u) == G.normal_form_monomial(v)) == same
print(agree, "of 500 pairs consistent")
