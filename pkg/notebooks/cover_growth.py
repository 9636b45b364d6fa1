# coding: utf-8

# # Torsion in the homology of cyclic covers
#
# For the untwisted case, Fox's formula predicts the torsion orders from
# cyclic resultants of the Alexander polynomial.  We check that first and then
# look at the figure-eight knot with its parabolic representation.

# In[1]:

import mpmath

from tapkit.catalog import builtin_catalog
from tapkit.covers import growth_report, torsion_of_cover
from tapkit.knotgroup import trivial_rep
from tapkit.laurent import parse_poly
from tapkit.measures import mahler
from tapkit.twistpoly import cyclic_resultant


# In[2]:

cat = builtin_catalog()
k = cat.knot("4_1")
delta = parse_poly("t^2 - 3*t + 1")
for n in range(1, 9):
    h = torsion_of_cover(k.pres, trivial_rep(2), k.amap, n)
    print(n, h.betti, h.torsion, abs(cyclic_resultant(delta, n)))


# Now the twisted version.  The ratio column compares the torsion with the
# cyclic resultant of the norm polynomial.

# In[3]:

report = growth_report(k.pres, cat.rep("4_1", "riley0"), k.amap, 8, primes=[2, 3])
print("norm polynomial:", report.delta_bar)
for row in report.rows:
    print(row.n, row.torsion, row.r_n, row.ratio)


# The n-th roots approach the Mahler measure, 7 + 4 sqrt(3).

# In[4]:

print([mpmath.nstr(x, 8) for x in report.root_sequence()])
print(mpmath.nstr(mahler(report.delta_bar).value, 12))
