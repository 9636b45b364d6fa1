# coding: utf-8

# # Symmetric powers and hyperbolic volume
#
# log|A_k(1)| / k^2 for the symmetric powers of the figure-eight holonomy
# creeps up towards Vol / 4 pi.  Convergence is slow.

# In[1]:

import mpmath

from tapkit.catalog import builtin_catalog
from tapkit.measures import lobachevsky, volume_trend


# In[2]:

cat = builtin_catalog()
k = cat.knot("4_1")
vt = volume_trend(k.pres, cat.rep("4_1", "riley0"), k.amap, 11)
for kk, v in vt.odd:
    print(kk, mpmath.nstr(v, 8))


# The reference value, from the Lobachevsky function.

# In[3]:

vol = 6 * lobachevsky(mpmath.pi / 3)
print(mpmath.nstr(vol, 12), mpmath.nstr(vol / (4 * mpmath.pi), 8))
