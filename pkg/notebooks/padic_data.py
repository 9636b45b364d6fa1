# coding: utf-8

# # p-adic measures and residues of roots
#
# The p-adic Mahler measure of an integer polynomial is its Gauss norm; we
# also read it off the Newton polygon.

# In[1]:

from tapkit.laurent import parse_poly
from tapkit.measures import (
    linear_residues,
    newton_polygon,
    padic_mahler,
    residue_orbit,
    split_scan,
    teichmuller_data,
)


# In[2]:

f = parse_poly("3*t^2 + 18*t - 9")
for p in (2, 3, 5):
    print(p, padic_mahler(f, p).value, newton_polygon(f, p).segments)


# Residues of the roots of t^2 - 4t + 1 modulo small primes.  At p = 5 the
# roots live in F_25 and have order 3; at p = 11 they are in F_11.

# In[3]:

g = parse_poly("t^2 - 4*t + 1")
for p in (5, 11, 13):
    d = teichmuller_data(g, p)
    print(p, d.orders, "m =", d.m)


# In[4]:

orbit = residue_orbit(g, 11)
for u in sorted(orbit):
    print(u, linear_residues(orbit[u], 11))


# Splitting of the 5_2 Riley cubic: the table shows the primes of the form
# 1 mod 6 and whether the cubic has three roots there.  None of them do:
# the splitting primes (59, 101, 167, ...) are the ones of the form
# x^2 + xy + 6y^2, whatever their class mod 6.

# In[5]:

cubic = parse_poly("u^3 + u^2 + 2*u + 1", "u")
for row in split_scan(cubic, 6, 80):
    print(row.p, row.splits, row.excluded)
