# coding: utf-8

# # Twisted Alexander polynomials of small two-bridge knots
#
# We build the knot group from its two-bridge parameters, find the parabolic
# representations from the Riley polynomial, and compute the twisted invariants.

# In[1]:

from tapkit.catalog import builtin_catalog
from tapkit.knotgroup import riley_polynomial
from tapkit.twistpoly import norm_polynomial, twisted_alexander, wada_invariant


# In[2]:

cat = builtin_catalog()
for name in sorted(cat.knots):
    p, q = cat.knot(name).two_bridge
    print(name, (p, q), riley_polynomial(p, q).format("u"))


# The knot 5_2 is the interesting one: its Riley field is cubic.

# In[3]:

knot = cat.knot("5_2")
rep = cat.rep("5_2", "riley0")
print(rep.field.poly_string(), "disc", rep.field.discriminant)


# The Wada invariant is a genuine polynomial here, and Delta_0 is trivial.

# In[4]:

w = wada_invariant(knot.pres, rep, knot.amap)
d0 = twisted_alexander(knot.pres, rep, knot.amap, 0)
print("W      =", w.quotient.normalized())
print("Delta0 =", d0.poly)


# Taking the product over the three embeddings gives an integer polynomial.

# In[5]:

print(norm_polynomial(w.quotient * d0.poly).normalized())


# The minor-gcd route only determines Delta_1 up to a field scalar.

# In[6]:

m = twisted_alexander(knot.pres, rep, knot.amap, 1, method="minors")
print(m.poly)
