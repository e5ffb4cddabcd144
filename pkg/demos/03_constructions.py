# coding: utf-8

# # Building good codes
#
# A tour of the algebraic constructions and a check of what each one promises.

# In[1]:

from convcodes import field_create, metrics
from convcodes import constructions as cons
from convcodes.sysrep import iso_from_code, mdp_criterion_FL


# Rate 1/n codes reaching the generalized Singleton bound.

# In[2]:

for code in (cons.justesen_mds(2, field_create(7)), cons.gll_mds(3, 2, field_create(2, 2))):
    print(code.recipe.name, code.params, "d_free", metrics.free_distance(code),
          "bound", metrics.generalized_singleton(*code.params))


# Superregular matrices from binomial coefficients. The smallest prime that
# works grows fast with the size.

# In[3]:

for b in (2, 3, 4):
    T, p, _ = cons.binomial_superregular(b)
    print(b, "x", b, "superregular over F_%d" % p)
    print(T)


# An MDP code cut out of a superregular matrix, checked three ways.

# In[4]:

T, p, F = cons.binomial_superregular(6)
code = cons.mdp_from_superregular(3, 2, 1, T, F)
print(code.params, "over", F)
print("distances:", bool(metrics.is_mdp(code)),
      " minors:", bool(metrics.is_mdp(code, method="minors")),
      " realization:", bool(mdp_criterion_FL(iso_from_code(code))))


# Complete MDP codes can restart decoding from a clean window alone.

# In[5]:

code, bound = cons.complete_mdp_binomial(2, 1, 1)
print("prime bound %.1f, field" % bound, code.field)
print(code.H)
print("complete MDP:", bool(metrics.is_complete_mdp(code)))
