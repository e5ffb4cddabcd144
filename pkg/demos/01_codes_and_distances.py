# coding: utf-8

# # Codes, encoders and distances
#
# A convolutional code is the row space of a polynomial generator matrix.
# Here we build a small binary rate 2/3 code, look at its encoders and
# compute the distances that decide how many errors it can handle.

# In[1]:

from convcodes import field_create, metrics
from convcodes.code import ConvolutionalCode
from convcodes.poly import PolyMatrix
from convcodes import polyalg

F = field_create(2)
G = PolyMatrix.from_entries(F, [[[1], [1], [0, 1]], [[0, 0, 1], [1], [1, 1]]])
code = ConvolutionalCode(G)
print(code)


# Row degrees, the degree of the code and whether G is a good encoder.

# In[2]:

print("row degrees:", code.row_degrees)
print("degree:", code.degree)
print("left prime:", polyalg.is_left_prime(G), " row reduced:", polyalg.is_row_reduced(G))


# A parity-check matrix exists because the code is noncatastrophic.

# In[3]:

print(code.H)
print("G H^T =", G @ code.H.T)


# Free distance and the first few column distances, next to their upper bounds.

# In[4]:

print("free distance:", metrics.free_distance(code),
      " bound:", metrics.generalized_singleton(*code.params))
cd = metrics.column_distances(code, code.L)
print("column distances:", cd)
print("column bounds:   ", [metrics.column_bound(code.n, code.k, j) for j in range(code.L + 1)])
print("MDP:", bool(metrics.is_mdp(code)))


# Encoding is polynomial multiplication.

# In[5]:

c = code.encode([[1, 0, 1], [0, 1]])
print(c)
print("in the code:", bool(code.contains(c)))
