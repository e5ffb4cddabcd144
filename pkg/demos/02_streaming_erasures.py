# coding: utf-8

# # Streaming erasure recovery
#
# A rate 1/2 MDP code over F_7 against a block code with the same rate.

# In[1]:

import numpy as np

from convcodes import field_create, metrics
from convcodes.channels import erase_channel
from convcodes.code import ConvolutionalCode
from convcodes.decoders import (codeword_array, erasure_decode_bidirectional,
                                erasure_decode_forward)
from convcodes.poly import Poly, PolyMatrix

F = field_create(7)
code = ConvolutionalCode(PolyMatrix.from_entries(F, [[[4, 3, 4], [3, 6, 5]]]))
print(code.params, "L =", code.L, "MDP:", bool(metrics.is_mdp(code)),
      "reverse MDP:", bool(metrics.is_reverse_mdp(code)))


# Send a short message and lose two bursts of two steps each.

# In[2]:

s = codeword_array(code, [Poly(F, [3, 1, 4, 1, 5])], 7)
w = erase_channel(s, burst=(0, 2))
w = erase_channel(w.values, burst=(4, 2))
print(w.values)


# In[3]:

rep = erasure_decode_forward(code, w)
print(rep.status, "-", rep.recovered_count, "of", rep.erasures, "symbols back")
print("matches:", (rep.recovered == s).all())
for tr in rep.trace:
    print(tr)


# Random losses on a longer stream. When the forward pass gets stuck, the
# backward pass can sometimes finish the job.

# In[4]:

rng = np.random.default_rng(1)
s = codeword_array(code, [Poly(F, rng.integers(1, 7, 60))], 62)
w = erase_channel(s, rate=0.4, seed=7)
fwd = erasure_decode_forward(code, w)
both = erasure_decode_bidirectional(code, w)
print("erased:", w.count())
print("forward:", fwd.status, len(fwd.unrecovered), "left")
print("both ways:", both.status, len(both.unrecovered), "left")
