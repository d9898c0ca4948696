# %% [markdown]
# # Heights, Gram matrices and the extra section
#
# Heights on the rational model come from Shioda's formula; the limit method
# (repeated doubling) is an independent check.

# %%
from ellrank.heights import canonical_height_limit, gram, norm_map, shioda_height, theorem1_certificate
from ellrank.kodaira import fibre_configuration
from ellrank.models import eq3_curve, q_point, t_line_model, w_generators, z_generators, z_line_model
from ellrank.qsearch import find_extra_point

E = eq3_curve()
cfg = fibre_configuration(E)
Q = q_point()
print("h(Q):", shioda_height(E, Q, cfg), canonical_height_limit(E, Q, cfg))

# %%
W = list(w_generators())
print("rank of W over Q(t):", gram(t_line_model(), W).rank)
norms = [norm_map(E, P) for P in W[:12]]
print("rank of N(W):", gram(E, norms, cfg).rank, " with Q:", gram(E, norms + [Q], cfg).rank)

# %%
# polynomial ansatz through the node of the I2 fibre at infinity
sols = find_extra_point(E)
print(len(sols), "sections of degree (2, 2)")
for s in sols[:3]:
    print(s, "\n")

# %%
zr = gram(z_line_model(), z_generators()).rank
rep = theorem1_certificate(E, Q, norms, zr, cfg)
print(rep.conclusion)
