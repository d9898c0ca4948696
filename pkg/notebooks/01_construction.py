# %% [markdown]
# # From a seed polynomial to a Weierstrass model
#
# A seed b determines a degree 12 polynomial in x over Q(t).  Writing it as
# g^2 - r with deg r <= 4 gives the quartic y^2 = r(x), which carries 24
# marked points over Q(t).

# %%
from ellrank.ellcurve import minimal_model, quartic_to_weierstrass, descend_even
from ellrank.kodaira import fibre_configuration
from ellrank.mestre import conic_parametrize, derive_scale, nagao_model, nagao_quartic, nagao_seed, nagao_zero_point, s_coefficient
from ellrank.models import eq3_curve

seed = nagao_seed()
print("seed", seed.b, "s =", s_coefficient(seed.b))

# %%
# the raw remainder differs from the shipped quartic by a square factor in Q(t)
scale = derive_scale(seed, nagao_quartic())
print("scale:", scale)
model = nagao_model()
print("rebuilt equals shipped:", model.coeffs == nagao_quartic().coeffs)
print("marked points:", len(model.points))

# %%
# the x^4 coefficient is A + B t^2; a rational point on u^2 = A + B t^2 makes it a square
A, B = model.coeffs[4].num[0], model.coeffs[4].num[2]
param = conic_parametrize(A, B, "inf")
print("t(z) =", param.t_of_z, " identity:", param.identity_holds())

# %%
E, _ = quartic_to_weierstrass(model, nagao_zero_point())
M, _ = minimal_model(E)
R = descend_even(M)
print("descends to Q(u):", R == eq3_curve())
print(R)

# %%
cfg = fibre_configuration(R)
print([(str(p), ft.name) for p, ft in cfg.reducible()], "rational:", cfg.rational_surface)
