# %% [markdown]
# # Point counts and the Neron-Severi bound
#
# Counting the K3 surface over F_p and F_p^2 pins down two power sums of the
# unknown Frobenius eigenvalues; each guess for the shape of the remaining
# quartic factor is either consistent or a contradiction.

# %%
import time

from ellrank.models import t_line_model
from ellrank.surfcount import SurfaceModel, count_surface, eigen_ledger, format_int_poly, ns_rank_bound, smallest_good_prime, test_hypotheses

model = SurfaceModel.from_curve(t_line_model())
print("smallest good prime:", smallest_good_prime(model))

# %%
counts = {}
for p in (53, 71):
    for n in (1, 2):
        t0 = time.perf_counter()
        counts[p, n] = count_surface(model, p, n).total
        print(f"#S(F_{p}^{n}) = {counts[p, n]}  ({time.perf_counter() - t0:.2f} s)")

# %%
for p in (53, 71):
    L = eigen_ledger(p, {1: counts[p, 1], 2: counts[p, 2]})
    outcomes = test_hypotheses(L)
    b = ns_rank_bound(L, outcomes)
    print(f"p = {p}: s1 = {L.s1}, s2 = {L.s2}, bound {b.bound}, sharp {b.sharp}")
    for o in outcomes:
        if o.consistent:
            print("   consistent:", o.zeta_order, o.det_sign, format_int_poly(o.charpoly))
