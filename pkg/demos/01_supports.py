"""Supports, their invariants, and the predicted Galois group.

Run with ``python3 demos/01_supports.py``.
"""
# %% A support is a finite set of exponent vectors (x-degree, t-degree).
from rootmonodromy import SupportSet, invariants, predict

s = SupportSet.of([(0, 0), (2, 4), (5, 2)])
print(invariants(s).as_dict())

# %% The prediction lists braid generators and a permutation group on the N roots.
pred = predict(s)
print("generators:", ", ".join(str(b) for b in pred.braid_generators))
print("group order:", pred.galois_group.order(), "formula:", pred.order_formula_value)

# %% A horizontal period d splits the roots into mu_d orbits; theta then limits the phase shifts.
for pts in ([(0, 0), (2, 0), (4, 1)], [(0, 0), (2, 0), (4, 2)], [(0, 0), (2, 1), (4, 2)]):
    inv = invariants(SupportSet.of(pts))
    print(pts, "N=%d d=%d theta=%d line=%s" % (inv.N, inv.d, inv.theta, inv.on_line),
          "order", predict(SupportSet.of(pts)).galois_group.order())

# %% Track a random polynomial with that support and compare.
from rootmonodromy import verify

rep = verify(SupportSet.of([(0, 0), (2, 0), (4, 2)]), seed=3)
print(rep.as_dict())
