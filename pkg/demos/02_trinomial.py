"""Loop-by-loop monodromy of a trinomial 1 + t^a x^m + t^b x^n."""
# %%
from rootmonodromy import trinomial
from rootmonodromy.galois import certify_trinomial

T = trinomial.TrinomialModel(2, 3, 2, 1)
rho, points = trinomial.bifurcation_set(T)
print(f"delta={T.delta} bifurcation points on |t| = {rho:.6f}")

# %% The coamoeba picks a base argument; each railway loop is predicted to give tau^b or some b_k.
data = trinomial.coamoeba(T)
pred = trinomial.predicted_monodromy(T, data.base_arg)
for j, w in pred.items():
    print(f"l{j}: {w}")
print("fiber sizes of j -> k:", trinomial.fiber_data(T, data.base_arg))

# %% Tracking the loops numerically reproduces every word.
cert = certify_trinomial(T)
for w, p in zip(cert.tracked_words, cert.predicted_words):
    print(f"tracked {str(w):24s} predicted {p}  equal={w.equals(p)}")
print("certified:", cert.ok)
