"""Systems with a reducible support pair: the kernel of the projection to the t-line."""
# %%
from rootmonodromy.reducible import (kernel_bruteforce, normalize_pair, numeric_check_reducible,
                                     pair_invariants, predicted_galois_reducible)

A1 = [(0, 0), (2, 0), (4, 1)]
A2 = [(0, 0), (0, 1), (0, 2)]
P = normalize_pair(A1, A2)
print("N =", P.N, pair_invariants(P).as_dict())

# %% Predicted kernel against brute-force enumeration of the fiberwise constraints.
pred = predicted_galois_reducible(P)
K, checked = kernel_bruteforce(P)
print("kernel", pred.kernel.order(), "enumerated", K.order(), "equal", K == pred.kernel)
# The lift of a pure braid can still wind a root of q around 0, so the group here
# is twice |G_A2| * |K|.
print("group", pred.group.order(), "exact-sequence order", pred.sequence_order)

# %% The numeric monodromy group of a random system (takes a few seconds).
rep = numeric_check_reducible(P, seed=1, prediction=pred)
print(rep.as_dict())
