# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Jacobson normal form from a realization
#
# Over a field where the characteristic polynomial does not split, the
# Jordan form is unavailable.  The Jacobson form replaces each Jordan block
# by a block built from the companion matrix of an irreducible `p`, with
# `e_n e_1^T` coupling consecutive copies.
#
# The resolvent `(sI - A)^-1` has `A` as a realization, so realizing it
# minimally in Jacobson blocks recovers the canonical form of `A`.

# %%
import random

from jacreal import GF, Poly, companion, jacobson_block, jacobson_matrix, jacobson_normal_form, linalg, smith_form, s_minus

F = GF(5)
p = Poly(F, [2, 1, 1])  # s^2 + s + 2, irreducible mod 5
print(companion(p))
print(jacobson_block(p, 2))

# %% [markdown]
# Hide a known form behind a random change of basis.

# %%
rng = random.Random(0)
J0 = jacobson_matrix(F, [(p, 2), (Poly(F, [1, 1]), 1)])
n = J0.shape[0]
while True:
    S0 = F.array([[rng.randrange(5) for _ in range(n)] for _ in range(n)])
    if linalg.det(F, S0):
        break
A = linalg.matmul(F, linalg.matmul(F, S0, J0), linalg.inverse(F, S0))
print(A)

# %%
jf = jacobson_normal_form(F, A)
print([(str(q), k) for q, k in jf.elementary_divisors])
print(jf.J)
assert linalg.equal(A, linalg.matmul(F, linalg.matmul(F, jf.S, jf.J), linalg.inverse(F, jf.S)))

# %% [markdown]
# The invariant factors of `sI - A` carry the same information.

# %%
print([str(d) for d in smith_form(s_minus(F, A)).invariant_factors])
