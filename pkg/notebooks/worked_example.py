# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # A 2x2 transfer matrix over GF(5)
#
# We take a strictly proper 2x2 transfer matrix over the field with five
# elements and build a minimal state-space realization `(F, G, H)` with
# `H (sI - F)^-1 G = T(s)`, where `F` comes out block diagonal in Jacobson
# blocks.  All arithmetic is exact.

# %%
from pathlib import Path

from jacreal import (
    format_expr,
    is_minimal,
    mcmillan_degree,
    parse_problem,
    partial_fractions,
    realize_full,
    smith_mcmillan,
    transfer_of,
)

DATA = Path(__file__).resolve().parent.parent / "data" if "__file__" in globals() else Path("../data")
prob = parse_problem((DATA / "worked_example.txt").read_text())
T = prob.matrix
for i in range(T.rows):
    print("  ".join(format_expr(T[i, j]) for j in range(T.cols)))

# %% [markdown]
# ## Splitting by prime
#
# The common denominator is `(s^2+s+2)^2 (s^3+3s^2+s+1)`, both factors
# irreducible mod 5.  Partial fractions give one strictly proper component
# per prime, and they add back up to `T`.

# %%
comps = partial_fractions(T)
for c in comps:
    print(c.prime, "exponent", c.exponent)
assert comps[0].component + comps[1].component == T

# %% [markdown]
# ## Smith-McMillan form of each component
#
# Each diagonal entry is `a_i / p^k_i`.  The sum of `k_i * deg p` over all
# components is the McMillan degree: the state dimension we must hit.

# %%
for c in comps:
    smf = smith_mcmillan(c)
    print(c.prime, [format_expr(d) for d in smf.diagonal()], smf.exponents)
print("McMillan degree:", mcmillan_degree(T))

# %% [markdown]
# ## The realization

# %%
r = realize_full(T)
print("dimension", r.dimension)
print("blocks", [(str(p), k) for p, k in r.blocks])
print(r.F)

# %%
assert transfer_of(r) == T
rep = is_minimal(r)
print(rep)
