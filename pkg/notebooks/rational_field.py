# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: percent
# ---

# %% [markdown]
# # Working over Q
#
# The same pipeline runs over the rationals.  Factoring now has to happen
# over Q, which is done by reducing modulo small primes and lifting; a
# polynomial that resists this raises `FactorizationError` rather than
# returning a guess.

# %%
from jacreal import QQ, RatMatrix, factor, format_expr, is_minimal, parse_expr, pi_minus_matrix, realize_full, transfer_of


def show(a):
    for row in a:
        print("  ".join(f"{str(x):>5}" for x in row))


print([(str(p), e) for p, e in factor(parse_expr("s^4-1", QQ).num).factors])

# %%
T = RatMatrix(
    QQ,
    [
        [parse_expr("1/(s^2+1)", QQ), parse_expr("s/(2*s-1)", QQ)],
        [parse_expr("(s+3)/(s^2+1)^2", QQ), parse_expr("0", QQ)],
    ],
)
# s/(2s-1) = 1/2 + (1/2)/(2s-1): only the strictly proper part has a
# state-space realization; the constant 1/2 would be a feedthrough term.
Tsp = pi_minus_matrix(T)
print(format_expr(Tsp[0, 1]))
r = realize_full(Tsp)
print("dimension", r.dimension)
print([(str(p), k) for p, k in r.blocks])
show(r.F)

# %%
assert transfer_of(r) == Tsp and is_minimal(r)
show(r.H)
print()
show(r.G)
