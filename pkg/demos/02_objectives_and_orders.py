"""Perturbed objectives, signed permutations and the x_sigma order."""

# %% Ties are broken lexicographically by extra objective components.
from latshadow.oracles import verify_lex_order
from latshadow.pivotcore import Objective, SignedPermutation, build_x_sigma, lex_compare, objective_compare

c = Objective((1, 1), [(0, 1)])
print("compare (2,1) vs (1,2) under c:", objective_compare(c, (2, 1), (1, 2)))

# %% x_sigma weights coordinates by powers of alpha = 2k+1.
sigma = SignedPermutation((2, -1))
x_s = build_x_sigma(sigma, k=2)
print("x_sigma for", sigma, "=", x_s)
x, y = (1, 2), (2, 2)
dot_sign = (sum(a * b for a, b in zip(x_s, x)) > sum(a * b for a, b in zip(x_s, y))) - (
    sum(a * b for a, b in zip(x_s, x)) < sum(a * b for a, b in zip(x_s, y))
)
print("dot order:", dot_sign, " combinatorial order:", lex_compare(sigma, x, y))

# %% Exhaustive agreement over every pair in [-k,k]^n, and a failure once alpha is too small.
print(verify_lex_order(2, 2).summary())
print(verify_lex_order(2, 2, alpha=2).summary())
