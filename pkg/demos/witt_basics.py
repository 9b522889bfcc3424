# %% [markdown]
# Big Witt vectors over a truncation set
#
# A Witt vector on S = {1..n} is a list of coefficients a_1..a_n. The ghost
# map w_s = sum over d | s of d * a_d^(s/d) turns Witt addition and
# multiplication into plain componentwise arithmetic.

# %%
from wittk import TruncationSet, WittVector, decompose, frobenius, ghost, teichmuller, verschiebung
from wittk.truncation import p_typical_lengths, ts_interval

S = ts_interval(4)
a = WittVector.make(S, [1, 0, 0, 0])
print("ghost of the unit:", ghost(a).values)

two = a + a
print("1 + 1 =", two.coeffs)            # (2, -1, ...) rather than (2, 0, ...)
print("ghost of 1 + 1:", ghost(two).values)

# %% [markdown]
# Over F_2 the same sum wraps around: 2 = V_2(1) in W(F_2).

# %%
b = WittVector.make(S, [1, 0, 0, 0], modulus=2)
print("1 + 1 over F_2:", (b + b).coeffs)

# %% Frobenius and Verschiebung
x = WittVector.make(ts_interval(6), [2, -1, 3, 0, 1, 5])
vx = verschiebung(2, x, ts_interval(12))
print("V_2 x =", vx.coeffs)
print("F_2 V_2 x =", frobenius(2, vx).coeffs)
print("2 * x    =", (2 * x).coeffs)

print("[3][5] == [15]:", teichmuller(3, S) * teichmuller(5, S) == teichmuller(15, S))

# %% [markdown]
# Over F_p the group W_S(F_p) splits into p-typical pieces, one for each
# p-free j in S, each cyclic of order p^(t_j).

# %%
S6 = ts_interval(6)
print("pieces for p = 2:", p_typical_lengths(S6, 2))
c = WittVector.make(S6, [1, 1, 0, 1, 0, 1], modulus=2)
print("decompose", c.coeffs, "->", decompose(c, 2))

odd = TruncationSet.parse("{1,3,9}")
print("on", odd, "with p = 3:", decompose(WittVector.make(odd, [2, 0, 1], modulus=3), 3))
