# %% [markdown]
# Relative K-groups of F_p[x]/(x^m)
#
# K_{2j-1}(F_p[x]/(x^m), (x)) is presented as W_{jm}(F_p) / V_m W_j(F_p). The
# even groups vanish. For j = 1 the answer can be checked against a brute-force
# count of the principal units 1 + x F_p[x]/(x^m).

# %%
from wittk import k_group, k_group_even, ses_diagram_check, tower_cyclotomic, tower_fermat, unit_group_oracle, v_map
from wittk.abgroup import format_group

for p, m in [(2, 4), (2, 8), (3, 5), (5, 4)]:
    rep = k_group(p, m, 1)
    print(rep, "   oracle:", format_group(unit_group_oracle(p, m)))

print(k_group(3, 4, 2))
print(k_group_even(3, 4, 2))

# %% The power map x -> x^n is induced by V_n and is injective
f = v_map(2, 2, 3, 2)
print("v_3:", format_group(f.source.invariant_factors), "->", format_group(f.target.invariant_factors))
print("injective:", f.is_injective, " cokernel:", f.cokernel())

rep = ses_diagram_check(3, 2, 3, 1)
print("diagram of short exact sequences, p=3 m=2 n=3:", "ok" if rep.ok else rep.failures())

# %% [markdown]
# Two towers: levels m = p^n and m = p^(n-1)(p-1), joined by v_p. Their stages
# grow quickly, so only a few fit under the 2^64 order guard.

# %%
for stage in tower_fermat(3, 1, 3):
    r = stage.report
    assert r.order == 3 ** (r.m - 1)
    print(f"fermat     n={stage.index} m={r.m:2d} order 3^{r.m - 1}  into next stage injective: {stage.transition_injective}")

for stage in tower_cyclotomic(2, 1, 5):
    print(f"cyclotomic n={stage.index} m={stage.report.m:2d}", format_group(stage.report.invariant_factors))
