# %% [markdown]
# Homology of the cyclic bar construction of Π_k = {0, 1, x, ..., x^(k-1)}
#
# The weight-i part has a finite cellular chain complex whose cells are words
# (a_0, a_1, ..., a_r) of exponents. Its homology is either Z in two adjacent
# degrees (k does not divide i) or a single Z/k (k divides i).

# %%
from wittk.nerve import (
    cell_counts,
    cells,
    chain_complex,
    format_word,
    g_chain_map,
    group_factors,
    homology,
    predicted_homology,
)

for r, layer in enumerate(cells(3, 3)):
    print(r, [format_word(w) for w in layer])

C = chain_complex(3, 3)
print("boundary squared vanishes:", C.is_complex())

# %%
for k, i in [(2, 2), (2, 3), (3, 6), (4, 7), (4, 8)]:
    got = {r: group_factors(G) for r, G in homology(k, i).items()}
    print(f"k={k} i={i} cells={cell_counts(k, i)}")
    print("   homology", got, " predicted", predicted_homology(k, i))

# %% [markdown]
# x -> x^n gives a chain map into the (nk, ni) complex. On the torsion class
# it is the inclusion Z/k -> Z/nk. The target complexes get large; homology
# there is computed on a reduced complex with at most two cells per degree.

# %%
for k, i, n in [(2, 2, 2), (2, 6, 3), (3, 6, 2)]:
    g = g_chain_map(k, i, n)
    r = 2 * ((i - 1) // k) + 1
    f = g.induced(r)
    print(f"g({k},{i},{n}) on H_{r}: Z/{k} -> Z/{n * k}  injective={f.is_injective}  "
          f"cokernel order {f.cokernel().order}  target cells {sum(cell_counts(*g.target))}")
