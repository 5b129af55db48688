# %% [markdown]
# # Weak Kleene tables and the four-valued view
#
# In weak Kleene logic the third value U is infectious: any connective with
# a U operand gives U.  A consequence is that no formula is true in every
# valuation, since setting every atom to U makes every formula U.

# %%
from threevml import Connective, compress, fv_apply, lifts, parse, wk_apply
from threevml.cli import table_text
from threevml.semantics import eval_wk
from threevml.truthval import ALL4, T, U

print(table_text())

# %% [markdown]
# Every value is a pair of bits underneath.  The first bit is classical,
# the second is false-infectious, and compression forgets the first bit
# whenever the second is F2.

# %%
for v in ALL4:
    print(f"{v} -> {compress(v)}")
print("preimage of U:", sorted(str(v) for v in lifts(U)))

# %%
# compression commutes with each connective
for a in ALL4:
    for b in ALL4:
        assert compress(fv_apply(Connective.CONJ, a, b)) is wk_apply(Connective.CONJ, compress(a), compress(b))
print("conjunction: compression is a homomorphism")

# %%
f = parse("p | ~p")
print(f, "under p=T:", eval_wk({"p": T}, f))
print(f, "under p=U:", eval_wk({"p": U}, f))
