# %% [markdown]
# # Two readings of the box
#
# Semantics I reads []A as "A holds at every successor", with U winning if
# any successor is U.  Semantics II also looks at the current world: if A
# is U here, []A is U regardless of the successors.  Semantics II is only
# defined on models where an atom that is U at a world is also U at every
# world that can see it (class II).

# %%
from threevml import KripkeModel3, eval_I, eval_II, parse, validate_class_II
from threevml.truthval import T, U

m = KripkeModel3(
    worlds=("s", "t", "u"),
    relation=frozenset({("s", "t"), ("s", "u")}),
    atoms=("p",),
    valuation={"s": {"p": T}, "t": {"p": T}, "u": {"p": U}},
)
print("[]p at s under I:", eval_I(m, "s", parse("[]p")))
print("class-II problems:", [str(v) for v in validate_class_II(m)])

# %% [markdown]
# Making p unknown at s as well repairs the model, and now Semantics II
# applies.

# %%
m2 = KripkeModel3(m.worlds, m.relation, m.atoms, {"s": {"p": U}, "t": {"p": T}, "u": {"p": U}})
print("class-II problems:", validate_class_II(m2))
for text in ("[]p", "p & []p", "~[]p"):
    print(f"{text:<8} I: {eval_I(m2, 's', parse(text))}  II: {eval_II(m2, 's', parse(text))}")

# %%
# where the two readings differ: p is unknown at s but T at its only successor
m3 = KripkeModel3(("s", "t"), frozenset({("s", "t")}), ("p",), {"s": {"p": U}, "t": {"p": T}})
print("[]p at s:", eval_I(m3, "s", parse("[]p")), eval_II(m3, "s", parse("[]p")))
