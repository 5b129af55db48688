# %% [markdown]
# # Checking natural deduction proofs
#
# A derivation is a tree of sequents, each node naming the rule that
# produced it.  The checker reports every bad node with its address: the
# root is "root" and "0.1" is the second premise of the first premise.

# %%
from threevml import Derivation, RuleId, Sequent, SystemId, check, parse
from threevml.proof import save_derivation


def seq(gamma, formula):
    return Sequent([parse(g) for g in gamma], parse(formula))


# {p} |- p | ~p, by way of p & ~~p
leaf = Derivation(RuleId.Assume, seq(["p"], "p"))
nn = Derivation(RuleId.NotNotI, seq(["p"], "~~p"), (leaf,))
both = Derivation(RuleId.AndI, seq(["p"], "p & ~~p"), (leaf, nn))
proof = Derivation(RuleId.OrI2, seq(["p"], "p | ~p"), (both,))
print("errors:", check(proof, SystemId.SYS_I))

# %% [markdown]
# Excluded middle is not a theorem here: without the assumption the proof
# breaks at the leaves.

# %%
leaf0 = Derivation(RuleId.Assume, seq([], "p"))
broken = Derivation(RuleId.OrI2, seq([], "p | ~p"),
                    (Derivation(RuleId.AndI, seq([], "p & ~~p"),
                                (leaf0, Derivation(RuleId.NotNotI, seq([], "~~p"), (leaf0,)))),))
for e in check(broken, SystemId.SYS_I):
    print(e)

# %%
# derivations are stored as JSON for `threevml check-proof`
print(save_derivation(nn))
