# %% [markdown]
# # Searching for countermodels
#
# find_countermodel walks through models in a fixed order (fewest worlds
# first) and returns the first pointed model where every assumption is T
# but the goal is not.  Finding nothing only means nothing was found
# within the bounds.

# %%
from threevml import Bounds, find_countermodel, parse, rule_soundness_report
from threevml.kripke import ModelClass, save_model
from threevml.proof import RuleId, SystemId
from threevml.semantics import SemanticsId

m, w = find_countermodel([parse("p")], parse("[]p"), SemanticsId.SEM_I)
print("{p} |- []p fails at", w)
print(save_model(m))

# %%
m, w = find_countermodel([], parse("p | ~p"), SemanticsId.WK)
print("p | ~p fails when p is", m.value(w, "p"))
print(find_countermodel([parse("p & q")], parse("q | p"), SemanticsId.SEM_II))

# %% [markdown]
# The same machinery drives the soundness sweep.  Run over every model,
# not just class II, the System II rule that boxes an excluded middle
# breaks, and the report shows where.

# %%
misuse = rule_soundness_report(SystemId.SYS_II, Bounds(2, ("p",), 1), model_class=ModelClass.ALL,
                               rules=[RuleId.BoxI2_II])
print(misuse.summary())
print(misuse.examples[RuleId.BoxI2_II][0])
