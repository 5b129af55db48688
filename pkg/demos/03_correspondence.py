# %% [markdown]
# # Three values from four
#
# A lift picks a four-valued pair for every three-valued entry (U has two
# choices).  Evaluating the four-valued box and compressing the result
# gives the same answer as the three-valued semantics, whatever lift is
# chosen.  Here we check this on every model with at most two worlds.

# %%
import time

from threevml import Bounds, correspondence_check, parse
from threevml.kripke import KripkeModel3, lift_choices, lift_model
from threevml.semantics import SemanticsId, eval_4v, eval_I
from threevml.truthval import T, U, compress

m = KripkeModel3(("s", "t"), frozenset({("s", "t")}), ("p",), {"s": {"p": T}, "t": {"p": U}})
f = parse("[]p")
for choice in lift_choices(m):
    m4 = lift_model(m, choice)
    v4 = eval_4v(m4, "s", f, SemanticsId.FOUR_I)
    print(f"t:p={choice['t', 'p']}  []p={v4}  compressed={compress(v4)}  three-valued={eval_I(m, 's', f)}")

# %%
start = time.perf_counter()
report = correspondence_check(Bounds(max_worlds=2, atoms=("p",), max_depth=2))
print(report.summary(), f"({time.perf_counter() - start:.1f}s)")
