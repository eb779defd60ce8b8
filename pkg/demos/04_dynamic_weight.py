"""The online dynamic weight: order dependence and the approximation sandwich.

Run: python3 demos/04_dynamic_weight.py
"""
# %%
import itertools

import numpy as np

from cantor_potential import (
    Geometric, GoodEnumeration, Polynomial, Q, antichains, bound_constant, capacity, check_sandwich,
    dynamic_weight, order_dependence_witness, weights,
)

f = Geometric(Q(3, 2))

# %% a two-word enumeration: ww overshoots the capacity 1/7
trace = dynamic_weight(f, GoodEnumeration.of("00", "01"))
print(trace.to_csv())

# %% the weight depends on the order in which words arrive
w = order_dependence_witness(f)
print(w.set, w.order1, w.ww1, "vs", w.order2, w.ww2)

# %% worst ratio ww/C over every order of every depth <= 3 antichain
for kern in (f, Geometric(1), Polynomial(1)):
    ratios = []
    for A in antichains(2, 3):
        if A.is_empty:
            continue
        C = capacity(kern, A)
        ratios += [weights(kern, GoodEnumeration(p))[-1] / C for p in itertools.permutations(sorted(A.words))]
    r = np.array([float(x) for x in ratios])
    print(f"{type(kern).__name__}: A = {bound_constant(kern)}, max ratio {r.max():.4f}, mean {r.mean():.4f}, "
          f"orders {len(r)}")

# %% the staged measure certifies the lower bound
rep = check_sandwich(f, GoodEnumeration.of("111", "0", "110", "10"))
print("\n".join(rep.lines()))
