"""Capacity of clopen sets, its realizing measure, and the LP cross-check.

Run: python3 demos/03_capacity.py
"""
# %%
from collections import Counter

from cantor_potential import (
    Geometric, Polynomial, PrefixFreeSet, Q, antichains, capacity, capacity_lp_oracle, capacity_s,
    certify_realizer, cf_test_check, realizing_measure,
)
from cantor_potential.formats import dump_measure

f = Geometric(Q(3, 2))
S = PrefixFreeSet.of

# %% small cases
for words in ((), ("λ",), ("0",), ("00", "01"), ("0", "1"), ("0", "11")):
    A = S(*words)
    print(f"{str(A):12s} C = {capacity(f, A)}  C_s = {capacity_s(A, Q(3, 2))}  LP = {capacity_lp_oracle(f, A) if words else 0}")

# %% the realizing measure for [0]
res = realizing_measure(f, S("0"))
print(dump_measure(res.realizer))
for line in certify_realizer(f, S("0"), res.realizer, res.value).lines():
    print(" ", line)

# %% recursion against the LP over every binary antichain of depth <= 3
for kern in (f, Geometric(1), Polynomial(1)):
    agree = sum(capacity(kern, A) == capacity_lp_oracle(kern, A) for A in antichains(2, 3))
    print(type(kern).__name__, "agreements:", agree, "of 677")

# %% how capacity is distributed over the 677 sets
hist = Counter(capacity(f, A) for A in antichains(2, 3))
print("distinct values:", len(hist), " largest:", max(hist))
print("most common:", ", ".join(f"{v} x{n}" for v, n in hist.most_common(3)))

# %% a C_f test: level n must have capacity at most 2^-n
levels = [S("λ"), S("0"), S("00"), S("000", "111")]
report = cf_test_check(f, levels)
print("\n".join(report.lines()), "\npassed:", report.passed)
