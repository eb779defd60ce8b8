"""Gauge kernels and their tail weights.

Run: python3 demos/01_kernels.py
"""
# %%
from cantor_potential import Geometric, Polynomial, Q, from_log_energy, from_s_energy

f = from_s_energy("3/2")  # f(n) = (3/2)^n, i.e. 2^{sn} with 2^s = 3/2
print("f(0..4):", [str(f(n)) for n in range(5)])
print("|f| =", f.tail_weight(0), " |f_1| =", f.tail_weight(1))  # 4 and 6

# %% shifting multiplies a geometric tail by the ratio
for k in range(4):
    print(k, f.tail_weight(k), f.shift(k).tail_weight(0))

# %% polynomial kernels: tail weights come from the moments sum n^i 2^-n
g = from_log_energy(2)  # f(n) = n
print("Polynomial(1): |f| =", g.tail_weight(0), " |f_3| =", g.tail_weight(3))
print("sum n^3 2^-n =", Polynomial(3).tail_weight(0))

# %% the norm bound that feeds the approximation constant A = 2 norm + 2
for kern in (f, Geometric(1), g):
    worst = max(kern(k) / kern.tail_weight(k + 1) for k in range(40))
    print(type(kern).__name__, "bound", kern.norm_bound(), ">= sampled sup", worst)

# %% truncated sums plus an exact remainder reproduce the closed form
N = 10
print(f.tail_weight(0) == f.partial_tail(0, N) + Q(1, 2**N) * f.tail_weight(N))
