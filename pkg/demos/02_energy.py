"""Potentials, energies and the Riesz energy of trie measures.

Run: python3 demos/02_energy.py
"""
# %%
from pathlib import Path

import numpy as np

from cantor_potential import (
    Geometric, Q, TrieMeasure, energy, format_ext, mutual_energy, parse_point, potential, riesz_energy,
)
from cantor_potential.formats import load_measure
from cantor_potential.measure import monte_carlo_riesz_energy
from cantor_potential.verify import prefix_law_riesz_energy

f = Geometric(Q(3, 2))
uni = TrieMeasure.uniform()

# %% the uniform measure of mass 1/|f| has potential 1 everywhere
quarter = TrieMeasure.uniform(Q(1, 4))
for pt in (":0", "01:10", "111:0"):
    print(pt, potential(f, quarter, parse_point(pt)))

# %% energy as a sum over nodes; atoms make it infinite
print("E(uniform) =", energy(f, uni))
print("E(3 uniform) =", energy(f, uni.scale(3)))
atom = TrieMeasure.point_mass(parse_point(":01"))
print("E(atom) =", format_ext(energy(f, atom)))
print("mutual(uniform, atom) =", mutual_energy(f, uni, atom))

# %% a measure read from disk: a uniform part and an atom
mixed = load_measure(Path(__file__).parent / "data" / "mixed.json")
print("mixed: mass", mixed.total, " mu[1011] =", mixed[(1, 0, 1, 1)])
print("potential at the atom:", format_ext(potential(f, mixed, parse_point("1011:10"))))
print("potential at 0^w:", potential(f, mixed, parse_point(":0")))

# %% Riesz energy three ways
r = Q(3, 2)
print("closed form", riesz_energy(uni, r), " prefix law", prefix_law_riesz_energy(uni, r))
mean, se = monte_carlo_riesz_energy(uni, r, 100_000, np.random.default_rng(0))
print(f"Monte Carlo {mean:.4f} +- {se:.4f}")
# r^N has infinite variance at r = 3/2, so the error bar is optimistic; at r = 5/4 it is honest
mean, se = monte_carlo_riesz_energy(uni, Q(5, 4), 100_000, np.random.default_rng(0))
print(f"r = 5/4: exact {riesz_energy(uni, Q(5, 4))}, Monte Carlo {mean:.4f} +- {se:.4f}")
