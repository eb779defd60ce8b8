import math

import numpy as np
import pytest
from hypothesis import given

from cantor_potential.kernel import Geometric, Polynomial, Table
from cantor_potential.measure import (
    MeasureError,
    common_prefix_lengths,
    monte_carlo_riesz_energy,
    Node,
    PointTail,
    TrieMeasure,
    add,
    cylinder_mass,
    energy,
    leaf_potentials,
    mutual_energy,
    potential,
    riesz_energy,
    riesz_potential,
    scale,
    uniform,
)
from cantor_potential.rational import INF, Q
from cantor_potential.verify import prefix_law_riesz_energy
from cantor_potential.words import EventuallyPeriodic, parse_point

from conftest import CORE, GEO, measures, rationals

SEVENTH_ON_ZERO = TrieMeasure(Node(Q(1, 7), {0: Node(Q(1, 7))}))


@pytest.mark.parametrize(
    "mu, word, mass",
    [
        (uniform(1), (0, 1), Q(1, 4)),
        (TrieMeasure.point_mass(parse_point(":0")), (1,), Q(0)),
        (TrieMeasure.point_mass(parse_point(":0")), (0, 0, 0), Q(1)),
        (SEVENTH_ON_ZERO, (0, 0), Q(1, 14)),
        (SEVENTH_ON_ZERO, (1, 0), Q(0)),
        (uniform(1, 3), (2, 2), Q(1, 9)),
    ],
)
def test_cylinder_mass(mu, word, mass):
    assert cylinder_mass(mu, word) == mass == mu[word]


@pytest.mark.parametrize(
    "mu, point, value",
    [
        (uniform(Q(1, 4)), ":0", Q(1)),
        (uniform(Q(1, 4)), "0110:01", Q(1)),
        (uniform(1), "1:0", Q(4)),
        (SEVENTH_ON_ZERO, ":0", Q(1)),
        (SEVENTH_ON_ZERO, "1:0", Q(1, 7)),
        (TrieMeasure.point_mass(parse_point("0:1")), "0:1", INF),
        (TrieMeasure.point_mass(parse_point("0:1")), "01:0", Q(1) + Q(3, 2) + Q(9, 4)),
        (TrieMeasure.zero(), ":1", Q(0)),
    ],
)
def test_potential(mu, point, value):
    assert potential(GEO, mu, parse_point(point)) == value


def test_potential_at_shift_uses_shifted_kernel():
    x = parse_point(":0")
    assert potential(GEO, uniform(1), x, shift=1) == GEO.tail_weight(1) == 6


def test_point_mass_potential_finite_for_table_kernel():
    t = Table(("1", "1/2", "1/4"))
    mu = TrieMeasure.point_mass(parse_point(":0"), Q(2))
    assert potential(t, mu, parse_point(":0")) == Q(7, 2)
    assert energy(t, mu) == 4 * Q(7, 4)


@pytest.mark.parametrize(
    "kernel, mu, value",
    [
        (GEO, uniform(1), Q(4)),
        (GEO, TrieMeasure.zero(), Q(0)),
        (GEO, uniform(3), Q(36)),
        (GEO, SEVENTH_ON_ZERO, Q(1, 7)),
        (GEO, TrieMeasure.point_mass(parse_point(":01"), Q(1, 3)), INF),
        (Polynomial(1), uniform(1), Q(2)),
    ],
)
def test_energy(kernel, mu, value):
    assert energy(kernel, mu) == value


@pytest.mark.parametrize(
    "mu, nu, value",
    [
        (uniform(1), uniform(1), Q(4)),
        (uniform(1), TrieMeasure.zero(), Q(0)),
        (uniform(Q(1, 4)), uniform(Q(1, 4)), Q(1, 4)),
        (uniform(1), TrieMeasure.point_mass(parse_point(":0")), Q(4)),
        (TrieMeasure.point_mass(parse_point(":0")), TrieMeasure.point_mass(parse_point(":1")), Q(1)),
        (TrieMeasure.point_mass(parse_point(":0")), TrieMeasure.point_mass(parse_point("0:0")), INF),
    ],
)
def test_mutual_energy(mu, nu, value):
    assert mutual_energy(GEO, mu, nu) == value == mutual_energy(GEO, nu, mu)


def test_mutual_energy_is_integrated_potential():
    # ∫ P ν dμ for μ a point mass is the potential of ν at the atom
    nu = TrieMeasure.from_cylinders({(0,): Q(1, 3), (1, 1): Q(2, 5)})
    x = parse_point("01:1")
    assert mutual_energy(GEO, TrieMeasure.point_mass(x), nu) == potential(GEO, nu, x)


@pytest.mark.parametrize(
    "mu, r, value",
    [
        (uniform(1), Q(3, 2), Q(2)),
        (TrieMeasure.zero(), Q(3, 2), Q(0)),
        (TrieMeasure.point_mass(parse_point(":0")), Q(5, 4), INF),
    ],
)
def test_riesz_energy(mu, r, value):
    assert riesz_energy(mu, r) == value


@pytest.mark.parametrize(
    "mu, value", [(uniform(1), Q(2)), (TrieMeasure.zero(), Q(0)), (uniform(Q(1, 4)), Q(1, 2))]
)
def test_riesz_potential(mu, value):
    assert riesz_potential(mu, Q(3, 2), parse_point("10:0")) == value


@pytest.mark.parametrize("r", [Q(1), Q(2), Q(1, 2)])
def test_riesz_ratio_range(r):
    with pytest.raises(ValueError):
        riesz_energy(uniform(1), r)


def test_measure_algebra():
    assert scale(uniform(1), Q(1, 4)).total == Q(1, 4)
    assert add(uniform(Q(1, 2)), uniform(Q(1, 2))).same_measure(uniform(1))
    split = TrieMeasure.from_cylinders({(0,): Q(1, 2), (1,): Q(1, 2)})
    assert split.same_measure(uniform(1))
    assert not split.same_measure(uniform(Q(1, 2)))
    a = TrieMeasure.point_mass(parse_point(":01"), Q(1, 3))
    b = TrieMeasure.point_mass(EventuallyPeriodic((0, 1), (0, 1)), Q(2, 3))
    assert add(a, b).same_measure(TrieMeasure.point_mass(parse_point(":01")))


def test_distinct_atoms_separate_on_add():
    a = TrieMeasure.point_mass(parse_point("000:1"))
    b = TrieMeasure.point_mass(parse_point(":0"))
    s = a + b
    assert s.total == 2 and s[(0, 0, 0)] == 2 and s[(0, 0, 0, 1)] == 1 and s[(0, 0, 0, 0)] == 1


def test_atom_over_uniform_tail_is_rejected():
    with pytest.raises(MeasureError):
        uniform(1) + TrieMeasure.point_mass(parse_point(":0"))


def test_add_cutoff():
    a = TrieMeasure.point_mass(parse_point(":0"))
    b = TrieMeasure.point_mass(parse_point("0000000:1"))
    with pytest.raises(MeasureError):
        a.add(b, max_depth=5)
    assert a.add(b).total == 2


@pytest.mark.parametrize(
    "root",
    [
        Node(Q(1), {0: Node(Q(1, 2))}),
        Node(Q(-1)),
        Node(Q(1), {2: Node(Q(1))}),
        Node(Q(1), None, PointTail(parse_point(":2", alphabet=3))),
    ],
)
def test_invalid_tries(root):
    with pytest.raises(MeasureError):
        TrieMeasure(root)


def test_alphabet_mismatch():
    with pytest.raises(ValueError):
        energy(Geometric(2, 3), uniform(1))
    with pytest.raises(ValueError):
        uniform(1) + uniform(1, 3)


def test_leaf_potentials_match_pointwise():
    mu = TrieMeasure.from_cylinders({(0, 0): Q(2, 3), (0, 1, 1): Q(1, 5), (1,): Q(1, 7)})
    for word, value in leaf_potentials(GEO, mu).items():
        assert value == potential(GEO, mu, EventuallyPeriodic(word, (1,)))


@given(measures(atoms=True))
def test_energy_equals_self_mutual_energy(mu):
    for f in CORE:
        assert energy(f, mu) == mutual_energy(f, mu, mu)


@given(measures(atoms=True), measures(atoms=True))
def test_mutual_energy_symmetric(mu, nu):
    for f in CORE:
        assert mutual_energy(f, mu, nu) == mutual_energy(f, nu, mu)


@given(measures())
def test_jensen_lower_bound(mu):
    for f in CORE:
        assert energy(f, mu) >= mu.total**2 * f.tail_weight(0)


@given(measures(), rationals)
def test_scaling(mu, c):
    x = parse_point("01:10")
    for f in CORE:
        assert energy(f, mu.scale(c)) == c * c * energy(f, mu)
        assert potential(f, mu.scale(c), x) == c * potential(f, mu, x)


@given(measures(), measures())
def test_mutual_energy_bilinear(mu, nu):
    s = mu + nu
    for f in CORE:
        assert mutual_energy(f, s, s) == energy(f, mu) + 2 * mutual_energy(f, mu, nu) + energy(f, nu)


@given(measures())
def test_riesz_relation_and_prefix_law(mu):
    for r in (Q(3, 2), Q(7, 5)):
        re = riesz_energy(mu, r)
        assert re == mu.total**2 / r + (1 - 1 / r) * energy(Geometric(r), mu)
        assert re == prefix_law_riesz_energy(mu, r)


@given(measures(atoms=True))
def test_additivity_after_operations(mu):
    for m in (mu, mu.scale(Q(2, 7)), mu + mu):
        m.validate()
        for word, node in m.nodes():
            if node.children is not None:
                assert sum(c.mass for c in node.children.values()) == node.mass


@given(measures(alphabet=3, max_depth=3))
def test_ternary_energy_identities(mu):
    f = Geometric(2, 3)
    assert energy(f, mu) == mutual_energy(f, mu, mu)
    assert energy(f, mu) >= mu.total**2 * f.tail_weight(0)


@pytest.mark.parametrize("seed", [7, 8])
def test_monte_carlo_riesz_energy(seed):
    # r = 5/4 keeps r^N square integrable, so the standard error is meaningful
    mu = TrieMeasure.from_cylinders({(0,): Q(1, 3), (1, 0): Q(1, 2), (1, 1, 1): Q(1, 6)})
    mean, se = monte_carlo_riesz_energy(mu, Q(5, 4), 20000, np.random.default_rng(seed))
    assert abs(mean - float(riesz_energy(mu, Q(5, 4)))) <= 4 * se


def test_sampler_rejects_atoms():
    with pytest.raises(MeasureError):
        common_prefix_lengths(TrieMeasure.point_mass(parse_point(":0")), 10, np.random.default_rng(0))
