from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from fanocone import (
    IRREGULAR,
    QUASI_REGULAR,
    NotInReebCone,
    NotKlt,
    NotQGorenstein,
    RoundingExitsCone,
    ToricConeData,
    classify_regularity,
    gorenstein_vector,
    log_discrepancy,
    rationalize,
    reeb,
    validate,
)

import oracles


def _orthant_data(n: int, boundary=None) -> ToricConeData:
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return ToricConeData.make(n, rays, boundary)


CONIFOLD = ToricConeData.make(
    3, [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)], label="conifold"
)


def test_gorenstein_orthant_is_all_ones():
    for n in (1, 2, 3, 4):
        assert gorenstein_vector(_orthant_data(n)) == tuple(Fraction(1) for _ in range(n))


def test_gorenstein_conifold_from_overdetermined_system():
    assert gorenstein_vector(CONIFOLD) == (Fraction(0), Fraction(0), Fraction(1))


def test_gorenstein_with_boundary_pairs_coefficients_to_given_rays():
    data = ToricConeData.make(2, [(1, 0), (0, 1)], [Fraction(1, 2), 0])
    gamma = gorenstein_vector(data)
    # <gamma, (1,0)> = 1/2 and <gamma, (0,1)> = 1 regardless of storage order
    assert gamma == (Fraction(1, 2), Fraction(1))
    assert validate(data) == gamma


def test_not_q_gorenstein():
    data = ToricConeData.make(3, [(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 2)])
    with pytest.raises(NotQGorenstein):
        gorenstein_vector(data)


def test_not_klt_on_unit_coefficient():
    data = _orthant_data(2, [1, 0])
    with pytest.raises(NotKlt):
        gorenstein_vector(data)


def test_negative_boundary_rejected():
    with pytest.raises(ValueError):
        _orthant_data(2, [Fraction(-1, 2), 0])


def test_orthant_validates_for_any_admissible_boundary():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 4)
        boundary = [Fraction(rng.randint(0, 7), 8) for _ in range(n)]
        gamma = gorenstein_vector(_orthant_data(n, boundary))
        assert all(g > 0 for g in gamma)


def test_log_discrepancy_values():
    c2 = _orthant_data(2)
    assert log_discrepancy(c2, (1, 1)) == 2
    assert log_discrepancy(c2, (1, 2)) == 3
    xi = (Fraction(1, 2), Fraction(1, 2), Fraction(3, 2))
    assert log_discrepancy(CONIFOLD, xi) == Fraction(3, 2)


def test_log_discrepancy_requires_interior():
    with pytest.raises(NotInReebCone):
        log_discrepancy(_orthant_data(2), (1, 0))
    with pytest.raises(NotInReebCone):
        log_discrepancy(CONIFOLD, (0, 0, 1))


def test_log_discrepancy_is_linear():
    rng = random.Random(17)
    for _ in range(25):
        rank = rng.randint(2, 4)
        data = oracles.random_fano_cone_data(rng, rank)
        xi = oracles.random_interior_rational(rng, data)
        eta = oracles.random_interior_rational(rng, data)
        a = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        b = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        combo = tuple(a * x + b * y for x, y in zip(xi, eta))
        assert log_discrepancy(data, combo) == a * log_discrepancy(data, xi) + b * log_discrepancy(data, eta)


def test_classify_regularity_exact_inputs():
    c2 = _orthant_data(2)
    assert classify_regularity(c2, (2, 4)) == QUASI_REGULAR
    assert classify_regularity(_orthant_data(3), (1, 1, 1)) == QUASI_REGULAR


def test_classify_regularity_float_inputs():
    c2 = _orthant_data(2)
    assert classify_regularity(c2, (1.0, math.sqrt(2)), tol=1e-9, denominator_bound=10**4) == IRREGULAR
    assert classify_regularity(c2, (1.5, 3.0)) == QUASI_REGULAR
    # scaling an irrational direction does not change the verdict
    s = 0.37
    assert classify_regularity(c2, (s, s * math.sqrt(2))) == IRREGULAR


def test_rationalize_examples():
    c2 = _orthant_data(2)
    assert rationalize(c2, (1.0, math.sqrt(2)), 5).coords == (5, 7)
    assert rationalize(c2, (1, 1), 3).coords == (3, 3)
    phi = (1 + math.sqrt(5)) / 2
    assert rationalize(c2, (1.0, phi), 8).coords == (8, 13)


def test_rationalize_bound_and_convergence():
    c2 = _orthant_data(2)
    xi = (1.0, math.sqrt(2))
    for k in (5, 21, 144, 1000):
        approx = rationalize(c2, xi, k)
        assert max(abs(float(a) - k * x) for a, x in zip(approx.coords, xi)) <= 0.5
    errs = [
        max(abs(float(a) / k - x) for a, x in zip(rationalize(c2, xi, k).coords, xi))
        for k in (10, 100, 1000)
    ]
    assert errs[2] < errs[0]


def test_rationalize_exits_narrow_cone():
    narrow = ToricConeData.make(2, [(1, 0), (1000, 1)])
    with pytest.raises(RoundingExitsCone):
        rationalize(narrow, (1.0, 0.0004), 1)
    assert rationalize(narrow, (1.0, 0.0004), 10000).coords == (10000, 4)


def test_reeb_vector_exactness_inference():
    assert reeb((1, 2)).exact
    assert reeb((Fraction(1, 2), 1)).exact
    assert not reeb((1.0, 2.0)).exact


def test_singularity_json_roundtrip():
    obj = CONIFOLD.to_dict()
    assert obj["rays"] == [[0, 0, 1], [0, 1, 1], [1, 0, 1], [1, 1, 1]]
    assert ToricConeData.from_dict(obj) == CONIFOLD
