from __future__ import annotations

import random
from fractions import Fraction

from fanocone import (
    ToricConeData,
    build_volume_form,
    ding_product,
    futaki,
    gorenstein_vector,
    minimize_volume,
    normalize_config,
    normalized_volume,
    product_config,
    t_normalize,
)
from fanocone.futaki import FINITE_DIFFERENCE
from fanocone.linalg import dot

import oracles


def _orthant_data(n: int) -> ToricConeData:
    rays = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return ToricConeData.make(n, rays)


C2 = _orthant_data(2)
C2_FORM = build_volume_form(C2)


# ---------------------------------------------------------------------------
# normalization
# ---------------------------------------------------------------------------


def test_normalize_config_scales_to_slice():
    cfg = product_config(C2, (1, 2), (1, 0))
    norm = normalize_config(C2, cfg)
    assert norm.xi0.coords == (Fraction(2, 3), Fraction(4, 3))
    gamma = gorenstein_vector(C2)
    assert dot(gamma, norm.xi0.coords) == 2
    assert dot(gamma, norm.eta) == 0
    # b * xi0 + eta with a = 2/3, b = -1/3
    assert norm.eta == (Fraction(2, 3), Fraction(-2, 3))


def test_normalize_config_fixed_point_and_idempotence():
    cfg = product_config(C2, (1, 1), (1, -1))
    assert cfg.normalized
    norm = normalize_config(C2, cfg)
    assert norm.xi0.coords == (1, 1)
    assert norm.eta == (1, -1)
    again = normalize_config(C2, norm)
    assert again.xi0.coords == norm.xi0.coords and again.eta == norm.eta


def test_t_normalize_examples():
    assert t_normalize(C2, (1, 1), (1, 0)) == (Fraction(1, 2), Fraction(-1, 2))
    # on a normalized configuration, T is the identity on eta
    cfg = normalize_config(C2, product_config(C2, (1, 2), (1, 0)))
    assert t_normalize(C2, cfg.xi0, cfg.eta) == cfg.eta
    # antisymmetry: eta = xi0 maps to zero
    assert t_normalize(C2, (1, 2), (1, 2)) == (0, 0)


def test_t_normalize_lands_in_discrepancy_kernel():
    rng = random.Random(13)
    gammaless = []
    for _ in range(20):
        data = oracles.random_fano_cone_data(rng, rng.randint(2, 4))
        xi = oracles.random_interior_rational(rng, data)
        eta = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(data.rank))
        t_vec = t_normalize(data, xi, eta)
        assert dot(gorenstein_vector(data), t_vec) == 0
        gammaless.append(t_vec)
    assert any(any(v) for v in gammaless)


# ---------------------------------------------------------------------------
# hand-computed invariants
# ---------------------------------------------------------------------------


def test_futaki_vanishes_at_symmetric_point():
    report = futaki(C2, C2_FORM, xi0=(1, 1), eta=(1, 0))
    assert abs(report.fut) < 1e-12
    assert abs(futaki(C2, C2_FORM, xi0=(1, 1), eta=(0, 1)).fut) < 1e-12


def test_futaki_hand_value_one_half():
    # d/deps hvol((1,2) - eps (1,0)) = 3/2, denominator n A^{n-1} vol = 3
    report = futaki(C2, C2_FORM, xi0=(1, 2), eta=(1, 0))
    assert abs(report.fut - 0.5) < 1e-10
    assert abs(report.fut_hvol_route - 0.5) < 1e-10


def test_futaki_hand_value_other_axis():
    # hand differentiation of hvol = (x+y)^2/(xy): d_y hvol(1,2) = 3/4, so
    # D_{-eta} hvol = -3/4 and Fut = -3/4 / 3 = -1/4; the finite-difference
    # oracle agrees.
    report = futaki(C2, C2_FORM, xi0=(1, 2), eta=(0, 1))
    assert abs(report.fut - (-0.25)) < 1e-10
    data, form = C2, C2_FORM

    def hvol(p):
        return float(normalized_volume(data, form, p))

    h = 1e-6
    d_hvol = (hvol((1.0, 2.0 - h)) - hvol((1.0, 2.0 + h))) / (2 * h)
    fd_fut = d_hvol / (2 * 3 * 0.5)
    assert abs(report.fut - fd_fut) < 1e-8


def test_futaki_linearity_in_eta():
    rng = random.Random(29)
    for _ in range(25):
        data = oracles.random_fano_cone_data(rng, rng.randint(2, 4))
        form = build_volume_form(data)
        xi = tuple(float(x) for x in oracles.random_interior_rational(rng, data))
        e1 = tuple(rng.uniform(-2, 2) for _ in range(data.rank))
        e2 = tuple(rng.uniform(-2, 2) for _ in range(data.rank))
        a, b = rng.uniform(-3, 3), rng.uniform(-3, 3)
        combo = tuple(a * x + b * y for x, y in zip(e1, e2))
        f1 = futaki(data, form, xi0=xi, eta=e1).fut
        f2 = futaki(data, form, xi0=xi, eta=e2).fut
        fc = futaki(data, form, xi0=xi, eta=combo).fut
        scale = max(1.0, abs(a * f1) + abs(b * f2))
        assert abs(fc - (a * f1 + b * f2)) <= 1e-9 * scale


def test_direct_and_hvol_routes_agree_on_random_inputs():
    rng = random.Random(37)
    for _ in range(25):
        data = oracles.random_fano_cone_data(rng, rng.randint(2, 4))
        form = build_volume_form(data)
        xi = tuple(float(x) for x in oracles.random_interior_rational(rng, data))
        eta = tuple(rng.uniform(-2, 2) for _ in range(data.rank))
        report = futaki(data, form, xi0=xi, eta=eta)
        scale = max(1.0, abs(report.fut))
        assert abs(report.fut - report.fut_hvol_route) <= 1e-9 * scale


def test_futaki_of_xi0_itself_is_exactly_zero():
    report = futaki(C2, C2_FORM, xi0=(1, 2), eta=(1, 2))
    assert report.fut == 0.0
    assert report.t_xi_eta == (0, 0)


def test_finite_difference_method_matches_analytic():
    direct = futaki(C2, C2_FORM, xi0=(1, 2), eta=(1, 0))
    fd = futaki(C2, C2_FORM, xi0=(1, 2), eta=(1, 0), method=FINITE_DIFFERENCE)
    assert fd.method == FINITE_DIFFERENCE
    assert abs(fd.fut - direct.fut) < 1e-7


def test_futaki_vanishes_at_minimizer_for_all_coordinate_directions():
    rng = random.Random(43)
    cases = [_orthant_data(2), _orthant_data(3)] + [
        oracles.random_fano_cone_data(rng, 3) for _ in range(4)
    ]
    for data in cases:
        form = build_volume_form(data)
        res = minimize_volume(data, form)
        xi_star = res.minimizer.as_floats()
        for i in range(data.rank):
            e = tuple(1.0 if j == i else 0.0 for j in range(data.rank))
            assert abs(futaki(data, form, xi0=xi_star, eta=e).fut) < 1e-8


def test_ding_equals_futaki_for_product_configs():
    for eta in ((1, 0), (0, 1), (2, -1)):
        assert ding_product(C2, C2_FORM, xi0=(1, 2), eta=eta) == futaki(
            C2, C2_FORM, xi0=(1, 2), eta=eta
        ).fut
