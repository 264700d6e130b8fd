import numpy as np
import pytest

from hardylab.errors import DomainModelError
from hardylab.registry import default_registry
from hardylab.reinhardt import (ReinhardtDomain, ball, contains,
                                custom_domain, density_experiment,
                                dilate_truncate, domain_from_config,
                                frontier_max_radius, frontier_sample,
                                polydisc, power_egg, section_tops,
                                simplex_directions)
from hardylab.series import MultiIndexSeries, PowerSeries
from hardylab.witnesses import fa_series

RNG = np.random.default_rng(99017)


def test_polydisc_gauge_and_contains():
    U2 = polydisc(2)
    assert contains(U2, [0.5, 0.9])
    assert contains(U2, [0.99j, -0.99])
    assert not contains(U2, [1.0, 0.0])
    assert U2.gauge_at([0.5, 0.25]) == pytest.approx(0.5)


def test_ball_gauge_and_contains():
    B2 = ball(2)
    assert contains(B2, [0.6, 0.6])
    assert not contains(B2, [0.8, 0.7])
    assert B2.gauge_at([3.0, 4.0]) == pytest.approx(5.0)


def test_power_egg_gauge():
    egg = power_egg([2.0, 4.0])
    assert egg.gauge_at([0.5, 0.5]) == pytest.approx(0.25 + 0.0625)
    assert contains(egg, [0.7, 0.7])


def test_frontier_max_radius_closed_forms():
    U2 = polydisc(2, radii=[1.0, 0.5])
    r = frontier_max_radius(U2, [1.0, 1.0])
    assert np.allclose(r, [0.5, 0.5])
    r2 = frontier_max_radius(U2, [1.0, 0.25])
    assert np.allclose(r2, [1.0, 0.25])
    B2 = ball(2)
    r3 = frontier_max_radius(B2, [3.0, 4.0])
    assert np.allclose(r3, [0.6, 0.8])


def test_frontier_max_radius_bisection_matches_closed_form():
    # a custom gauge equal to the ball gauge must agree with the formula
    dom = custom_domain(lambda r: np.sqrt(np.sum(r * r, axis=-1)), 2, 1.0)
    for _ in range(10):
        u = RNG.uniform(0.1, 1.0, 2)
        got = frontier_max_radius(dom, u)
        expect = u / np.linalg.norm(u)
        assert np.allclose(got, expect, atol=1e-12)


def test_frontier_max_radius_rejects_unbounded_ray():
    dom = custom_domain(lambda r: r[..., 0] * 1.0, 2, 1.0)
    with pytest.raises(DomainModelError):
        frontier_max_radius(dom, [0.0, 1.0])


def test_section_tops():
    B2 = ball(2)
    tops = section_tops(B2, np.array([[0.0], [0.6], [1.0]]))
    assert np.allclose(tops, [1.0, 0.8, 0.0])
    U2 = polydisc(2, radii=[1.0, 0.25])
    tops2 = section_tops(U2, np.array([[0.3], [0.9]]))
    assert np.allclose(tops2, [0.25, 0.25])
    egg = power_egg([2.0, 2.0])
    tops3 = section_tops(egg, np.array([[0.6]]))
    assert tops3[0] == pytest.approx(0.8)


def test_simplex_directions_cover_and_normalize():
    dirs = simplex_directions(2, 16)
    assert dirs.shape[1] == 2
    assert np.allclose(dirs.sum(axis=1), 1.0)
    # corners and barycenter are always present
    assert any(np.allclose(d, [1, 0]) for d in dirs)
    assert any(np.allclose(d, [0, 1]) for d in dirs)
    assert any(np.allclose(d, [0.5, 0.5]) for d in dirs)
    dirs3 = simplex_directions(3, 24)
    assert dirs3.shape[1] == 3
    assert np.allclose(dirs3.sum(axis=1), 1.0)
    assert np.all(dirs3 >= 0)


def test_frontier_sample_sits_on_frontier():
    for dom in (polydisc(2), ball(2), power_egg([2.0, 3.0])):
        fs = frontier_sample(dom, 24)
        g = np.array([dom.gauge_at(r) for r in fs.radii])
        assert np.all(g <= 1.0 + 1e-10)
        assert np.all(g >= 1.0 - 1e-10)


def test_dilate_truncate_one_variable():
    # geometric coefficients 1, rho, rho^2, ... truncated at M
    g = PowerSeries.from_generator(lambda k: 1.0 + 0j)
    q = dilate_truncate(g, 0.5, 3)
    assert q.coefficient((0,)) == pytest.approx(1.0)
    assert q.coefficient((1,)) == pytest.approx(0.5)
    assert q.coefficient((2,)) == pytest.approx(0.25)
    assert q.coefficient((3,)) == pytest.approx(0.125)
    assert q.coefficient((4,)) == 0j


def test_dilate_truncate_multi_index():
    F = MultiIndexSeries(2, {(1, 2): 2.0, (4, 0): 1.0})
    q = dilate_truncate(F, 0.5, 3)
    # |alpha|_1 = 3 scales by rho^3; max index 4 is cut
    assert q.coefficient((1, 2)) == pytest.approx(2.0 * 0.125)
    assert q.coefficient((4, 0)) == 0j


def test_dilate_truncate_validates():
    g = fa_series(0.5)
    with pytest.raises(ValueError):
        dilate_truncate(g, 0.0, 3)
    with pytest.raises(ValueError):
        dilate_truncate(g, 1.5, 3)
    with pytest.raises(ValueError):
        dilate_truncate(g, 0.5, -1)
    with pytest.raises(TypeError):
        dilate_truncate(lambda z: z, 0.5, 3)


def test_dilate_truncate_converges_pointwise():
    f = fa_series(0.8)
    z = np.array([0.9, -0.9j, 0.6 + 0.6j])
    prev_err = np.inf
    for rho, M in ((0.9, 16), (0.99, 64), (0.999, 256), (0.9999, 512)):
        q = dilate_truncate(f, rho, M).to_power_series()
        err = float(np.max(np.abs(f(z) - q(z))))
        assert err < prev_err
        prev_err = err
    assert prev_err < 5e-3


def test_domain_from_config():
    d1 = domain_from_config({"kind": "polydisc", "dim": 2})
    assert d1.kind == "polydisc" and d1.dim == 2
    d2 = domain_from_config({"kind": "ball", "dim": 3, "radius": 0.5})
    assert d2.kind == "ball" and d2.params == (0.5,)
    d3 = domain_from_config({"kind": "power-egg", "powers": [2, 4]})
    assert d3.dim == 2
    with pytest.raises(ValueError):
        domain_from_config({"kind": "torus"})


def test_density_experiment_disc():
    reg = default_registry()
    rows = density_experiment(reg.get("fa-0.9"), polydisc(1), 1.0,
                              eps_ladder=(0.5, 0.1), norm_tol=1e-4)
    assert len(rows) == 2
    for row in rows:
        assert row.converged
        assert row.met
        assert row.error <= row.eps
    # tighter target forces dilation closer to 1 and a larger degree
    assert rows[1].rho >= rows[0].rho
    assert rows[1].M >= rows[0].M


def test_density_experiment_dimension_mismatch():
    reg = default_registry()
    with pytest.raises(ValueError):
        density_experiment(reg.get("fa-0.9"), polydisc(2), 1.0, (0.5,))


def test_domain_validation():
    with pytest.raises(ValueError):
        polydisc(2, radii=[1.0, -1.0])
    with pytest.raises(ValueError):
        ball(2, radius=0.0)
    with pytest.raises(ValueError):
        power_egg([])
    with pytest.raises(ValueError):
        ReinhardtDomain(dim=0, kind="custom", gauge=lambda r: r,
                        params=(), diameter_bound=1.0)
