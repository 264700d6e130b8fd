import numpy as np
import pytest

from hardylab.norms import (NORM_CSV_HEADER, NormEstimate, bergman_norm_disc,
                            bergman_norm_reinhardt, hardy_norm_disc,
                            hardy_norm_reinhardt, monotonicity_check)
from hardylab.registry import default_registry
from hardylab.reinhardt import ball, polydisc, power_egg
from hardylab.series import PowerSeries
from hardylab.witnesses import WitnessFa

TWO_PI = 2.0 * np.pi
RNG = np.random.default_rng(7321)


def _rand_poly(deg):
    c = RNG.uniform(-1, 1, deg + 1) + 1j * RNG.uniform(-1, 1, deg + 1)
    return PowerSeries.from_coefficients(c)


def test_hardy_disc_constant_and_monomials():
    one = hardy_norm_disc(lambda z: np.ones_like(z), 1.0, 1e-8)
    assert one.converged
    assert one.value == pytest.approx(1.0, abs=1e-12)
    for k, p in ((1, 1.0), (3, 2.0)):
        est = hardy_norm_disc(lambda z, k=k: z ** k, p, 1e-6)
        assert est.converged
        assert est.value == pytest.approx(1.0, rel=2e-6)


def test_hardy_disc_extremal_family_is_isometric():
    # the family is normalized: Hardy norm 1 for every parameter
    for a in (0.0, 0.5, 0.9):
        est = hardy_norm_disc(WitnessFa(a), 1.0, 1e-6, k_max=30)
        assert est.converged
        assert est.value == pytest.approx(1.0, abs=1e-6)


def test_hardy_disc_sharp_spike_needs_deeper_ladder():
    est_short = hardy_norm_disc(WitnessFa(0.99), 1.0, 1e-6, k_max=20)
    assert not est_short.converged
    est = hardy_norm_disc(WitnessFa(0.99), 1.0, 1e-6, k_max=36)
    assert est.converged
    assert est.value == pytest.approx(1.0, abs=1e-6)


def test_hardy_disc_ladder_values_monotone():
    est = hardy_norm_disc(WitnessFa(0.8), 1.0, 1e-6, k_max=28)
    vals = np.array(est.ladder_values)
    assert np.all(np.diff(vals) >= -1e-12)
    assert est.value == pytest.approx(vals.max(), rel=1e-15)


def test_bergman_disc_constants_and_monomials():
    one = bergman_norm_disc(lambda z: np.ones_like(z), 1.0)
    assert one.converged
    assert one.value == pytest.approx(np.pi, rel=1e-12)
    # int |z|^{kp} dV = 2 pi / (kp + 2)
    for k, p in ((1, 1.0), (2, 1.0), (1, 2.0)):
        est = bergman_norm_disc(lambda z, k=k: z ** k, p)
        assert est.value == pytest.approx((TWO_PI / (k * p + 2)) ** (1 / p),
                                          rel=1e-10)


def test_bergman_disc_extremal_family_closed_form():
    # ||f_a||_A1 = pi (1-a^2) log(1/(1-a^2)) / a^2
    for a in (0.5, 0.9):
        est = bergman_norm_disc(WitnessFa(a), 1.0)
        expect = np.pi * (1 - a * a) * np.log(1 / (1 - a * a)) / (a * a)
        assert est.converged
        assert est.value == pytest.approx(expect, rel=1e-9)
    est9 = bergman_norm_disc(WitnessFa(0.9), 1.0)
    assert est9.value == pytest.approx(1.2238207187632835, rel=1e-9)


def test_embedding_constant_on_random_polynomials():
    # ||f||_A1 <= pi ||f||_H1, with equality approached by constants
    for deg in (0, 2, 5, 9):
        f = _rand_poly(deg)
        a1 = bergman_norm_disc(f, 1.0)
        h1 = hardy_norm_disc(f, 1.0, 1e-7, k_max=30)
        assert a1.value <= np.pi * h1.value * (1 + 1e-6)


def test_norm_estimate_csv_row_shape():
    est = hardy_norm_disc(lambda z: np.ones_like(z), 1.0, 1e-8)
    row = est.csv_row()
    fields = row.split(",")
    assert len(fields) == len(NORM_CSV_HEADER.split(","))
    assert fields[0] == "H"
    assert fields[1] == "1"
    assert int(fields[3]) == len(est.ladder)
    assert fields[5] in ("true", "false")
    best = bergman_norm_disc(lambda z: np.ones_like(z), 1.0)
    assert best.csv_row().split(",")[0] == "A"


def test_hardy_reinhardt_constant_mass():
    U2 = polydisc(2)
    est = hardy_norm_reinhardt(lambda z1, z2: np.ones(np.broadcast(z1, z2).shape),
                               1.0, U2, k_max=10)
    assert est.converged
    assert est.value == pytest.approx(TWO_PI ** 2, rel=1e-12)
    est2 = hardy_norm_reinhardt(lambda z1, z2: np.ones(np.broadcast(z1, z2).shape),
                                2.0, U2, k_max=10)
    assert est2.value == pytest.approx(TWO_PI, rel=1e-12)


def test_hardy_reinhardt_product_factorizes():
    # product of one-variable members: unnormalized torus integral gives
    # (2pi)^2 times the product of the disc Hardy norms, here 1 * 1
    reg = default_registry()
    ent = reg.get("prod-fa-0.9-0.5")
    est = hardy_norm_reinhardt(ent.evaluator, 1.0, polydisc(2), tol=1e-7,
                               k_max=28, spike=ent.spike)
    assert est.converged
    assert est.value == pytest.approx(TWO_PI ** 2, rel=1e-6)


def test_hardy_reinhardt_monomial_on_ball():
    # sup of r1 over the ball frontier is 1, attained at a corner
    B2 = ball(2)
    est = hardy_norm_reinhardt(
        lambda z1, z2: z1 * np.ones(np.broadcast(z1, z2).shape), 2.0, B2,
        k_max=26)
    assert est.converged
    assert est.value == pytest.approx(TWO_PI, rel=1e-6)


def test_bergman_reinhardt_volumes():
    one2 = bergman_norm_reinhardt(
        lambda z1, z2: np.ones(np.broadcast(z1, z2).shape), 1.0, polydisc(2))
    assert one2.converged
    assert one2.value == pytest.approx(np.pi ** 2, rel=1e-10)
    oneb = bergman_norm_reinhardt(
        lambda z1, z2: np.ones(np.broadcast(z1, z2).shape), 1.0, ball(2))
    assert oneb.value == pytest.approx(np.pi ** 2 / 2, rel=1e-10)


def test_bergman_reinhardt_monomial_values():
    # int_{U^2} |z1| dV = (2pi/3) * pi ; ball: 4 pi^2 / 15
    est = bergman_norm_reinhardt(
        lambda z1, z2: z1 * np.ones(np.broadcast(z1, z2).shape), 1.0,
        polydisc(2))
    assert est.value == pytest.approx(TWO_PI / 3 * np.pi, rel=1e-9)
    estb = bergman_norm_reinhardt(
        lambda z1, z2: z1 * np.ones(np.broadcast(z1, z2).shape), 1.0, ball(2))
    assert estb.value == pytest.approx(4 * np.pi ** 2 / 15, rel=1e-9)


def test_bergman_reinhardt_dim1_delegates():
    est = bergman_norm_reinhardt(lambda z: np.ones_like(z), 1.0, polydisc(1))
    assert est.space == "A"
    assert est.value == pytest.approx(np.pi, rel=1e-12)


def test_power_egg_volume():
    # |z1|^2 + |z2|^2 < 1 as a power egg reproduces the ball volume
    egg = power_egg([2.0, 2.0])
    est = bergman_norm_reinhardt(
        lambda z1, z2: np.ones(np.broadcast(z1, z2).shape), 1.0, egg)
    assert est.value == pytest.approx(np.pi ** 2 / 2, rel=1e-9)


def test_monotonicity_on_shells_battery():
    reg = default_registry()
    ent = reg.get("prod-fa-0.9")
    for _ in range(20):
        u = RNG.uniform(0.1, 0.9, 2)
        lo = RNG.uniform(0.1, 0.7)
        hi = lo + RNG.uniform(0.05, 0.25)
        assert monotonicity_check(ent.evaluator, 1.0, lo * u, hi * u,
                                  spike=ent.spike)


def test_monotonicity_one_variable():
    f = WitnessFa(0.7)
    assert monotonicity_check(f, 1.0, [0.3], [0.8])
    assert monotonicity_check(f, 2.0, [0.0], [0.95])


def test_monotonicity_rejects_bad_pairs():
    f = WitnessFa(0.5)
    with pytest.raises(ValueError):
        monotonicity_check(f, 1.0, [0.5, 0.2], [0.4, 0.3])
    with pytest.raises(ValueError):
        monotonicity_check(f, 1.0, [0.5], [0.4, 0.6])


def test_norm_estimate_is_frozen():
    est = NormEstimate(1.0, "H", 1.0, (), (), (), True)
    with pytest.raises(Exception):
        est.value = 2.0
