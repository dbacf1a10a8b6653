"""Field profile, gauge-fixed potential, and escape-speed machinery."""

import math

import numpy as np
import pytest

from fluxfree.fields import LinearFluxFreeField, RadialField, UniformField


def test_bz_values():
    f = LinearFluxFreeField(B0=1.0, R=1.0)
    assert f.bz(0.0) == 1.0
    assert f.bz(2.0 / 3.0) == pytest.approx(0.0, abs=1e-15)
    assert f.bz(1.5) == 0.0


def test_bz_rejects_negative_radius():
    f = LinearFluxFreeField()
    with pytest.raises(ValueError):
        f.bz(-0.1)
    with pytest.raises(ValueError):
        f.a_phi(np.array([0.5, -0.5]))


def test_a_phi_values():
    f = LinearFluxFreeField(B0=1.0, R=1.0)
    assert f.a_phi(0.5) == pytest.approx(0.125, abs=1e-15)
    assert f.a_phi(1.0) == 0.0
    # direct substitution: (B0 s / 2)(1 - s/R)
    f2 = LinearFluxFreeField(B0=2.0, R=3.0)
    assert f2.a_phi(1.0) == pytest.approx(2.0 / 3.0, rel=1e-15)


def test_potential_pinned_at_origin_and_boundary():
    for b0 in (1.0, -2.5, 7.0):
        for r in (0.5, 1.0, 3.0):
            f = LinearFluxFreeField(B0=b0, R=r)
            assert f.a_phi(0.0) == 0.0
            assert f.a_phi(r) == 0.0


def test_a_cart_directions():
    f = LinearFluxFreeField(B0=1.0, R=1.0)
    ax, ay = f.a_cart(0.5, 0.0)
    assert (ax, ay) == pytest.approx((0.0, 0.125), abs=1e-15)
    assert f.a_cart(0.0, 0.0) == (0.0, 0.0)
    ax, ay = f.a_cart(0.0, 0.5)
    assert (ax, ay) == pytest.approx((-0.125, 0.0), abs=1e-15)


def test_a_cart_array_matches_scalar():
    f = LinearFluxFreeField(B0=1.3, R=2.0)
    xs = np.linspace(-2.5, 2.5, 11)
    ys = np.linspace(-2.5, 2.5, 11)
    ax, ay = f.a_cart(xs, ys)
    for i in range(len(xs)):
        sx, sy = f.a_cart(float(xs[i]), float(ys[i]))
        assert ax[i] == pytest.approx(sx, abs=1e-15)
        assert ay[i] == pytest.approx(sy, abs=1e-15)


def test_flux_vanishes_for_flux_free_family():
    assert abs(LinearFluxFreeField(B0=1.0, R=1.0).flux(1000)) < 1e-10
    assert abs(LinearFluxFreeField(B0=5.0, R=2.0).flux(1000)) < 1e-9


@pytest.mark.parametrize("b0", [0.3, 1.0, -4.0])
@pytest.mark.parametrize("r", [0.2, 1.0, 7.5])
def test_flux_vanishes_across_parameters(b0, r):
    f = LinearFluxFreeField(B0=b0, R=r)
    assert abs(f.flux()) <= 1e-9 * math.pi * r**2 * abs(b0)


def test_flux_negative_control():
    # B0 (1 - s/R) is not flux-free: the integral is pi B0 R^2 / 3.
    class NotFluxFree(RadialField):
        def bz(self, s):
            s = np.asarray(s, dtype=float)
            return np.where(s <= self.R, self.B0 * (1.0 - s / self.R), 0.0)

        def a_phi(self, s):
            raise NotImplementedError

    f = NotFluxFree(B0=1.0, R=1.0)
    assert f.flux(1000) == pytest.approx(math.pi / 3.0, rel=1e-12)
    f2 = NotFluxFree(B0=2.0, R=1.5)
    assert f2.flux(1000) == pytest.approx(math.pi * 2.0 * 1.5**2 / 3.0, rel=1e-12)


def test_flux_requires_enough_panels():
    with pytest.raises(ValueError):
        LinearFluxFreeField().flux(8)


def test_escape_speed_closed_form():
    assert LinearFluxFreeField(B0=1.0, R=1.0, q=1.0, m=1.0).escape_speed() == 0.125
    assert LinearFluxFreeField(B0=0.0).escape_speed() == 0.0
    assert LinearFluxFreeField(B0=4.0, R=2.0, q=1.0, m=2.0).escape_speed() == 0.5


def test_escape_speed_matches_sampled_maximum():
    # closed form against the generic dense-sampling path of the base class
    for b0, r, q, m in [(1.0, 1.0, 1.0, 1.0), (3.0, 0.7, -2.0, 0.5), (-2.0, 4.0, 1.5, 3.0)]:
        f = LinearFluxFreeField(B0=b0, R=r, q=q, m=m)
        generic = RadialField.a_max(f)
        assert f.escape_speed() == pytest.approx(abs(q) * generic / m, rel=1e-12)
        s = np.linspace(0.0, r, 200_001)
        dense = np.max(np.abs(f.a_phi(s)))
        assert f.escape_speed() == pytest.approx(abs(q) * dense / m, rel=1e-12)


def test_bounding_radius_values():
    f = LinearFluxFreeField(B0=1.0, R=1.0, q=1.0, m=1.0)
    # degenerate double root exactly at the escape threshold
    assert f.bounding_radius(0.125) == pytest.approx(0.5, abs=1e-15)
    assert f.bounding_radius(0.2) is None
    assert f.bounding_radius(0.06) == pytest.approx(0.1394448724536011, rel=1e-12)
    assert f.bounding_radius(0.0) == 0.0


def test_bounding_radius_against_bisection():
    f = LinearFluxFreeField(B0=1.0, R=1.0, q=1.0, m=1.0)
    for v0 in (0.01, 0.06, 0.1, 0.12):
        lo, hi = 0.0, 0.5
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if f.a_phi(mid) < v0:
                lo = mid
            else:
                hi = mid
        assert f.bounding_radius(v0) == pytest.approx(0.5 * (lo + hi), abs=1e-12)


def test_bounding_radius_generic_path_agrees():
    for v0 in (0.02, 0.07, 0.11):
        f = LinearFluxFreeField(B0=1.0, R=1.0)
        assert RadialField.bounding_radius(f, v0) == pytest.approx(
            f.bounding_radius(v0), abs=1e-10
        )


def test_bounding_radius_monotone_in_speed():
    f = LinearFluxFreeField(B0=1.0, R=1.0)
    speeds = np.linspace(0.0, 0.1249, 60)
    radii = [f.bounding_radius(v) for v in speeds]
    assert all(r1 > r0 for r0, r1 in zip(radii, radii[1:]))


def test_curl_consistency():
    # (1/s) d(s A)/ds must reproduce B_z, checked by central differences.
    f = LinearFluxFreeField(B0=2.0, R=1.5)
    h = 1e-5
    for s in np.linspace(0.1, 1.4, 25):
        d = ((s + h) * f.a_phi(s + h) - (s - h) * f.a_phi(s - h)) / (2.0 * h)
        assert d / s == pytest.approx(f.bz(s), abs=1e-8)


def test_uniform_field_profile():
    f = UniformField(B0=2.0, R=1.0)
    assert f.bz(0.3) == 2.0
    assert f.bz(5.0) == 2.0
    assert f.a_phi(0.5) == 0.5
    # curl of the symmetric gauge potential is the constant field
    h = 1e-5
    s = 0.8
    d = ((s + h) * f.a_phi(s + h) - (s - h) * f.a_phi(s - h)) / (2.0 * h)
    assert d / s == pytest.approx(2.0, abs=1e-9)


def test_parameter_validation():
    with pytest.raises(ValueError):
        LinearFluxFreeField(R=0.0)
    with pytest.raises(ValueError):
        LinearFluxFreeField(m=-1.0)
