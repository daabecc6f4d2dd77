import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from plasmacyl.models import (
    MODELS,
    BoundaryKind,
    Geometry,
    ModelPair,
    PlasmaParams,
    dtilde,
    get_model,
    permittivity_plasma,
    refl,
)


def test_geometry_derived():
    g = Geometry(2.0, 0.5)
    assert g.a == 2.5
    assert g.epsilon == 0.25
    with pytest.raises(ValueError):
        Geometry(1.0, 0.0)


def test_params_roundtrip():
    p = PlasmaParams.from_dimensional(3.0, 5.0, 0.2)
    assert p.Omega_L == pytest.approx(0.6)
    assert p.dimensional(0.2) == pytest.approx((3.0, 5.0))
    with pytest.raises(ValueError):
        PlasmaParams(-1.0)


def test_model_registry():
    assert set(MODELS) == {"dd-te", "dd-tm", "ed-te", "ed-tm"}
    assert get_model("ed-tm").dielectric and get_model("ed-tm").is_tm
    with pytest.raises(ValueError):
        get_model("xx")
    with pytest.raises(ValueError):
        ModelPair(BoundaryKind.DeltaTE, BoundaryKind.DeltaTM, "bad")


def test_permittivity():
    assert permittivity_plasma(2.0, 1.0) == 5.0
    with pytest.raises(ValueError):
        permittivity_plasma(1.0, 0.0)


def test_refl_printed_forms():
    p = PlasmaParams(2.0, 3.0)
    t, y = 0.7, 0.4
    assert refl(BoundaryKind.DeltaTE, t, y, p) == pytest.approx(2.0 / 2.7)
    assert refl(BoundaryKind.DeltaTM, t, y, p) == pytest.approx(-2.0 / (t * y * y + 2.0))
    s = math.sqrt(9 + t * t)
    assert refl(BoundaryKind.EpsTE, t, y, p) == pytest.approx((s - t) / (s + t))
    assert refl(BoundaryKind.EpsTM, t, y, p) == pytest.approx((t * (s - t) * y * y - 9) / (9 + t * (t + s) * y * y))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(list(BoundaryKind)), st.floats(1e-4, 50), st.floats(0, 1), st.floats(1e-3, 1e3),
       st.floats(1e-3, 1e3))
def test_refl_semitransparent(kind, t, y, W, w):
    r = float(refl(kind, t, y, PlasmaParams(W, w)))
    assert abs(r) <= 1.0
    assert (r < 0) == kind.is_tm or r == 0


@pytest.mark.parametrize("kind,sign", [(BoundaryKind.DeltaTE, 1), (BoundaryKind.DeltaTM, -1),
                                       (BoundaryKind.EpsTE, 1), (BoundaryKind.EpsTM, -1)])
def test_hard_limits(kind, sign):
    t, y = np.array([0.1, 1.0, 5.0]), 0.6
    np.testing.assert_allclose(refl(kind, t, y, PlasmaParams(math.inf, math.inf)), sign)
    np.testing.assert_allclose(refl(kind, t, y, PlasmaParams(1e12, 1e12)), sign, rtol=1e-9)
    gamma = np.array([0.3, 2.0])
    np.testing.assert_allclose(dtilde(kind, 0.5, gamma, math.inf, math.inf), sign * 0.5 / gamma)
    np.testing.assert_allclose(dtilde(kind, 0.5, gamma, 1e12, 1e12), sign * 0.5 / gamma, rtol=1e-9)


def test_dtilde_matches_refl():
    # at omega = 0 (k3 only) d~ reduces to r/(2 gamma) with t -> gamma L, y -> 1 scale
    Omega, wp, gamma = 3.0, 2.0, 1.5
    p = PlasmaParams(Omega, wp)  # L = 1
    for kind in (BoundaryKind.DeltaTE, BoundaryKind.EpsTE):
        assert 2 * gamma * dtilde(kind, 0.0, gamma, Omega, wp) == pytest.approx(float(refl(kind, gamma, 1.0, p)))
    assert dtilde(BoundaryKind.DeltaTE, 0.0, gamma, 0.0) == 0.0
    with pytest.raises(ValueError):
        dtilde(BoundaryKind.DeltaTE, 0.0, 0.0, 1.0)
