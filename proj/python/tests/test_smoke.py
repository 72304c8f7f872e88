import cmath
import math

import pytest

import qnmcav as q


def test_rod_spectrum_matches_closed_form():
    p = q.rod(5.0, 1.0, 1.0)
    s = q.qnm_spectrum(p, 6)
    for j in range(-5, 6):
        ref = q.rod_qnm_frequency(5.0, 1.0, 1.0, j)
        assert abs(s.mode(j).omega - ref) < 1e-10 * abs(ref)
    assert s.mode(0).omega.imag < 0


def test_invalid_profile_raises_input_error():
    with pytest.raises(q.QnmError) as e:
        q.rod(1.0, 1.0, 1.0)
    assert e.value.input_error
    assert q.validate([q.Segment(0.0, 1.0)], 1.0, 1.0) == ["NoStepAtBoundary"]


def test_profile_json_round_trip():
    p = q.profile_from_json('{"segments":[{"x0":0.0,"rho":9.0},{"x0":0.6,"rho":2.25}],"a":1.0}')
    assert len(p.segments) == 2
    assert q.profile_from_json(p.to_json()).optical_length == pytest.approx(p.optical_length, rel=1e-15)


def test_correlator_forms_agree():
    p = q.rod(5.0)
    s = q.qnm_spectrum(p, 200)
    closed, _ = q.correlator("closed", s, p, 0.3, 0.6, 1.1, beta=1.0)
    diag, tail = q.correlator("diagonal", s, p, 0.3, 0.6, 1.1, beta=1.0)
    assert abs(diag - closed) < 1e-3 * abs(closed)
    assert tail >= 0.0
    zero, _ = q.correlator("subtracted", s, p, 0.3, 0.3, 0.5)
    assert zero == 0


def test_dos_and_propagator_link():
    p = q.rod(5.0)
    s = q.qnm_spectrum(p, 4)
    for w in (0.3, 1.2, 2.9):
        d = q.local_dos_exact(p, 0.4, w)
        D, _ = q.feynman("closed", s, p, 0.4, 0.4, w)
        assert abs(d + 2 * w / math.pi * D.imag) < 1e-8


def test_unit_weight_and_surface_ratio():
    p = q.rod(50.0)
    s = q.qnm_spectrum(p, 4)
    u = q.unit_weight(p, s, 0)
    assert abs(u["weight"] - 1.0) < 0.02
    assert abs(q.surface_ratio(s.mode(0)) - 1.0003) < 1e-3


def test_commutator_dual_forms():
    p = q.rod(5.0)
    s = q.qnm_spectrum(p, 4)
    integral, surface = q.commutator(s.mode(1), s.mode(2), p)
    assert abs(integral - surface) < 1e-8


def test_special_function():
    assert abs(q.exp_integral_E1(1.0) - 0.219383934395520) < 1e-12
    z = 0.7 + 1.3j
    assert abs(q.exp_integral_E1(z.conjugate()) - q.exp_integral_E1(z).conjugate()) < 1e-14


def test_mu_oracle():
    ref, mu = q.mu_compare(5.0, 1.0, 1.0, 200.0, "dos", 0.5, 0.5)
    assert abs(mu - ref) < 0.02 * abs(ref)
