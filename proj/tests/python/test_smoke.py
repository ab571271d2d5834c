import cmath
import json
import math

import pytest

import solvstate as ss


def test_spectrum_energies():
    s = ss.Spectrum.poschl_teller(2.0, 2.0)
    assert s.energy(0) == 0.0
    assert s.energy(1) == 5.0
    assert ss.Spectrum.harmonic().energy(7) == 7.0
    assert json.loads(s.to_json())["kind"] == "poschl_teller"


def test_gk_state_is_normalized_eigenstate():
    s = ss.Spectrum.poschl_teller_lambda(4.0)
    st = ss.gk_state(s, 0.7 + 0.2j, alpha=0.3)
    assert st.converged
    assert abs(st.norm_squared() - 1.0) < 1e-12
    assert ss.eigen_residual(s, st, 0.7 + 0.2j) < 1e-9


def test_photon_added_is_not_eigenstate():
    s = ss.Spectrum.poschl_teller_lambda(4.0)
    st = ss.gk_state(s, 0.7 + 0.2j, k=1)
    assert st.offset == 1
    assert ss.eigen_residual(s, st, 0.7 + 0.2j) > 0.01


def test_kp_closed_form_k0():
    lam, xi = 4.0, 0.4
    st = ss.kp_state(lam, xi)
    for n in range(6):
        ref = (1 - xi * xi) ** ((lam + 1) / 2) * xi**n * math.sqrt(
            math.gamma(n + lam + 1) / (math.gamma(n + 1) * math.gamma(lam + 1))
        )
        assert abs(st.amplitude(n) - ref) < 1e-12


def test_kp_matches_displacement():
    s = ss.Spectrum.poschl_teller_lambda(4.0)
    z = cmath.rect(0.4, 0.3)
    a = ss.displace_ground(s, z)
    b = ss.kp_state(4.0, ss.xi_from_z(z))
    assert max(abs(a.amplitude(n) - b.amplitude(n)) for n in range(40)) < 1e-8


def test_domain_errors():
    with pytest.raises(ValueError):
        ss.kp_state(4.0, 1.2)
    with pytest.raises(ss.DomainError):
        ss.pt.Params(0.2, 2.0)


def test_overlap_and_evolution():
    s = ss.Spectrum.poschl_teller_lambda(4.0)
    assert abs(ss.gk_overlap(s, 0.5, 0.5, k=2) - 1.0) < 1e-12
    v = ss.kp_overlap(4.0, 0.3 + 0.1j, -0.2j, k=1)
    w = ss.kp_overlap(4.0, -0.2j, 0.3 + 0.1j, k=1)
    assert abs(v - w.conjugate()) < 1e-12
    st = ss.gk_state(s, 0.5, alpha=0.1, k=2)
    moved = ss.evolve(st, s, 1.5)
    ref = ss.gk_state(s, 0.5, alpha=1.6, k=2)
    assert max(abs(x - y) for x, y in zip(moved.coefficients, ref.coefficients)) < 1e-14


def test_state_json_round_trip():
    s = ss.Spectrum.poschl_teller_lambda(4.0)
    st = ss.gk_state(s, 0.3 - 0.2j, k=1)
    back = ss.FockState.from_json(st.to_json())
    assert back.offset == 1
    assert abs(back.amplitude(2) - st.amplitude(2)) < 1e-14


def test_measures_and_well():
    rep = ss.mellin_check(4.0, 3)
    assert rep["fail"] == 0 and rep["pass"] == 31
    tables = ss.errata_study(4.0, 2, 6)
    assert all(t["quadrature_consistent"] for t in tables)
    p = ss.pt.Params(2.0, 2.0)
    assert abs(ss.pt.potential(p, p.length / 2) + 2.0) < 1e-12
    u, flagged = ss.pt.u_element(p, 1, 1)
    assert not flagged
    assert abs(u - ss.pt.u_element_quadrature(p, 1, 1)) < 1e-8


def test_verify_ladder_suite():
    r = ss.verify("ladder")
    assert r["passed"], r["failures"]
